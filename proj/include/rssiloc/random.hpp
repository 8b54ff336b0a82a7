/*
 * Copyright 2026 The rssiloc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>

namespace rssiloc {

// Every stochastic operation takes its generator by reference; nothing in the
// library owns hidden random state.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

inline double draw_normal(Rng& rng, double mean, double stddev) {
    if (stddev == 0.0) {
        return mean;
    }
    return std::normal_distribution<double>{mean, stddev}(rng);
}

inline bool draw_bernoulli(Rng& rng, double p) {
    return std::bernoulli_distribution{p}(rng);
}

}  // namespace rssiloc
