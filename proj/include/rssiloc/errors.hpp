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

#include <stdexcept>

namespace rssiloc {

// Argument outside an operation's mathematical domain (d <= 0, bad index, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InsufficientAnchorsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Anchor set cannot determine a position (collinear or coincident anchors).
class DegenerateGeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Range linearization undefined: the estimate sits on top of an anchor.
class SingularGeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyResultError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rssiloc
