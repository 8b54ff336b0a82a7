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

#include <doctest.h>

#include <random>

#include "rssiloc/channel.hpp"
#include "rssiloc/errors.hpp"

using namespace rssiloc;

namespace {

ChannelEnvironment wifi_env(std::initializer_list<int> channels, double power = -70.0, double duty = 1.0) {
    ChannelEnvironment env;
    for (int c : channels) {
        env.interferers.push_back({WifiChannel(c), Dbm{power}, duty});
    }
    return env;
}

ScanReport flat_report(double mean) {
    ScanReport r;
    for (const auto c : all_zigbee_channels()) {
        r.records.push_back({c, Dbm{mean}, 0.0});
    }
    return r;
}

}  // namespace

TEST_CASE("scan of an empty environment") {
    Rng rng = make_rng(1);
    const auto report = scan_all_channels(ChannelEnvironment{}, ScanConfig{}, rng);
    REQUIRE(report.records.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(report.records[i].channel.index() == 11 + static_cast<int>(i));
        CHECK(report.records[i].mean_energy == Dbm{-100.0});
        CHECK(report.records[i].variance_db2 == 0.0);
    }
    CHECK(select_channel(report).index() == 11);
}

TEST_CASE("scan under the WiFi 1/6/11 trio") {
    Rng rng = make_rng(2);
    const auto report = scan_all_channels(wifi_env({1, 6, 11}), ScanConfig{}, rng);
    for (const auto& r : report.records) {
        const int c = r.channel.index();
        if (c == 15 || c == 20 || c == 25 || c == 26) {
            CHECK(r.mean_energy == Dbm{-100.0});
        } else {
            CHECK(r.mean_energy.value == doctest::Approx(-70.0).epsilon(1e-4));
        }
    }
    CHECK(select_channel(report).index() == 15);
}

TEST_CASE("only channel 20 left clean") {
    Rng rng = make_rng(3);
    const auto report = scan_all_channels(wifi_env({1, 3, 6, 11, 13}), ScanConfig{}, rng);
    CHECK(select_channel(report).index() == 20);
}

TEST_CASE("scan determinism") {
    const auto env = wifi_env({1, 6, 11}, -75.0, 0.4);
    Rng a = make_rng(123);
    Rng b = make_rng(123);
    const auto ra = scan_all_channels(env, ScanConfig{}, a);
    const auto rb = scan_all_channels(env, ScanConfig{}, b);
    for (std::size_t i = 0; i < ra.records.size(); ++i) {
        CHECK(ra.records[i].mean_energy == rb.records[i].mean_energy);
        CHECK(ra.records[i].variance_db2 == rb.records[i].variance_db2);
    }
    CHECK(select_channel(ra) == select_channel(rb));
}

TEST_CASE("partial duty cycle shows up as variance") {
    Rng rng = make_rng(4);
    const auto report = scan_all_channels(wifi_env({6}, -70.0, 0.5), ScanConfig{20, 100.0}, rng);
    CHECK(report.records[17 - 11].variance_db2 > 0.0);
    CHECK(report.records[25 - 11].variance_db2 == 0.0);
}

TEST_CASE("select_channel picks a brute-force minimum") {
    CHECK(select_channel(flat_report(-90.0)).index() == 11);
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> level(-100, -95);  // coarse levels force ties
    for (int trial = 0; trial < 500; ++trial) {
        ScanReport r;
        for (const auto c : all_zigbee_channels()) {
            r.records.push_back({c, Dbm{static_cast<double>(level(rng))}, 0.0});
        }
        const ZigbeeChannel chosen = select_channel(r);
        double best = 1e9;
        int best_index = 0;
        for (const auto& rec : r.records) {
            if (rec.mean_energy.value < best) {
                best = rec.mean_energy.value;
                best_index = rec.channel.index();
            }
        }
        CHECK(chosen.index() == best_index);
    }
}

TEST_CASE("scan config validation") {
    Rng rng = make_rng(0);
    CHECK_THROWS_AS(scan_all_channels(ChannelEnvironment{}, ScanConfig{0, 100.0}, rng), DomainError);
}

TEST_CASE("monitor window bookkeeping") {
    ChannelMonitor mon(ZigbeeChannel(15));
    CHECK(mon.failure_ratio() == 0.0);
    mon = record_packet_outcome(mon, true);
    CHECK(mon.failure_ratio() == 0.0);

    ChannelMonitor failing(ZigbeeChannel(15));
    for (int i = 0; i < 20; ++i) failing.record(false);
    CHECK(failing.failure_ratio() == 1.0);

    ChannelMonitor evict(ZigbeeChannel(15));
    evict.record(false);
    for (int i = 0; i < 20; ++i) evict.record(true);
    CHECK(evict.size() == 20);
    CHECK(evict.failures() == 0);
    CHECK(evict.failure_ratio() == 0.0);

    CHECK_THROWS_AS(ChannelMonitor(ZigbeeChannel(15), 0), DomainError);
    CHECK_THROWS_AS(ChannelMonitor(ZigbeeChannel(15), 20, 0.0), DomainError);
    CHECK_THROWS_AS(ChannelMonitor(ZigbeeChannel(15), 20, 1.5), DomainError);
}

TEST_CASE("should_rescan thresholds") {
    auto filled = [](int failures) {
        ChannelMonitor mon(ZigbeeChannel(20));
        for (int i = 0; i < 20; ++i) mon.record(i >= failures);
        return mon;
    };
    CHECK(should_rescan(filled(5)));         // 0.25 > 0.2
    CHECK_FALSE(should_rescan(filled(4)));   // 0.2 is not > 0.2
    ChannelMonitor partial(ZigbeeChannel(20));
    for (int i = 0; i < 10; ++i) partial.record(false);
    CHECK_FALSE(should_rescan(partial));     // window not full
    partial.reset(ZigbeeChannel(25));
    CHECK(partial.size() == 0);
    CHECK(partial.active_channel().index() == 25);
}

TEST_CASE("monitor-scan loop escapes a newly interfered channel") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng = make_rng(seed);
        ChannelEnvironment env = wifi_env({1, 6, 11});
        ChannelMonitor mon(select_channel(scan_all_channels(env, ScanConfig{}, rng)));
        REQUIRE(mon.active_channel().index() == 15);
        for (int i = 0; i < 40; ++i) mon.record(packet_success(env, mon.active_channel(), rng));
        CHECK_FALSE(should_rescan(mon));

        env.interferers.push_back({WifiChannel(3), Dbm{-60.0}, 1.0});
        int packets = 0;
        while (!should_rescan(mon) && packets < 20) {
            mon.record(packet_success(env, mon.active_channel(), rng));
            ++packets;
        }
        REQUIRE(should_rescan(mon));
        CHECK(packets <= 20);
        const ZigbeeChannel next = select_channel(scan_all_channels(env, ScanConfig{}, rng));
        for (const auto& i : env.interferers) CHECK_FALSE(channels_overlap(next, i.wifi_channel));
        CHECK(next.index() == 20);
    }
}
