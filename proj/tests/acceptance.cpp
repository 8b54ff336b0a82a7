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

// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// non-zero when any selected criterion fails.
//
//   rssiloc_acceptance                 run all criteria
//   rssiloc_acceptance --criterion N   run criterion N only

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "rssiloc/channel.hpp"
#include "rssiloc/cli.hpp"
#include "rssiloc/deployment.hpp"
#include "rssiloc/errors.hpp"
#include "rssiloc/kalman.hpp"
#include "rssiloc/localization.hpp"
#include "rssiloc/simulator.hpp"

using namespace rssiloc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const std::vector<AnchorNode> kTriple{{NodeId{0}, {0, 0}}, {NodeId{1}, {30, 0}}, {NodeId{2}, {15, 30}}};

Scenario desk_surrogate(std::uint64_t seed) {
    Scenario s;
    s.roi = {0, 0, 30, 30};
    s.beacons = kTriple;
    s.trajectory.assign(200, Point2D{12, 9});
    s.path_loss = PathLossParams{Dbm{-45.0}, 1.0, 2.0};
    s.shadowing.sigma_db = 2.0;
    s.aggregation_window = 10;
    s.seed = seed;
    return s;
}

std::vector<InterfererProfile> wifi_trio() {
    return {{WifiChannel(1), Dbm{-70}, 1.0}, {WifiChannel(6), Dbm{-70}, 1.0}, {WifiChannel(11), Dbm{-70}, 1.0}};
}

Outcome criterion1() {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    const auto t0 = Clock::now();
    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
        const std::vector<AnchorNode> tri{{NodeId{0}, {coord(rng), coord(rng)}},
                                          {NodeId{1}, {coord(rng), coord(rng)}},
                                          {NodeId{2}, {coord(rng), coord(rng)}}};
        const Point2D a = tri[0].position, b = tri[1].position, c = tri[2].position;
        const double area2 = std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
        const double longest =
            std::max({euclidean_distance(a, b), euclidean_distance(b, c), euclidean_distance(a, c)});
        if (area2 < 0.05 * longest * longest) {
            continue;
        }
        const double wa = weight(rng), wb = weight(rng), wc = weight(rng), ws = wa + wb + wc;
        const Point2D truth{(wa * a.x + wb * b.x + wc * c.x) / ws, (wa * a.y + wb * b.y + wc * c.y) / ws};
        std::vector<double> ranges;
        for (const auto& t : tri) ranges.push_back(euclidean_distance(t.position, truth));
        worst = std::max(worst, euclidean_distance(trilaterate({tri, ranges}).position, truth));
        ++done;
    }
    const double elapsed = seconds_since(t0);
    return {worst < 1e-9 && elapsed < 1.0,
            "max error " + fmt("%.3g", worst) + " m over 1000 triples, " + fmt("%.3f", elapsed) + " s"};
}

Outcome criterion2() {
    const PathLossParams p{Dbm{-45.0}, 1.0, 2.0};
    const double r = distance_from_rssi(p, Dbm{-60.0});
    const auto est = trilaterate({kTriple, {r, r, r}}).position;
    const double err = euclidean_distance(est, {15.0, 11.25});
    return {err <= 1e-6, "estimate (" + fmt("%.9f", est.x) + ", " + fmt("%.9f", est.y) + "), off by " +
                             fmt("%.3g", err) + " m"};
}

Outcome criterion3() {
    const auto t0 = Clock::now();
    int good = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const double rmse = compute_metrics(run_scenario(desk_surrogate(seed)), EstimateFlavor::kalman, 150).rmse;
        good += rmse < 0.5 ? 1 : 0;
        worst = std::max(worst, rmse);
    }
    const double elapsed = seconds_since(t0);
    return {good >= 95 && elapsed < 10.0, std::to_string(good) + "/100 seeds with final-50 Kalman RMSE < 0.5 m (worst " +
                                              fmt("%.3f", worst) + " m), " + fmt("%.2f", elapsed) + " s"};
}

Outcome criterion4() {
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto c = compare_pipelines(run_scenario(desk_surrogate(seed)));
        const bool ordered = c.raw.rmse > c.averaged.rmse && c.averaged.rmse > c.kalman.rmse;
        const bool gaps = (c.raw.rmse - c.averaged.rmse) >= 0.05 * c.raw.rmse &&
                          (c.averaged.rmse - c.kalman.rmse) >= 0.05 * c.averaged.rmse;
        good += ordered && gaps ? 1 : 0;
    }
    return {good >= 95, std::to_string(good) + "/100 seeds with raw > averaged > kalman and >= 5% gaps"};
}

Outcome criterion5() {
    const auto t0 = Clock::now();
    ChannelEnvironment env;
    env.noise_floor = Dbm{-100};
    env.interferers = wifi_trio();
    Rng rng = make_rng(5);
    const int selected = select_channel(scan_all_channels(env, ScanConfig{}, rng)).index();

    std::set<int> clean;
    for (const auto& z : all_zigbee_channels()) {
        bool hit = false;
        for (int w : {1, 6, 11}) hit = hit || channels_overlap(z, WifiChannel(w));
        if (!hit) clean.insert(z.index());
    }
    const double elapsed = seconds_since(t0);
    const bool ok = selected == 15 && clean == std::set<int>{15, 20, 25, 26} && elapsed < 1.0;
    std::string set_text;
    for (int c : clean) set_text += (set_text.empty() ? "" : ",") + std::to_string(c);
    return {ok, "selected " + std::to_string(selected) + ", clean set {" + set_text + "}, " + fmt("%.3f", elapsed) +
                    " s"};
}

Outcome criterion6() {
    const InterfererProfile intruder{WifiChannel(3), Dbm{-60}, 1.0};
    int good = 0;
    std::size_t worst_delay = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        // Packet-level loop: count packets between switch-on and rescan.
        ChannelEnvironment env;
        env.interferers = wifi_trio();
        Rng rng = make_rng(seed);
        ChannelMonitor monitor(select_channel(scan_all_channels(env, ScanConfig{}, rng)));
        for (int i = 0; i < 100; ++i) monitor.record(packet_success(env, monitor.active_channel(), rng));
        const bool quiet_before = !should_rescan(monitor);
        const ZigbeeChannel before = monitor.active_channel();
        env.interferers.push_back(intruder);
        std::size_t delay = 0;
        bool rescanned = false;
        while (delay < ChannelMonitor::kDefaultWindow && !rescanned) {
            monitor.record(packet_success(env, monitor.active_channel(), rng));
            ++delay;
            if (should_rescan(monitor)) {
                monitor.reset(select_channel(scan_all_channels(env, ScanConfig{}, rng)));
                rescanned = true;
            }
        }
        worst_delay = std::max(worst_delay, delay);
        bool clear_after = true;
        for (const auto& i : env.interferers) clear_after = clear_after && !channels_overlap(monitor.active_channel(), i.wifi_channel);

        // Same event through the full simulator.
        Scenario s = desk_surrogate(seed);
        s.trajectory.assign(60, Point2D{12, 9});
        s.environment.interferers = wifi_trio();
        s.interference_schedule = {{25, intruder}};
        const auto run = run_scenario(s);
        const int landed = run.steps.back().channel;
        bool sim_clear = run.scans == 2 && run.steps[24].channel == before.index();
        for (const auto& i : wifi_trio()) sim_clear = sim_clear && !channels_overlap(ZigbeeChannel(landed), i.wifi_channel);
        sim_clear = sim_clear && !channels_overlap(ZigbeeChannel(landed), intruder.wifi_channel);

        good += quiet_before && rescanned && clear_after && sim_clear ? 1 : 0;
    }
    return {good == 100, std::to_string(good) + "/100 trials rescanned onto a clean channel (worst delay " +
                             std::to_string(worst_delay) + " packets)"};
}

Outcome criterion7() {
    std::vector<std::string> failures;
    const std::array<AnchorNode, 3> anchors{kTriple[0], kTriple[1], kTriple[2]};
    const Vec2 truth{12, 9};
    const auto exact = [&](const Vec2& p) {
        const auto r = predicted_ranges(p, anchors);
        return std::array<double, 3>{r(0), r(1), r(2)};
    };

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> n(0.0, 1.0);
    KalmanState s{truth, Mat2::Zero()};
    double min_eig = 0.0;
    bool symmetric = true;
    for (int step = 0; step < 10'000; ++step) {
        KalmanConfig cfg;
        Mat2 l;
        l << u(rng), 0, u(rng) - 0.5, u(rng);
        cfg.process_noise = 0.1 * l * l.transpose();
        cfg.measurement_noise = (0.05 + 2.0 * u(rng)) * Mat3::Identity();
        if (step % 500 == 0) s.position = truth + Vec2{n(rng), n(rng)};
        auto z = exact(truth);
        for (double& r : z) r = std::max(0.1, r + n(rng));
        s = filter_step(s, {anchors, z}, cfg);
        symmetric = symmetric && s.covariance == s.covariance.transpose();
        min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat2>(s.covariance).eigenvalues().minCoeff());
    }
    if (!symmetric || min_eig < -1e-9) failures.push_back("covariance lost symmetry/PSD");

    const KalmanConfig cfg;
    const KalmanState pred{Vec2{11, 10}, Mat2{{0.4, 0.1}, {0.1, 0.3}}};
    if (update(pred, {anchors, exact(pred.position)}, cfg).position != pred.position) {
        failures.push_back("zero innovation moved the state");
    }

    const Mat32 h = observation_jacobian(truth, anchors);
    if (!gain(Mat2::Zero(), h, cfg.measurement_noise).isZero(0.0)) failures.push_back("K != 0 at zero covariance");

    // The shrink is 1e6 only once R dominates H E H^T; in general it lies in
    // [1e6 / (1 + rho), 1e6] with rho = lambda_max(H E H^T) / lambda_min(R).
    double ratio = 0.0;
    for (const double scale : {1.0, 1e-4}) {
        const Mat2 e = scale * pred.covariance;
        const double rho = Eigen::SelfAdjointEigenSolver<Mat3>(h * e * h.transpose()).eigenvalues().maxCoeff() /
                           Eigen::SelfAdjointEigenSolver<Mat3>(cfg.measurement_noise).eigenvalues().minCoeff();
        const double q = gain(e, h, cfg.measurement_noise).norm() / gain(e, h, 1e6 * cfg.measurement_noise).norm();
        if (q > 1e6 * (1.0 + 1e-9) || q < 1e6 / (1.0 + rho)) failures.push_back("gain ratio " + fmt("%.6g", q));
        if (scale < 1.0) {
            ratio = q;
            if (std::abs(q / 1e6 - 1.0) > 1e-3) failures.push_back("dominated gain ratio " + fmt("%.6g", q));
        }
    }

    std::string detail = "10^4 steps min eigenvalue " + fmt("%.3g", min_eig) + ", gain shrink " + fmt("%.7g", ratio) + " with R dominant";
    for (const auto& f : failures) detail += "; " + f;
    return {failures.empty(), detail};
}

Outcome criterion8() {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> side(10.0, 100.0);
    std::uniform_real_distribution<double> range(10.0, 60.0);
    std::uniform_real_distribution<double> origin(-100.0, 100.0);
    const auto t0 = Clock::now();
    int good = 0;
    std::size_t samples = 0;
    for (int t = 0; t < 100; ++t) {
        const double x0 = origin(rng), y0 = origin(rng);
        const Rect roi{x0, y0, x0 + side(rng), y0 + side(rng)};
        const double r = range(rng);
        const auto report = verify_three_coverage(plan_square_grid_deployment(roi, r), roi, r, 0.25);
        good += report.covered ? 1 : 0;
        samples += report.samples;
    }
    const double elapsed = seconds_since(t0);
    return {good == 100 && elapsed < 30.0, std::to_string(good) + "/100 plans verified (" + std::to_string(samples) +
                                               " samples), " + fmt("%.2f", elapsed) + " s"};
}

Outcome criterion9() {
    const fs::path root = fs::temp_directory_path() / ("rssiloc_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path scenario = fs::path(RSSILOC_TEST_DATA_DIR) / "desk_triple.json";
    std::ostringstream sink;
    cli::RunOptions a;
    a.scenario = scenario;
    a.out_dir = root / "a";
    cli::RunOptions b = a;
    b.out_dir = root / "b";
    const int ca = cli::cmd_simulate(a, sink, sink);
    const int cb = cli::cmd_simulate(b, sink, sink);
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    bool same = ca == 0 && cb == 0;
    std::size_t bytes = 0;
    for (const char* f : {"steps.csv", "summary.json"}) {
        const std::string x = slurp(a.out_dir / f);
        same = same && !x.empty() && x == slurp(b.out_dir / f);
        bytes += x.size();
    }
    fs::remove_all(root);
    return {same, same ? "steps.csv and summary.json identical (" + std::to_string(bytes) + " bytes)"
                       : "outputs differ or run failed (exit " + std::to_string(ca) + "/" + std::to_string(cb) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rssiloc acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9};
    int failed = 0;
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
        if (only != 0 && only != i) continue;
        Outcome o;
        try {
            o = criteria[static_cast<std::size_t>(i - 1)]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %d: %s  %s\n", i, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
