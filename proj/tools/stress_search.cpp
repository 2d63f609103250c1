// Searches for a switching regressor on which the higher-order tuner stays bounded while
// Nesterov's method with fixed (gamma, beta) leaves the bound, and prints the preset JSON.
//
// Every level on its own is a stable problem for the chosen (gamma, beta); only the
// switching makes Nesterov grow. Usage: adaptopt_stress_search [first-seed] [seed-count]

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

#include "adaptopt/sim/experiment.hpp"

namespace {

using namespace adaptopt;
using namespace adaptopt::sim;

constexpr double kGamma = 0.012;
constexpr double kBeta = 0.9;
constexpr int kLevels = 4;
constexpr double kMaxNorm = 10.0;
constexpr std::size_t kSteps = 10000;

json levels_for(std::uint64_t seed) {
    SplitMix64 rng(seed);
    json rows = json::array();
    for (int i = 0; i < kLevels; ++i) {
        const double r = i == 0 ? kMaxNorm : rng.uniform(1.0, kMaxNorm);
        const double a = rng.uniform(0.0, 2.0 * M_PI);
        rows.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return rows;
}

json nesterov_config(const json& signal, std::uint64_t seed) {
    return {{"name", "nesterov"},
            {"mode", "discrete"},
            {"horizon", kSteps},
            {"seed", seed},
            {"theta0", {0.0, 0.0}},
            {"theta_star", {1.0, -1.0}},
            {"signal", signal},
            {"loss", {{"kind", "squared"}}},
            {"law", {{"kind", "nesterov"}, {"schedule", {{"kind", "constant"}, {"gamma0", kGamma}}}, {"beta", kBeta}}},
            {"analysis", {{"regret", false}, {"fit", false}, {"pe", false}, {"jensen", false}, {"stop_on_bound", true}}}};
}

json tuner_config(const json& signal, std::uint64_t seed) {
    return {{"name", "higher-order-tuner"},
            {"mode", "continuous"},
            {"horizon", 1000},
            {"dt", 0.01},
            {"decimate", 10},
            {"seed", seed},
            {"theta0", {0.0, 0.0}},
            {"theta_star", {1.0, -1.0}},
            {"signal", signal},
            {"model", {{"kind", "algebraic"}}},
            {"loss", {{"kind", "squared"}}},
            {"law", {{"kind", "higher-order-tuner"}, {"gamma", 0.5}, {"beta", 1.0}, {"mu", 1.0}}},
            {"analysis", {{"regret", false}, {"fit", false}, {"pe", false}, {"jensen", false}}}};
}

bool exceeds(const json& j) {
    const auto r = run_experiment(parse_experiment(j));
    return r.status == RunStatus::diverged || r.report.metrics.at("exceeded_bound") > 0.0;
}

}  // namespace

int main(int argc, char** argv) {
    const std::uint64_t first = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
    const std::uint64_t count = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 50;
    for (std::uint64_t seed = first; seed < first + count; ++seed) {
        const json levels = levels_for(seed);
        bool frozen_stable = true;
        for (const auto& row : levels) {
            if (exceeds(nesterov_config({{"kind", "constant"}, {"value", row}}, seed))) frozen_stable = false;
        }
        if (!frozen_stable) continue;
        for (int period = 1; period <= 40; ++period) {
            const json signal = {{"kind", "piecewise-switching"}, {"levels", levels}, {"period", period}};
            const json nest = nesterov_config(signal, seed);
            if (!exceeds(nest)) continue;
            const json ht = tuner_config(signal, seed);
            const auto r = run_experiment(parse_experiment(ht));
            const double ratio = r.report.metrics.at("max_theta_norm_ratio");
            std::cerr << "seed " << seed << " period " << period << ": nesterov exceeds, tuner ratio " << ratio << '\n';
            if (r.status == RunStatus::ok && ratio <= 10.0) {
                std::cout << json{{"seed", seed}, {"period", period}, {"experiments", {ht, nest}}}.dump(2) << '\n';
                return 0;
            }
        }
    }
    std::cerr << "no instance found\n";
    return 1;
}
