/**
 * @file scenario.hpp
 * @brief Scenario presets: named bundles of experiments plus assertions on their metrics.
 *
 * A scenario file is JSON with `name`, `description`, `experiments` (each an experiment
 * config) and `assertions`. A plain experiment file is treated as a scenario of one.
 */
#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "adaptopt/sim/experiment.hpp"

namespace adaptopt::sim {

namespace fs = std::filesystem;

#ifndef ADAPTOPT_DEFAULT_SCENARIO_DIR
#define ADAPTOPT_DEFAULT_SCENARIO_DIR "scenarios"
#endif

inline constexpr const char* kScenarioDirEnv = "ADAPTOPT_SCENARIO_DIR";
inline constexpr const char* kOutDirEnv = "ADAPTOPT_OUT_DIR";

/// Command-line overrides applied to every experiment before parsing.
struct Overrides {
    std::optional<double> dt;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> decimate;

    void apply(json& experiment) const {
        if (dt) experiment["dt"] = *dt;
        if (seed) experiment["seed"] = *seed;
        if (decimate) experiment["decimate"] = *decimate;
    }
};

struct Scenario {
    std::string name;
    std::string description;
    std::vector<ExperimentConfig> experiments;
    std::vector<Assertion> assertions;
};

inline json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({path.string() + ": cannot open"});
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError({path.string() + ": " + e.what()});
    }
}

inline Scenario parse_scenario(json j, const Overrides& ov = {}) {
    Scenario sc;
    if (!j.is_object()) throw ConfigError({"<root>: expected an object"});
    if (!j.contains("experiments")) {
        ov.apply(j);
        auto cfg = parse_experiment(j);
        sc.name = cfg.name;
        sc.assertions = cfg.assertions;
        for (auto& a : sc.assertions) a.experiment = cfg.name;
        sc.experiments.push_back(std::move(cfg));
        return sc;
    }
    detail::Reader rd;
    sc.name = rd.string(j, "", "name", true).value_or("scenario");
    sc.description = rd.string(j, "", "description", false).value_or("");
    auto& list = j["experiments"];
    if (!list.is_array() || list.empty()) {
        rd.fail("experiments", "expected a nonempty array");
    } else {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = "experiments[" + std::to_string(i) + "]";
            ov.apply(list[i]);
            try {
                sc.experiments.push_back(parse_experiment(list[i], path));
            } catch (const ConfigError& e) {
                for (const auto& p : e.problems()) rd.problems.push_back(p);
            }
        }
    }
    sc.assertions = parse_assertions(rd, j, "");
    for (std::size_t i = 0; i < sc.experiments.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            if (sc.experiments[i].name == sc.experiments[k].name) {
                rd.fail("experiments[" + std::to_string(i) + "].name", "duplicate experiment name");
            }
        }
    }
    for (std::size_t i = 0; i < sc.assertions.size(); ++i) {
        const auto& a = sc.assertions[i];
        const bool known = std::any_of(sc.experiments.begin(), sc.experiments.end(),
                                       [&](const ExperimentConfig& c) { return c.name == a.experiment; });
        if (!known) rd.fail("assertions[" + std::to_string(i) + "].experiment", "no experiment named '" + a.experiment + "'");
    }
    if (!rd.problems.empty()) throw ConfigError(rd.problems);
    return sc;
}

/// Directory searched for preset files.
inline fs::path scenario_dir() {
    if (const char* env = std::getenv(kScenarioDirEnv); env && *env) return env;
    return ADAPTOPT_DEFAULT_SCENARIO_DIR;
}

inline fs::path default_out_dir() {
    if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
    return "adaptopt-out";
}

/// Sorted preset names (file stems of *.json in the scenario directory).
inline std::vector<std::string> list_scenarios(const fs::path& dir = scenario_dir()) {
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

struct AssertionOutcome {
    Assertion assertion;
    bool passed = false;
    std::optional<double> observed;

    [[nodiscard]] std::string describe() const {
        std::ostringstream os;
        os << assertion.experiment << "." << assertion.metric << " " << assertion.op << " "
           << format_number(assertion.value) << " (observed ";
        if (observed) os << format_number(*observed);
        else os << "missing";
        os << ")";
        return os.str();
    }
};

inline bool compare(double lhs, const std::string& op, double rhs) {
    if (op == "<") return lhs < rhs;
    if (op == "<=") return lhs <= rhs;
    if (op == ">") return lhs > rhs;
    if (op == ">=") return lhs >= rhs;
    if (op == "==") return lhs == rhs;
    return false;
}

struct ScenarioResult {
    std::string name;
    std::vector<RunResult> runs;
    std::vector<AssertionOutcome> outcomes;

    [[nodiscard]] bool any_diverged() const {
        return std::any_of(runs.begin(), runs.end(), [](const RunResult& r) { return r.status == RunStatus::diverged; });
    }
    [[nodiscard]] bool all_passed() const {
        return std::all_of(outcomes.begin(), outcomes.end(), [](const AssertionOutcome& o) { return o.passed; });
    }
    /// 0 pass, 1 assertion failure, 3 diverged.
    [[nodiscard]] int exit_code() const {
        if (any_diverged()) return 3;
        return all_passed() ? 0 : 1;
    }
};

inline std::vector<AssertionOutcome> evaluate(const std::vector<Assertion>& assertions,
                                              const std::vector<RunResult>& runs) {
    std::vector<AssertionOutcome> out;
    for (const auto& a : assertions) {
        AssertionOutcome o{a, false, std::nullopt};
        for (const auto& r : runs) {
            if (r.name != a.experiment) continue;
            if (auto it = r.report.metrics.find(a.metric); it != r.report.metrics.end()) o.observed = it->second;
        }
        o.passed = o.observed && compare(*o.observed, a.op, a.value);
        out.push_back(o);
    }
    return out;
}

/// Runs every experiment (concurrently when `parallel`) and checks the assertions.
inline ScenarioResult run_scenario(const Scenario& sc, bool parallel = true) {
    ScenarioResult res;
    res.name = sc.name;
    if (parallel && sc.experiments.size() > 1) {
        std::vector<std::future<RunResult>> jobs;
        for (const auto& cfg : sc.experiments) {
            jobs.push_back(std::async(std::launch::async, [&cfg] { return run_experiment(cfg); }));
        }
        for (auto& j : jobs) res.runs.push_back(j.get());
    } else {
        for (const auto& cfg : sc.experiments) res.runs.push_back(run_experiment(cfg));
    }
    res.outcomes = evaluate(sc.assertions, res.runs);
    return res;
}

/// Writes <name>.csv and <name>.report.json per run, plus <scenario>.summary.json.
inline void write_outputs(const ScenarioResult& res, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    for (const auto& r : res.runs) {
        std::ofstream csv(out_dir / (r.name + ".csv"));
        write_csv(csv, r.trajectory);
        std::ofstream rep(out_dir / (r.name + ".report.json"));
        rep << report_json(r).dump(2) << '\n';
        if (!csv || !rep) throw Error(ErrorKind::invalid_input, "cannot write outputs to " + out_dir.string());
    }
    json summary;
    summary["scenario"] = res.name;
    summary["passed"] = res.all_passed() && !res.any_diverged();
    summary["assertions"] = json::array();
    for (const auto& o : res.outcomes) {
        json a;
        a["experiment"] = o.assertion.experiment;
        a["metric"] = o.assertion.metric;
        a["op"] = o.assertion.op;
        a["value"] = o.assertion.value;
        a["observed"] = o.observed ? json(*o.observed) : json(nullptr);
        a["passed"] = o.passed;
        summary["assertions"].push_back(a);
    }
    std::ofstream out(out_dir / (res.name + ".summary.json"));
    out << summary.dump(2) << '\n';
}

}  // namespace adaptopt::sim
