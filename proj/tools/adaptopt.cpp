// Command-line front end: run configs, run presets, validate configs, list presets.
//
// Exit codes: 0 pass, 1 assertion failure, 2 config or usage error, 3 diverged.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "adaptopt/sim/scenario.hpp"

namespace {

using namespace adaptopt;
using namespace adaptopt::sim;

constexpr int kExitPass = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;

struct Flags {
    std::string out;
    Overrides overrides;
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::size_t decimate = 0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--out", out, "Output directory (default: $ADAPTOPT_OUT_DIR or ./adaptopt-out)");
        cmd->add_option("--dt", dt, "Integrator step override")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "Seed override");
        cmd->add_option("--decimate", decimate, "Log every K-th step")->check(CLI::PositiveNumber);
    }

    void finalize(const CLI::App* cmd) {
        if (cmd->count("--dt")) overrides.dt = dt;
        if (cmd->count("--seed")) overrides.seed = seed;
        if (cmd->count("--decimate")) overrides.decimate = decimate;
    }

    [[nodiscard]] fs::path out_dir() const { return out.empty() ? default_out_dir() : fs::path(out); }
};

void print_problems(const ConfigError& e) {
    std::cerr << "config error:\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
}

int execute(const Scenario& sc, const fs::path& out_dir) {
    const ScenarioResult res = run_scenario(sc);
    write_outputs(res, out_dir);
    for (const auto& r : res.runs) {
        std::cout << r.name << ": " << to_string(r.status);
        if (!r.message.empty()) std::cout << " (" << r.message << ")";
        std::cout << '\n';
        for (const auto& note : r.report.notes) std::cout << "  note: " << note << '\n';
    }
    for (const auto& o : res.outcomes) std::cout << (o.passed ? "PASS " : "FAIL ") << o.describe() << '\n';
    const int code = res.exit_code();
    std::cout << res.name << ": " << (code == kExitPass ? "pass" : code == kExitAssertion ? "FAIL" : "DIVERGED")
              << " (outputs in " << out_dir.string() << ")\n";
    return code;
}

std::string preset_list() {
    std::string s;
    for (const auto& n : list_scenarios()) s += "  " + n + "\n";
    return s.empty() ? "  (none found in " + scenario_dir().string() + ")\n" : s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive control and online optimization experiments"};
    app.require_subcommand(1);

    std::string config_path, preset;
    Flags run_flags, scenario_flags, validate_flags;

    auto* run = app.add_subcommand("run", "Run an experiment or scenario config file");
    run->add_option("config", config_path, "Path to a JSON config")->required();
    run_flags.add_to(run);

    auto* scenario = app.add_subcommand("scenario", "Run a shipped scenario preset");
    scenario->add_option("name", preset, "Preset name (see list-scenarios)")->required();
    scenario_flags.add_to(scenario);

    auto* validate = app.add_subcommand("validate", "Check a config file without running it");
    validate->add_option("config", config_path, "Path to a JSON config")->required();
    validate_flags.add_to(validate);

    auto* list = app.add_subcommand("list-scenarios", "List the shipped presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*list) {
            for (const auto& n : list_scenarios()) std::cout << n << '\n';
            return kExitPass;
        }
        if (*validate) {
            validate_flags.finalize(validate);
            const Scenario sc = parse_scenario(read_json_file(config_path), validate_flags.overrides);
            std::cout << config_path << ": ok (" << sc.experiments.size() << " experiment"
                      << (sc.experiments.size() == 1 ? "" : "s") << ")\n";
            return kExitPass;
        }
        if (*run) {
            run_flags.finalize(run);
            const Scenario sc = parse_scenario(read_json_file(config_path), run_flags.overrides);
            return execute(sc, run_flags.out_dir());
        }
        scenario_flags.finalize(scenario);
        const auto names = list_scenarios();
        if (std::find(names.begin(), names.end(), preset) == names.end()) {
            std::cerr << "unknown scenario '" << preset << "'. Available presets:\n" << preset_list();
            return kExitConfig;
        }
        const Scenario sc = parse_scenario(read_json_file(scenario_dir() / (preset + ".json")), scenario_flags.overrides);
        return execute(sc, scenario_flags.out_dir());
    } catch (const ConfigError& e) {
        print_problems(e);
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return e.kind() == ErrorKind::diverged ? 3 : kExitConfig;
    }
}
