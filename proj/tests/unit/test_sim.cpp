#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "adaptopt/sim/integrator.hpp"
#include "adaptopt/sim/scenario.hpp"

using namespace adaptopt;
using namespace adaptopt::sim;

namespace {

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

json continuous_base() {
    return json::parse(R"({
        "name": "base",
        "mode": "continuous",
        "horizon": 5,
        "dt": 0.01,
        "theta0": [0, 0],
        "theta_star": [1, -1],
        "signal": {"kind": "sinusoid-bank", "frequencies": [1, 2], "phases": [0, 0.5]},
        "law": {"kind": "gradient-flow", "gamma": 2},
        "analysis": {"regret": false, "fit": false, "pe": false}
    })");
}

json discrete_base() {
    return json::parse(R"({
        "name": "disc",
        "mode": "discrete",
        "horizon": 200,
        "seed": 3,
        "theta0": [0, 0],
        "theta_star": [0.5, -0.25],
        "signal": {"kind": "seeded-random", "amplitudes": [1, 1]},
        "law": {"kind": "projected-gd", "schedule": {"kind": "inverse-sqrt", "gamma0": 0.5},
                "set": {"kind": "ball", "center": [0, 0], "radius": 1}}
    })");
}

std::string csv_of(const RunResult& r) {
    std::ostringstream os;
    write_csv(os, r.trajectory);
    return os.str();
}

std::vector<std::string> problems_of(const json& j) {
    try {
        (void)parse_experiment(j);
    } catch (const ConfigError& e) {
        return e.problems();
    }
    return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& prefix) {
    for (const auto& p : problems) {
        if (p.rfind(prefix, 0) == 0) return true;
    }
    return false;
}

}  // namespace

TEST(Rk4, Examples) {
    const auto decay = [](double, const Vector& x) { return Vector(-x); };
    EXPECT_NEAR(rk4_step(decay, vec({1}), 0.0, 0.1)(0), 0.9048375, 1e-7);
    EXPECT_NEAR(rk4_step(decay, vec({1}), 0.0, 0.1)(0), std::exp(-0.1), 1e-6);

    const auto zero = [](double, const Vector& x) { return Vector(Vector::Zero(x.size())); };
    EXPECT_EQ(rk4_step(zero, vec({3, -2}), 1.0, 0.5), vec({3, -2}));

    const Matrix A = (Matrix(2, 2) << 0, 1, -2, -0.3).finished();
    const auto linear = [&A](double, const Vector& x) { return Vector(A * x); };
    const Vector x0 = vec({0.7, -0.1});
    const Vector a = rk4_step(linear, Vector(3.0 * x0), 0.0, 0.05);
    const Vector b = 3.0 * rk4_step(linear, x0, 0.0, 0.05);
    EXPECT_LT((a - b).norm(), 1e-15);
}

TEST(Rk4, NonFiniteDerivativeDiverges) {
    const auto bad = [](double t, const Vector& x) { return Vector(x / (t - 0.05)); };
    try {
        (void)rk4_step(bad, vec({1}), 0.0, 0.1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::diverged);
    }
    EXPECT_THROW((void)rk4_step(bad, vec({1}), 0.0, 0.0), Error);
}

TEST(RunExperiment, EquilibriumStartStaysPut) {
    for (const char* law : {"gradient-flow", "sigma-modification", "deadzone", "projection", "time-varying-gain",
                            "higher-order-tuner"}) {
        json j = continuous_base();
        j["theta0"] = {1, -1};
        j["law"] = {{"kind", law}};
        if (std::string(law) == "sigma-modification") j["law"]["modification"] = "e-modification";
        if (std::string(law) == "projection") {
            j["law"]["theta_max"] = {2, 2};
            j["law"]["theta_inner"] = {1.5, 1.5};
        }
        const auto r = run_experiment(parse_experiment(j));
        ASSERT_EQ(r.status, RunStatus::ok) << law;
        for (const auto& rec : r.trajectory.records) {
            ASSERT_EQ(rec.theta, vec({1, -1})) << law;
            ASSERT_EQ(rec.e_y, 0.0) << law;
        }
    }
}

TEST(RunExperiment, SelfConvergenceIsFourthOrder) {
    auto final_theta = [](double dt) {
        json j = continuous_base();
        j["dt"] = dt;
        return run_experiment(parse_experiment(j)).trajectory.records.back().theta;
    };
    const Vector a = final_theta(0.04), b = final_theta(0.02), c = final_theta(0.01);
    const double ratio = (a - b).norm() / (b - c).norm();
    EXPECT_NEAR(ratio, 16.0, 2.0);
    EXPECT_GE(std::log2(ratio), 3.5);
}

TEST(RunExperiment, DeterministicCsv) {
    for (const json& j : {continuous_base(), discrete_base()}) {
        const auto cfg = parse_experiment(j);
        EXPECT_EQ(csv_of(run_experiment(cfg)), csv_of(run_experiment(cfg)));
    }
    json other = discrete_base();
    other["seed"] = 4;
    EXPECT_NE(csv_of(run_experiment(parse_experiment(discrete_base()))),
              csv_of(run_experiment(parse_experiment(other))));
}

TEST(RunExperiment, CsvHeaderAndPrecision) {
    json j = continuous_base();
    j["decimate"] = 7;
    const auto r = run_experiment(parse_experiment(j));
    const std::string csv = csv_of(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,theta_0,theta_1,e_y,theta_err_norm,V,cost");
    // 500 steps logged every 7th, plus t = 0 and the final step.
    EXPECT_EQ(r.trajectory.records.size(), 1u + 500 / 7 + 1);
    EXPECT_NEAR(r.trajectory.records.back().t, 5.0, 1e-12);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    EXPECT_EQ(std::stod(field), r.trajectory.records[1].t);
    std::getline(fields, field, ',');
    EXPECT_EQ(std::stod(field), r.trajectory.records[1].theta(0));
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}

TEST(RunExperiment, TimeColumnIsMonotone) {
    for (const json& j : {continuous_base(), discrete_base()}) {
        const auto r = run_experiment(parse_experiment(j));
        for (std::size_t i = 1; i < r.trajectory.records.size(); ++i) {
            ASSERT_GT(r.trajectory.records[i].t, r.trajectory.records[i - 1].t);
        }
    }
}

TEST(RunExperiment, DivergenceStopsWithPartialTrajectory) {
    json j = discrete_base();
    j["law"] = {{"kind", "gd"}, {"schedule", {{"kind", "constant"}, {"gamma0", 1e6}}}};
    j["horizon"] = 5000;
    j["analysis"] = {{"regret", false}, {"bound_ratio", 1e300}};
    const auto r = run_experiment(parse_experiment(j));
    EXPECT_EQ(r.status, RunStatus::diverged);
    EXPECT_FALSE(r.trajectory.records.empty());
    EXPECT_LT(r.trajectory.records.size(), 5000u);
    for (const auto& rec : r.trajectory.records) ASSERT_TRUE(rec.theta.allFinite());
}

TEST(RunExperiment, DiscreteProjectionKeepsIterates) {
    const auto r = run_experiment(parse_experiment(discrete_base()));
    EXPECT_EQ(r.report.metrics.at("left_set"), 0.0);
    for (const auto& rec : r.trajectory.records) ASSERT_LE(rec.theta.norm(), 1.0 + 1e-12);
}

TEST(RunExperiment, GradientFlowMonitorsAndJensen) {
    json j = continuous_base();
    j["signal"] = {{"kind", "constant"}, {"value", {1, 0.5}}};
    const auto r = run_experiment(parse_experiment(j));
    EXPECT_LE(r.report.metrics.at("lyapunov_max_increase"), 1e-8);
    EXPECT_EQ(r.report.metrics.at("jensen_holds"), 1.0);
}

TEST(Config, ErrorsCarryFieldPaths) {
    json j = continuous_base();
    j["dt"] = 0.5;
    EXPECT_TRUE(mentions(problems_of(j), "dt:"));

    j = continuous_base();
    j["theta0"] = {0, 0, 0};
    EXPECT_TRUE(mentions(problems_of(j), "theta0:"));

    j = continuous_base();
    j["law"] = {{"kind", "nesterov"}};
    EXPECT_TRUE(mentions(problems_of(j), "law.kind:"));

    j = discrete_base();
    j["law"] = {{"kind", "gradient-flow"}};
    EXPECT_TRUE(mentions(problems_of(j), "law.kind:"));

    j = continuous_base();
    j["signal"]["kind"] = "chirp";
    EXPECT_TRUE(mentions(problems_of(j), "signal.kind:"));

    j = continuous_base();
    j.erase("theta_star");
    EXPECT_TRUE(mentions(problems_of(j), "theta_star:"));

    j = continuous_base();
    j["loss"] = {{"kind", "lp"}, {"p", 3}};
    EXPECT_TRUE(mentions(problems_of(j), "loss:"));

    // Several problems are reported together.
    j = continuous_base();
    j["dt"] = -1;
    j["mode"] = "hybrid";
    EXPECT_GE(problems_of(j).size(), 2u);
}

TEST(Config, TimeVaryingGainWithDynamicModelNeedsUnsafe) {
    json j = continuous_base();
    j["model"] = {{"kind", "dynamic"}, {"A", {{-1}}}, {"b", {1}}, {"c", {1}}};
    j["law"] = {{"kind", "time-varying-gain"}};
    EXPECT_TRUE(mentions(problems_of(j), "law.kind:"));
    j["unsafe"] = true;
    EXPECT_TRUE(problems_of(j).empty());

    j["model"]["A"] = {{1}};
    EXPECT_TRUE(mentions(problems_of(j), "model:"));
}

TEST(Config, OgdStepsizeNeedsBoundedSet) {
    json j = discrete_base();
    j["law"]["schedule"]["gamma0"] = "ogd";
    EXPECT_TRUE(problems_of(j).empty());
    j["law"].erase("set");
    j["law"]["kind"] = "gd";
    EXPECT_TRUE(mentions(problems_of(j), "law.schedule.gamma0:"));
}

TEST(Scenario, ParsingAndOverrides) {
    json sc = {{"name", "pair"},
               {"experiments", {continuous_base(), discrete_base()}},
               {"assertions", {{{"experiment", "base"}, {"metric", "final_theta_error"}, {"op", "<"}, {"value", 1}}}}};
    Overrides ov;
    ov.seed = 99;
    ov.decimate = 5;
    const Scenario s = parse_scenario(sc, ov);
    ASSERT_EQ(s.experiments.size(), 2u);
    EXPECT_EQ(s.experiments[1].seed, 99u);
    EXPECT_EQ(s.experiments[0].decimate, 5u);

    json dup = sc;
    dup["experiments"][1] = continuous_base();
    EXPECT_THROW((void)parse_scenario(dup), ConfigError);

    json unknown = sc;
    unknown["assertions"][0]["experiment"] = "nope";
    try {
        (void)parse_scenario(unknown);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e.problems(), "assertions[0].experiment:"));
    }

    json nested = sc;
    nested["experiments"][1]["horizon"] = -3;
    try {
        (void)parse_scenario(nested);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e.problems(), "experiments[1].horizon:"));
    }

    const Scenario single = parse_scenario(continuous_base());
    EXPECT_EQ(single.name, "base");
    EXPECT_EQ(single.experiments.size(), 1u);
}

TEST(Scenario, AssertionEvaluationAndExitCodes) {
    json sc = {{"name", "pair"},
               {"experiments", {continuous_base()}},
               {"assertions",
                {{{"experiment", "base"}, {"metric", "final_theta_error"}, {"op", "<"}, {"value", 10}},
                 {{"experiment", "base"}, {"metric", "no_such_metric"}, {"op", "<"}, {"value", 10}}}}};
    auto res = run_scenario(parse_scenario(sc));
    ASSERT_EQ(res.outcomes.size(), 2u);
    EXPECT_TRUE(res.outcomes[0].passed);
    EXPECT_FALSE(res.outcomes[1].passed);
    EXPECT_EQ(res.exit_code(), 1);
    sc["assertions"].erase(1);
    EXPECT_EQ(run_scenario(parse_scenario(sc)).exit_code(), 0);

    EXPECT_TRUE(compare(1, "<=", 1));
    EXPECT_FALSE(compare(1, "<", 1));
    EXPECT_TRUE(compare(2, ">", 1));
    EXPECT_TRUE(compare(0, "==", 0));
}

TEST(Scenario, ShippedPresetsParse) {
    const auto names = list_scenarios();
    for (const char* expected : {"pe-convergence", "non-pe-stall", "regret-constant-vs-sqrt", "ht-vs-nesterov",
                                 "robustness-sigma-emod-deadzone", "spr-lyapunov"}) {
        EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end()) << expected;
    }
    for (const auto& n : names) {
        EXPECT_NO_THROW((void)parse_scenario(read_json_file(scenario_dir() / (n + ".json")))) << n;
    }
}

TEST(Scenario, WritesOutputs) {
    const fs::path dir = fs::temp_directory_path() / "adaptopt-test-outputs";
    fs::remove_all(dir);
    const auto res = run_scenario(parse_scenario(continuous_base()));
    write_outputs(res, dir);
    EXPECT_TRUE(fs::exists(dir / "base.csv"));
    EXPECT_TRUE(fs::exists(dir / "base.report.json"));
    EXPECT_TRUE(fs::exists(dir / "base.summary.json"));
    const json report = read_json_file(dir / "base.report.json");
    EXPECT_EQ(report.at("status"), "ok");
    fs::remove_all(dir);
}
