/**
 * @file config.hpp
 * @brief Experiment configuration: JSON schema, parsing, and validation.
 *
 * Parsing never stops at the first problem. Every finding is reported with the
 * path of the offending field (e.g. `law.gamma`), and the whole list is raised
 * as one ConfigError.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adaptopt/error_models.hpp"
#include "adaptopt/laws_continuous.hpp"
#include "adaptopt/laws_discrete.hpp"
#include "adaptopt/losses.hpp"
#include "adaptopt/signals.hpp"

namespace adaptopt::sim {

using json = nlohmann::json;

class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> problems)
        : Error(ErrorKind::config, join(problems)), problems_(std::move(problems)) {}

    [[nodiscard]] const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& ps) {
        std::string out;
        for (const auto& p : ps) out += (out.empty() ? "" : "; ") + p;
        return out;
    }
    std::vector<std::string> problems_;
};

enum class SimulationMode { continuous, discrete };

enum class ModelKind { algebraic, dynamic };

struct ModelSpec {
    ModelKind kind = ModelKind::algebraic;
    Matrix A;
    Vector b;
    Vector c;
    Matrix Lambda;
    Vector e0;
    Vector phi_tilde0;
    std::optional<Matrix> Q_bar;
    double alpha = 0.0;  ///< <= 0 selects the default
};

enum class DiscreteLawKind { gd, rftl, projected_gd, adaptive, nesterov };

inline std::string_view to_string(DiscreteLawKind k) {
    switch (k) {
    case DiscreteLawKind::gd: return "gd";
    case DiscreteLawKind::rftl: return "rftl";
    case DiscreteLawKind::projected_gd: return "projected-gd";
    case DiscreteLawKind::adaptive: return "adaptive";
    case DiscreteLawKind::nesterov: return "nesterov";
    }
    return "unknown";
}

struct DiscreteLawConfig {
    DiscreteLawKind kind = DiscreteLawKind::gd;
    StepSchedule schedule;
    /// gamma0 = D / G from the set diameter and the stream's gradient bound over the set.
    bool ogd_stepsize = false;
    RegularizerSpec regularizer;
    ConvexFeasibleSet set = ConvexFeasibleSet::unbounded();
    AdaptiveParameterization parameterization = AdaptiveParameterization::identity;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 0.0;
    double momentum = 0.5;  ///< Nesterov beta
};

struct AnalysisToggles {
    bool pe = true;
    double pe_window = 2.0 * 3.14159265358979323846;
    bool fit = true;
    double fit_fraction = 0.8;
    bool regret = true;
    std::optional<Matrix> regret_Q;
    bool jensen = true;
    double bound_ratio = 10.0;
    /// Stop once |theta| exceeds bound_ratio (|theta0| + |theta*|), without flagging divergence.
    bool stop_on_bound = false;
};

struct Assertion {
    std::string experiment;  ///< empty inside a single-experiment config
    std::string metric;
    std::string op;
    double value = 0.0;
};

struct ExperimentConfig {
    std::string name = "experiment";
    SimulationMode mode = SimulationMode::continuous;
    double horizon = 10.0;
    double dt = 1e-3;
    std::size_t decimate = 1;
    std::uint64_t seed = 0;
    Vector theta0;
    Vector theta_star;
    std::optional<RegressorSignal> signal;
    std::optional<RegressorSignal> disturbance;
    ModelSpec model;
    LossSpec loss;
    ContinuousLawConfig continuous_law;
    DiscreteLawConfig discrete_law;
    bool unsafe = false;
    AnalysisToggles analysis;
    std::vector<Assertion> assertions;
    json source;  ///< the JSON this config was parsed from

    [[nodiscard]] Eigen::Index parameters() const { return theta_star.size(); }

    [[nodiscard]] std::size_t steps() const {
        if (mode == SimulationMode::discrete) return static_cast<std::size_t>(std::llround(horizon));
        return static_cast<std::size_t>(std::llround(horizon / dt));
    }
};

namespace detail {

class Reader {
public:
    std::vector<std::string> problems;

    void fail(const std::string& path, const std::string& msg) { problems.push_back(path + ": " + msg); }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    const json* field(const json& obj, const std::string& path, const std::string& key, bool required) {
        if (!obj.is_object()) {
            fail(path.empty() ? "<root>" : path, "expected an object");
            return nullptr;
        }
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(join(path, key), "missing required field");
            return nullptr;
        }
        return &*it;
    }

    std::optional<double> number(const json& obj, const std::string& path, const std::string& key, bool required) {
        const json* f = field(obj, path, key, required);
        if (!f) return std::nullopt;
        if (!f->is_number()) {
            fail(join(path, key), "expected a number");
            return std::nullopt;
        }
        return f->get<double>();
    }

    double number_or(const json& obj, const std::string& path, const std::string& key, double fallback) {
        return number(obj, path, key, false).value_or(fallback);
    }

    std::optional<std::string> string(const json& obj, const std::string& path, const std::string& key,
                                      bool required) {
        const json* f = field(obj, path, key, required);
        if (!f) return std::nullopt;
        if (!f->is_string()) {
            fail(join(path, key), "expected a string");
            return std::nullopt;
        }
        return f->get<std::string>();
    }

    bool boolean_or(const json& obj, const std::string& path, const std::string& key, bool fallback) {
        const json* f = field(obj, path, key, false);
        if (!f) return fallback;
        if (!f->is_boolean()) {
            fail(join(path, key), "expected true or false");
            return fallback;
        }
        return f->get<bool>();
    }

    std::optional<Vector> vector(const json& obj, const std::string& path, const std::string& key, bool required) {
        const json* f = field(obj, path, key, required);
        if (!f) return std::nullopt;
        return as_vector(*f, join(path, key));
    }

    std::optional<Vector> as_vector(const json& j, const std::string& path) {
        if (!j.is_array()) {
            fail(path, "expected an array of numbers");
            return std::nullopt;
        }
        Vector v(static_cast<Eigen::Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_number()) {
                fail(path + "[" + std::to_string(i) + "]", "expected a number");
                return std::nullopt;
            }
            v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
        }
        return v;
    }

    /// Row-major nested arrays; a bare number reads as 1 x 1.
    std::optional<Matrix> matrix(const json& obj, const std::string& path, const std::string& key, bool required) {
        const json* f = field(obj, path, key, required);
        if (!f) return std::nullopt;
        const std::string p = join(path, key);
        if (f->is_number()) return Matrix::Constant(1, 1, f->get<double>());
        if (!f->is_array() || f->empty()) {
            fail(p, "expected a nonempty array of rows");
            return std::nullopt;
        }
        const auto rows = f->size();
        std::size_t cols = 0;
        Matrix m;
        for (std::size_t r = 0; r < rows; ++r) {
            auto row = as_vector((*f)[r], p + "[" + std::to_string(r) + "]");
            if (!row) return std::nullopt;
            if (r == 0) {
                cols = static_cast<std::size_t>(row->size());
                m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
            } else if (static_cast<std::size_t>(row->size()) != cols) {
                fail(p, "rows have different lengths");
                return std::nullopt;
            }
            m.row(static_cast<Eigen::Index>(r)) = row->transpose();
        }
        return m;
    }

    template <class Fn>
    void guarded(const std::string& path, Fn&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }
};

inline std::optional<RegressorSignal> parse_signal(Reader& rd, const json& j, const std::string& path,
                                                   std::uint64_t default_seed) {
    const auto kind = rd.string(j, path, "kind", true);
    if (!kind) return std::nullopt;
    std::optional<RegressorSignal> out;
    if (*kind == "constant") {
        auto v = rd.vector(j, path, "value", true);
        if (v) rd.guarded(path, [&] { out = RegressorSignal::constant(*v); });
    } else if (*kind == "sinusoid-bank") {
        auto f = rd.vector(j, path, "frequencies", true);
        if (!f) return std::nullopt;
        auto a = rd.vector(j, path, "amplitudes", false).value_or(Vector::Ones(f->size()));
        auto p = rd.vector(j, path, "phases", false).value_or(Vector::Zero(f->size()));
        rd.guarded(path, [&] { out = RegressorSignal::sinusoid_bank(a, *f, p); });
    } else if (*kind == "rbf-map") {
        auto centers = rd.matrix(j, path, "centers", true);
        auto width = rd.number(j, path, "width", true);
        const json* in = rd.field(j, path, "input", true);
        std::optional<RegressorSignal> input;
        if (in) input = parse_signal(rd, *in, Reader::join(path, "input"), default_seed);
        if (centers && width && input) {
            rd.guarded(path, [&] { out = RegressorSignal::rbf_map(*centers, *width, *input); });
        }
    } else if (*kind == "piecewise-switching") {
        auto levels = rd.matrix(j, path, "levels", true);
        auto period = rd.number(j, path, "period", true);
        if (levels && period) rd.guarded(path, [&] { out = RegressorSignal::piecewise_switching(*levels, *period); });
    } else if (*kind == "seeded-random") {
        auto amps = rd.vector(j, path, "amplitudes", true);
        const double hold = rd.number_or(j, path, "hold", 1.0);
        std::uint64_t seed = default_seed;
        if (const json* s = rd.field(j, path, "seed", false)) {
            if (s->is_number_unsigned() || (s->is_number_integer() && s->get<std::int64_t>() >= 0)) {
                seed = s->get<std::uint64_t>();
            } else {
                rd.fail(Reader::join(path, "seed"), "expected a nonnegative integer");
            }
        }
        if (amps) rd.guarded(path, [&] { out = RegressorSignal::seeded_random(seed, *amps, hold); });
    } else {
        rd.fail(Reader::join(path, "kind"), "unknown signal kind '" + *kind + "'");
    }
    return out;
}

inline std::optional<ConvexFeasibleSet> parse_set(Reader& rd, const json& j, const std::string& path) {
    const auto kind = rd.string(j, path, "kind", true);
    if (!kind) return std::nullopt;
    std::optional<ConvexFeasibleSet> out;
    if (*kind == "box") {
        auto lo = rd.vector(j, path, "lower", true);
        auto hi = rd.vector(j, path, "upper", true);
        if (lo && hi) rd.guarded(path, [&] { out = ConvexFeasibleSet::box(*lo, *hi); });
    } else if (*kind == "ball") {
        auto center = rd.vector(j, path, "center", true);
        auto radius = rd.number(j, path, "radius", true);
        if (center && radius) rd.guarded(path, [&] { out = ConvexFeasibleSet::ball(*center, *radius); });
    } else if (*kind == "unbounded") {
        out = ConvexFeasibleSet::unbounded();
    } else {
        rd.fail(Reader::join(path, "kind"), "unknown set kind '" + *kind + "'");
    }
    return out;
}

inline void parse_continuous_law(Reader& rd, const json& j, const std::string& path, const std::string& kind,
                                 ContinuousLawConfig& law) {
    try {
        law.kind = parse_continuous_law_kind(kind);
    } catch (const Error&) {
        rd.fail(Reader::join(path, "kind"), "'" + kind + "' is not a continuous-time law");
        return;
    }
    law.gamma = rd.number_or(j, path, "gamma", law.gamma);
    law.sigma = rd.number_or(j, path, "sigma", law.sigma);
    if (auto m = rd.string(j, path, "modification", false)) {
        if (*m == "none") law.modification = ModificationKind::none;
        else if (*m == "sigma") law.modification = ModificationKind::sigma;
        else if (*m == "e-modification") law.modification = ModificationKind::e_modification;
        else rd.fail(Reader::join(path, "modification"), "expected none, sigma or e-modification");
    }
    law.deadzone_width = rd.number_or(j, path, "d0", law.deadzone_width);
    law.deadzone_epsilon = rd.number_or(j, path, "epsilon", law.deadzone_epsilon);
    if (auto v = rd.vector(j, path, "theta_max", false)) law.theta_max = *v;
    if (auto v = rd.vector(j, path, "theta_inner", false)) law.theta_inner = *v;
    law.forgetting = rd.number_or(j, path, "forgetting", law.forgetting);
    law.mu = rd.number_or(j, path, "mu", law.mu);
    law.gain_cap = rd.number_or(j, path, "gain_cap", law.gain_cap);
    if (auto m = rd.matrix(j, path, "gain0", false)) law.gain0 = *m;
    law.beta = rd.number_or(j, path, "beta", law.beta);
    if (auto v = rd.vector(j, path, "vartheta0", false)) law.vartheta0 = *v;
}

inline void parse_discrete_law(Reader& rd, const json& j, const std::string& path, const std::string& kind,
                               DiscreteLawConfig& law) {
    if (kind == "gd") law.kind = DiscreteLawKind::gd;
    else if (kind == "rftl") law.kind = DiscreteLawKind::rftl;
    else if (kind == "projected-gd") law.kind = DiscreteLawKind::projected_gd;
    else if (kind == "adaptive") law.kind = DiscreteLawKind::adaptive;
    else if (kind == "nesterov") law.kind = DiscreteLawKind::nesterov;
    else {
        rd.fail(Reader::join(path, "kind"), "'" + kind + "' is not a discrete-time law");
        return;
    }
    if (const json* s = rd.field(j, path, "schedule", false)) {
        const std::string sp = Reader::join(path, "schedule");
        if (auto k = rd.string(*s, sp, "kind", false)) {
            rd.guarded(Reader::join(sp, "kind"), [&] { law.schedule.kind = parse_schedule_kind(*k); });
        }
        if (const json* g = rd.field(*s, sp, "gamma0", false)) {
            if (g->is_string() && g->get<std::string>() == "ogd") law.ogd_stepsize = true;
            else if (g->is_number()) law.schedule.gamma0 = g->get<double>();
            else rd.fail(Reader::join(sp, "gamma0"), "expected a number or \"ogd\"");
        }
    }
    if (const json* r = rd.field(j, path, "regularizer", false)) {
        const std::string rp = Reader::join(path, "regularizer");
        if (auto k = rd.string(*r, rp, "kind", false)) {
            if (*k == "l2") law.regularizer.kind = RegularizerKind::l2;
            else if (*k == "l1") law.regularizer.kind = RegularizerKind::l1;
            else rd.fail(Reader::join(rp, "kind"), "expected l2 or l1");
        }
        law.regularizer.sigma = rd.number_or(*r, rp, "sigma", law.regularizer.sigma);
    }
    if (const json* s = rd.field(j, path, "set", false)) {
        if (auto set = parse_set(rd, *s, Reader::join(path, "set"))) law.set = *set;
    }
    if (auto p = rd.string(j, path, "parameterization", false)) {
        rd.guarded(Reader::join(path, "parameterization"), [&] { law.parameterization = parse_parameterization(*p); });
    }
    law.beta1 = rd.number_or(j, path, "beta1", law.beta1);
    law.beta2 = rd.number_or(j, path, "beta2", law.beta2);
    law.epsilon = rd.number_or(j, path, "epsilon", law.epsilon);
    law.momentum = rd.number_or(j, path, "beta", law.momentum);
}

inline bool is_discrete_law_name(const std::string& k) {
    return k == "gd" || k == "rftl" || k == "projected-gd" || k == "adaptive" || k == "nesterov";
}

inline std::optional<Assertion> parse_assertion(Reader& rd, const json& j, const std::string& path) {
    Assertion a;
    a.experiment = rd.string(j, path, "experiment", false).value_or("");
    auto metric = rd.string(j, path, "metric", true);
    auto op = rd.string(j, path, "op", true);
    auto value = rd.number(j, path, "value", true);
    if (!metric || !op || !value) return std::nullopt;
    if (*op != "<" && *op != "<=" && *op != ">" && *op != ">=" && *op != "==") {
        rd.fail(Reader::join(path, "op"), "expected one of < <= > >= ==");
        return std::nullopt;
    }
    a.metric = *metric;
    a.op = *op;
    a.value = *value;
    return a;
}

}  // namespace detail

inline std::vector<Assertion> parse_assertions(detail::Reader& rd, const json& j, const std::string& path) {
    std::vector<Assertion> out;
    const json* list = rd.field(j, path, "assertions", false);
    if (!list) return out;
    if (!list->is_array()) {
        rd.fail(detail::Reader::join(path, "assertions"), "expected an array");
        return out;
    }
    for (std::size_t i = 0; i < list->size(); ++i) {
        if (auto a = detail::parse_assertion(rd, (*list)[i],
                                             detail::Reader::join(path, "assertions") + "[" + std::to_string(i) + "]")) {
            out.push_back(*a);
        }
    }
    return out;
}

/// Parses and validates one experiment. `path` prefixes every reported field.
inline ExperimentConfig parse_experiment(const json& j, const std::string& path = "") {
    detail::Reader rd;
    ExperimentConfig cfg;
    cfg.source = j;
    using detail::Reader;

    if (!j.is_object()) throw ConfigError({(path.empty() ? "<root>" : path) + ": expected an object"});

    cfg.name = rd.string(j, path, "name", false).value_or(cfg.name);
    if (auto m = rd.string(j, path, "mode", true)) {
        if (*m == "continuous") cfg.mode = SimulationMode::continuous;
        else if (*m == "discrete") cfg.mode = SimulationMode::discrete;
        else rd.fail(Reader::join(path, "mode"), "expected continuous or discrete");
    }
    cfg.horizon = rd.number(j, path, "horizon", true).value_or(cfg.horizon);
    cfg.dt = rd.number_or(j, path, "dt", cfg.dt);
    if (const json* d = rd.field(j, path, "decimate", false)) {
        if (d->is_number_integer() && d->get<std::int64_t>() >= 1) cfg.decimate = d->get<std::size_t>();
        else rd.fail(Reader::join(path, "decimate"), "expected a positive integer");
    }
    if (const json* s = rd.field(j, path, "seed", false)) {
        if (s->is_number_integer() && s->get<std::int64_t>() >= 0) cfg.seed = s->get<std::uint64_t>();
        else if (s->is_number_unsigned()) cfg.seed = s->get<std::uint64_t>();
        else rd.fail(Reader::join(path, "seed"), "expected a nonnegative integer");
    }
    if (auto v = rd.vector(j, path, "theta_star", true)) cfg.theta_star = *v;
    cfg.theta0 = rd.vector(j, path, "theta0", false).value_or(Vector::Zero(cfg.theta_star.size()));
    cfg.unsafe = rd.boolean_or(j, path, "unsafe", false);

    if (const json* s = rd.field(j, path, "signal", true)) {
        cfg.signal = detail::parse_signal(rd, *s, Reader::join(path, "signal"), cfg.seed);
    }
    if (const json* s = rd.field(j, path, "disturbance", false)) {
        cfg.disturbance = detail::parse_signal(rd, *s, Reader::join(path, "disturbance"), cfg.seed + 1);
        if (cfg.disturbance && cfg.disturbance->dimension() != 1) {
            rd.fail(Reader::join(path, "disturbance"), "disturbance must be one-dimensional");
        }
    }

    if (const json* mj = rd.field(j, path, "model", false)) {
        const std::string mp = Reader::join(path, "model");
        const auto kind = rd.string(*mj, mp, "kind", true).value_or("algebraic");
        if (kind == "algebraic") {
            cfg.model.kind = ModelKind::algebraic;
        } else if (kind == "dynamic") {
            cfg.model.kind = ModelKind::dynamic;
            if (auto a = rd.matrix(*mj, mp, "A", true)) cfg.model.A = *a;
            if (auto b = rd.vector(*mj, mp, "b", true)) cfg.model.b = *b;
            if (auto c = rd.vector(*mj, mp, "c", true)) cfg.model.c = *c;
            if (auto l = rd.matrix(*mj, mp, "Lambda", false)) {
                cfg.model.Lambda = *l;
            } else {
                cfg.model.Lambda = -Matrix::Identity(cfg.theta_star.size(), cfg.theta_star.size());
            }
            cfg.model.e0 = rd.vector(*mj, mp, "e0", false).value_or(Vector::Zero(cfg.model.A.rows()));
            cfg.model.phi_tilde0 =
                rd.vector(*mj, mp, "phi_tilde0", false).value_or(Vector::Zero(cfg.theta_star.size()));
            cfg.model.Q_bar = rd.matrix(*mj, mp, "Q_bar", false);
            cfg.model.alpha = rd.number_or(*mj, mp, "alpha", 0.0);
        } else {
            rd.fail(Reader::join(mp, "kind"), "expected algebraic or dynamic");
        }
    }

    if (const json* lj = rd.field(j, path, "loss", false)) {
        const std::string lp = Reader::join(path, "loss");
        if (auto k = rd.string(*lj, lp, "kind", true)) {
            rd.guarded(Reader::join(lp, "kind"), [&] { cfg.loss.kind = parse_loss_kind(*k); });
        }
        cfg.loss.p = static_cast<int>(rd.number_or(*lj, lp, "p", 2));
        rd.guarded(lp, [&] { cfg.loss.validate(); });
    }

    if (const json* lj = rd.field(j, path, "law", true)) {
        const std::string lp = Reader::join(path, "law");
        if (auto k = rd.string(*lj, lp, "kind", true)) {
            const bool discrete_name = detail::is_discrete_law_name(*k);
            if (cfg.mode == SimulationMode::continuous && discrete_name) {
                rd.fail(Reader::join(lp, "kind"), "'" + *k + "' is a discrete-time law but mode is continuous");
            } else if (cfg.mode == SimulationMode::discrete && !discrete_name) {
                rd.fail(Reader::join(lp, "kind"), "'" + *k + "' is not a discrete-time law but mode is discrete");
            } else if (cfg.mode == SimulationMode::continuous) {
                detail::parse_continuous_law(rd, *lj, lp, *k, cfg.continuous_law);
            } else {
                detail::parse_discrete_law(rd, *lj, lp, *k, cfg.discrete_law);
            }
        }
    }

    if (const json* aj = rd.field(j, path, "analysis", false)) {
        const std::string ap = Reader::join(path, "analysis");
        auto& a = cfg.analysis;
        a.pe = rd.boolean_or(*aj, ap, "pe", a.pe);
        a.pe_window = rd.number_or(*aj, ap, "pe_window", a.pe_window);
        a.fit = rd.boolean_or(*aj, ap, "fit", a.fit);
        a.fit_fraction = rd.number_or(*aj, ap, "fit_fraction", a.fit_fraction);
        a.regret = rd.boolean_or(*aj, ap, "regret", a.regret);
        a.regret_Q = rd.matrix(*aj, ap, "regret_Q", false);
        a.jensen = rd.boolean_or(*aj, ap, "jensen", a.jensen);
        a.bound_ratio = rd.number_or(*aj, ap, "bound_ratio", a.bound_ratio);
        a.stop_on_bound = rd.boolean_or(*aj, ap, "stop_on_bound", a.stop_on_bound);
    }
    cfg.assertions = parse_assertions(rd, j, path);

    // Cross-field invariants.
    const auto n = cfg.theta_star.size();
    if (n == 0 && rd.problems.empty()) rd.fail(Reader::join(path, "theta_star"), "must be nonempty");
    if (cfg.theta0.size() != n) rd.fail(Reader::join(path, "theta0"), "length differs from theta_star");
    if (!cfg.theta0.allFinite() || !cfg.theta_star.allFinite()) rd.fail(path.empty() ? "<root>" : path, "non-finite parameter");
    if (cfg.signal && cfg.signal->dimension() != n) {
        rd.fail(Reader::join(path, "signal"), "dimension " + std::to_string(cfg.signal->dimension()) +
                                                  " differs from theta_star (" + std::to_string(n) + ")");
    }
    if (!(cfg.horizon > 0.0)) rd.fail(Reader::join(path, "horizon"), "must be positive");
    if (cfg.mode == SimulationMode::continuous) {
        if (!(cfg.dt > 0.0)) rd.fail(Reader::join(path, "dt"), "must be positive");
        else if (cfg.dt > cfg.horizon / 100.0) rd.fail(Reader::join(path, "dt"), "must not exceed horizon / 100");
        rd.guarded(Reader::join(path, "law"), [&] { cfg.continuous_law.validate(n); });
        if (cfg.continuous_law.kind == ContinuousLawKind::time_varying_gain && cfg.model.kind == ModelKind::dynamic &&
            !cfg.unsafe) {
            rd.fail(Reader::join(path, "law.kind"),
                    "time-varying-gain with the dynamic error model is not certified; set unsafe = true to run it");
        }
        if (cfg.continuous_law.kind == ContinuousLawKind::higher_order_tuner &&
            cfg.continuous_law.vartheta0.size() == 0) {
            cfg.continuous_law.vartheta0 = cfg.theta0;
        }
    } else {
        if (cfg.model.kind == ModelKind::dynamic) {
            rd.fail(Reader::join(path, "model.kind"), "the dynamic error model needs continuous mode");
        }
        auto& law = cfg.discrete_law;
        if (!law.ogd_stepsize) rd.guarded(Reader::join(path, "law.schedule"), [&] { law.schedule.validate(); });
        if (law.set.kind() != ConvexFeasibleSet::Kind::unbounded) {
            const auto dim = law.set.kind() == ConvexFeasibleSet::Kind::box ? law.set.lower().size()
                                                                            : law.set.center().size();
            if (dim != n) rd.fail(Reader::join(path, "law.set"), "dimension differs from theta_star");
        }
        if (law.ogd_stepsize && law.set.kind() == ConvexFeasibleSet::Kind::unbounded) {
            rd.fail(Reader::join(path, "law.schedule.gamma0"), "\"ogd\" needs a bounded set");
        }
        if (law.ogd_stepsize && cfg.loss.kind != LossKind::squared) {
            rd.fail(Reader::join(path, "law.schedule.gamma0"), "\"ogd\" needs the squared loss");
        }
        if (law.kind == DiscreteLawKind::adaptive) {
            rd.guarded(Reader::join(path, "law"), [&] {
                (void)AdaptiveStepState::make(law.parameterization, n, law.beta1, law.beta2, law.epsilon);
            });
        }
        if (law.regularizer.sigma < 0.0) rd.fail(Reader::join(path, "law.regularizer.sigma"), "must be nonnegative");
        if (law.momentum < 0.0) rd.fail(Reader::join(path, "law.beta"), "must be nonnegative");
    }
    if (cfg.model.kind == ModelKind::dynamic) {
        if (cfg.loss.kind != LossKind::squared) {
            rd.fail(Reader::join(path, "loss.kind"), "the dynamic error model uses the squared output error");
        }
        const auto& m = cfg.model;
        if (m.A.rows() != m.A.cols() || m.b.size() != m.A.rows() || m.c.size() != m.A.rows()) {
            rd.fail(Reader::join(path, "model"), "A, b, c shapes disagree");
        } else if (m.e0.size() != m.A.rows()) {
            rd.fail(Reader::join(path, "model.e0"), "length differs from A");
        }
        if (m.Lambda.rows() != n || m.Lambda.cols() != n) rd.fail(Reader::join(path, "model.Lambda"), "must be N x N");
        if (m.phi_tilde0.size() != n) rd.fail(Reader::join(path, "model.phi_tilde0"), "length differs from theta_star");
        if (rd.problems.empty()) {
            rd.guarded(Reader::join(path, "model"), [&] {
                DynamicErrorModel probe(m.A, m.b, m.c, m.Lambda, cfg.theta_star, m.Q_bar);
                (void)probe;
            });
        }
    }
    if (cfg.analysis.pe && !(cfg.analysis.pe_window > 0.0)) {
        rd.fail(Reader::join(path, "analysis.pe_window"), "must be positive");
    }
    if (!(cfg.analysis.fit_fraction > 0.0 && cfg.analysis.fit_fraction <= 1.0)) {
        rd.fail(Reader::join(path, "analysis.fit_fraction"), "must lie in (0, 1]");
    }

    if (!rd.problems.empty()) throw ConfigError(rd.problems);
    return cfg;
}

}  // namespace adaptopt::sim
