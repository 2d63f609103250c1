/**
 * @file experiment.hpp
 * @brief Runs one configured experiment and analyses its trajectory.
 *
 * Continuous runs integrate the joint state [theta; law auxiliaries; e; phi_tilde] with
 * fixed-step RK4. Discrete runs iterate k = 1..K and log step k at t = k.
 */
#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adaptopt/analysis.hpp"
#include "adaptopt/sim/config.hpp"
#include "adaptopt/sim/integrator.hpp"
#include "adaptopt/sim/trajectory.hpp"

namespace adaptopt::sim {

enum class RunStatus { ok, diverged };

inline std::string_view to_string(RunStatus s) { return s == RunStatus::ok ? "ok" : "diverged"; }

struct AnalysisReport {
    std::map<std::string, double> metrics;
    std::vector<std::string> notes;

    void set(const std::string& key, double value) { metrics[key] = value; }
};

struct RunResult {
    std::string name;
    RunStatus status = RunStatus::ok;
    std::string message;
    Trajectory trajectory;
    AnalysisReport report;
};

namespace detail {

inline double label_for(const LossSpec& loss, double raw) {
    if (!loss.is_classification()) return raw;
    return raw >= 0.0 ? 1.0 : -1.0;
}

/// Measured output at time t: y = theta*'phi + d(t), or its sign for classification losses.
inline double target(const ExperimentConfig& cfg, const Vector& phi, double t) {
    double y = cfg.theta_star.dot(phi);
    if (cfg.disturbance) y += cfg.disturbance->evaluate(t)(0);
    return label_for(cfg.loss, y);
}

inline bool is_constant_cost(const ExperimentConfig& cfg) {
    return cfg.signal && cfg.signal->kind() == SignalKind::constant && !cfg.disturbance;
}

struct BoundMonitor {
    double scale = 1.0;
    double ratio = 10.0;
    double max_ratio = 0.0;
    double first_exceed = -1.0;

    bool update(const Vector& theta, double t) {
        const double r = theta.norm() / scale;
        max_ratio = std::max(max_ratio, r);
        if (r > ratio && first_exceed < 0.0) {
            first_exceed = t;
            return true;
        }
        return false;
    }
};

inline void pe_and_fit(const ExperimentConfig& cfg, RunResult& res) {
    auto& rep = res.report;
    if (cfg.analysis.pe && cfg.signal) {
        PEWindowConfig pw;
        pw.window_length = cfg.analysis.pe_window;
        const double span = cfg.mode == SimulationMode::continuous ? cfg.horizon : cfg.horizon - 1.0;
        pw.quadrature_step = cfg.analysis.pe_window / 1000.0;
        try {
            if (span >= pw.window_length) {
                const double t0 = cfg.mode == SimulationMode::continuous ? 0.0 : 1.0;
                rep.set("pe_level", pe_level(*cfg.signal, t0, t0 + span, pw));
            } else {
                rep.notes.push_back("pe: horizon shorter than the PE window");
            }
        } catch (const Error& e) {
            rep.notes.push_back(std::string("pe: ") + e.what());
        }
    }
    if (cfg.analysis.fit && res.trajectory.records.size() >= 2) {
        try {
            const auto fit = convergence_fit(res.trajectory.times(), res.trajectory.theta_errors(),
                                             cfg.analysis.fit_fraction);
            rep.set("fit_slope", fit.slope);
            rep.set("fit_r2", fit.r_squared);
        } catch (const Error& e) {
            rep.notes.push_back(std::string("fit: ") + e.what());
        }
    }
}

inline void jensen_metrics(const ExperimentConfig& cfg, const std::vector<Vector>& iterates,
                           const ConvexFeasibleSet& set, AnalysisReport& rep) {
    if (!cfg.analysis.jensen || !is_constant_cost(cfg) || iterates.empty()) return;
    const Vector phi = cfg.signal->evaluate(0.0);
    const double y = target(cfg, phi, 0.0);
    try {
        JensenGap gap;
        if (cfg.loss.kind == LossKind::squared) {
            gap = jensen_gap(QuadraticCost::regression(phi, y), iterates, set);
        } else {
            const CostFunction cost = [&](const Vector& th) { return loss_value(cfg.loss, th, phi, y); };
            if (set.kind() == ConvexFeasibleSet::Kind::unbounded) {
                rep.notes.push_back("jensen: non-quadratic cost needs a bounded set for the comparator");
                return;
            }
            gap = jensen_gap(cost, iterates, adaptopt::detail::minimize_by_grid(cost, set, phi.size()));
        }
        rep.set("jensen_lhs", gap.lhs);
        rep.set("jensen_rhs", gap.rhs);
        rep.set("jensen_holds", gap.holds() ? 1.0 : 0.0);
    } catch (const Error& e) {
        rep.notes.push_back(std::string("jensen: ") + e.what());
    }
}

inline void common_metrics(const ExperimentConfig& cfg, const BoundMonitor& bound, RunResult& res) {
    auto& rep = res.report;
    rep.set("steps_logged", static_cast<double>(res.trajectory.records.size()));
    rep.set("max_theta_norm_ratio", bound.max_ratio);
    rep.set("exceeded_bound", bound.first_exceed >= 0.0 ? 1.0 : 0.0);
    rep.set("first_exceed", bound.first_exceed);
    if (!res.trajectory.records.empty()) {
        const auto& last = res.trajectory.records.back();
        rep.set("final_t", last.t);
        rep.set("final_theta_error", last.theta_error);
        rep.set("final_abs_ey", std::abs(last.e_y));
        rep.set("final_theta_norm", last.theta.norm());
        for (Eigen::Index i = 0; i < last.theta.size(); ++i) rep.set("final_theta_" + std::to_string(i), last.theta(i));
    }
    (void)cfg;
}

// ---------------------------------------------------------------------------
// Continuous time
// ---------------------------------------------------------------------------

struct ContinuousRun {
    Trajectory trajectory;
    TimeSeries error_signal;  ///< e (dynamic) or e_y (algebraic) on the logging grid
    std::vector<Vector> iterates;
    RunStatus status = RunStatus::ok;
    std::string message;
    double max_v_increase = -std::numeric_limits<double>::infinity();
    double max_v_excess = -std::numeric_limits<double>::infinity();
    double max_over_bound = -std::numeric_limits<double>::infinity();
    double max_gain_norm = 0.0;
    double dissipation = 0.0;  ///< int q dt - int delta dt
    double v0 = 0.0;
    BoundMonitor bound;
};

inline ContinuousRun simulate_continuous(const ExperimentConfig& cfg, const ContinuousLawConfig& law_cfg,
                                         const Vector& theta0) {
    const auto n = cfg.parameters();
    const ContinuousLaw law(law_cfg, n);
    std::optional<DynamicErrorModel> model;
    LyapunovSpec vspec = LyapunovSpec::algebraic(law_cfg.gamma);
    if (cfg.model.kind == ModelKind::dynamic) {
        model.emplace(cfg.model.A, cfg.model.b, cfg.model.c, cfg.model.Lambda, cfg.theta_star, cfg.model.Q_bar);
        vspec = LyapunovSpec::for_model(law_cfg.gamma, *model, cfg.model.alpha);
    }
    const Eigen::Index na = law.aux_size();
    const Eigen::Index m = model ? model->state_dimension() : 0;
    const Eigen::Index nf = model ? n : 0;
    const Eigen::Index ia = n, ie = n + na, ifl = n + na + m;

    Vector x(n + na + m + nf);
    x.segment(0, n) = theta0;
    if (na > 0) x.segment(ia, na) = law.initial_aux(theta0);
    if (model) {
        x.segment(ie, m) = cfg.model.e0;
        x.segment(ifl, nf) = cfg.model.phi_tilde0;
    }

    struct Eval {
        Vector phi;      ///< regressor the law sees
        double e_y = 0.0;
        Vector grad;
        double y = 0.0;
        DynamicDerivatives dyn;
    };
    auto evaluate = [&](double t, const Vector& s) {
        Eval ev;
        const Vector theta = s.segment(0, n);
        const Vector phi = cfg.signal->evaluate(t);
        if (model) {
            DynamicState st{s.segment(ie, m), s.segment(ifl, nf)};
            ev.dyn = dynamic_derivatives(*model, theta, phi, st);
            if (cfg.disturbance) ev.dyn.e_dot += model->b() * cfg.disturbance->evaluate(t)(0);
            ev.phi = ev.dyn.phi_hat;
            ev.e_y = ev.dyn.e_y;
            ev.grad = ev.phi * ev.e_y;
        } else {
            ev.phi = phi;
            ev.y = target(cfg, phi, t);
            ev.e_y = theta.dot(phi) - ev.y;
            ev.grad = loss_grad(cfg.loss, theta, phi, ev.y);
        }
        return ev;
    };
    auto field = [&](double t, const Vector& s) {
        Vector ds = Vector::Zero(s.size());
        const Eval ev = evaluate(t, s);
        Vector aux_dot = Vector::Zero(na);
        law.derivative(s.segment(0, n), s.segment(ia, na), ev.grad, ev.phi, ev.e_y, ds.segment(0, n), aux_dot);
        if (na > 0) ds.segment(ia, na) = aux_dot;
        if (model) {
            ds.segment(ie, m) = ev.dyn.e_dot;
            ds.segment(ifl, nf) = ev.dyn.phi_tilde_dot;
        }
        return ds;
    };

    ContinuousRun run;
    auto& traj = run.trajectory;
    traj.parameters = n;
    traj.model_states = m;
    traj.has_gain = law_cfg.kind == ContinuousLawKind::time_varying_gain;
    traj.has_vartheta = law_cfg.kind == ContinuousLawKind::higher_order_tuner;
    run.bound.scale = std::max(theta0.norm() + cfg.theta_star.norm(), 1e-300);
    run.bound.ratio = cfg.analysis.bound_ratio;

    const Matrix q_model = model ? model->certificate().Q : Matrix::Constant(1, 1, 2.0);
    auto lyap = [&](const Vector& s) {
        const Vector tt = s.segment(0, n) - cfg.theta_star;
        return model ? lyapunov_value(vspec, tt, s.segment(ie, m), s.segment(ifl, nf)) : lyapunov_value(vspec, tt);
    };
    struct Sample {
        double v, delta, q;
        Eval ev;
    };
    auto sample = [&](double t, const Vector& s) {
        Sample sm{lyap(s), 0.0, 0.0, evaluate(t, s)};
        if (model) {
            const Vector e = s.segment(ie, m);
            sm.delta = model->delta(e, s.segment(ifl, nf));
            sm.q = e.dot(q_model * e);
        } else {
            sm.q = 2.0 * sm.ev.e_y * sm.ev.e_y;
        }
        return sm;
    };
    auto log = [&](double t, const Vector& s, const Sample& sm) {
        TrajectoryRecord r;
        r.t = t;
        r.theta = s.segment(0, n);
        r.e_y = sm.ev.e_y;
        r.theta_error = (r.theta - cfg.theta_star).norm();
        r.lyapunov = sm.v;
        r.cost = model ? 0.5 * sm.ev.e_y * sm.ev.e_y : loss_value(cfg.loss, r.theta, sm.ev.phi, sm.ev.y);
        if (model) {
            r.e = s.segment(ie, m);
            r.phi_tilde = s.segment(ifl, nf);
            r.delta = sm.delta;
            run.error_signal.push_back(t, r.e);
        } else {
            run.error_signal.push_back(t, Vector::Constant(1, sm.ev.e_y));
        }
        if (traj.has_gain) r.gain_norm = law.gain_of(s.segment(ia, na)).norm();
        if (traj.has_vartheta) r.vartheta = s.segment(ia, na);
        run.iterates.push_back(r.theta);
        traj.records.push_back(std::move(r));
    };
    auto monitor = [&](double t, const Vector& s) {
        const Vector theta = s.segment(0, n);
        if (law_cfg.kind == ContinuousLawKind::projection) {
            run.max_over_bound =
                std::max(run.max_over_bound, (theta.cwiseAbs() - law_cfg.theta_max).maxCoeff());
        }
        if (traj.has_gain) run.max_gain_norm = std::max(run.max_gain_norm, law.gain_of(s.segment(ia, na)).norm());
        return run.bound.update(theta, t);
    };

    const std::size_t steps = cfg.steps();
    double t = 0.0;
    Sample cur = sample(t, x);
    run.v0 = cur.v;
    monitor(t, x);
    log(t, x, cur);
    try {
        for (std::size_t k = 1; k <= steps; ++k) {
            Vector next = rk4_step(field, x, t, cfg.dt);
            if (na > 0) law.post_step(next.segment(ia, na));
            if (!next.allFinite()) throw Error(ErrorKind::diverged, "non-finite state at step " + std::to_string(k));
            const double tn = static_cast<double>(k) * cfg.dt;
            Sample nx = sample(tn, next);
            if (!std::isfinite(nx.v)) throw Error(ErrorKind::diverged, "non-finite Lyapunov value at t = " + std::to_string(tn));
            run.max_v_increase = std::max(run.max_v_increase, nx.v - cur.v);
            run.max_v_excess = std::max(run.max_v_excess, nx.v - cur.v - std::abs(cur.delta) * cfg.dt);
            run.dissipation += 0.5 * cfg.dt * ((cur.q - cur.delta) + (nx.q - nx.delta));
            x = std::move(next);
            t = tn;
            cur = std::move(nx);
            const bool exceeded = monitor(t, x);
            if (k % cfg.decimate == 0 || k == steps || (exceeded && cfg.analysis.stop_on_bound)) log(t, x, cur);
            if (exceeded && cfg.analysis.stop_on_bound) break;
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::diverged) throw;
        run.status = RunStatus::diverged;
        run.message = e.what();
    }
    return run;
}

inline RunResult run_continuous(const ExperimentConfig& cfg) {
    RunResult res;
    res.name = cfg.name;
    ContinuousRun run = simulate_continuous(cfg, cfg.continuous_law, cfg.theta0);
    res.status = run.status;
    res.message = run.message;
    res.trajectory = std::move(run.trajectory);
    auto& rep = res.report;
    common_metrics(cfg, run.bound, res);
    if (res.trajectory.records.size() >= 2) {
        rep.set("lyapunov_max_increase", run.max_v_increase);
        if (cfg.model.kind == ModelKind::dynamic) rep.set("lyapunov_max_excess_delta", run.max_v_excess);
    }
    rep.set("lyapunov_initial", run.v0);
    rep.set("lyapunov_dissipation", run.dissipation);
    if (run.v0 > 0.0) rep.set("lyapunov_dissipation_ratio", run.dissipation / run.v0);
    if (cfg.continuous_law.kind == ContinuousLawKind::gradient_flow && !cfg.disturbance && run.dissipation > run.v0 * (1.0 + 1e-3) + 1e-9) {
        rep.notes.push_back("lyapunov: dissipated energy exceeds V(t0)");
    }
    if (cfg.continuous_law.kind == ContinuousLawKind::projection) {
        rep.set("max_abs_theta_over_bound", run.max_over_bound);
    }
    if (cfg.continuous_law.kind == ContinuousLawKind::time_varying_gain) rep.set("max_gain_norm", run.max_gain_norm);
    if (cfg.model.kind == ModelKind::dynamic && !res.trajectory.records.empty()) {
        const auto& last = res.trajectory.records.back();
        rep.set("final_e_norm", last.e.norm());
        rep.set("final_phi_tilde_norm", last.phi_tilde.norm());
        DynamicErrorModel model(cfg.model.A, cfg.model.b, cfg.model.c, cfg.model.Lambda, cfg.theta_star,
                                cfg.model.Q_bar);
        const auto spec = LyapunovSpec::for_model(cfg.continuous_law.gamma, model, cfg.model.alpha);
        rep.set("alpha", spec.dynamic->alpha);
        rep.set("alpha_bound", spec.alpha_bound());
    }
    pe_and_fit(cfg, res);
    jensen_metrics(cfg, run.iterates, ConvexFeasibleSet::unbounded(), rep);

    if (cfg.analysis.regret && res.status == RunStatus::ok &&
        cfg.continuous_law.kind != ContinuousLawKind::frozen) {
        ContinuousLawConfig frozen = cfg.continuous_law;
        frozen.kind = ContinuousLawKind::frozen;
        ExperimentConfig base_cfg = cfg;
        base_cfg.analysis.stop_on_bound = false;
        ContinuousRun base = simulate_continuous(base_cfg, frozen, cfg.theta_star);
        const auto m = run.error_signal.x.front().size();
        const Matrix Q = cfg.analysis.regret_Q.value_or(Matrix::Identity(m, m));
        if (base.status != RunStatus::ok) {
            rep.notes.push_back("regret: baseline run diverged");
        } else if (Q.rows() != m || Q.cols() != m) {
            rep.notes.push_back("regret: regret_Q has the wrong size");
        } else if (base.error_signal.size() != run.error_signal.size()) {
            rep.notes.push_back("regret: baseline grid differs (run stopped early)");
        } else {
            const auto curve = continuous_regret(run.error_signal, Q, base.error_signal);
            const double T = run.error_signal.t.back();
            const double half = value_at(run.error_signal.t, curve, 0.5 * T);
            rep.set("regret_final", curve.back());
            rep.set("regret_half", half);
            if (half > 0.0) rep.set("regret_plateau_ratio", (curve.back() - half) / half);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Discrete time
// ---------------------------------------------------------------------------

/// sup over the set of |grad C_k| for the squared loss, maximized over k = 1..K.
inline double stream_gradient_bound(const ExperimentConfig& cfg, const ConvexFeasibleSet& set, std::size_t K) {
    double G = 0.0;
    for (std::size_t k = 1; k <= K; ++k) {
        const double t = static_cast<double>(k);
        const Vector phi = cfg.signal->evaluate(t);
        const double y = target(cfg, phi, t);
        double worst = 0.0;
        if (set.kind() == ConvexFeasibleSet::Kind::ball) {
            worst = std::abs(set.center().dot(phi) - y) + set.radius() * phi.norm();
        } else {
            const Vector mid = 0.5 * (set.lower() + set.upper());
            const Vector half = 0.5 * (set.upper() - set.lower());
            worst = std::abs(mid.dot(phi) - y) + half.dot(phi.cwiseAbs());
        }
        G = std::max(G, phi.norm() * worst);
    }
    return G;
}

inline RunResult run_discrete(const ExperimentConfig& cfg) {
    RunResult res;
    res.name = cfg.name;
    const auto n = cfg.parameters();
    const auto& law = cfg.discrete_law;
    const std::size_t K = cfg.steps();
    StepSchedule schedule = law.schedule;
    auto& rep = res.report;
    if (law.ogd_stepsize) {
        const double G = stream_gradient_bound(cfg, law.set, K);
        if (!(G > 0.0)) throw ConfigError({"law.schedule.gamma0: the stream has zero gradient bound"});
        schedule.gamma0 = law.set.diameter() / G;
        rep.set("ogd_G_apriori", G);
        rep.set("gamma0", schedule.gamma0);
    }
    const bool projected = law.kind == DiscreteLawKind::projected_gd || law.kind == DiscreteLawKind::adaptive;
    const ConvexFeasibleSet comparator_set = projected ? law.set : ConvexFeasibleSet::unbounded();

    auto& traj = res.trajectory;
    traj.parameters = n;
    traj.has_moments = law.kind == DiscreteLawKind::adaptive;

    BoundMonitor bound;
    bound.scale = std::max(cfg.theta0.norm() + cfg.theta_star.norm(), 1e-300);
    bound.ratio = cfg.analysis.bound_ratio;

    AdaptiveStepState astate;
    if (traj.has_moments) astate = AdaptiveStepState::make(law.parameterization, n, law.beta1, law.beta2, law.epsilon);
    NesterovState nstate{cfg.theta0, cfg.theta0, cfg.theta0};

    const bool quadratic = cfg.loss.kind == LossKind::squared;
    QuadraticCost total{Matrix::Zero(n, n), Vector::Zero(n), 0.0};
    double alg_total = 0.0;
    double G_obs = 0.0;
    double worst_bound_ratio = 0.0;
    double min_regret_increment = std::numeric_limits<double>::infinity();
    double prev_regret = 0.0;
    bool have_prev = false;
    bool track_regret = cfg.analysis.regret && quadratic;
    std::vector<Vector> iterates;
    std::vector<CostFunction> costs;
    std::vector<QuadraticCost> qcosts;
    const double gamma_v = schedule.gamma0;
    double max_outside = 0.0;

    Vector theta = cfg.theta0;
    bool stopped = false;
    try {
        for (std::size_t k = 1; k <= K && !stopped; ++k) {
            const double t = static_cast<double>(k);
            const Vector phi = cfg.signal->evaluate(t);
            const double y = target(cfg, phi, t);
            const double cost = loss_value(cfg.loss, theta, phi, y);
            const Vector g = loss_grad(cfg.loss, theta, phi, y);
            G_obs = std::max(G_obs, g.norm());
            alg_total += cost;
            iterates.push_back(theta);
            if (cfg.analysis.regret && !quadratic) {
                costs.push_back([loss = cfg.loss, phi, y](const Vector& th) { return loss_value(loss, th, phi, y); });
            }
            if (projected) max_outside = std::max(max_outside, law.set.contains(theta) ? 0.0 : 1.0);

            TrajectoryRecord r;
            r.t = t;
            r.theta = theta;
            r.e_y = theta.dot(phi) - y;
            r.theta_error = (theta - cfg.theta_star).norm();
            r.lyapunov = (theta - cfg.theta_star).squaredNorm() / gamma_v;
            r.cost = cost;

            Vector next;
            switch (law.kind) {
            case DiscreteLawKind::gd: next = gd_step(theta, g, schedule, static_cast<long>(k)); break;
            case DiscreteLawKind::rftl:
                next = rftl_step(theta, g, law.regularizer, schedule, static_cast<long>(k));
                break;
            case DiscreteLawKind::projected_gd:
                next = projected_gd_step(theta, g, schedule, static_cast<long>(k), law.set);
                break;
            case DiscreteLawKind::adaptive: {
                auto step = adaptive_step(std::move(astate), theta, g, schedule, static_cast<long>(k), law.set);
                next = std::move(step.theta);
                astate = std::move(step.state);
                r.moment = astate.m;
                r.v_diag = astate.v_diag;
                break;
            }
            case DiscreteLawKind::nesterov: {
                const GradientEvaluator grad_at = [&](const Vector& th) { return loss_grad(cfg.loss, th, phi, y); };
                nstate = nesterov_step(nstate, grad_at, schedule.at(static_cast<long>(k)), law.momentum);
                next = nstate.theta;
                break;
            }
            }

            if (track_regret) {
                total += QuadraticCost::regression(phi, y);
                const double reg = alg_total - total.value(minimize_quadratic(total, comparator_set));
                if (have_prev) min_regret_increment = std::min(min_regret_increment, reg - prev_regret);
                prev_regret = reg;
                have_prev = true;
                if (law.ogd_stepsize || law.set.kind() != ConvexFeasibleSet::Kind::unbounded) {
                    const double denom = 1.5 * G_obs * law.set.diameter() * std::sqrt(t);
                    if (denom > 0.0 && std::isfinite(denom)) worst_bound_ratio = std::max(worst_bound_ratio, reg / denom);
                }
                if (k % cfg.decimate == 0) rep.set("regret_final", reg);
            }
            if (k % cfg.decimate == 0 || k == K) traj.records.push_back(std::move(r));

            if (!next.allFinite()) throw Error(ErrorKind::diverged, "non-finite iterate at k = " + std::to_string(k));
            theta = std::move(next);
            if (bound.update(theta, t + 1.0) && cfg.analysis.stop_on_bound) stopped = true;
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::diverged) throw;
        res.status = RunStatus::diverged;
        res.message = e.what();
    }

    common_metrics(cfg, bound, res);
    rep.set("final_theta_error", (theta - cfg.theta_star).norm());
    rep.set("final_theta_norm", theta.norm());
    rep.set("max_gradient_norm", G_obs);
    if (projected) rep.set("left_set", max_outside);
    if (track_regret && have_prev) {
        rep.set("regret_final", prev_regret);
        rep.set("regret_min_increment", min_regret_increment == std::numeric_limits<double>::infinity()
                                            ? 0.0
                                            : min_regret_increment);
        if (law.set.kind() != ConvexFeasibleSet::Kind::unbounded) rep.set("ogd_bound_ratio", worst_bound_ratio);
    } else if (cfg.analysis.regret && !costs.empty()) {
        if (comparator_set.kind() == ConvexFeasibleSet::Kind::unbounded) {
            rep.notes.push_back("regret: non-quadratic comparator needs a bounded set");
        } else {
            try {
                rep.set("regret_final", discrete_regret(costs, iterates, comparator_set).regret);
            } catch (const Error& e) {
                rep.notes.push_back(std::string("regret: ") + e.what());
            }
        }
    }
    pe_and_fit(cfg, res);
    jensen_metrics(cfg, iterates, comparator_set, rep);
    return res;
}

}  // namespace detail

/// Deterministic given the config (including its seed).
inline RunResult run_experiment(const ExperimentConfig& cfg) {
    return cfg.mode == SimulationMode::continuous ? detail::run_continuous(cfg) : detail::run_discrete(cfg);
}

inline json report_json(const RunResult& r) {
    json j;
    j["name"] = r.name;
    j["status"] = std::string(to_string(r.status));
    if (!r.message.empty()) j["message"] = r.message;
    json m = json::object();
    for (const auto& [k, v] : r.report.metrics) {
        if (std::isfinite(v)) m[k] = v;
        else m[k] = format_number(v);
    }
    j["metrics"] = m;
    j["notes"] = r.report.notes;
    return j;
}

}  // namespace adaptopt::sim
