/**
 * @file analysis.hpp
 * @brief Lyapunov values, discrete and continuous regret, the Jensen average-regret
 * bound, and log-linear convergence fits.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adaptopt/core.hpp"
#include "adaptopt/error_models.hpp"
#include "adaptopt/laws_discrete.hpp"

namespace adaptopt {

// ---------------------------------------------------------------------------
// Lyapunov function
// ---------------------------------------------------------------------------

struct LyapunovSpec {
    double gamma = 1.0;

    /// Terms present only for the dynamic error model.
    struct Dynamic {
        Matrix P;
        Matrix Q;
        Matrix P_bar;
        Matrix Q_bar;
        Vector Pb;
        Vector theta_star;
        double alpha = 1.0;
    };
    std::optional<Dynamic> dynamic;

    static LyapunovSpec algebraic(double gamma) { return LyapunovSpec{gamma, std::nullopt}; }

    /// alpha <= 0 selects the model's default (twice the decrease bound).
    static LyapunovSpec for_model(double gamma, const DynamicErrorModel& model, double alpha = 0.0) {
        const auto& cert = model.certificate();
        Dynamic d{cert.P, cert.Q, cert.P_bar, cert.Q_bar, cert.P * model.b(), model.theta_star(),
                  alpha > 0.0 ? alpha : model.default_alpha()};
        return LyapunovSpec{gamma, std::move(d)};
    }

    /// 4 |Pb|^2 |theta*|^2 / (lambda_min(Q) lambda_min(Q_bar)), or 0 without dynamic terms.
    [[nodiscard]] double alpha_bound() const {
        if (!dynamic) return 0.0;
        return 4.0 * dynamic->Pb.squaredNorm() * dynamic->theta_star.squaredNorm() /
               (min_eigenvalue_symmetric(dynamic->Q) * min_eigenvalue_symmetric(dynamic->Q_bar));
    }
};

/// V = theta_tilde' theta_tilde / gamma + e'Pe + alpha phi_tilde' P_bar phi_tilde
inline double lyapunov_value(const LyapunovSpec& spec, const Vector& theta_tilde, const Vector& e = Vector(),
                             const Vector& phi_tilde = Vector()) {
    double v = theta_tilde.squaredNorm() / spec.gamma;
    if (spec.dynamic) {
        const auto& d = *spec.dynamic;
        if (e.size() != d.P.rows() || phi_tilde.size() != d.P_bar.rows()) {
            throw Error(ErrorKind::invalid_input, "lyapunov_value: state dimensions disagree with the spec");
        }
        v += e.dot(d.P * e) + d.alpha * phi_tilde.dot(d.P_bar * phi_tilde);
    }
    return v;
}

inline double lyapunov_delta(const LyapunovSpec& spec, const Vector& e, const Vector& phi_tilde) {
    if (!spec.dynamic) return 0.0;
    return 2.0 * e.dot(spec.dynamic->Pb) * spec.dynamic->theta_star.dot(phi_tilde);
}

enum class BoundCheck { strict, warn };

/**
 * V_dot = -e'Qe - alpha phi_tilde' Q_bar phi_tilde + delta for the gradient law. With
 * BoundCheck::strict an alpha at or below the decrease bound is rejected; `violated`
 * receives the outcome either way.
 */
inline double lyapunov_derivative(const LyapunovSpec& spec, const Vector& e, const Vector& phi_tilde, double delta,
                                  BoundCheck mode = BoundCheck::strict, bool* violated = nullptr) {
    if (!spec.dynamic) throw Error(ErrorKind::invalid_spec, "lyapunov_derivative needs the dynamic terms");
    const auto& d = *spec.dynamic;
    const bool bad = !(d.alpha > spec.alpha_bound());
    if (violated) *violated = bad;
    if (bad && mode == BoundCheck::strict) {
        throw Error(ErrorKind::invalid_spec, "alpha does not exceed 4|Pb|^2|theta*|^2/(eig(Q) eig(Q_bar))");
    }
    return -e.dot(d.Q * e) - d.alpha * phi_tilde.dot(d.Q_bar * phi_tilde) + delta;
}

// ---------------------------------------------------------------------------
// Cost streams and the best static comparator
// ---------------------------------------------------------------------------

/// C(theta) = theta'H theta / 2 + g'theta + c
struct QuadraticCost {
    Matrix H;
    Vector g;
    double c = 0.0;

    /// (theta'phi - y)^2 / 2
    static QuadraticCost regression(const Vector& phi, double y) {
        return QuadraticCost{phi * phi.transpose(), -y * phi, 0.5 * y * y};
    }

    [[nodiscard]] double value(const Vector& theta) const { return 0.5 * theta.dot(H * theta) + g.dot(theta) + c; }
    [[nodiscard]] Vector gradient(const Vector& theta) const { return H * theta + g; }

    QuadraticCost& operator+=(const QuadraticCost& other) {
        H += other.H;
        g += other.g;
        c += other.c;
        return *this;
    }
};

using CostFunction = std::function<double(const Vector&)>;

namespace detail {

/// Minimizer of x'Hx/2 + g'x nearest the origin (H symmetric PSD); empty when unbounded below.
inline std::optional<Vector> unconstrained_minimizer(const Eigen::SelfAdjointEigenSolver<Matrix>& es,
                                                     const Vector& g) {
    const Vector& d = es.eigenvalues();
    const Matrix& U = es.eigenvectors();
    const Vector gt = U.transpose() * g;
    const double tol = std::max(1.0, d.cwiseAbs().maxCoeff()) * 1e-12;
    Vector xt = Vector::Zero(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d(i) > tol) {
            xt(i) = -gt(i) / d(i);
        } else if (std::abs(gt(i)) > 1e-12 * std::max(1.0, g.norm())) {
            return std::nullopt;
        }
    }
    return U * xt;
}

/**
 * min x'Hx/2 + g'x over |x| <= r. Interior minimizers are taken directly; otherwise the
 * concave dual q(l) = -g'(H + lI)^{-1}g / 2 - l r^2 / 2 is maximized over l >= 0 by
 * golden-section search and x(l) = -(H + lI)^{-1} g is returned.
 */
inline Vector minimize_on_ball(const Matrix& H, const Vector& g, double r) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(H));
    const Vector& d = es.eigenvalues();
    const Matrix& U = es.eigenvectors();
    const Vector gt = U.transpose() * g;
    const double tol = std::max(1.0, d.cwiseAbs().maxCoeff()) * 1e-12;

    // Interior candidate: minimum-norm minimizer if the stationary set is nonempty.
    if (auto x = unconstrained_minimizer(es, g); x && x->norm() <= r) return *x;

    auto x_of = [&](double lambda) {
        Vector xt(d.size());
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            const double den = std::max(d(i), 0.0) + lambda;
            xt(i) = den > 0.0 ? -gt(i) / den : 0.0;
        }
        return xt;
    };
    auto dual = [&](double lambda) {
        double q = -0.5 * lambda * r * r;
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            const double den = std::max(d(i), 0.0) + lambda;
            if (den > 0.0) q -= 0.5 * gt(i) * gt(i) / den;
        }
        return q;
    };
    if (r == 0.0) return Vector::Zero(g.size());
    // At l = |g|/r the unconstrained step already has norm <= r, so the optimum is below it.
    double lo = 0.0, hi = gt.norm() / r + tol;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    double fa = dual(a), fb = dual(b);
    for (int it = 0; it < 300 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + phi * (hi - lo);
            fb = dual(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - phi * (hi - lo);
            fa = dual(a);
        }
    }
    Vector xt = x_of(0.5 * (lo + hi));
    const double n = xt.norm();
    if (n > r && n > 0.0) xt *= r / n;
    return U * xt;
}

/**
 * min x'Hx/2 + g'x over lower <= x <= upper: accelerated projected gradient, then an
 * active-set polish that solves the free coordinates exactly when the KKT signs agree.
 */
inline Vector minimize_on_box(const Matrix& H, const Vector& g, const Vector& lower, const Vector& upper) {
    const auto n = g.size();
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(H));
    if (auto x = unconstrained_minimizer(es, g);
        x && ((x->array() >= lower.array()).all() && (x->array() <= upper.array()).all())) {
        return *x;
    }
    const double lmax = std::max(es.eigenvalues().maxCoeff(), 1e-300);
    const double step = 1.0 / lmax;
    auto proj = [&](const Vector& v) -> Vector { return v.cwiseMax(lower).cwiseMin(upper); };
    Vector x = proj(Vector::Zero(n)), y = x, x_prev = x;
    double t = 1.0;
    for (int it = 0; it < 200000; ++it) {
        x = proj(y - step * (H * y + g));
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        y = x + ((t - 1.0) / t_next) * (x - x_prev);
        t = t_next;
        const double moved = (x - x_prev).cwiseAbs().maxCoeff();
        x_prev = x;
        if (moved < 1e-15 * std::max(1.0, x.cwiseAbs().maxCoeff()) && it > 10) break;
    }

    // Polish: coordinates at a bound stay fixed, the rest solve H_ff x_f = -(g_f + H_fa x_a).
    std::vector<Eigen::Index> free_idx;
    const double btol = 1e-9;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (x(i) > lower(i) + btol && x(i) < upper(i) - btol) free_idx.push_back(i);
    }
    Vector polished = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (x(i) <= lower(i) + btol) polished(i) = lower(i);
        if (x(i) >= upper(i) - btol) polished(i) = upper(i);
    }
    if (!free_idx.empty()) {
        const auto f = static_cast<Eigen::Index>(free_idx.size());
        Matrix Hff(f, f);
        Vector rhs(f);
        for (Eigen::Index a = 0; a < f; ++a) {
            rhs(a) = -g(free_idx[a]);
            for (Eigen::Index j = 0; j < n; ++j) {
                const bool is_free = std::find(free_idx.begin(), free_idx.end(), j) != free_idx.end();
                if (!is_free) rhs(a) -= H(free_idx[a], j) * polished(j);
            }
            for (Eigen::Index b = 0; b < f; ++b) Hff(a, b) = H(free_idx[a], free_idx[b]);
        }
        const Vector xf = Hff.completeOrthogonalDecomposition().solve(rhs);
        for (Eigen::Index a = 0; a < f; ++a) polished(free_idx[a]) = xf(a);
    }
    const Vector grad = H * polished + g;
    bool kkt = (polished.array() >= lower.array() - 1e-12).all() && (polished.array() <= upper.array() + 1e-12).all();
    for (Eigen::Index i = 0; i < n && kkt; ++i) {
        const double scale = 1e-9 * std::max(1.0, g.cwiseAbs().maxCoeff());
        if (polished(i) <= lower(i) + btol) kkt = grad(i) >= -scale;
        else if (polished(i) >= upper(i) - btol) kkt = grad(i) <= scale;
        else kkt = std::abs(grad(i)) <= scale * 10.0;
    }
    auto value = [&](const Vector& v) { return 0.5 * v.dot(H * v) + g.dot(v); };
    if (kkt && value(polished) <= value(x) + 1e-15 * std::max(1.0, std::abs(value(x)))) return proj(polished);
    return x;
}

}  // namespace detail

/// argmin over `set` of a convex quadratic. Throws baseline-failure when unbounded below.
inline Vector minimize_quadratic(const QuadraticCost& cost, const ConvexFeasibleSet& set) {
    switch (set.kind()) {
    case ConvexFeasibleSet::Kind::unbounded: {
        Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(cost.H));
        if (es.eigenvalues()(0) < -1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff())) {
            throw Error(ErrorKind::baseline_failure, "quadratic cost is not convex");
        }
        auto x = detail::unconstrained_minimizer(es, cost.g);
        if (!x) throw Error(ErrorKind::baseline_failure, "quadratic cost is unbounded below on an unbounded set");
        return *x;
    }
    case ConvexFeasibleSet::Kind::box:
        return detail::minimize_on_box(cost.H, cost.g, set.lower(), set.upper());
    case ConvexFeasibleSet::Kind::ball: {
        // Shift to the center: x = theta - c.
        const Vector gc = cost.g + cost.H * set.center();
        return set.center() + detail::minimize_on_ball(cost.H, gc, set.radius());
    }
    }
    return Vector();
}

namespace detail {

/// Dense grid over the set's bounding box followed by a projected compass search.
inline Vector minimize_by_grid(const CostFunction& f, const ConvexFeasibleSet& set, Eigen::Index n) {
    if (set.kind() == ConvexFeasibleSet::Kind::unbounded) {
        throw Error(ErrorKind::baseline_failure, "grid baseline needs a bounded feasible set");
    }
    if (n > 3) throw Error(ErrorKind::baseline_failure, "grid baseline supports at most 3 parameters");
    Vector lo(n), hi(n);
    if (set.kind() == ConvexFeasibleSet::Kind::box) {
        lo = set.lower();
        hi = set.upper();
    } else {
        lo = set.center().array() - set.radius();
        hi = set.center().array() + set.radius();
    }
    const int per_dim = n == 1 ? 2001 : (n == 2 ? 201 : 41);
    Vector best = project(set, 0.5 * (lo + hi));
    double best_val = f(best);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        Vector x(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            x(i) = lo(i) + (hi(i) - lo(i)) * idx[static_cast<std::size_t>(i)] / (per_dim - 1);
        }
        if (set.contains(x)) {
            const double v = f(x);
            if (v < best_val) {
                best_val = v;
                best = x;
            }
        }
        Eigen::Index d = 0;
        while (d < n && ++idx[static_cast<std::size_t>(d)] == per_dim) idx[static_cast<std::size_t>(d++)] = 0;
        if (d == n) break;
    }
    double step = (hi - lo).maxCoeff() / (per_dim - 1);
    while (step > 1e-12) {
        bool improved = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (double sgn : {1.0, -1.0}) {
                Vector x = best;
                x(i) += sgn * step;
                x = project(set, x);
                const double v = f(x);
                if (v < best_val) {
                    best_val = v;
                    best = x;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    if (!std::isfinite(best_val)) throw Error(ErrorKind::baseline_failure, "grid baseline produced a non-finite value");
    return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Discrete regret
// ---------------------------------------------------------------------------

struct RegretRecord {
    std::size_t horizon = 0;
    std::vector<double> per_step_costs;  ///< C_k(theta_k)
    Vector theta_best;                   ///< best static parameter in the set
    double best_total = 0.0;             ///< sum_k C_k(theta_best)
    double regret = 0.0;
    Vector theta_average;                ///< (1/T) sum_k theta_k
};

namespace detail {

inline Vector average(const std::vector<Vector>& xs) {
    Vector acc = Vector::Zero(xs.front().size());
    for (const auto& x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

}  // namespace detail

/// regret_T for quadratic costs; the comparator is minimized exactly.
inline RegretRecord discrete_regret(const std::vector<QuadraticCost>& costs, const std::vector<Vector>& iterates,
                                    const ConvexFeasibleSet& set) {
    if (costs.empty() || costs.size() != iterates.size()) {
        throw Error(ErrorKind::invalid_input, "discrete_regret needs T >= 1 costs and as many iterates");
    }
    RegretRecord rec;
    rec.horizon = costs.size();
    QuadraticCost total{Matrix::Zero(iterates[0].size(), iterates[0].size()), Vector::Zero(iterates[0].size()), 0.0};
    double alg = 0.0;
    for (std::size_t k = 0; k < costs.size(); ++k) {
        const double c = costs[k].value(iterates[k]);
        rec.per_step_costs.push_back(c);
        alg += c;
        total += costs[k];
    }
    rec.theta_best = minimize_quadratic(total, set);
    rec.best_total = total.value(rec.theta_best);
    rec.regret = alg - rec.best_total;
    rec.theta_average = detail::average(iterates);
    return rec;
}

/// regret_T for arbitrary convex costs; the comparator comes from a grid plus local search.
inline RegretRecord discrete_regret(const std::vector<CostFunction>& costs, const std::vector<Vector>& iterates,
                                    const ConvexFeasibleSet& set) {
    if (costs.empty() || costs.size() != iterates.size()) {
        throw Error(ErrorKind::invalid_input, "discrete_regret needs T >= 1 costs and as many iterates");
    }
    RegretRecord rec;
    rec.horizon = costs.size();
    double alg = 0.0;
    for (std::size_t k = 0; k < costs.size(); ++k) {
        const double c = costs[k](iterates[k]);
        rec.per_step_costs.push_back(c);
        alg += c;
    }
    const CostFunction total = [&costs](const Vector& x) {
        double s = 0.0;
        for (const auto& c : costs) s += c(x);
        return s;
    };
    rec.theta_best = detail::minimize_by_grid(total, set, iterates[0].size());
    rec.best_total = total(rec.theta_best);
    rec.regret = alg - rec.best_total;
    rec.theta_average = detail::average(iterates);
    return rec;
}

/// regret_t for t = 1..T, with an exact comparator per prefix.
inline std::vector<double> regret_curve(const std::vector<QuadraticCost>& costs, const std::vector<Vector>& iterates,
                                        const ConvexFeasibleSet& set) {
    if (costs.empty() || costs.size() != iterates.size()) {
        throw Error(ErrorKind::invalid_input, "regret_curve needs T >= 1 costs and as many iterates");
    }
    const auto n = iterates[0].size();
    QuadraticCost total{Matrix::Zero(n, n), Vector::Zero(n), 0.0};
    double alg = 0.0;
    std::vector<double> out;
    out.reserve(costs.size());
    for (std::size_t k = 0; k < costs.size(); ++k) {
        alg += costs[k].value(iterates[k]);
        total += costs[k];
        out.push_back(alg - total.value(minimize_quadratic(total, set)));
    }
    return out;
}

inline bool is_nondecreasing(const std::vector<double>& xs, double tol = 0.0) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] < xs[i - 1] - tol) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Continuous regret
// ---------------------------------------------------------------------------

/**
 * regret(T) = int e'Qe dt (algorithm) - int e'Qe dt (baseline run), both trapezoidal on
 * the shared logging grid. Element i corresponds to T = t[i].
 */
inline std::vector<double> continuous_regret(const TimeSeries& algorithm, const Matrix& Q,
                                             const TimeSeries& baseline) {
    if (algorithm.size() != baseline.size()) {
        throw Error(ErrorKind::invalid_input, "continuous_regret: trajectories have different lengths");
    }
    for (std::size_t i = 0; i < algorithm.size(); ++i) {
        if (std::abs(algorithm.t[i] - baseline.t[i]) > 1e-9 * std::max(1.0, std::abs(algorithm.t[i]))) {
            throw Error(ErrorKind::invalid_input, "continuous_regret: trajectory grids differ");
        }
    }
    auto integrand = [&Q](const TimeSeries& s) {
        std::vector<double> y(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.x[i].size() != Q.rows()) throw Error(ErrorKind::invalid_input, "continuous_regret: Q size");
            y[i] = s.x[i].dot(Q * s.x[i]);
        }
        return y;
    };
    const auto a = cumulative_trapezoid(algorithm.t, integrand(algorithm));
    const auto b = cumulative_trapezoid(baseline.t, integrand(baseline));
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

/// Value of a regret curve at time T, linearly interpolated on the grid.
inline double value_at(const std::vector<double>& t, const std::vector<double>& curve, double T) {
    if (t.empty()) throw Error(ErrorKind::insufficient_data, "empty curve");
    if (T <= t.front()) return curve.front();
    if (T >= t.back()) return curve.back();
    const auto it = std::lower_bound(t.begin(), t.end(), T);
    const auto i = static_cast<std::size_t>(it - t.begin());
    const double w = (T - t[i - 1]) / (t[i] - t[i - 1]);
    return (1.0 - w) * curve[i - 1] + w * curve[i];
}

// ---------------------------------------------------------------------------
// Jensen bound
// ---------------------------------------------------------------------------

struct JensenGap {
    double lhs = 0.0;  ///< C(theta_bar_T) - C(theta*)
    double rhs = 0.0;  ///< regret_T / T

    [[nodiscard]] bool holds(double tol = 1e-9) const { return lhs <= rhs + tol; }
};

/// Constant convex cost with known minimizer theta_opt.
inline JensenGap jensen_gap(const CostFunction& cost, const std::vector<Vector>& iterates, const Vector& theta_opt) {
    if (iterates.empty()) throw Error(ErrorKind::invalid_input, "jensen_gap needs at least one iterate");
    const double c_opt = cost(theta_opt);
    double total = 0.0;
    for (const auto& x : iterates) total += cost(x) - c_opt;
    const auto T = static_cast<double>(iterates.size());
    return JensenGap{cost(detail::average(iterates)) - c_opt, total / T};
}

inline JensenGap jensen_gap(const QuadraticCost& cost, const std::vector<Vector>& iterates,
                            const ConvexFeasibleSet& set) {
    const Vector opt = minimize_quadratic(cost, set);
    return jensen_gap([&cost](const Vector& x) { return cost.value(x); }, iterates, opt);
}

// ---------------------------------------------------------------------------
// Convergence fit
// ---------------------------------------------------------------------------

struct ConvergenceFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/**
 * Least-squares line through log(value) against t over the final `fraction` of the
 * horizon. A zero residual reports R^2 = 1, including the flat case.
 */
inline ConvergenceFit convergence_fit(const std::vector<double>& t, const std::vector<double>& values,
                                      double fraction = 0.8) {
    if (t.size() != values.size() || t.size() < 2) {
        throw Error(ErrorKind::insufficient_data, "convergence_fit needs at least two samples");
    }
    for (double v : values) {
        if (!(v > 0.0)) throw Error(ErrorKind::invalid_input, "convergence_fit needs positive values");
    }
    const double start = t.back() - fraction * (t.back() - t.front());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < start - 1e-12) continue;
        const double x = t[i], y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++m;
    }
    if (m < 2) throw Error(ErrorKind::insufficient_data, "convergence_fit window holds fewer than two samples");
    const double md = static_cast<double>(m);
    const double vx = sxx - sx * sx / md;
    const double vy = syy - sy * sy / md;
    const double cxy = sxy - sx * sy / md;
    ConvergenceFit fit;
    if (vx <= 0.0) throw Error(ErrorKind::insufficient_data, "convergence_fit window has no time spread");
    fit.slope = cxy / vx;
    fit.intercept = (sy - fit.slope * sx) / md;
    const double ss_res = std::max(0.0, vy - fit.slope * cxy);
    fit.r_squared = vy <= 1e-300 || ss_res <= 1e-14 * std::max(vy, 1e-300) ? 1.0 : 1.0 - ss_res / vy;
    return fit;
}

}  // namespace adaptopt
