/**
 * @file laws_discrete.hpp
 * @brief Discrete-time optimizers: GD, regularized follow-the-leader, projected GD,
 * the generic adaptive-stepsize family, and Nesterov's method.
 *
 * Iterations are indexed from k = 1.
 */
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

#include "adaptopt/core.hpp"

namespace adaptopt {

enum class ScheduleKind { constant, inverse_sqrt, inverse };

struct StepSchedule {
    ScheduleKind kind = ScheduleKind::constant;
    double gamma0 = 0.1;

    void validate() const {
        if (!(gamma0 > 0.0)) throw Error(ErrorKind::invalid_parameter, "gamma0 must be positive");
    }

    [[nodiscard]] double at(long k) const {
        if (k < 1) throw Error(ErrorKind::invalid_input, "step index starts at 1");
        switch (kind) {
        case ScheduleKind::constant: return gamma0;
        case ScheduleKind::inverse_sqrt: return gamma0 / std::sqrt(static_cast<double>(k));
        case ScheduleKind::inverse: return gamma0 / static_cast<double>(k);
        }
        return gamma0;
    }
};

inline ScheduleKind parse_schedule_kind(std::string_view name) {
    if (name == "constant") return ScheduleKind::constant;
    if (name == "inverse-sqrt") return ScheduleKind::inverse_sqrt;
    if (name == "inverse") return ScheduleKind::inverse;
    throw Error(ErrorKind::config, "unknown schedule '" + std::string(name) + "'");
}

/// Closed convex set with an exact Euclidean projection.
class ConvexFeasibleSet {
public:
    enum class Kind { unbounded, box, ball };

    static ConvexFeasibleSet unbounded() { return ConvexFeasibleSet(Kind::unbounded); }

    static ConvexFeasibleSet box(Vector lower, Vector upper) {
        if (lower.size() != upper.size() || lower.size() == 0) {
            throw Error(ErrorKind::invalid_parameter, "box bounds must be nonempty and equal length");
        }
        if ((lower.array() > upper.array()).any()) throw Error(ErrorKind::invalid_parameter, "box is empty");
        ConvexFeasibleSet s(Kind::box);
        s.lower_ = std::move(lower);
        s.upper_ = std::move(upper);
        return s;
    }

    static ConvexFeasibleSet ball(Vector center, double radius) {
        if (center.size() == 0) throw Error(ErrorKind::invalid_parameter, "ball center is empty");
        if (!(radius >= 0.0)) throw Error(ErrorKind::invalid_parameter, "ball radius must be nonnegative");
        ConvexFeasibleSet s(Kind::ball);
        s.center_ = std::move(center);
        s.radius_ = radius;
        return s;
    }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const Vector& lower() const noexcept { return lower_; }
    [[nodiscard]] const Vector& upper() const noexcept { return upper_; }
    [[nodiscard]] const Vector& center() const noexcept { return center_; }
    [[nodiscard]] double radius() const noexcept { return radius_; }

    [[nodiscard]] bool contains(const Vector& x, double tol = 0.0) const {
        switch (kind_) {
        case Kind::unbounded: return true;
        case Kind::box: return ((x - lower_).array() >= -tol).all() && ((upper_ - x).array() >= -tol).all();
        case Kind::ball: return (x - center_).norm() <= radius_ + tol;
        }
        return false;
    }

    /// Largest distance between two points of the set (infinite when unbounded).
    [[nodiscard]] double diameter() const {
        switch (kind_) {
        case Kind::unbounded: return std::numeric_limits<double>::infinity();
        case Kind::box: return (upper_ - lower_).norm();
        case Kind::ball: return 2.0 * radius_;
        }
        return 0.0;
    }

private:
    explicit ConvexFeasibleSet(Kind k) : kind_(k) {}

    Kind kind_;
    Vector lower_, upper_, center_;
    double radius_ = 0.0;
};

/// Euclidean projection: clamp for a box, radial scaling for a ball.
inline Vector project(const ConvexFeasibleSet& set, const Vector& x) {
    switch (set.kind()) {
    case ConvexFeasibleSet::Kind::unbounded: return x;
    case ConvexFeasibleSet::Kind::box:
        require_same_size(x, set.lower(), "project");
        return x.cwiseMax(set.lower()).cwiseMin(set.upper());
    case ConvexFeasibleSet::Kind::ball: {
        require_same_size(x, set.center(), "project");
        const Vector d = x - set.center();
        const double n = d.norm();
        if (n <= set.radius()) return x;
        return set.center() + (set.radius() / n) * d;
    }
    }
    return x;
}

/// theta_{k+1} = theta_k - gamma_k grad
inline Vector gd_step(const Vector& theta, const Vector& grad, const StepSchedule& schedule, long k) {
    require_same_size(theta, grad, "gd_step");
    return theta - schedule.at(k) * grad;
}

enum class RegularizerKind { l2, l1 };

struct RegularizerSpec {
    RegularizerKind kind = RegularizerKind::l2;
    double sigma = 0.0;

    /// l2: R = |theta|^2 / 2, l1: R = |theta|_1 with sign(0) = 0.
    [[nodiscard]] Vector gradient(const Vector& theta) const {
        if (kind == RegularizerKind::l2) return theta;
        return theta.unaryExpr([](double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); });
    }
};

inline Vector rftl_step(const Vector& theta, const Vector& grad, const RegularizerSpec& reg,
                        const StepSchedule& schedule, long k) {
    require_same_size(theta, grad, "rftl_step");
    if (reg.sigma < 0.0) throw Error(ErrorKind::invalid_parameter, "regularizer weight must be nonnegative");
    return theta - schedule.at(k) * (grad + reg.sigma * reg.gradient(theta));
}

inline Vector projected_gd_step(const Vector& theta, const Vector& grad, const StepSchedule& schedule, long k,
                                const ConvexFeasibleSet& set) {
    return project(set, gd_step(theta, grad, schedule, k));
}

enum class AdaptiveParameterization { identity, adagrad, adam };

inline AdaptiveParameterization parse_parameterization(std::string_view name) {
    if (name == "identity") return AdaptiveParameterization::identity;
    if (name == "adagrad") return AdaptiveParameterization::adagrad;
    if (name == "adam") return AdaptiveParameterization::adam;
    throw Error(ErrorKind::config, "unknown parameterization '" + std::string(name) + "'");
}

/**
 * @brief Aggregates for theta_{k+1} = Pi(theta_k - gamma_k m_k / sqrt(V_k)).
 *
 *  - identity: m_k = g_k, V_k = I
 *  - adagrad:  m_k = g_k, V_k = eps I + diag(sum_i g_i^2)
 *  - adam:     m_k = (1 - b1) sum_i b1^{k-i} g_i, V_k = (1 - b2) diag(sum_i b2^{k-i} g_i^2)
 *
 * Adam carries no bias correction. eps is added to Adam's V_k only when set nonzero.
 */
struct AdaptiveStepState {
    AdaptiveParameterization parameterization = AdaptiveParameterization::identity;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 0.0;
    Vector m;       ///< first-moment aggregate
    Vector v_diag;  ///< diagonal of V_k
    Vector sq_sum;  ///< running sum (or discounted sum) of g_i^2

    static AdaptiveStepState make(AdaptiveParameterization p, Eigen::Index n, double beta1 = 0.9,
                                  double beta2 = 0.999, double epsilon = 0.0) {
        if (beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0) {
            throw Error(ErrorKind::invalid_parameter, "beta1 and beta2 must lie in [0, 1)");
        }
        if (epsilon < 0.0) throw Error(ErrorKind::invalid_parameter, "epsilon must be nonnegative");
        AdaptiveStepState s;
        s.parameterization = p;
        s.beta1 = beta1;
        s.beta2 = beta2;
        s.epsilon = epsilon;
        s.m = Vector::Zero(n);
        s.v_diag = Vector::Ones(n);
        s.sq_sum = Vector::Zero(n);
        return s;
    }
};

struct AdaptiveStepResult {
    Vector theta;
    AdaptiveStepState state;
};

inline AdaptiveStepResult adaptive_step(AdaptiveStepState state, const Vector& theta, const Vector& g,
                                        const StepSchedule& schedule, long k, const ConvexFeasibleSet& set) {
    require_same_size(theta, g, "adaptive_step");
    require_same_size(theta, state.m, "adaptive_step state");
    const Vector g2 = g.cwiseProduct(g);
    switch (state.parameterization) {
    case AdaptiveParameterization::identity:
        state.m = g;
        state.v_diag.setOnes();
        break;
    case AdaptiveParameterization::adagrad:
        state.m = g;
        state.sq_sum += g2;
        state.v_diag = state.sq_sum.array() + state.epsilon;
        break;
    case AdaptiveParameterization::adam:
        state.m = state.beta1 * state.m + (1.0 - state.beta1) * g;
        state.sq_sum = state.beta2 * state.sq_sum + g2;
        state.v_diag = (1.0 - state.beta2) * state.sq_sum.array() + state.epsilon;
        break;
    }
    if ((state.v_diag.array() <= 0.0).any()) {
        throw Error(ErrorKind::degenerate_curvature, "V_k has a zero diagonal entry and epsilon is 0");
    }
    const Vector step = state.m.cwiseQuotient(state.v_diag.cwiseSqrt());
    Vector next = project(set, theta - schedule.at(k) * step);
    return {std::move(next), std::move(state)};
}

struct NesterovState {
    Vector theta;       ///< theta_k
    Vector theta_prev;  ///< theta_{k-1}
    Vector extrapolated;  ///< vartheta_k from the last step
};

using GradientEvaluator = std::function<Vector(const Vector&)>;

/// vartheta_k = theta_k + beta (theta_k - theta_{k-1}); theta_{k+1} = vartheta_k - gamma grad L(vartheta_k).
inline NesterovState nesterov_step(const NesterovState& state, const GradientEvaluator& grad_at, double gamma,
                                   double beta) {
    require_same_size(state.theta, state.theta_prev, "nesterov_step");
    if (beta < 0.0) throw Error(ErrorKind::invalid_parameter, "beta must be nonnegative");
    NesterovState next;
    next.extrapolated = state.theta + beta * (state.theta - state.theta_prev);
    next.theta = next.extrapolated - gamma * grad_at(next.extrapolated);
    next.theta_prev = state.theta;
    return next;
}

}  // namespace adaptopt
