/**
 * @file laws_continuous.hpp
 * @brief Continuous-time parameter update laws.
 *
 * Every law returns derivatives only. The simulation integrates them with RK4 and
 * calls ContinuousLaw::post_step after each step.
 */
#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "adaptopt/core.hpp"
#include "adaptopt/signals.hpp"

namespace adaptopt {

enum class ContinuousLawKind {
    frozen,  ///< theta_dot = 0, used for baseline re-simulation
    gradient_flow,
    sigma_modification,
    deadzone,
    projection,
    time_varying_gain,
    higher_order_tuner,
};

enum class ModificationKind { none, sigma, e_modification };

inline std::string_view to_string(ContinuousLawKind k) {
    switch (k) {
    case ContinuousLawKind::frozen: return "frozen";
    case ContinuousLawKind::gradient_flow: return "gradient-flow";
    case ContinuousLawKind::sigma_modification: return "sigma-modification";
    case ContinuousLawKind::deadzone: return "deadzone";
    case ContinuousLawKind::projection: return "projection";
    case ContinuousLawKind::time_varying_gain: return "time-varying-gain";
    case ContinuousLawKind::higher_order_tuner: return "higher-order-tuner";
    }
    return "unknown";
}

inline ContinuousLawKind parse_continuous_law_kind(std::string_view name) {
    for (auto k : {ContinuousLawKind::frozen, ContinuousLawKind::gradient_flow,
                   ContinuousLawKind::sigma_modification, ContinuousLawKind::deadzone,
                   ContinuousLawKind::projection, ContinuousLawKind::time_varying_gain,
                   ContinuousLawKind::higher_order_tuner}) {
        if (name == to_string(k)) return k;
    }
    throw Error(ErrorKind::config, "unknown continuous law '" + std::string(name) + "'");
}

struct ContinuousLawConfig {
    ContinuousLawKind kind = ContinuousLawKind::gradient_flow;
    double gamma = 1.0;

    double sigma = 0.1;
    ModificationKind modification = ModificationKind::sigma;

    // Deadzone on D(e_y) = |e_y|.
    double deadzone_width = 0.0;
    double deadzone_epsilon = 1e-3;

    // Projection: outer bound theta_max and inner bound theta'_max, per coordinate.
    Vector theta_max;
    Vector theta_inner;

    // Time-varying gain.
    double forgetting = 0.0;
    double mu = 1.0;
    double gain_cap = 1e3;
    Matrix gain0;

    // Higher-order tuner.
    double beta = 1.0;
    Vector vartheta0;

    /// Checks parameters for an N-dimensional parameter vector. An empty gain0 means
    /// identity; an empty vartheta0 means vartheta(0) = theta(0).
    void validate(Eigen::Index n) const {
        if (!(gamma > 0.0)) throw Error(ErrorKind::invalid_parameter, "gamma must be positive");
        switch (kind) {
        case ContinuousLawKind::sigma_modification:
            if (sigma < 0.0) throw Error(ErrorKind::invalid_parameter, "sigma must be nonnegative");
            break;
        case ContinuousLawKind::deadzone:
            if (deadzone_width < 0.0) throw Error(ErrorKind::invalid_parameter, "deadzone width must be nonnegative");
            if (!(deadzone_epsilon > 0.0)) throw Error(ErrorKind::invalid_parameter, "deadzone epsilon must be positive");
            break;
        case ContinuousLawKind::projection:
            if (theta_max.size() != n || theta_inner.size() != n) {
                throw Error(ErrorKind::invalid_parameter, "projection bounds need one entry per parameter");
            }
            for (Eigen::Index i = 0; i < n; ++i) {
                if (!(theta_inner(i) > 0.0 && theta_inner(i) < theta_max(i))) {
                    throw Error(ErrorKind::invalid_parameter, "projection bounds need 0 < theta'_max < theta_max");
                }
            }
            break;
        case ContinuousLawKind::time_varying_gain:
            if (forgetting < 0.0) throw Error(ErrorKind::invalid_parameter, "forgetting factor must be nonnegative");
            if (mu < 0.0) throw Error(ErrorKind::invalid_parameter, "mu must be nonnegative");
            if (!(gain_cap > 0.0)) throw Error(ErrorKind::invalid_parameter, "gain cap must be positive");
            if (gain0.size() > 0) {
                if (gain0.rows() != n || gain0.cols() != n) {
                    throw Error(ErrorKind::invalid_parameter, "initial gain must be N x N");
                }
                if ((gain0 - gain0.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
                    min_eigenvalue_symmetric(gain0) <= 0.0) {
                    throw Error(ErrorKind::invalid_parameter, "initial gain must be symmetric positive definite");
                }
                if (gain0.norm() > gain_cap) throw Error(ErrorKind::invalid_parameter, "initial gain exceeds the cap");
            } else if (std::sqrt(static_cast<double>(n)) > gain_cap) {
                throw Error(ErrorKind::invalid_parameter, "identity initial gain exceeds the cap");
            }
            break;
        case ContinuousLawKind::higher_order_tuner:
            if (!(beta > 0.0)) throw Error(ErrorKind::invalid_parameter, "beta must be positive");
            if (mu < 0.0) throw Error(ErrorKind::invalid_parameter, "mu must be nonnegative");
            if (vartheta0.size() != 0 && vartheta0.size() != n) {
                throw Error(ErrorKind::invalid_parameter, "vartheta0 must have N entries");
            }
            break;
        default: break;
        }
    }
};

/// theta_dot = -gamma grad
inline Vector gradient_flow(const ContinuousLawConfig& cfg, const Vector& grad) { return -cfg.gamma * grad; }

/// theta_dot = -gamma [grad + sigma G], G = theta (sigma) or |e_y| theta (e-modification).
inline Vector sigma_e_modification(const ContinuousLawConfig& cfg, const Vector& grad, const Vector& theta,
                                   double e_y) {
    require_same_size(grad, theta, "sigma_e_modification");
    switch (cfg.modification) {
    case ModificationKind::none: return -cfg.gamma * grad;
    case ModificationKind::sigma: return -cfg.gamma * (grad + cfg.sigma * theta);
    case ModificationKind::e_modification: return -cfg.gamma * (grad + cfg.sigma * std::abs(e_y) * theta);
    }
    return -cfg.gamma * grad;
}

/// Adaptation stops while |e_y| <= d0 + epsilon.
inline Vector deadzone(const ContinuousLawConfig& cfg, const Vector& grad, double e_y) {
    if (std::abs(e_y) > cfg.deadzone_width + cfg.deadzone_epsilon) return -cfg.gamma * grad;
    return Vector::Zero(grad.size());
}

/**
 * Smooth projection of one coordinate. Motion zeta that pushes theta outward
 * (theta zeta > 0) inside the boundary layer |theta| >= theta'_max is scaled by
 * (theta_max^2 - theta^2) / (theta_max^2 - theta'_max^2), which reaches zero at
 * |theta| = theta_max and turns negative beyond it.
 */
inline double proj_operator(double theta, double zeta, double theta_max, double theta_inner) {
    if (!(theta_inner > 0.0 && theta_inner < theta_max)) {
        throw Error(ErrorKind::invalid_parameter, "projection bounds need 0 < theta'_max < theta_max");
    }
    if (std::abs(theta) >= theta_inner && theta * zeta > 0.0) {
        const double tm2 = theta_max * theta_max;
        return (tm2 - theta * theta) / (tm2 - theta_inner * theta_inner) * zeta;
    }
    return zeta;
}

/// theta_dot = gamma Proj(theta, -grad); the descent direction is the motion being projected.
inline Vector projected_flow(const ContinuousLawConfig& cfg, const Vector& theta, const Vector& grad) {
    require_same_size(theta, grad, "projected_flow");
    Vector out(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        out(i) = cfg.gamma * proj_operator(theta(i), -grad(i), cfg.theta_max(i), cfg.theta_inner(i));
    }
    return out;
}

struct GainDerivatives {
    Vector theta_dot;
    Matrix gain_dot;
};

/// theta_dot = -gamma Gamma grad; Gamma_dot = Upsilon Gamma - Gamma phi phi' Gamma / (1 + mu phi'phi)
/// while |Gamma|_F <= cap, zero otherwise.
inline GainDerivatives time_varying_gain(const ContinuousLawConfig& cfg, const Matrix& gain, const Vector& phi,
                                         const Vector& grad) {
    GainDerivatives d;
    d.theta_dot = -cfg.gamma * (gain * grad);
    if (gain.norm() <= cfg.gain_cap) {
        const Vector gp = gain * phi;
        d.gain_dot = cfg.forgetting * gain - (gp * gp.transpose()) / normalizing_signal(phi, cfg.mu);
    } else {
        d.gain_dot = Matrix::Zero(gain.rows(), gain.cols());
    }
    return d;
}

struct TunerDerivatives {
    Vector theta_dot;
    Vector vartheta_dot;
};

/// vartheta_dot = -gamma grad(theta); theta_dot = -beta (theta - vartheta) (1 + mu phi'phi)
inline TunerDerivatives higher_order_tuner(const ContinuousLawConfig& cfg, const Vector& grad, const Vector& theta,
                                           const Vector& vartheta, const Vector& phi) {
    require_same_size(theta, vartheta, "higher_order_tuner");
    TunerDerivatives d;
    d.vartheta_dot = -cfg.gamma * grad;
    d.theta_dot = -cfg.beta * normalizing_signal(phi, cfg.mu) * (theta - vartheta);
    return d;
}

/**
 * @brief A configured law plus the layout of its auxiliary state.
 *
 * Auxiliary state is Gamma (column-major, N*N entries) for the time-varying gain and
 * vartheta (N entries) for the higher-order tuner; empty otherwise.
 */
class ContinuousLaw {
public:
    ContinuousLaw(ContinuousLawConfig cfg, Eigen::Index n) : cfg_(std::move(cfg)), n_(n) { cfg_.validate(n_); }

    [[nodiscard]] const ContinuousLawConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] Eigen::Index parameter_dimension() const noexcept { return n_; }

    [[nodiscard]] Eigen::Index aux_size() const noexcept {
        switch (cfg_.kind) {
        case ContinuousLawKind::time_varying_gain: return n_ * n_;
        case ContinuousLawKind::higher_order_tuner: return n_;
        default: return 0;
        }
    }

    [[nodiscard]] Vector initial_aux(const Vector& theta0) const {
        switch (cfg_.kind) {
        case ContinuousLawKind::time_varying_gain: {
            const Matrix g = cfg_.gain0.size() > 0 ? cfg_.gain0 : Matrix::Identity(n_, n_);
            return Eigen::Map<const Vector>(g.data(), n_ * n_);
        }
        case ContinuousLawKind::higher_order_tuner: return cfg_.vartheta0.size() > 0 ? cfg_.vartheta0 : theta0;
        default: return Vector(0);
        }
    }

    [[nodiscard]] Matrix gain_of(const Vector& aux) const { return Eigen::Map<const Matrix>(aux.data(), n_, n_); }

    /// Writes theta_dot and aux_dot given the loss gradient at theta and the regressor
    /// the law sees.
    void derivative(const Vector& theta, const Vector& aux, const Vector& grad, const Vector& phi, double e_y,
                    Eigen::Ref<Vector> theta_dot, Eigen::Ref<Vector> aux_dot) const {
        switch (cfg_.kind) {
        case ContinuousLawKind::frozen: theta_dot.setZero(); break;
        case ContinuousLawKind::gradient_flow: theta_dot = gradient_flow(cfg_, grad); break;
        case ContinuousLawKind::sigma_modification: theta_dot = sigma_e_modification(cfg_, grad, theta, e_y); break;
        case ContinuousLawKind::deadzone: theta_dot = deadzone(cfg_, grad, e_y); break;
        case ContinuousLawKind::projection: theta_dot = projected_flow(cfg_, theta, grad); break;
        case ContinuousLawKind::time_varying_gain: {
            const auto d = time_varying_gain(cfg_, gain_of(aux), phi, grad);
            theta_dot = d.theta_dot;
            aux_dot = Eigen::Map<const Vector>(d.gain_dot.data(), n_ * n_);
            break;
        }
        case ContinuousLawKind::higher_order_tuner: {
            const auto d = higher_order_tuner(cfg_, grad, theta, aux, phi);
            theta_dot = d.theta_dot;
            aux_dot = d.vartheta_dot;
            break;
        }
        }
    }

    /// Re-symmetrizes Gamma and pulls it back onto the Frobenius cap if a step overshot it.
    void post_step(Eigen::Ref<Vector> aux) const {
        if (cfg_.kind != ContinuousLawKind::time_varying_gain) return;
        Matrix g = symmetrized(gain_of(aux));
        const double fro = g.norm();
        if (fro > cfg_.gain_cap) g *= cfg_.gain_cap / fro;
        aux = Eigen::Map<const Vector>(g.data(), n_ * n_);
    }

private:
    ContinuousLawConfig cfg_;
    Eigen::Index n_;
};

}  // namespace adaptopt
