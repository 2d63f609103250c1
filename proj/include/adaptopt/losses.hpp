/**
 * @file losses.hpp
 * @brief Per-sample losses on y_hat = theta' phi and their gradients in theta.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "adaptopt/core.hpp"

namespace adaptopt {

enum class LossKind { squared, lp, hinge, logistic };

inline std::string_view to_string(LossKind k) {
    switch (k) {
    case LossKind::squared: return "squared";
    case LossKind::lp: return "lp";
    case LossKind::hinge: return "hinge";
    case LossKind::logistic: return "logistic";
    }
    return "unknown";
}

struct LossSpec {
    LossKind kind = LossKind::squared;
    int p = 2;  ///< exponent for lp, even and positive

    [[nodiscard]] bool is_classification() const noexcept {
        return kind == LossKind::hinge || kind == LossKind::logistic;
    }

    void validate() const {
        if (kind == LossKind::lp && (p <= 0 || p % 2 != 0)) {
            throw Error(ErrorKind::invalid_parameter, "lp loss needs an even positive p");
        }
    }
};

namespace detail {

inline void check_loss_args(const LossSpec& spec, const Vector& theta, const Vector& phi, double y) {
    spec.validate();
    require_same_size(theta, phi, "loss");
    if (spec.is_classification() && y != 1.0 && y != -1.0) {
        throw Error(ErrorKind::invalid_input, "classification label must be -1 or 1");
    }
}

/// 1 / (1 + exp(-u)) without overflow.
inline double sigmoid(double u) {
    if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
    const double e = std::exp(u);
    return e / (1.0 + e);
}

}  // namespace detail

/// squared: (e^2)/2, lp: |e|^p / p, hinge: max(0, 1 - y y_hat), logistic: ln(1 + exp(-y y_hat));
/// e = theta' phi - y.
inline double loss_value(const LossSpec& spec, const Vector& theta, const Vector& phi, double y) {
    detail::check_loss_args(spec, theta, phi, y);
    const double y_hat = theta.dot(phi);
    switch (spec.kind) {
    case LossKind::squared: {
        const double e = y_hat - y;
        return 0.5 * e * e;
    }
    case LossKind::lp: return std::pow(std::abs(y_hat - y), spec.p) / spec.p;
    case LossKind::hinge: return std::max(0.0, 1.0 - y * y_hat);
    case LossKind::logistic: {
        const double z = y * y_hat;
        // ln(1 + e^{-z}) = max(-z, 0) + ln(1 + e^{-|z|})
        return std::max(-z, 0.0) + std::log1p(std::exp(-std::abs(z)));
    }
    }
    return 0.0;
}

/// Hinge uses the zero subgradient at the kink.
inline Vector loss_grad(const LossSpec& spec, const Vector& theta, const Vector& phi, double y) {
    detail::check_loss_args(spec, theta, phi, y);
    const double y_hat = theta.dot(phi);
    switch (spec.kind) {
    case LossKind::squared: return phi * (y_hat - y);
    case LossKind::lp: {
        const double e = y_hat - y;
        return phi * (std::pow(std::abs(e), spec.p - 2) * e);
    }
    case LossKind::hinge: return 1.0 - y * y_hat > 0.0 ? Vector(-y * phi) : Vector(Vector::Zero(phi.size()));
    case LossKind::logistic: return -y * detail::sigmoid(-y * y_hat) * phi;
    }
    return Vector::Zero(phi.size());
}

struct ERMSample {
    Vector phi;
    double y = 0.0;
};

/// m regressor/target pairs averaged into one objective.
struct ERMBatch {
    std::vector<ERMSample> samples;
};

inline Vector erm_grad(const LossSpec& spec, const Vector& theta, const ERMBatch& batch) {
    if (batch.samples.empty()) throw Error(ErrorKind::invalid_input, "ERM batch is empty");
    Vector acc = Vector::Zero(theta.size());
    for (const auto& s : batch.samples) acc += loss_grad(spec, theta, s.phi, s.y);
    return acc / static_cast<double>(batch.samples.size());
}

inline double erm_loss(const LossSpec& spec, const Vector& theta, const ERMBatch& batch) {
    if (batch.samples.empty()) throw Error(ErrorKind::invalid_input, "ERM batch is empty");
    double acc = 0.0;
    for (const auto& s : batch.samples) acc += loss_value(spec, theta, s.phi, s.y);
    return acc / static_cast<double>(batch.samples.size());
}

inline LossKind parse_loss_kind(std::string_view name) {
    if (name == "squared") return LossKind::squared;
    if (name == "lp") return LossKind::lp;
    if (name == "hinge") return LossKind::hinge;
    if (name == "logistic") return LossKind::logistic;
    throw Error(ErrorKind::config, "unknown loss kind '" + std::string(name) + "'");
}

}  // namespace adaptopt
