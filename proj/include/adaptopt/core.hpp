/**
 * @file core.hpp
 * @brief Shared vector types, the error type, and small numeric helpers.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace adaptopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
    invalid_parameter,
    invalid_input,
    insufficient_data,
    not_stable,
    not_spr,
    degenerate_curvature,
    invalid_spec,
    baseline_failure,
    diverged,
    config,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::not_stable: return "not-stable";
    case ErrorKind::not_spr: return "not-spr";
    case ErrorKind::degenerate_curvature: return "degenerate-curvature";
    case ErrorKind::invalid_spec: return "invalid-spec";
    case ErrorKind::baseline_failure: return "baseline-failure";
    case ErrorKind::diverged: return "diverged";
    case ErrorKind::config: return "config";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Time-indexed vector samples, e.g. a logged regressor or output-error history.
struct TimeSeries {
    std::vector<double> t;
    std::vector<Vector> x;

    [[nodiscard]] std::size_t size() const noexcept { return t.size(); }
    [[nodiscard]] bool empty() const noexcept { return t.empty(); }

    void push_back(double time, Vector value) {
        t.push_back(time);
        x.push_back(std::move(value));
    }
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline void require_same_size(const Vector& a, const Vector& b, std::string_view what) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::invalid_input,
                    std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()) + ")");
    }
}

/// Strictly negative real part on every eigenvalue.
inline bool is_hurwitz(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    Eigen::EigenSolver<Matrix> es(m, false);
    return (es.eigenvalues().real().array() < 0.0).all();
}

inline double min_eigenvalue_symmetric(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

inline Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

/// Trapezoidal integral of uniformly or non-uniformly spaced scalar samples.
inline double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size() && i < y.size(); ++i) {
        acc += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    }
    return acc;
}

/// Running trapezoidal integral; element i is the integral from t[0] to t[i].
inline std::vector<double> cumulative_trapezoid(const std::vector<double>& t,
                                                const std::vector<double>& y) {
    std::vector<double> out(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    }
    return out;
}

}  // namespace adaptopt
