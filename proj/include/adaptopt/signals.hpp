/**
 * @file signals.hpp
 * @brief Regressor generators, the normalizing signal, and the persistence-of-excitation level.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <type_traits>
#include <variant>

#include "adaptopt/core.hpp"

namespace adaptopt {

/**
 * @brief SplitMix64 (Steele, Lea, Flood 2014).
 *
 * Used everywhere a reproducible stream is needed. The output depends only on the
 * 64-bit seed, never on the platform or the standard library.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Stateless draw: the value a fresh generator seeded at `seed` would produce at
    /// position `counter + 1`. Lets a signal be evaluated at arbitrary times.
    static double uniform_at(std::uint64_t seed, std::uint64_t counter) noexcept {
        const std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
        return static_cast<double>(mix(z) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Gaussian radial basis features: component i is exp(-|x - c_i|^2 / (2 width^2)).
/// `centers` holds one center per row.
inline Vector rbf_features(const Matrix& centers, double width, const Vector& x) {
    if (!(width > 0.0)) throw Error(ErrorKind::invalid_parameter, "rbf width must be positive");
    if (centers.rows() == 0) throw Error(ErrorKind::invalid_parameter, "rbf centers are empty");
    if (centers.cols() != x.size()) {
        throw Error(ErrorKind::invalid_input, "rbf input dimension does not match centers");
    }
    Vector out(centers.rows());
    const double denom = 2.0 * width * width;
    for (Eigen::Index i = 0; i < centers.rows(); ++i) {
        out(i) = std::exp(-(x - centers.row(i).transpose()).squaredNorm() / denom);
    }
    return out;
}

/// 1 + mu * phi'phi.
inline double normalizing_signal(const Vector& phi, double mu) { return 1.0 + mu * phi.squaredNorm(); }

enum class SignalKind { constant, sinusoid_bank, rbf_map, piecewise_switching, seeded_random };

inline std::string_view to_string(SignalKind k) {
    switch (k) {
    case SignalKind::constant: return "constant";
    case SignalKind::sinusoid_bank: return "sinusoid-bank";
    case SignalKind::rbf_map: return "rbf-map";
    case SignalKind::piecewise_switching: return "piecewise-switching";
    case SignalKind::seeded_random: return "seeded-random";
    }
    return "unknown";
}

/**
 * @brief A regressor trajectory phi(t) in R^N.
 *
 * Immutable once built, so one instance can be shared between concurrent runs.
 *
 *  - constant:            phi(t) = value
 *  - sinusoid-bank:       phi_i(t) = a_i sin(w_i t + p_i)
 *  - rbf-map:             phi(t) = rbf_features(centers, width, x(t)) for an inner signal x(t)
 *  - piecewise-switching: phi(t) = levels.row(floor(t / period) mod rows)
 *  - seeded-random:       phi_i(t) uniform in [-a_i, a_i], redrawn every `hold` time units
 */
class RegressorSignal {
public:
    struct Constant {
        Vector value;
    };
    struct SinusoidBank {
        Vector amplitudes;
        Vector frequencies;
        Vector phases;
    };
    struct RbfMap {
        Matrix centers;
        double width;
        std::shared_ptr<const RegressorSignal> input;
    };
    struct Switching {
        Matrix levels;
        double period;
    };
    struct SeededRandom {
        std::uint64_t seed;
        Vector amplitudes;
        double hold;
    };

    static RegressorSignal constant(Vector value) {
        if (value.size() == 0) throw Error(ErrorKind::invalid_parameter, "constant signal is empty");
        return RegressorSignal(Constant{std::move(value)});
    }

    static RegressorSignal sinusoid_bank(Vector amplitudes, Vector frequencies, Vector phases) {
        const auto n = amplitudes.size();
        if (n == 0 || frequencies.size() != n || phases.size() != n) {
            throw Error(ErrorKind::invalid_parameter,
                        "sinusoid-bank needs equal, nonzero numbers of amplitudes, frequencies, phases");
        }
        return RegressorSignal(SinusoidBank{std::move(amplitudes), std::move(frequencies), std::move(phases)});
    }

    static RegressorSignal rbf_map(Matrix centers, double width, RegressorSignal input) {
        if (!(width > 0.0)) throw Error(ErrorKind::invalid_parameter, "rbf width must be positive");
        if (centers.rows() == 0) throw Error(ErrorKind::invalid_parameter, "rbf centers are empty");
        if (centers.cols() != input.dimension()) {
            throw Error(ErrorKind::invalid_parameter, "rbf input signal dimension does not match centers");
        }
        return RegressorSignal(
            RbfMap{std::move(centers), width, std::make_shared<const RegressorSignal>(std::move(input))});
    }

    static RegressorSignal piecewise_switching(Matrix levels, double period) {
        if (levels.rows() == 0 || levels.cols() == 0) {
            throw Error(ErrorKind::invalid_parameter, "switching signal needs at least one level");
        }
        if (!(period > 0.0)) throw Error(ErrorKind::invalid_parameter, "switch period must be positive");
        return RegressorSignal(Switching{std::move(levels), period});
    }

    static RegressorSignal seeded_random(std::uint64_t seed, Vector amplitudes, double hold) {
        if (amplitudes.size() == 0) throw Error(ErrorKind::invalid_parameter, "seeded-random signal is empty");
        if (!(hold > 0.0)) throw Error(ErrorKind::invalid_parameter, "hold interval must be positive");
        return RegressorSignal(SeededRandom{seed, std::move(amplitudes), hold});
    }

    [[nodiscard]] SignalKind kind() const noexcept { return static_cast<SignalKind>(params_.index()); }

    [[nodiscard]] Eigen::Index dimension() const {
        return std::visit(
            [](const auto& p) -> Eigen::Index {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, Constant>) return p.value.size();
                else if constexpr (std::is_same_v<T, SinusoidBank>) return p.amplitudes.size();
                else if constexpr (std::is_same_v<T, RbfMap>) return p.centers.rows();
                else if constexpr (std::is_same_v<T, Switching>) return p.levels.cols();
                else return p.amplitudes.size();
            },
            params_);
    }

    [[nodiscard]] Vector evaluate(double t) const {
        return std::visit(
            [t](const auto& p) -> Vector {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, Constant>) {
                    return p.value;
                } else if constexpr (std::is_same_v<T, SinusoidBank>) {
                    Vector out(p.amplitudes.size());
                    for (Eigen::Index i = 0; i < out.size(); ++i) {
                        out(i) = p.amplitudes(i) * std::sin(p.frequencies(i) * t + p.phases(i));
                    }
                    return out;
                } else if constexpr (std::is_same_v<T, RbfMap>) {
                    return rbf_features(p.centers, p.width, p.input->evaluate(t));
                } else if constexpr (std::is_same_v<T, Switching>) {
                    const auto slot = static_cast<std::int64_t>(std::floor(t / p.period));
                    const auto rows = static_cast<std::int64_t>(p.levels.rows());
                    const auto row = ((slot % rows) + rows) % rows;
                    return p.levels.row(row).transpose();
                } else {
                    const auto slot = static_cast<std::uint64_t>(std::max(0.0, std::floor(t / p.hold)));
                    const auto n = static_cast<std::uint64_t>(p.amplitudes.size());
                    Vector out(p.amplitudes.size());
                    for (std::uint64_t i = 0; i < n; ++i) {
                        const double u = SplitMix64::uniform_at(p.seed, slot * n + i);
                        out(static_cast<Eigen::Index>(i)) =
                            p.amplitudes(static_cast<Eigen::Index>(i)) * (2.0 * u - 1.0);
                    }
                    return out;
                }
            },
            params_);
    }

    [[nodiscard]] const auto& params() const noexcept { return params_; }

private:
    using Params = std::variant<Constant, SinusoidBank, RbfMap, Switching, SeededRandom>;
    explicit RegressorSignal(Params p) : params_(std::move(p)) {}

    Params params_;
};

struct PEWindowConfig {
    double window_length = 2.0 * 3.14159265358979323846;
    double quadrature_step = 1e-3;
    double eigen_tolerance = 0.0;
    /// Window starts advance by this many samples.
    std::size_t window_stride = 1;

    void validate() const {
        if (!(window_length > 0.0)) throw Error(ErrorKind::invalid_parameter, "PE window length must be positive");
        if (!(quadrature_step > 0.0) || !(quadrature_step < window_length)) {
            throw Error(ErrorKind::invalid_parameter, "PE quadrature step must lie in (0, window length)");
        }
        if (eigen_tolerance < 0.0) throw Error(ErrorKind::invalid_parameter, "eigen tolerance is negative");
        if (window_stride == 0) throw Error(ErrorKind::invalid_parameter, "window stride must be positive");
    }
};

/**
 * @brief Minimum over sliding windows of lambda_min of the trapezoidal Gram integral of phi phi'.
 *
 * Samples must be uniformly spaced at `cfg.quadrature_step`. A window spans
 * round(window_length / quadrature_step) intervals.
 */
inline double pe_level(const TimeSeries& samples, const PEWindowConfig& cfg) {
    cfg.validate();
    const std::size_t count = samples.size();
    const auto intervals = static_cast<std::size_t>(std::llround(cfg.window_length / cfg.quadrature_step));
    if (count < 2 || count < intervals + 1) {
        throw Error(ErrorKind::insufficient_data, "samples do not span one PE window");
    }
    const double h = cfg.quadrature_step;
    for (std::size_t i = 1; i < count; ++i) {
        if (std::abs((samples.t[i] - samples.t[i - 1]) - h) > 1e-6 * h) {
            throw Error(ErrorKind::invalid_input, "PE samples must be uniformly spaced at the quadrature step");
        }
    }
    const auto n = samples.x.front().size();
    for (const auto& v : samples.x) {
        if (v.size() != n) throw Error(ErrorKind::invalid_input, "PE samples have inconsistent dimensions");
    }

    // Interval j contributes h/2 (phi_j phi_j' + phi_{j+1} phi_{j+1}').
    auto interval_term = [&](std::size_t j) -> Matrix {
        return 0.5 * h *
               (samples.x[j] * samples.x[j].transpose() + samples.x[j + 1] * samples.x[j + 1].transpose());
    };
    auto full_window = [&](std::size_t start) {
        Matrix gram = Matrix::Zero(n, n);
        for (std::size_t j = start; j < start + intervals; ++j) gram += interval_term(j);
        return gram;
    };

    double level = std::numeric_limits<double>::infinity();
    Matrix gram = full_window(0);
    std::size_t slides_since_refresh = 0;
    for (std::size_t start = 0; start + intervals < count; start += cfg.window_stride) {
        if (start > 0) {
            if (cfg.window_stride == 1 && slides_since_refresh < intervals) {
                gram += interval_term(start + intervals - 1) - interval_term(start - 1);
                ++slides_since_refresh;
            } else {
                gram = full_window(start);
                slides_since_refresh = 0;
            }
        }
        level = std::min(level, min_eigenvalue_symmetric(gram));
    }
    return std::max(0.0, level);
}

/// Samples `sig` on [t0, t1] at the quadrature step and returns its PE level.
inline double pe_level(const RegressorSignal& sig, double t0, double t1, const PEWindowConfig& cfg) {
    cfg.validate();
    if (t0 < 0.0 || t1 <= t0) throw Error(ErrorKind::invalid_input, "PE interval must satisfy 0 <= t0 < t1");
    TimeSeries samples;
    const auto steps = static_cast<std::size_t>(std::floor((t1 - t0) / cfg.quadrature_step + 1e-9));
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = t0 + static_cast<double>(k) * cfg.quadrature_step;
        samples.push_back(t, sig.evaluate(t));
    }
    return pe_level(samples, cfg);
}

inline bool certifies_pe(double level, const PEWindowConfig& cfg) { return level > cfg.eigen_tolerance; }

}  // namespace adaptopt
