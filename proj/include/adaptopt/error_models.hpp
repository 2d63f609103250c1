/**
 * @file error_models.hpp
 * @brief Algebraic and dynamic (SPR) output-error models with KYP certificates.
 *
 * The algebraic model is e_y = (theta - theta*)' phi. The dynamic model realizes
 * W(s) = c (sI - A)^{-1} b with a decaying regressor-filter error phi_tilde:
 *
 *     de/dt         = A e + b (theta - theta*)' phi_hat + b theta*' phi_tilde
 *     dphi_tilde/dt = Lambda phi_tilde,     phi_hat = phi + phi_tilde
 *     e_y           = c e
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "adaptopt/core.hpp"

namespace adaptopt {

struct AlgebraicErrorModel {
    Vector theta_star;
};

/// e_y = (theta - theta*)' phi
inline double algebraic_output(const Vector& theta, const AlgebraicErrorModel& model, const Vector& phi) {
    require_same_size(theta, model.theta_star, "algebraic_output theta");
    require_same_size(theta, phi, "algebraic_output phi");
    return (theta - model.theta_star).dot(phi);
}

/// Residual tolerance for every certificate identity.
inline constexpr double kCertificateTolerance = 1e-8;

struct SPRCertificate {
    Matrix P;
    Matrix Q;
    Matrix P_bar;
    Matrix Q_bar;
    /// Non-fatal findings, e.g. a rank-deficient controllability matrix.
    std::vector<std::string> warnings;
};

/**
 * @brief Solves A'P + PA = -Q for symmetric P.
 *
 * Symmetric A goes through its eigendecomposition; otherwise the vectorized
 * (Kronecker) system is solved directly, which limits general A to modest sizes.
 */
inline Matrix solve_lyapunov(const Matrix& A, const Matrix& Q) {
    const auto n = A.rows();
    if (A.cols() != n || Q.rows() != n || Q.cols() != n) {
        throw Error(ErrorKind::invalid_input, "lyapunov: matrix shapes disagree");
    }
    if (!is_hurwitz(A)) throw Error(ErrorKind::not_stable, "lyapunov: matrix is not Hurwitz");

    if ((A - A.transpose()).cwiseAbs().maxCoeff() == 0.0) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(A);
        const Matrix& U = es.eigenvectors();
        const Vector& d = es.eigenvalues();
        Matrix qt = U.transpose() * Q * U;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) qt(i, j) = -qt(i, j) / (d(i) + d(j));
        }
        return symmetrized(U * qt * U.transpose());
    }

    if (n > 40) throw Error(ErrorKind::invalid_parameter, "lyapunov: non-symmetric matrices above 40x40 unsupported");
    const Matrix I = Matrix::Identity(n, n);
    // vec(A'P + PA) = (I kron A' + A' kron I) vec(P), column-major vec.
    Matrix K = Matrix::Zero(n * n, n * n);
    const Matrix At = A.transpose();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            K.block(i * n, j * n, n, n) += I(i, j) * At;
            K.block(i * n, j * n, n, n) += At(i, j) * I;
        }
    }
    const Vector rhs = -Eigen::Map<const Vector>(Q.data(), n * n);
    const Vector p = K.colPivHouseholderQr().solve(rhs);
    return symmetrized(Eigen::Map<const Matrix>(p.data(), n, n));
}

/// Re[c (jw I - A)^{-1} b]
inline double real_part_frequency_response(const Matrix& A, const Vector& b, const Vector& c, double omega) {
    using cd = std::complex<double>;
    Eigen::MatrixXcd M = -A.cast<cd>();
    M.diagonal().array() += cd(0.0, omega);
    const Eigen::VectorXcd x = M.partialPivLu().solve(b.cast<cd>());
    return (c.cast<cd>().transpose() * x)(0).real();
}

/// Options for the positive-realness grid test.
struct SPRTestOptions {
    double omega_min = 1e-3;
    double omega_max = 1e3;
    int grid_points = 200;
    double tolerance = 1e-9;
};

namespace detail {

/// Orthonormal basis of the symmetric n x n matrices under the Frobenius inner product.
inline std::vector<Matrix> symmetric_basis(Eigen::Index n) {
    std::vector<Matrix> basis;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            Matrix E = Matrix::Zero(n, n);
            if (i == j) {
                E(i, i) = 1.0;
            } else {
                E(i, j) = E(j, i) = 1.0 / std::sqrt(2.0);
            }
            basis.push_back(std::move(E));
        }
    }
    return basis;
}

inline std::pair<double, Vector> min_eigenpair(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m));
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

inline int matrix_rank(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    const double tol = std::max(m.rows(), m.cols()) * s(0) * std::numeric_limits<double>::epsilon() * 16;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > tol ? 1 : 0;
    return r;
}

}  // namespace detail

/**
 * @brief Certifies that W(s) = c (sI - A)^{-1} b is strictly positive real.
 *
 * Steps: Hurwitz check, positive-realness on a log-spaced frequency grid, then the
 * KYP matrices. Pb = c' is solved in least squares over symmetric P; the remaining
 * freedom is searched for the largest min(lambda_min(P), lambda_min(Q)) with
 * Q = -(A'P + PA). That margin is concave in P, so projected subgradient ascent is enough
 * at the sizes used here. Only P and Q are filled; DynamicErrorModel adds P_bar, Q_bar.
 */
inline SPRCertificate check_spr(const Matrix& A, const Vector& b, const Vector& c,
                                const SPRTestOptions& opts = {}) {
    const auto n = A.rows();
    if (A.cols() != n || b.size() != n || c.size() != n || n == 0) {
        throw Error(ErrorKind::invalid_input, "check_spr: (A, b, c) shapes disagree");
    }
    if (!is_hurwitz(A)) throw Error(ErrorKind::not_stable, "A is not Hurwitz");

    SPRCertificate cert;
    {
        Matrix ctrb(n, n), obsv(n, n);
        Vector v = b;
        Eigen::RowVectorXd w = c.transpose();
        for (Eigen::Index k = 0; k < n; ++k) {
            ctrb.col(k) = v;
            obsv.row(k) = w;
            v = A * v;
            w = w * A;
        }
        if (detail::matrix_rank(ctrb) < n) cert.warnings.emplace_back("(A, b) is not controllable");
        if (detail::matrix_rank(obsv) < n) cert.warnings.emplace_back("(A, c) is not observable");
    }

    const double log_lo = std::log10(opts.omega_min);
    const double log_hi = std::log10(opts.omega_max);
    for (int k = 0; k < opts.grid_points; ++k) {
        const double frac = opts.grid_points == 1 ? 0.0 : static_cast<double>(k) / (opts.grid_points - 1);
        const double omega = std::pow(10.0, log_lo + frac * (log_hi - log_lo));
        const double re = real_part_frequency_response(A, b, c, omega);
        if (!(re > opts.tolerance)) {
            throw Error(ErrorKind::not_spr, "Re W(jw) = " + std::to_string(re) + " at w = " + std::to_string(omega));
        }
    }

    const auto basis = detail::symmetric_basis(n);
    const auto m = static_cast<Eigen::Index>(basis.size());
    Matrix constraint(n, m);
    for (Eigen::Index k = 0; k < m; ++k) constraint.col(k) = basis[static_cast<std::size_t>(k)] * b;

    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(constraint);
    const Vector z0 = cod.solve(c);
    if ((constraint * z0 - c).norm() > kCertificateTolerance) {
        throw Error(ErrorKind::not_spr, "no symmetric P satisfies Pb = c'");
    }
    Eigen::JacobiSVD<Matrix> svd(constraint, Eigen::ComputeFullV);
    const int rank = detail::matrix_rank(constraint);
    const Matrix null_basis = svd.matrixV().rightCols(m - rank);

    auto assemble = [&](const Vector& z) {
        Matrix P = Matrix::Zero(n, n);
        for (Eigen::Index k = 0; k < m; ++k) P += z(k) * basis[static_cast<std::size_t>(k)];
        return P;
    };
    auto lyap_of = [&](const Matrix& P) -> Matrix { return symmetrized(-(A.transpose() * P + P * A)); };

    const Matrix P0 = assemble(z0);
    std::vector<Matrix> directions;
    for (Eigen::Index j = 0; j < null_basis.cols(); ++j) directions.push_back(assemble(null_basis.col(j)));

    Vector w = Vector::Zero(static_cast<Eigen::Index>(directions.size()));
    auto p_of = [&](const Vector& ww) {
        Matrix P = P0;
        for (Eigen::Index j = 0; j < ww.size(); ++j) P += ww(j) * directions[static_cast<std::size_t>(j)];
        return P;
    };

    Matrix best_P = P0;
    double best_margin = std::min(detail::min_eigenpair(P0).first, detail::min_eigenpair(lyap_of(P0)).first);
    if (!directions.empty()) {
        const double step0 = std::max(1.0, P0.norm());
        const double radius = 1e3 * step0;
        constexpr int kIterations = 4000;
        for (int it = 1; it <= kIterations; ++it) {
            const Matrix P = p_of(w);
            const auto [lp, vp] = detail::min_eigenpair(P);
            const auto [lq, vq] = detail::min_eigenpair(lyap_of(P));
            const double margin = std::min(lp, lq);
            if (margin > best_margin) {
                best_margin = margin;
                best_P = P;
            }
            Vector g(w.size());
            for (Eigen::Index j = 0; j < w.size(); ++j) {
                const Matrix& D = directions[static_cast<std::size_t>(j)];
                g(j) = lp <= lq ? vp.dot(D * vp) : vq.dot(lyap_of(D) * vq);
            }
            const double gn = g.norm();
            if (gn == 0.0) break;
            w += (step0 / std::sqrt(static_cast<double>(it))) * g / gn;
            if (w.norm() > radius) w *= radius / w.norm();
        }
    }

    const Matrix Q = lyap_of(best_P);
    const double scale = std::max(1.0, best_P.norm());
    if (!(detail::min_eigenpair(best_P).first > 1e-12 * scale) ||
        !(detail::min_eigenpair(Q).first > 1e-12 * scale)) {
        throw Error(ErrorKind::not_spr, "KYP search found no positive definite (P, Q)");
    }
    cert.P = best_P;
    cert.Q = Q;
    return cert;
}

struct CertificateResiduals {
    double lyapunov = 0.0;       ///< max |A'P + PA + Q|
    double kyp_coupling = 0.0;   ///< max |Pb - c'|
    double filter_lyapunov = 0.0;  ///< max |Lambda'P_bar + P_bar Lambda + Q_bar|
};

inline CertificateResiduals certificate_residuals(const SPRCertificate& cert, const Matrix& A, const Vector& b,
                                                  const Vector& c, const Matrix& Lambda) {
    CertificateResiduals r;
    r.lyapunov = (A.transpose() * cert.P + cert.P * A + cert.Q).cwiseAbs().maxCoeff();
    r.kyp_coupling = (cert.P * b - c).cwiseAbs().maxCoeff();
    if (cert.P_bar.size() > 0) {
        r.filter_lyapunov =
            (Lambda.transpose() * cert.P_bar + cert.P_bar * Lambda + cert.Q_bar).cwiseAbs().maxCoeff();
    }
    return r;
}

struct DynamicState {
    Vector e;
    Vector phi_tilde;
};

struct DynamicDerivatives {
    Vector e_dot;
    Vector phi_tilde_dot;
    double e_y = 0.0;
    Vector phi_hat;
    /// 2 e'Pb theta*' phi_tilde
    double delta = 0.0;
};

/**
 * @brief Dynamic SPR error model. Parameters are fixed after construction; the
 * evolving (e, phi_tilde) state belongs to the simulation that owns the model.
 */
class DynamicErrorModel {
public:
    DynamicErrorModel(Matrix A, Vector b, Vector c, Matrix Lambda, Vector theta_star,
                      std::optional<Matrix> Q_bar = std::nullopt)
        : A_(std::move(A)), b_(std::move(b)), c_(std::move(c)), Lambda_(std::move(Lambda)),
          theta_star_(std::move(theta_star)) {
        const auto N = theta_star_.size();
        if (Lambda_.rows() != N || Lambda_.cols() != N) {
            throw Error(ErrorKind::invalid_input, "Lambda must be N x N with N = dim(theta*)");
        }
        if (!is_hurwitz(Lambda_)) throw Error(ErrorKind::not_stable, "Lambda is not Hurwitz");
        cert_ = check_spr(A_, b_, c_);
        cert_.Q_bar = Q_bar.value_or(Matrix::Identity(N, N));
        if (min_eigenvalue_symmetric(cert_.Q_bar) <= 0.0) {
            throw Error(ErrorKind::invalid_parameter, "Q_bar must be positive definite");
        }
        cert_.P_bar = solve_lyapunov(Lambda_, cert_.Q_bar);
        const auto r = certificate_residuals(cert_, A_, b_, c_, Lambda_);
        if (r.lyapunov > kCertificateTolerance || r.kyp_coupling > kCertificateTolerance ||
            r.filter_lyapunov > kCertificateTolerance) {
            throw Error(ErrorKind::not_spr, "certificate residuals exceed tolerance");
        }
    }

    [[nodiscard]] Eigen::Index state_dimension() const noexcept { return A_.rows(); }
    [[nodiscard]] Eigen::Index parameter_dimension() const noexcept { return theta_star_.size(); }
    [[nodiscard]] const Matrix& A() const noexcept { return A_; }
    [[nodiscard]] const Vector& b() const noexcept { return b_; }
    [[nodiscard]] const Vector& c() const noexcept { return c_; }
    [[nodiscard]] const Matrix& Lambda() const noexcept { return Lambda_; }
    [[nodiscard]] const Vector& theta_star() const noexcept { return theta_star_; }
    [[nodiscard]] const SPRCertificate& certificate() const noexcept { return cert_; }

    /// 4 |Pb|^2 |theta*|^2 / (lambda_min(Q) lambda_min(Q_bar)); V decreases for any alpha above it.
    [[nodiscard]] double alpha_lower_bound() const {
        const double pb = (cert_.P * b_).squaredNorm();
        return 4.0 * pb * theta_star_.squaredNorm() /
               (min_eigenvalue_symmetric(cert_.Q) * min_eigenvalue_symmetric(cert_.Q_bar));
    }

    /// Twice the lower bound, or 1 when theta* = 0 makes the bound vanish.
    [[nodiscard]] double default_alpha() const {
        const double bound = alpha_lower_bound();
        return bound > 0.0 ? 2.0 * bound : 1.0;
    }

    [[nodiscard]] double output(const Vector& e) const { return c_.dot(e); }

    [[nodiscard]] double delta(const Vector& e, const Vector& phi_tilde) const {
        return 2.0 * e.dot(cert_.P * b_) * theta_star_.dot(phi_tilde);
    }

private:
    Matrix A_;
    Vector b_;
    Vector c_;
    Matrix Lambda_;
    Vector theta_star_;
    SPRCertificate cert_;
};

inline DynamicDerivatives dynamic_derivatives(const DynamicErrorModel& model, const Vector& theta,
                                              const Vector& phi, const DynamicState& state) {
    require_same_size(theta, model.theta_star(), "dynamic_derivatives theta");
    require_same_size(theta, phi, "dynamic_derivatives phi");
    require_same_size(phi, state.phi_tilde, "dynamic_derivatives phi_tilde");
    if (state.e.size() != model.state_dimension()) {
        throw Error(ErrorKind::invalid_input, "dynamic_derivatives: state dimension mismatch");
    }
    DynamicDerivatives d;
    d.phi_hat = phi + state.phi_tilde;
    const double drive = (theta - model.theta_star()).dot(d.phi_hat) + model.theta_star().dot(state.phi_tilde);
    d.e_dot = model.A() * state.e + model.b() * drive;
    d.phi_tilde_dot = model.Lambda() * state.phi_tilde;
    d.e_y = model.output(state.e);
    d.delta = model.delta(state.e, state.phi_tilde);
    return d;
}

}  // namespace adaptopt
