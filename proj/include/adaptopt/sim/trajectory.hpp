/**
 * @file trajectory.hpp
 * @brief Logged run records and their CSV form.
 */
#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "adaptopt/core.hpp"

namespace adaptopt::sim {

struct TrajectoryRecord {
    double t = 0.0;  ///< time, or the step index k for discrete runs
    Vector theta;
    double e_y = 0.0;
    double theta_error = 0.0;  ///< |theta - theta*|
    double lyapunov = 0.0;
    double cost = 0.0;
    Vector e;          ///< dynamic model state
    Vector phi_tilde;  ///< dynamic model filter error
    double delta = 0.0;
    double gain_norm = 0.0;  ///< |Gamma|_F
    Vector vartheta;
    Vector moment;   ///< m_k
    Vector v_diag;   ///< diag V_k
};

struct Trajectory {
    Eigen::Index parameters = 0;
    Eigen::Index model_states = 0;  ///< 0 for the algebraic model
    bool has_gain = false;
    bool has_vartheta = false;
    bool has_moments = false;
    std::vector<TrajectoryRecord> records;

    [[nodiscard]] std::vector<std::string> columns() const {
        std::vector<std::string> cols{"t"};
        for (Eigen::Index i = 0; i < parameters; ++i) cols.push_back("theta_" + std::to_string(i));
        for (const char* c : {"e_y", "theta_err_norm", "V", "cost"}) cols.emplace_back(c);
        if (model_states > 0) {
            for (Eigen::Index i = 0; i < model_states; ++i) cols.push_back("e_" + std::to_string(i));
            cols.emplace_back("phi_tilde_norm");
            cols.emplace_back("delta");
        }
        if (has_gain) cols.emplace_back("gain_fro");
        if (has_vartheta) {
            for (Eigen::Index i = 0; i < parameters; ++i) cols.push_back("vartheta_" + std::to_string(i));
        }
        if (has_moments) {
            for (Eigen::Index i = 0; i < parameters; ++i) cols.push_back("m_" + std::to_string(i));
            for (Eigen::Index i = 0; i < parameters; ++i) cols.push_back("v_" + std::to_string(i));
        }
        return cols;
    }

    [[nodiscard]] std::vector<double> times() const {
        std::vector<double> out;
        out.reserve(records.size());
        for (const auto& r : records) out.push_back(r.t);
        return out;
    }

    [[nodiscard]] std::vector<double> theta_errors() const {
        std::vector<double> out;
        out.reserve(records.size());
        for (const auto& r : records) out.push_back(r.theta_error);
        return out;
    }
};

/// 17 significant digits, so every double round-trips.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(std::ostream& os, const Trajectory& traj) {
    const auto cols = traj.columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    std::string line;
    for (const auto& r : traj.records) {
        line.clear();
        auto put = [&line](double v) {
            if (!line.empty()) line += ',';
            line += format_number(v);
        };
        put(r.t);
        for (Eigen::Index i = 0; i < traj.parameters; ++i) put(r.theta(i));
        put(r.e_y);
        put(r.theta_error);
        put(r.lyapunov);
        put(r.cost);
        if (traj.model_states > 0) {
            for (Eigen::Index i = 0; i < traj.model_states; ++i) put(r.e(i));
            put(r.phi_tilde.norm());
            put(r.delta);
        }
        if (traj.has_gain) put(r.gain_norm);
        if (traj.has_vartheta) {
            for (Eigen::Index i = 0; i < traj.parameters; ++i) put(r.vartheta(i));
        }
        if (traj.has_moments) {
            for (Eigen::Index i = 0; i < traj.parameters; ++i) put(r.moment(i));
            for (Eigen::Index i = 0; i < traj.parameters; ++i) put(r.v_diag(i));
        }
        os << line << '\n';
    }
}

}  // namespace adaptopt::sim
