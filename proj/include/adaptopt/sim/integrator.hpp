#pragma once

#include <string>

#include "adaptopt/core.hpp"

namespace adaptopt::sim {

/// Classical fourth-order Runge-Kutta step for x' = f(t, x). A non-finite stage throws
/// ErrorKind::diverged.
template <class Field>
Vector rk4_step(Field&& f, const Vector& x, double t, double dt) {
    if (!(dt > 0.0)) throw Error(ErrorKind::invalid_parameter, "rk4 step must be positive");
    auto checked = [](Vector k, int stage, double when) {
        if (!k.allFinite()) {
            throw Error(ErrorKind::diverged,
                        "non-finite derivative at stage " + std::to_string(stage) + ", t = " + std::to_string(when));
        }
        return k;
    };
    const double h2 = 0.5 * dt;
    const Vector k1 = checked(f(t, x), 1, t);
    const Vector k2 = checked(f(t + h2, x + h2 * k1), 2, t + h2);
    const Vector k3 = checked(f(t + h2, x + h2 * k2), 3, t + h2);
    const Vector k4 = checked(f(t + dt, x + dt * k3), 4, t + dt);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace adaptopt::sim
