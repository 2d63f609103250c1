#include <cmath>

#include <gtest/gtest.h>

#include "adaptopt/analysis.hpp"
#include "adaptopt/signals.hpp"
#include "adaptopt/sim/integrator.hpp"

using namespace adaptopt;

namespace {

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

Matrix scalar(double a) { return Matrix::Constant(1, 1, a); }

DynamicErrorModel spr_model() {
    return DynamicErrorModel(scalar(-1), vec({1}), vec({1}), -Matrix::Identity(2, 2), vec({1, -1}));
}

}  // namespace

TEST(Lyapunov, ValueExamples) {
    const auto alg = LyapunovSpec::algebraic(1.0);
    EXPECT_EQ(lyapunov_value(alg, vec({0, 0})), 0.0);
    EXPECT_EQ(lyapunov_value(alg, vec({1, 1})), 2.0);
    EXPECT_EQ(lyapunov_value(LyapunovSpec::algebraic(4.0), vec({1, 1})), 0.5);
    EXPECT_EQ(lyapunov_value(alg, vec({2, 2})), 4.0 * lyapunov_value(alg, vec({1, 1})));

    const auto dyn = LyapunovSpec::for_model(1.0, spr_model());
    EXPECT_EQ(lyapunov_value(dyn, vec({0, 0}), vec({0}), vec({0, 0})), 0.0);
    EXPECT_THROW((void)lyapunov_value(dyn, vec({0, 0})), Error);
}

TEST(Lyapunov, DerivativeExamplesAndBound) {
    const auto dyn = LyapunovSpec::for_model(1.0, spr_model());
    EXPECT_EQ(lyapunov_derivative(dyn, vec({0}), vec({0, 0}), 0.0), 0.0);
    EXPECT_LT(lyapunov_derivative(dyn, vec({0.3}), vec({0, 0}), 0.0), 0.0);
    // P = 1, Pb = 1, Q = 2, Q_bar = I, |theta*|^2 = 2 -> bound 4.
    EXPECT_NEAR(dyn.alpha_bound(), 4.0, 1e-12);
    EXPECT_NEAR(dyn.dynamic->alpha, 8.0, 1e-12);

    const auto low = LyapunovSpec::for_model(1.0, spr_model(), 3.0);
    EXPECT_THROW((void)lyapunov_derivative(low, vec({1}), vec({1, 1}), 0.0), Error);
    bool violated = false;
    (void)lyapunov_derivative(low, vec({1}), vec({1, 1}), 0.0, BoundCheck::warn, &violated);
    EXPECT_TRUE(violated);
    EXPECT_THROW((void)lyapunov_derivative(LyapunovSpec::algebraic(1.0), vec({1}), vec({1}), 0.0), Error);
}

TEST(Lyapunov, AnalyticDerivativeMatchesCentralDifferenceOnSprRun) {
    const auto model = spr_model();
    const double gamma = 1.0;
    const auto spec = LyapunovSpec::for_model(gamma, model);
    auto phi = [](double t) { return vec({std::sin(t), std::cos(2 * t)}); };
    // Joint state [theta(2); e(1); phi_tilde(2)] under theta_dot = -gamma phi_hat e_y.
    auto field = [&](double t, const Vector& x) {
        const DynamicState s{x.segment(2, 1), x.tail(2)};
        const auto d = dynamic_derivatives(model, x.head(2), phi(t), s);
        Vector dx(5);
        dx << -gamma * d.phi_hat * d.e_y, d.e_dot, d.phi_tilde_dot;
        return dx;
    };
    auto V = [&](const Vector& x) {
        return lyapunov_value(spec, x.head(2) - model.theta_star(), x.segment(2, 1), x.tail(2));
    };
    auto analytic = [&](double t, const Vector& x) {
        const Vector e = x.segment(2, 1), pt = x.tail(2);
        (void)t;
        return lyapunov_derivative(spec, e, pt, lyapunov_delta(spec, e, pt));
    };
    for (double dt : {1e-2, 5e-3}) {
        Vector x(5);
        x << 0, 0, 0.5, 0.5, -0.5;
        std::vector<Vector> xs{x};
        const int steps = static_cast<int>(std::lround(3.0 / dt));
        for (int k = 0; k < steps; ++k) {
            x = sim::rk4_step(field, x, k * dt, dt);
            xs.push_back(x);
        }
        double worst = 0.0;
        for (std::size_t k = 1; k + 1 < xs.size(); ++k) {
            const double fd = (V(xs[k + 1]) - V(xs[k - 1])) / (2 * dt);
            worst = std::max(worst, std::abs(fd - analytic(static_cast<double>(k) * dt, xs[k])));
        }
        EXPECT_LT(worst, 10.0 * dt * dt) << "dt " << dt;
    }
}

TEST(DiscreteRegret, Examples) {
    const auto set = ConvexFeasibleSet::box(vec({-1}), vec({1}));
    const QuadraticCost sq{scalar(2), vec({0}), 0.0};
    auto rec = discrete_regret(std::vector<QuadraticCost>{sq}, {vec({1})}, set);
    EXPECT_NEAR(rec.regret, 1.0, 1e-15);
    EXPECT_NEAR(rec.theta_best(0), 0.0, 1e-15);

    const auto ball = ConvexFeasibleSet::ball(vec({0, 0}), 1.0);
    std::vector<QuadraticCost> costs;
    costs.push_back(QuadraticCost::regression(vec({1, 0}), 0.3));
    costs.push_back(QuadraticCost::regression(vec({0, 1}), -0.2));
    rec = discrete_regret(costs, {vec({0.3, -0.2}), vec({0.3, -0.2})}, ball);
    EXPECT_NEAR(rec.regret, 0.0, 1e-15);
    EXPECT_THROW((void)discrete_regret(std::vector<QuadraticCost>{}, {}, ball), Error);
}

TEST(DiscreteRegret, QuadraticComparatorMatchesLattice) {
    const auto box = ConvexFeasibleSet::box(vec({-1, -1}), vec({1, 1}));
    SplitMix64 rng(404);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<QuadraticCost> costs;
        std::vector<Vector> iterates;
        for (int k = 0; k < 5; ++k) {
            costs.push_back(QuadraticCost::regression(vec({rng.uniform(-2, 2), rng.uniform(-2, 2)}),
                                                      rng.uniform(-3, 3)));
            iterates.push_back(vec({rng.uniform(-1, 1), rng.uniform(-1, 1)}));
        }
        const auto rec = discrete_regret(costs, iterates, box);
        double alg = 0.0, best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 5; ++k) alg += costs[static_cast<std::size_t>(k)].value(iterates[static_cast<std::size_t>(k)]);
        for (int i = 0; i <= 400; ++i) {
            for (int j = 0; j <= 400; ++j) {
                const Vector x = vec({-1 + i / 200.0, -1 + j / 200.0});
                double s = 0.0;
                for (const auto& c : costs) s += c.value(x);
                best = std::min(best, s);
            }
        }
        EXPECT_LE(rec.best_total, best + 1e-12);
        EXPECT_NEAR(rec.regret, alg - best, 0.05);
    }
}

TEST(DiscreteRegret, GridComparatorAgreesWithExactOnQuadratics) {
    const auto ball = ConvexFeasibleSet::ball(vec({0.2, 0}), 0.7);
    SplitMix64 rng(9);
    std::vector<QuadraticCost> costs;
    std::vector<CostFunction> fns;
    std::vector<Vector> iterates;
    for (int k = 0; k < 6; ++k) {
        costs.push_back(QuadraticCost::regression(vec({rng.uniform(-2, 2), rng.uniform(-2, 2)}), rng.uniform(-3, 3)));
        const QuadraticCost c = costs.back();
        fns.push_back([c](const Vector& x) { return c.value(x); });
        iterates.push_back(vec({0, 0}));
    }
    const auto exact = discrete_regret(costs, iterates, ball);
    const auto grid = discrete_regret(fns, iterates, ball);
    EXPECT_NEAR(grid.regret, exact.regret, 1e-8);
}

TEST(DiscreteRegret, NondecreasingOnRealizableStreams) {
    const auto ball = ConvexFeasibleSet::ball(vec({0, 0}), 1.0);
    const Vector theta_star = vec({0.5, -0.4});
    SplitMix64 rng(12);
    std::vector<QuadraticCost> costs;
    std::vector<Vector> iterates;
    Vector theta = vec({0, 0});
    for (long k = 1; k <= 200; ++k) {
        const Vector phi = vec({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        costs.push_back(QuadraticCost::regression(phi, theta_star.dot(phi)));
        iterates.push_back(theta);
        theta = projected_gd_step(theta, costs.back().gradient(theta), StepSchedule{ScheduleKind::inverse_sqrt, 1.0},
                                  k, ball);
    }
    const auto curve = regret_curve(costs, iterates, ball);
    EXPECT_TRUE(is_nondecreasing(curve, 1e-12));
    EXPECT_NEAR(curve.back(), discrete_regret(costs, iterates, ball).regret, 1e-12);
}

TEST(ContinuousRegret, ExponentialError) {
    TimeSeries alg, base;
    const double dt = 1e-3;
    for (int i = 0; i <= 5000; ++i) {
        const double t = i * dt;
        alg.push_back(t, vec({std::exp(-t)}));
        base.push_back(t, vec({0}));
    }
    const auto curve = continuous_regret(alg, scalar(1), base);
    for (double T : {0.5, 1.0, 2.0, 5.0}) {
        EXPECT_NEAR(value_at(alg.t, curve, T), (1 - std::exp(-2 * T)) / 2, 1e-6) << T;
    }
    EXPECT_NEAR(curve.back(), 0.5, 1e-4);

    const auto twice = continuous_regret(alg, scalar(2), base);
    for (std::size_t i = 0; i < curve.size(); i += 250) EXPECT_NEAR(twice[i], 2 * curve[i], 1e-15);

    const auto self = continuous_regret(alg, scalar(1), alg);
    for (double r : self) EXPECT_EQ(r, 0.0);

    TimeSeries shifted = base;
    shifted.t[3] += 0.1;
    EXPECT_THROW((void)continuous_regret(alg, scalar(1), shifted), Error);
    TimeSeries shorter = base;
    shorter.t.pop_back();
    shorter.x.pop_back();
    EXPECT_THROW((void)continuous_regret(alg, scalar(1), shorter), Error);
}

TEST(Jensen, Examples) {
    const QuadraticCost cost{scalar(1), vec({-1}), 0.5};  // (theta - 1)^2 / 2
    const auto unbounded = ConvexFeasibleSet::unbounded();
    auto gap = jensen_gap(cost, {vec({0.3}), vec({0.3}), vec({0.3})}, unbounded);
    EXPECT_NEAR(gap.lhs, gap.rhs, 1e-15);
    EXPECT_TRUE(gap.holds());

    gap = jensen_gap(cost, {vec({-1}), vec({2})}, unbounded);
    EXPECT_LT(gap.lhs, gap.rhs);

    std::vector<Vector> iterates;
    Vector theta = vec({0});
    for (long k = 1; k <= 20; ++k) {
        theta = gd_step(theta, cost.gradient(theta), StepSchedule{ScheduleKind::constant, 0.1}, k);
        iterates.push_back(theta);
    }
    gap = jensen_gap(cost, iterates, unbounded);
    double avg = 0.0, mean_cost = 0.0;
    for (const auto& x : iterates) {
        avg += x(0) / 20.0;
        mean_cost += 0.5 * std::pow(x(0) - 1.0, 2) / 20.0;
    }
    EXPECT_NEAR(gap.lhs, 0.5 * std::pow(avg - 1.0, 2), 1e-15);
    EXPECT_NEAR(gap.rhs, mean_cost, 1e-15);
    EXPECT_TRUE(gap.holds());
}

TEST(ConvergenceFit, Examples) {
    std::vector<double> t, v, flat;
    for (int i = 0; i <= 100; ++i) {
        t.push_back(i * 0.05);
        v.push_back(std::exp(-2.0 * t.back()));
        flat.push_back(0.7);
    }
    auto fit = convergence_fit(t, v);
    EXPECT_NEAR(fit.slope, -2.0, 1e-10);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    fit = convergence_fit(t, flat);
    EXPECT_NEAR(fit.slope, 0.0, 1e-14);

    v[50] = 0.0;
    EXPECT_THROW((void)convergence_fit(t, v), Error);
    EXPECT_THROW((void)convergence_fit({1.0}, {1.0}), Error);
}

TEST(ConvergenceFit, UsesOnlyTheTrailingWindow) {
    // Flat for the first 20%, then decaying at rate 1.
    std::vector<double> t, v;
    for (int i = 0; i <= 1000; ++i) {
        t.push_back(i * 0.01);
        v.push_back(t.back() < 2.0 ? 1.0 : std::exp(-(t.back() - 2.0)));
    }
    const auto fit = convergence_fit(t, v, 0.8);
    EXPECT_NEAR(fit.slope, -1.0, 1e-9);
}
