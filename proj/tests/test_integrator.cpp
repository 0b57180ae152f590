#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "razumikhin/basin.hpp"
#include "razumikhin/errors.hpp"
#include "razumikhin/integrator.hpp"

namespace raz {
namespace {

double example2_exact(const ModelParams& p, double delta, double t) {
  return p.sigma * delta / p.mu + delta * std::exp(p.mu * t) * (p.mu - p.sigma) / p.mu;
}

double example2_max_error(double dt) {
  const ModelParams p(0.4, -0.6, 1, 1);
  const double delta = 0.5;
  SimConfig cfg;
  cfg.dt = dt;
  cfg.t_end = 5.0;
  const Trajectory tr = simulate(p, make_example2_phi(delta, p), cfg);
  double err = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    err = std::max(err, std::abs(tr.values[i] - example2_exact(p, delta, tr.times[i])));
  }
  return err;
}

TEST(DeviatedArgument, Examples) {
  EXPECT_DOUBLE_EQ(deviated_argument(0.0, 0.3, ModelParams(0, -1, 1, 1)), -1.3);
  EXPECT_DOUBLE_EQ(deviated_argument(2.0, -2.0 / 3.0, ModelParams(0, -1, 2, 3)), 2.0);
  EXPECT_DOUBLE_EQ(deviated_argument(1.0, 0.0, ModelParams(0, -1, 1, 5)), 0.0);
}

TEST(InitialFunction, Ramp) {
  const InitialFunction f = InitialFunction::ramp(-1.0, -2.0, 3.0);
  EXPECT_DOUBLE_EQ(f(-5.0), -1.0);
  EXPECT_DOUBLE_EQ(f(-1.0), 1.0);
  EXPECT_DOUBLE_EQ(f(0.0), 3.0);
  EXPECT_DOUBLE_EQ(f.sup_norm(), 3.0);
  EXPECT_THROW(static_cast<void>(f(0.1)), DomainError);
  EXPECT_THROW(InitialFunction::ramp(0.0, 0.5, 1.0), DomainError);
  EXPECT_THROW(InitialFunction::ramp(0.0, 0.0, 1.0), DomainError);
  EXPECT_NO_THROW(InitialFunction::ramp(1.0, 0.0, 1.0));
}

TEST(Example1, Construction) {
  const ModelParams p(0, -1.2, 1, 1);
  const InitialFunction phi = make_example1_phi(0.9, p);
  EXPECT_DOUBLE_EQ(phi(-2.0), -0.9);
  EXPECT_DOUBLE_EQ(phi(0.0), 0.9);
  EXPECT_DOUBLE_EQ(phi(-1.9), -0.9);
  EXPECT_THROW(make_example1_phi(0.5, p), NotApplicableError);
  EXPECT_THROW(make_example1_phi(1.1, p), NotApplicableError);
  EXPECT_THROW(make_example1_phi(0.9, ModelParams(0.1, -1.2, 1, 1)), NotApplicableError);
}

TEST(Example1, ExactLinearGrowth) {
  const ModelParams p(0, -1.2, 1, 1);
  SimConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 2.0;
  const Trajectory tr = simulate(p, make_example1_phi(0.9, p), cfg);
  double err = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    err = std::max(err, std::abs(tr.values[i] - 0.9 * (1.0 + 1.2 * tr.times[i])));
  }
  EXPECT_LT(err, 1e-10);
  EXPECT_NEAR(tr(1.0), 1.98, 1e-10);
  EXPECT_NEAR(tr(2.0), 3.06, 1e-10);
  EXPECT_NEAR(tr(1.005), 0.9 * (1.0 + 1.2 * 1.005), 1e-10);
}

TEST(Example2, Construction) {
  const ModelParams p(0.4, -0.6, 1, 1);
  const InitialFunction phi = make_example2_phi(0.5, p);
  EXPECT_DOUBLE_EQ(phi(0.0), 0.5);
  const double edge = p.mu * q_of_delta(p, 0.5);
  EXPECT_LT(edge, 0.0);
  EXPECT_DOUBLE_EQ(phi(edge), -0.5);
  EXPECT_THROW(make_example2_phi(0.2, p), NotApplicableError);
  EXPECT_THROW(make_example2_phi(0.5, ModelParams(-0.1, -0.6, 1, 1)), NotApplicableError);
}

TEST(Example2, MatchesClosedForm) {
  const ModelParams p(0.4, -0.6, 1, 1);
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0;
  const Trajectory tr = simulate(p, make_example2_phi(0.5, p), cfg);
  EXPECT_NEAR(tr(5.0), example2_exact(p, 0.5, 5.0), 1e-6);
  EXPECT_LT(example2_max_error(1e-3), 1e-6);
}

TEST(Example2, FourthOrderConvergence) {
  const double e1 = example2_max_error(0.1);
  const double e2 = example2_max_error(0.05);
  const double e3 = example2_max_error(0.025);
  EXPECT_NEAR(e1 / e2, 16.0, 2.0);
  EXPECT_NEAR(e2 / e3, 16.0, 2.0);
}

TEST(Simulate, ZeroStaysZero) {
  SimConfig cfg;
  cfg.t_end = 20.0;
  const Trajectory tr = simulate(ModelParams(0.3, -2.0, 1, 1), InitialFunction::constant(0.0), cfg);
  EXPECT_EQ(tr.max_abs(), 0.0);
  EXPECT_FALSE(escape_time(tr, 1e-6).has_value());
}

TEST(Simulate, HermiteHitsNodes) {
  SimConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 3.0;
  const Trajectory tr = simulate(ModelParams(-0.5, -1.0, 1, 0.5), InitialFunction::ramp(0.2, -1.0, 0.6), cfg);
  for (std::size_t i = 0; i < tr.times.size(); ++i) EXPECT_EQ(tr(tr.times[i]), tr.values[i]);
}

TEST(Simulate, Preconditions) {
  const ModelParams p(0, -1, 1, 1);
  SimConfig cfg;
  cfg.dt = 0.2;
  EXPECT_THROW(simulate(p, InitialFunction::constant(0.1), cfg), DomainError);
  cfg.dt = 0.1;
  cfg.t_end = 0.0;
  EXPECT_THROW(simulate(p, InitialFunction::constant(0.1), cfg), DomainError);
}

TEST(EscapeTime, Example1) {
  const ModelParams p(0, -1.2, 1, 1);
  SimConfig cfg;
  cfg.t_end = 2.0;
  const Trajectory tr = simulate(p, make_example1_phi(0.9, p), cfg);
  const auto t = escape_time(tr, 2.0);
  ASSERT_TRUE(t.has_value());
  EXPECT_NEAR(*t, (2.0 / 0.9 - 1.0) / 1.2, 1e-9);
  EXPECT_NEAR(std::abs(tr(*t)), 2.0, 1e-8);
  EXPECT_EQ(escape_time(tr, 0.5), 0.0);
  EXPECT_FALSE(escape_time(tr, 10.0).has_value());
}

TEST(EscapeTime, RecordedAndStops) {
  const ModelParams p(0, -1.2, 1, 1);
  SimConfig cfg;
  cfg.t_end = 5.0;
  cfg.escape_radius = 2.0;
  cfg.stop_at_escape = true;
  const Trajectory tr = simulate(p, make_example1_phi(0.9, p), cfg);
  ASSERT_TRUE(tr.escape_time.has_value());
  EXPECT_NEAR(*tr.escape_time, (2.0 / 0.9 - 1.0) / 1.2, 1e-9);
  EXPECT_LT(tr.times.back(), 1.1);
}

TEST(Simulate, InvariantInterval) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double a = 0.5 + 1.5 * u01(rng);
    const double c = 0.2 + 2.0 * u01(rng);
    const double mu = -(0.2 + 3.0 * u01(rng));
    const double sigma = -mu * (0.05 + 0.9 * u01(rng));
    const ModelParams p(mu, sigma, a, c);
    const double m0 = -a / c;
    const double m = m0 * (0.05 + 0.95 * u01(rng));
    const double n = 0.1 + 3.0 * u01(rng);
    const double lo = m + (n - m) * u01(rng);
    const double hi = m + (n - m) * u01(rng);
    const InitialFunction phi = InitialFunction::ramp(lo, -a * u01(rng) - 1e-3, hi);
    SimConfig cfg;
    cfg.dt = a / 20.0;
    cfg.t_end = 50.0 * a;
    cfg.require_delay_positivity = true;
    const Trajectory tr = simulate(p, phi, cfg);
    for (double v : tr.values) {
      ASSERT_GT(v, m - 1e-6) << trial;
      ASSERT_LT(v, n + 1e-6) << trial;
    }
  }
}

TEST(Simulate, DelayPositivityHolds) {
  const ModelParams p(-0.5, -1.0, 1, 2);
  SimConfig cfg;
  cfg.t_end = 30.0;
  cfg.require_delay_positivity = true;
  EXPECT_NO_THROW(simulate(p, InitialFunction::ramp(-0.4, -1.0, 0.3), cfg));
  EXPECT_THROW(simulate(p, InitialFunction::constant(-0.6), cfg), DomainError);
  EXPECT_THROW(simulate(ModelParams(0.5, -0.2, 1, 2), InitialFunction::constant(0.1), cfg), DomainError);
}

TEST(Simulate, AdvancedArgument) {
  SimConfig cfg;
  try {
    simulate(ModelParams(0, -1, 1, 1), InitialFunction::constant(-2.0), cfg);
    FAIL();
  } catch (const IntegrationError& e) {
    EXPECT_EQ(e.kind(), IntegrationError::Kind::AdvancedArgument);
    EXPECT_EQ(e.last_valid_time(), 0.0);
  }
}

TEST(Simulate, HistoryUnderrun) {
  SimConfig cfg;
  cfg.history_depth = 0.5;
  try {
    simulate(ModelParams(0, -1, 1, 1), InitialFunction::constant(0.1), cfg);
    FAIL();
  } catch (const IntegrationError& e) {
    EXPECT_EQ(e.kind(), IntegrationError::Kind::HistoryUnderrun);
  }
  cfg.history_depth = default_history_depth(ModelParams(0, -1, 1, 1), InitialFunction::constant(0.1));
  EXPECT_NO_THROW(simulate(ModelParams(0, -1, 1, 1), InitialFunction::constant(0.1), cfg));
}

TEST(Simulate, Divergence) {
  SimConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 100.0;
  try {
    simulate(ModelParams(800.0, 0.0, 1, 0), InitialFunction::constant(1.0), cfg);
    FAIL();
  } catch (const IntegrationError& e) {
    EXPECT_EQ(e.kind(), IntegrationError::Kind::Divergence);
    EXPECT_GT(e.last_valid_time(), 0.0);
    EXPECT_LT(e.last_valid_time(), 100.0);
  }
}

TEST(Simulate, ShortDelayFlag) {
  // u near -a/c makes the delay vanish
  SimConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 2.0;
  const Trajectory tr = simulate(ModelParams(-1.0, 0.5, 1, 1), InitialFunction::constant(-0.97), cfg);
  EXPECT_TRUE(tr.short_delay);
  const Trajectory calm = simulate(ModelParams(-1.0, 0.5, 1, 1), InitialFunction::constant(0.2), cfg);
  EXPECT_FALSE(calm.short_delay);
}

}  // namespace
}  // namespace raz
