#include "razumikhin/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "razumikhin/basin.hpp"

namespace raz {

namespace {

double hermite(double t0, double t1, double y0, double y1, double f0, double f1, double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * f0 +
         (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * f1;
}

double step_value(const Trajectory& tr, std::size_t i, double t) {
  return hermite(tr.times[i], tr.times[i + 1], tr.values[i], tr.values[i + 1], tr.derivs[i],
                 tr.derivs[i + 1], t);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

// Crossing of |u| = radius on step i, given |u(t_i)| <= radius < |u(t_{i+1})|.
double bisect_escape(const Trajectory& tr, std::size_t i, double radius) {
  double lo = tr.times[i];
  double hi = tr.times[i + 1];
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (std::abs(step_value(tr, i, mid)) > radius) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

InitialFunction::InitialFunction(Kind kind, double plateau, double ramp_start, double end_value)
    : kind_(kind), plateau_(plateau), ramp_start_(ramp_start), end_value_(end_value) {
  if (!std::isfinite(plateau) || !std::isfinite(ramp_start) || !std::isfinite(end_value)) {
    throw DomainError("initial function parameters must be finite");
  }
  if (ramp_start > 0.0) throw DomainError("ramp_start must be <= 0");
  if (ramp_start == 0.0 && plateau != end_value) {
    throw DomainError("a ramp starting at 0 would make phi discontinuous");
  }
}

InitialFunction InitialFunction::constant(double v) { return {Kind::Constant, v, 0.0, v}; }

InitialFunction InitialFunction::ramp(double plateau, double ramp_start, double end_value) {
  return {Kind::Ramp, plateau, ramp_start, end_value};
}

double InitialFunction::operator()(double t) const {
  if (t > 0.0) throw DomainError("initial function is defined on (-inf, 0]");
  if (t <= ramp_start_) return t == 0.0 ? end_value_ : plateau_;
  return end_value_ + (end_value_ - plateau_) * t / (-ramp_start_);
}

double InitialFunction::sup_norm() const noexcept {
  return std::max(std::abs(plateau_), std::abs(end_value_));
}

std::string InitialFunction::describe() const {
  switch (kind_) {
    case Kind::Constant: return "const:" + fmt(end_value_);
    case Kind::Ramp: return "ramp:" + fmt(plateau_) + "," + fmt(ramp_start_) + "," + fmt(end_value_);
    case Kind::Example1: return "example1:" + fmt(end_value_);
    case Kind::Example2: return "example2:" + fmt(end_value_);
  }
  return "?";
}

InitialFunction make_example1_phi(double delta, const ModelParams& p) {
  if (!(p.c > 0.0) || p.mu != 0.0) {
    throw NotApplicableError("example 1 needs c > 0 and mu = 0");
  }
  if (!(p.sigma >= -std::numbers::pi / (2.0 * p.a) && p.sigma < -1.0 / p.a)) {
    throw NotApplicableError("example 1 needs sigma in [-pi/(2a), -1/a)");
  }
  if (!(delta >= -1.0 / (p.c * p.sigma) && delta < p.a / p.c)) {
    throw NotApplicableError("example 1 needs delta in [-1/(c sigma), a/c)");
  }
  return {InitialFunction::Kind::Example1, -delta, -p.a - p.c * delta, delta};
}

InitialFunction make_example2_phi(double delta, const ModelParams& p) {
  if (!(p.c > 0.0) || !(p.mu > 0.0)) {
    throw NotApplicableError("example 2 needs c > 0 and mu > 0");
  }
  const DeltaStar ds = delta_star(p);
  if (!(delta > ds.value && delta < p.a / p.c)) {
    throw NotApplicableError("example 2 needs delta in (delta*, a/c), delta* = " + fmt(ds.value));
  }
  return {InitialFunction::Kind::Example2, -delta, p.mu * q_of_delta(p, delta), delta};
}

double default_history_depth(const ModelParams& p, const InitialFunction& phi) {
  return 10.0 * (p.a + std::abs(p.c) * phi.sup_norm());
}

IntegrationError::IntegrationError(Kind kind, double last_valid_time, const std::string& what)
    : Error(what), kind_(kind), last_time_(last_valid_time) {}

double Trajectory::operator()(double t) const {
  if (times.empty() || t < times.front() || t > times.back()) {
    throw DomainError("time outside the simulated interval");
  }
  if (times.size() == 1) return values.front();
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times.begin());
  i = std::min(i, times.size() - 1) - 1;
  return step_value(*this, i, t);
}

double Trajectory::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

Trajectory simulate(const ModelParams& p, const InitialFunction& phi, const SimConfig& cfg) {
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) {
    throw DomainError("dt and t_end must be positive");
  }
  if (cfg.dt > p.a / 10.0 * (1.0 + 1e-12)) throw DomainError("dt must not exceed a/10");
  if (cfg.history_depth && !(*cfg.history_depth > 0.0)) {
    throw DomainError("history_depth must be positive");
  }
  if (cfg.escape_radius && !(*cfg.escape_radius > 0.0)) {
    throw DomainError("escape radius must be positive");
  }
  if (cfg.require_delay_positivity && !(p.mu + p.sigma < 0.0 && p.c * phi(0.0) >= -p.a)) {
    throw DomainError("delay positivity needs mu + sigma < 0 and c phi(0) >= -a");
  }

  Trajectory tr;
  tr.escape_radius = cfg.escape_radius;

  auto delayed = [&](double alpha, double t_now) {
    const double t_last = tr.times.empty() ? 0.0 : tr.times.back();
    if (alpha > t_now) {
      throw IntegrationError(IntegrationError::Kind::AdvancedArgument, t_last,
                             "advanced argument: t - a - c u = " + fmt(alpha) + " > t = " + fmt(t_now));
    }
    if (alpha <= 0.0) {
      if (cfg.history_depth && alpha < -*cfg.history_depth) {
        throw IntegrationError(IntegrationError::Kind::HistoryUnderrun, t_last,
                               "history underrun at " + fmt(alpha));
      }
      return phi(alpha);
    }
    if (alpha <= t_last) return tr(alpha);
    tr.short_delay = true;
    const std::size_t n = tr.times.size();
    if (n >= 2) return step_value(tr, n - 2, alpha);
    return tr.values[0] + tr.derivs[0] * alpha;
  };
  auto rhs = [&](double t, double u) { return p.mu * u + p.sigma * delayed(deviated_argument(t, u, p), t); };

  const double u0 = phi(0.0);
  const double f0 = rhs(0.0, u0);
  tr.times.push_back(0.0);
  tr.values.push_back(u0);
  tr.derivs.push_back(f0);
  if (cfg.escape_radius && std::abs(u0) > *cfg.escape_radius) {
    tr.escape_time = 0.0;
    if (cfg.stop_at_escape) return tr;
  }

  const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = tr.times.back();
    const double u = tr.values.back();
    const double t1 = n + 1 == steps ? cfg.t_end : cfg.dt * static_cast<double>(n + 1);
    const double h = t1 - t;
    const double k1 = tr.derivs.back();
    const double k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1);
    const double k3 = rhs(t + 0.5 * h, u + 0.5 * h * k2);
    const double k4 = rhs(t1, u + h * k3);
    const double u1 = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double d1 = std::isfinite(u1) ? rhs(t1, u1) : u1;
    if (!std::isfinite(u1) || !std::isfinite(d1)) {
      throw IntegrationError(IntegrationError::Kind::Divergence, t,
                             "solution became non-finite after t = " + fmt(t));
    }
    if (cfg.require_delay_positivity && !(deviated_argument(t1, u1, p) < t1)) {
      throw IntegrationError(IntegrationError::Kind::AdvancedArgument, t,
                             "deviated argument reached t at t = " + fmt(t1));
    }
    tr.times.push_back(t1);
    tr.values.push_back(u1);
    tr.derivs.push_back(d1);

    if (cfg.escape_radius && !tr.escape_time && std::abs(u1) > *cfg.escape_radius) {
      tr.escape_time = bisect_escape(tr, tr.times.size() - 2, *cfg.escape_radius);
      if (cfg.stop_at_escape) break;
    }
  }
  return tr;
}

std::optional<double> escape_time(const Trajectory& traj, double radius) {
  if (traj.values.empty()) return std::nullopt;
  if (std::abs(traj.values[0]) > radius) return 0.0;
  for (std::size_t i = 0; i + 1 < traj.values.size(); ++i) {
    if (std::abs(traj.values[i + 1]) > radius) return bisect_escape(traj, i, radius);
  }
  return std::nullopt;
}

}  // namespace raz
