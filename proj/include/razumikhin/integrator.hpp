#pragma once

#include <optional>
#include <string>
#include <vector>

#include "razumikhin/errors.hpp"
#include "razumikhin/model.hpp"

namespace raz {

/// History on (-inf, 0]: constant `plateau` up to `ramp_start`, then linear
/// to `end_value` at 0. Every variant is closed form.
class InitialFunction {
 public:
  enum class Kind { Constant, Ramp, Example1, Example2 };

  static InitialFunction constant(double v);
  /// Requires ramp_start <= 0, and ramp_start < 0 unless the ends agree.
  static InitialFunction ramp(double plateau, double ramp_start, double end_value);

  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] double sup_norm() const noexcept;

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double plateau() const noexcept { return plateau_; }
  [[nodiscard]] double ramp_start() const noexcept { return ramp_start_; }
  [[nodiscard]] double end_value() const noexcept { return end_value_; }
  [[nodiscard]] std::string describe() const;

 private:
  friend InitialFunction make_example1_phi(double delta, const ModelParams& p);
  friend InitialFunction make_example2_phi(double delta, const ModelParams& p);
  InitialFunction(Kind kind, double plateau, double ramp_start, double end_value);

  Kind kind_;
  double plateau_;
  double ramp_start_;
  double end_value_;
};

/// delta at 0, -delta for t <= -a - c delta. Needs c > 0, mu = 0,
/// sigma in [-pi/(2a), -1/a) and delta in [-1/(c sigma), a/c).
InitialFunction make_example1_phi(double delta, const ModelParams& p);

/// delta at 0, -delta for t <= mu q(delta). Needs c > 0, mu > 0, the cusp
/// and delta in (delta*, a/c).
InitialFunction make_example2_phi(double delta, const ModelParams& p);

/// t - a - c u.
inline double deviated_argument(double t, double u, const ModelParams& p) { return t - p.a - p.c * u; }

struct SimConfig {
  double dt = 1e-2;
  double t_end = 10.0;
  std::optional<double> escape_radius;
  /// Lookups below -history_depth raise an underrun. Unset means unlimited,
  /// which is safe because every InitialFunction is closed form.
  std::optional<double> history_depth;
  bool stop_at_escape = false;
  /// Checks mu + sigma < 0 and c phi(0) >= -a up front, then t - a - c u(t) < t
  /// at every accepted step.
  bool require_delay_positivity = false;
};

/// 10 (a + |c| ||phi||).
double default_history_depth(const ModelParams& p, const InitialFunction& phi);

class IntegrationError : public Error {
 public:
  enum class Kind { AdvancedArgument, HistoryUnderrun, Divergence };
  IntegrationError(Kind kind, double last_valid_time, const std::string& what);
  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double last_valid_time() const noexcept { return last_time_; }

 private:
  Kind kind_;
  double last_time_;
};

/// Accepted RK4 steps with their right-hand sides; cubic Hermite in between.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> derivs;
  std::optional<double> escape_radius;
  std::optional<double> escape_time;
  bool short_delay = false;  // some delayed value came from inside the current step

  /// Hermite interpolant, t in [times.front(), times.back()].
  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] double max_abs() const;
};

/// Fixed-step classical RK4 for u' = mu u + sigma u(t - a - c u(t)).
/// Requires dt <= a/10 and t_end > 0.
Trajectory simulate(const ModelParams& p, const InitialFunction& phi, const SimConfig& cfg);

/// First time |u| reaches radius, bisecting the interpolant to 1e-10.
std::optional<double> escape_time(const Trajectory& traj, double radius);

}  // namespace raz
