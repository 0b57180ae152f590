#pragma once

#include <optional>
#include <vector>

#include "razumikhin/model.hpp"

namespace raz {

struct DeltaStar {
  double value;
  bool within_window;  // value < a/|c|, so the escaping initial function exists
};

struct BasinBounds {
  int k;
  double delta1;
  double delta2;      // best delta2 over (0, delta1]
  double delta2_at;   // the delta that attains it
  std::optional<DeltaStar> delta_star;
};

/// Supremum of the first interval (0, delta1) on which P(delta, c, k) < delta.
/// Returns a/|c| - 1e-10 when the predicate holds on all of (0, a/|c|).
/// Throws DomainError for c == 0 or when P(1, 0, k) >= 1.
double delta1(const ModelParams& p, int k);

/// delta e^{-k (|mu| + |sigma|)(a + |c| delta)}.
double delta2(const ModelParams& p, int k, double delta);

struct BestDelta2 {
  double delta;
  double delta2;
};

/// Maximum of delta2 over (0, delta1].
BestDelta2 best_delta2(const ModelParams& p, int k);

/// Radius above which an escaping initial function is known. mu = 0 needs
/// sigma in [-pi/(2a), -1/a); mu > 0 needs the cusp. Throws
/// NotApplicableError otherwise. c < 0 is mapped to |c|.
DeltaStar delta_star(const ModelParams& p);

/// q(delta) = -a mu - 1 - c sigma delta - ln(c delta (mu - sigma)), c > 0.
double q_of_delta(const ModelParams& p, double delta);

/// delta1, best delta2 and delta* (when defined) for a certified point.
BasinBounds basin_bounds(const ModelParams& p, int k);

/// basin_bounds over many points in parallel; points outside
/// {P(1, 0, k) < 1} come back empty. Output order follows the input.
std::vector<std::optional<BasinBounds>> basin_sweep(const std::vector<ModelParams>& points, int k);

}  // namespace raz
