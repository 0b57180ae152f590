#include "razumikhin/basin.hpp"

#include <cmath>
#include <numbers>

#include "razumikhin/errors.hpp"
#include "razumikhin/functional.hpp"
#include "razumikhin/parallel.hpp"
#include "razumikhin/regions.hpp"
#include "razumikhin/search.hpp"

namespace raz {

namespace {

constexpr std::size_t kDelta1Cells = 1024;
constexpr double kDelta1RelTol = 1e-10;
constexpr double kWindowGap = 1e-10;

void require_certified(const ModelParams& p, int k) {
  if (k < 1 || k > 3) throw DomainError("k must be 1, 2 or 3");
  if (p.c == 0.0) throw DomainError("constant delay: delta1 is scale free when c == 0");
  if (!p.in_wedge_cusp_hypotheses() || !(p_unit(k, p.mu, p.sigma, p.a) < 1.0)) {
    throw DomainError("(mu, sigma) is outside {P(1, 0, k) < 1}");
  }
}

}  // namespace

double delta1(const ModelParams& p, int k) {
  require_certified(p, k);
  const ModelParams q = p.with_abs_c();
  const double window = q.a / q.c;
  auto excess = [&](double d) { return p_value(q, d, k).value - d; };

  const double first = 1e-9 * window;
  const double last = window * (1.0 - 1e-12);
  const double h = (last - first) / static_cast<double>(kDelta1Cells);
  double below = 0.0;  // P(delta)/delta -> P(1, 0, k) < 1 as delta -> 0
  double above = -1.0;
  for (std::size_t i = 0; i <= kDelta1Cells; ++i) {
    const double d = i == kDelta1Cells ? last : first + h * static_cast<double>(i);
    if (excess(d) >= 0.0) {
      above = d;
      break;
    }
    below = d;
  }
  if (above < 0.0) return window - kWindowGap;

  while (above - below > kDelta1RelTol * above) {
    const double mid = 0.5 * (below + above);
    if (excess(mid) >= 0.0) {
      above = mid;
    } else {
      below = mid;
    }
  }
  return below;
}

double delta2(const ModelParams& p, int k, double delta) {
  if (k < 1 || k > 3) throw DomainError("k must be 1, 2 or 3");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  const double l = std::abs(p.mu) + std::abs(p.sigma);
  return delta * std::exp(-k * l * r_of_delta(p, delta));
}

BestDelta2 best_delta2(const ModelParams& p, int k) {
  const double d1 = delta1(p, k);
  auto f = [&](double d) { return delta2(p, k, d); };
  const Maximum m = scan_then_refine_max(f, 1e-6 * d1, d1, 64, kDelta1RelTol * d1);
  return {m.x, m.value};
}

double q_of_delta(const ModelParams& p, double delta) {
  return -p.a * p.mu - 1.0 - p.c * p.sigma * delta - std::log(p.c * delta * (p.mu - p.sigma));
}

DeltaStar delta_star(const ModelParams& p) {
  const ModelParams q = p.with_abs_c();
  if (q.c == 0.0) throw NotApplicableError("delta* needs a state-dependent delay (c != 0)");
  const double window = q.a / q.c;
  if (q.mu == 0.0) {
    if (!(q.sigma >= -std::numbers::pi / (2.0 * q.a) && q.sigma < -1.0 / q.a)) {
      throw NotApplicableError("delta* at mu = 0 needs sigma in [-pi/(2a), -1/a)");
    }
    const double v = -1.0 / (q.c * q.sigma);
    return {v, v < window};
  }
  if (q.mu < 0.0 || classify(q) != RegionLabel::Cusp) {
    throw NotApplicableError("delta* needs mu = 0 or (mu, sigma) in the cusp");
  }
  // q is strictly decreasing from +inf to a negative value on this interval
  double lo = 0.0;
  double hi = 1.0 / (q.c * (q.mu - q.sigma));
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (q_of_delta(q, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double v = 0.5 * (lo + hi);
  return {v, v < window};
}

BasinBounds basin_bounds(const ModelParams& p, int k) {
  BasinBounds b{};
  b.k = k;
  b.delta1 = delta1(p, k);
  const BestDelta2 best = best_delta2(p, k);
  b.delta2 = best.delta2;
  b.delta2_at = best.delta;
  try {
    b.delta_star = delta_star(p);
  } catch (const NotApplicableError&) {
  }
  return b;
}

std::vector<std::optional<BasinBounds>> basin_sweep(const std::vector<ModelParams>& points, int k) {
  return parallel_map(
      points.size(),
      [&](std::size_t i) -> std::optional<BasinBounds> {
        try {
          return basin_bounds(points[i], k);
        } catch (const DomainError&) {
          return std::nullopt;
        }
      },
      1);
}

}  // namespace raz
