#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "razumikhin/errors.hpp"

namespace raz {

struct Maximum {
  double x;
  double value;
};

/// Golden-section search for a maximum of f on [lo, hi], stopping once the
/// bracket is narrower than tol. The best point seen is returned, so the
/// result never falls below max(f(lo'), f(hi')) of the final bracket.
template <class F>
Maximum golden_section_max(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 >= f2 ? Maximum{x1, f1} : Maximum{x2, f2};
}

/// Evaluates f on n equally spaced points of [lo, hi] (endpoints included),
/// then refines by golden section on the two cells around the best sample.
/// No unimodality is assumed beyond that bracket.
template <class F>
Maximum scan_then_refine_max(F&& f, double lo, double hi, std::size_t n, double tol) {
  if (n < 3) throw DomainError("scan needs at least 3 points");
  if (!(hi > lo)) {
    return Maximum{lo, f(lo)};
  }
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::size_t best = 0;
  double best_value = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (i + 1 == n) ? hi : lo + h * static_cast<double>(i);
    const double v = f(x);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = best == 0 ? lo : lo + h * static_cast<double>(best - 1);
  const double b = best + 1 >= n ? hi : lo + h * static_cast<double>(best + 1);
  const Maximum refined = golden_section_max(f, a, b, tol);
  const double best_x = (best + 1 == n) ? hi : lo + h * static_cast<double>(best);
  return refined.value > best_value ? refined : Maximum{best_x, best_value};
}

}  // namespace raz
