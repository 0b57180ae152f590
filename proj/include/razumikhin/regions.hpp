#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "razumikhin/model.hpp"

namespace raz {

struct RegionVerdict {
  enum class Kind { ConeCertified, PkCertified, InSigmaStarUncertified, OutsideSigmaStar };
  Kind kind;
  int k = 0;  // set for PkCertified only

  [[nodiscard]] std::string label() const;
  bool operator==(const RegionVerdict&) const = default;
};

struct BoundaryPoint {
  double mu;
  double sigma;
};

struct BoundaryCurve {
  int k;  // 0 for the exact stability region
  double a;
  std::vector<BoundaryPoint> points;
  double solver_tol;
  std::size_t failures = 0;
};

inline constexpr double kBoundaryTol = 1e-12;

/// P(1, 0, k) at (mu, sigma, a).
double p_unit(int k, double mu, double sigma, double a);

/// Outer sigma < -|mu| with P(1, 0, k) = 1. k = 1 is the closed-form
/// quadratic root. Throws DomainError past the rightmost point.
double boundary_sigma_for_mu(int k, double mu, double a);

/// mu in [sigma, -sigma) with P(1, 0, k) = 1, the first crossing above the
/// wedge edge mu = sigma. Requires sigma < 0.
double boundary_mu_for_sigma(int k, double sigma, double a);

/// Largest mu on {P(1, 0, k) = 1} and its sigma.
BoundaryPoint rightmost_point(int k, double a);

/// ln((1 + sqrt 2)/2)/a and -(1 + sqrt 2) times that.
BoundaryPoint rightmost_point_k1_exact(double a);

/// n points with mu evenly spaced over [mu_min, rightmost mu]; the last one
/// is the rightmost point. k = 0 traces the exact stability region, ending
/// at (1/a, -1/a). Failed solves are dropped and counted.
BoundaryCurve sample_boundary(int k, double a, std::size_t n, double mu_min);

/// Constant-delay region claimed by Barnea: 0 <= s* <= a and P < 1 with
/// s* = -e^{mu a}/sigma.
bool barnea_x2_contains(double mu, double sigma, double a);

/// sigma >= -1/a and mu <= sigma (a sigma + 1)/(a sigma - 1).
bool myshkis_contains(double mu, double sigma, double a);

/// Cone if |sigma| < -mu; otherwise the smallest k <= k_max with
/// P(1, 0, k) < 1; otherwise whether (mu, sigma) lies in the exact region.
RegionVerdict verdict(const ModelParams& p, int k_max);

}  // namespace raz
