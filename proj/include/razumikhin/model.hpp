#pragma once

#include <optional>
#include <string_view>

namespace raz {

/// Parameters of u'(t) = mu u(t) + sigma u(t - a - c u(t)).
///
/// Units: mu and sigma are rates (1/time), a is a time, c is time per unit
/// of state. Construction enforces a > 0.
struct ModelParams {
  double mu = 0.0;
  double sigma = 0.0;
  double a = 1.0;
  double c = 0.0;

  ModelParams() = default;
  ModelParams(double mu_, double sigma_, double a_, double c_);

  /// sigma <= mu and sigma < -mu: the hypotheses under which the
  /// integral functional and P(delta, c, k) are defined.
  [[nodiscard]] bool in_wedge_cusp_hypotheses() const noexcept;

  /// Same parameters with c replaced by |c|.
  [[nodiscard]] ModelParams with_abs_c() const noexcept;
  [[nodiscard]] ModelParams with_c(double c_new) const;
};

struct DerivedConstants {
  double m0;                 // -a/c
  std::optional<double> n0;  // a sigma / (c mu); empty when mu == 0
  double tau0;               // a + c n0, or a when n0 is undefined
  double lipschitz_l;        // |mu| + |sigma|
};

enum class RegionLabel { Cone, Wedge, Cusp, OutsideSigmaStar };

std::string_view to_string(RegionLabel label) noexcept;

/// r(delta) = a + |c| delta, the delay bound on a ball of radius delta.
double r_of_delta(const ModelParams& p, double delta);

/// sigma on the curve (s cot(as), -s csc(as)), s in (0, pi/a), at the given
/// mu. Requires mu < 1/a.
double sigma_star_boundary(double mu, double a);

/// mu on the right-hand boundary of the exact stability region at the given
/// sigma < 0: the line mu = -sigma for sigma >= -1/a, otherwise the curve
/// (s cot(as), -s csc(as)).
double sigma_star_mu_for_sigma(double sigma, double a);

/// Classifies (mu, sigma) against the open exact stability region and its
/// cone / wedge / cusp partition. Boundary points are OutsideSigmaStar.
RegionLabel classify(const ModelParams& p);

/// Throws DomainError when c == 0.
DerivedConstants derived_constants(const ModelParams& p);

}  // namespace raz
