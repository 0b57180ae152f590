#pragma once

namespace raz {

/// Moment E_n(z) = \int_0^1 e^{z s} s^n ds for n in {0, 1, 2}.
///
/// Small |z| uses the power series, larger |z| the upward recursion
/// E_n = (e^z - n E_{n-1}) / z, which is stable once |z| >= n. Both branches
/// agree with the mu -> 0 limits of the closed-form integrals to rounding.
double expoly_moment(int n, double z);

/// (e^z - 1) / z, equal to 1 at z = 0.
inline double phi1(double z) { return expoly_moment(0, z); }

/// (e^z - 1 - z) / z^2, equal to 1/2 at z = 0.
inline double phi2(double z) { return expoly_moment(0, z) - expoly_moment(1, z); }

/// Coefficients of q0 + q1 t + q2 t^2 in a local coordinate t.
struct Quadratic {
  double q0 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;

  [[nodiscard]] double operator()(double t) const noexcept { return q0 + t * (q1 + t * q2); }
  [[nodiscard]] double slope(double t) const noexcept { return q1 + 2.0 * q2 * t; }
};

/// \int_0^h e^{rate t} q(t) dt, exact up to rounding for any sign of rate.
double integrate_exp_quadratic(const Quadratic& q, double rate, double h);

}  // namespace raz
