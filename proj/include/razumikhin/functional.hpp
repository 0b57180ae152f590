#pragma once

#include <cstddef>
#include <string_view>

#include "razumikhin/model.hpp"

namespace raz {

/// Which evaluation path produced an integral value.
enum class IntegralBranch {
  K1Closed,   // k = 1: constant history
  OnePart,    // k = 2, linear rise spans all of [-r_plus, 0]
  TwoPart,    // k = 2, constant then linear
  K3Numeric,  // k = 3
};

std::string_view to_string(IntegralBranch b) noexcept;

struct IntegralResult {
  double value;
  IntegralBranch branch;
};

/// Terminal value of the auxiliary ODE driven by the extremal history:
/// uhat e^{mu r_plus} + sigma \int_{-r_plus}^0 e^{-mu theta} eta_(k)(theta) d theta,
/// integrated exactly piece by piece.
///
/// Requires sigma <= mu, sigma < -mu and the envelope preconditions.
IntegralResult integral_I(int k, const ModelParams& p, double delta, double uhat, double r_plus);

/// The same integral by adaptive Simpson quadrature of the pointwise
/// envelope. Slow; used to cross-check the exact path.
double integral_I_quadrature(int k, const ModelParams& p, double delta, double uhat, double r_plus,
                             double tol = 1e-13);

/// Closed form of the k = 2 integral on the one-part branch,
/// (delta + uhat)/(D1 delta) >= r. D1 uses |c|. Throws BranchError otherwise.
double closed_I1(const ModelParams& p, double delta, double uhat, double r);

/// Closed form of the k = 2 integral on the two-part branch,
/// (delta + uhat)/(D1 delta) < r. Throws BranchError otherwise.
double closed_I2(const ModelParams& p, double delta, double uhat, double r);

/// Stationary point of closed_I2 in uhat,
/// [ln(1 - (mu/sigma) e^{mu r}) D1/mu - 1] delta, continued to its mu -> 0
/// limit (-D1/sigma - 1) delta. Requires sigma < 0.
double uhat_star(const ModelParams& p, double delta, double r);

struct PValue {
  double value;
  int k;
  double delta;
  bool exact;  // produced by a closed form proven valid at this point
};

/// P(delta, c, k) = sup over uhat in [-delta, -mu delta/sigma] of
/// integral_I(k, ..., r = a + |c| delta).
///
/// k = 1 and k = 2 use closed forms; k = 2 outside {P < delta} is also
/// bounded below by a lattice scan and flagged inexact. k = 3 maximises
/// numerically (512-point scan plus golden section) and is never exact.
PValue p_value(const ModelParams& p, double delta, int k);

/// Maximum of integral_I over an n_grid-point uhat lattice (endpoints
/// included). The maximiser is re-integrated by quadrature and a
/// NumericalError is raised if the two disagree.
double p_bruteforce(const ModelParams& p, double delta, int k, std::size_t n_grid);

/// P(delta, c, k) < delta.
bool p_predicate(const ModelParams& p, double delta, int k);

}  // namespace raz
