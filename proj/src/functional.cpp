#include "razumikhin/functional.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "razumikhin/envelopes.hpp"
#include "razumikhin/errors.hpp"
#include "razumikhin/expoly.hpp"
#include "razumikhin/parallel.hpp"
#include "razumikhin/search.hpp"

namespace raz {

namespace {

constexpr double kBranchSlack = 1e-12;
constexpr std::size_t kK3Scan = 512;
constexpr double kK3Tol = 1e-10;
constexpr std::size_t kFallbackGrid = 257;

void require_functional_domain(const ModelParams& p, int k) {
  if (k < 1 || k > 3) throw DomainError("k must be 1, 2 or 3");
  if (!p.in_wedge_cusp_hypotheses()) {
    throw DomainError("P(delta, c, k) needs sigma <= mu and sigma < -mu");
  }
}

void require_delta(const ModelParams& p, double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (p.c != 0.0 && !(delta < p.a / std::abs(p.c))) {
    throw DomainError("delta must lie in (0, a/|c|)");
  }
}

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

std::string_view to_string(IntegralBranch b) noexcept {
  switch (b) {
    case IntegralBranch::K1Closed: return "K1Closed";
    case IntegralBranch::OnePart: return "OnePart";
    case IntegralBranch::TwoPart: return "TwoPart";
    case IntegralBranch::K3Numeric: return "K3Numeric";
  }
  return "?";
}

IntegralResult integral_I(int k, const ModelParams& p, double delta, double uhat, double r_plus) {
  require_functional_domain(p, k);
  const Envelope env = build_envelope(k, p, delta, uhat, r_plus);
  const double value =
      uhat * std::exp(p.mu * r_plus) + p.sigma * env.pieces.integrate_exp(-p.mu);
  IntegralBranch branch = IntegralBranch::K1Closed;
  if (k == 2) {
    const double reach = (delta + uhat) / (env.bounds.d1 * delta);
    branch = reach >= r_plus ? IntegralBranch::OnePart : IntegralBranch::TwoPart;
  } else if (k == 3) {
    branch = IntegralBranch::K3Numeric;
  }
  return {value, branch};
}

double integral_I_quadrature(int k, const ModelParams& p, double delta, double uhat, double r_plus,
                             double tol) {
  require_functional_domain(p, k);
  const Envelope env = build_envelope(k, p, delta, uhat, r_plus);
  const std::function<double(double)> integrand = [&](double theta) {
    // the k = 1 endpoint jump has measure zero, so integrate the left limit
    return std::exp(-p.mu * theta) * env.pieces.continuous_value(theta);
  };
  const double integral = adaptive_simpson(integrand, -r_plus, 0.0, tol * delta);
  return uhat * std::exp(p.mu * r_plus) + p.sigma * integral;
}

double closed_I1(const ModelParams& p, double delta, double uhat, double r) {
  const double d1 = deriv_bound_d1(p, delta);
  const double reach = (delta + uhat) / (d1 * delta);
  if (!(reach >= r * (1.0 - kBranchSlack))) {
    throw BranchError("closed_I1 needs (delta + uhat)/(D1 delta) >= r");
  }
  const double z = p.mu * r;
  // Rewritten with phi1 and E_1 so that mu = 0 is the same expression.
  return uhat * (std::exp(z) + p.sigma * r * phi1(z)) -
         p.sigma * d1 * delta * r * r * expoly_moment(1, z);
}

double closed_I2(const ModelParams& p, double delta, double uhat, double r) {
  const double d1 = deriv_bound_d1(p, delta);
  const double reach = (delta + uhat) / (d1 * delta);
  if (!(reach < r * (1.0 + kBranchSlack))) {
    throw BranchError("closed_I2 needs (delta + uhat)/(D1 delta) < r");
  }
  const double z = p.mu * r;
  return uhat * std::exp(z) + p.sigma * (delta + uhat) * reach * phi2(p.mu * reach) -
         p.sigma * delta * r * phi1(z);
}

double uhat_star(const ModelParams& p, double delta, double r) {
  if (!(p.sigma < 0.0)) throw DomainError("uhat_star needs sigma < 0");
  const double d1 = deriv_bound_d1(p, delta);
  if (p.mu == 0.0) return (-d1 / p.sigma - 1.0) * delta;
  const double ez = std::exp(p.mu * r);
  const double x = -(p.mu / p.sigma) * ez;
  if (!(x > -1.0)) throw DomainError("uhat_star: logarithm argument is not positive");
  const double log_ratio = std::log1p(x) / x;
  // ln(1 + x) / mu = (ln(1 + x) / x) * (-e^{mu r} / sigma)
  return (d1 * log_ratio * (-ez / p.sigma) - 1.0) * delta;
}

PValue p_value(const ModelParams& p, double delta, int k) {
  require_functional_domain(p, k);
  require_delta(p, delta);
  const double r = r_of_delta(p, delta);
  const double hi = uhat_upper(p, delta);

  switch (k) {
    case 1: {
      const double z = p.mu * r;
      const double v = -(p.mu / p.sigma) * delta * std::exp(z) - p.sigma * delta * r * phi1(z);
      return {v, 1, delta, true};
    }
    case 2: {
      const double d1 = deriv_bound_d1(p, delta);
      double v;
      if (r * d1 - 1.0 <= -p.mu / p.sigma) {
        v = closed_I1(p, delta, hi, r);
      } else {
        v = closed_I2(p, delta, hi, r);
        const double us = uhat_star(p, delta, r);
        if (us < hi) v = std::max(v, closed_I2(p, delta, std::max(us, -delta), r));
      }
      if (v < delta) return {v, 2, delta, true};
      v = std::max(v, p_bruteforce(p, delta, 2, kFallbackGrid));
      return {v, 2, delta, false};
    }
    default: {
      auto f = [&](double u) { return integral_I(3, p, delta, u, r).value; };
      const Maximum m = scan_then_refine_max(f, -delta, hi, kK3Scan, kK3Tol * delta);
      return {m.value, 3, delta, false};
    }
  }
}

double p_bruteforce(const ModelParams& p, double delta, int k, std::size_t n_grid) {
  require_functional_domain(p, k);
  require_delta(p, delta);
  if (n_grid < 3) throw DomainError("n_grid must be at least 3");
  const double r = r_of_delta(p, delta);
  const double lo = -delta;
  const double hi = uhat_upper(p, delta);
  const double step = (hi - lo) / static_cast<double>(n_grid - 1);
  auto lattice = [&](std::size_t i) { return i + 1 == n_grid ? hi : lo + step * static_cast<double>(i); };
  const auto values = parallel_map(
      n_grid, [&](std::size_t i) { return integral_I(k, p, delta, lattice(i), r).value; }, 1024);
  const auto best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  const double check = integral_I_quadrature(k, p, delta, lattice(best), r);
  if (std::abs(check - values[best]) > 1e-9 * std::max(delta, std::abs(values[best]))) {
    throw NumericalError("exact and quadrature integrals disagree at the lattice maximiser");
  }
  return values[best];
}

bool p_predicate(const ModelParams& p, double delta, int k) {
  return p_value(p, delta, k).value < delta;
}

}  // namespace raz
