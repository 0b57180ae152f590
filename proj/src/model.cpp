#include "razumikhin/model.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "razumikhin/errors.hpp"

namespace raz {

namespace {

constexpr double kSEdge = 1e-12;
constexpr double kSTol = 1e-13;

// Solves f(s) = 0 on a bracket where f is monotone, bisecting first and then
// handing over to TOMS 748 for the final digits.
template <class F>
double solve_monotone(F f, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (!(flo * fhi <= 0.0)) {
    throw NumericalError("root bracketing failed on the exact-region boundary");
  }
  for (int i = 0; i < 20; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((fmid <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  std::uintmax_t iters = 200;
  auto tol = [](double x, double y) { return std::abs(x - y) <= kSTol; };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (a + b);
}

}  // namespace

ModelParams::ModelParams(double mu_, double sigma_, double a_, double c_)
    : mu(mu_), sigma(sigma_), a(a_), c(c_) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("base delay a must be positive and finite");
  }
}

bool ModelParams::in_wedge_cusp_hypotheses() const noexcept {
  return sigma <= mu && sigma < -mu;
}

ModelParams ModelParams::with_abs_c() const noexcept {
  ModelParams q = *this;
  q.c = std::abs(c);
  return q;
}

ModelParams ModelParams::with_c(double c_new) const {
  return ModelParams(mu, sigma, a, c_new);
}

std::string_view to_string(RegionLabel label) noexcept {
  switch (label) {
    case RegionLabel::Cone: return "Cone";
    case RegionLabel::Wedge: return "Wedge";
    case RegionLabel::Cusp: return "Cusp";
    case RegionLabel::OutsideSigmaStar: return "OutsideSigmaStar";
  }
  return "?";
}

double r_of_delta(const ModelParams& p, double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  return p.a + std::abs(p.c) * delta;
}

double sigma_star_boundary(double mu, double a) {
  if (!(a > 0.0)) throw DomainError("a must be positive");
  if (!(mu < 1.0 / a)) {
    throw DomainError("the curve g* only exists for mu < 1/a");
  }
  const double s_max = std::numbers::pi / a;
  // s cot(as) decreases monotonically from 1/a to -inf on (0, pi/a).
  auto f = [&](double s) { return s * std::cos(a * s) / std::sin(a * s) - mu; };
  const double s = solve_monotone(f, kSEdge, s_max - kSEdge);
  return -s / std::sin(a * s);
}

double sigma_star_mu_for_sigma(double sigma, double a) {
  if (!(a > 0.0)) throw DomainError("a must be positive");
  if (!(sigma < 0.0)) throw DomainError("sigma must be negative");
  if (sigma >= -1.0 / a) return -sigma;
  const double s_max = std::numbers::pi / a;
  // -s csc(as) decreases monotonically from -1/a to -inf on (0, pi/a).
  auto f = [&](double s) { return -s / std::sin(a * s) - sigma; };
  const double s = solve_monotone(f, kSEdge, s_max - kSEdge);
  return s * std::cos(a * s) / std::sin(a * s);
}

RegionLabel classify(const ModelParams& p) {
  const double mu = p.mu;
  const double sigma = p.sigma;
  if (std::abs(sigma) < -mu) return RegionLabel::Cone;
  if (!(sigma < -mu) || !(mu < 1.0 / p.a)) return RegionLabel::OutsideSigmaStar;
  if (!(sigma > sigma_star_boundary(mu, p.a))) return RegionLabel::OutsideSigmaStar;
  return mu < 0.0 ? RegionLabel::Wedge : RegionLabel::Cusp;
}

DerivedConstants derived_constants(const ModelParams& p) {
  if (p.c == 0.0) {
    throw DomainError("derived constants need a state-dependent delay (c != 0)");
  }
  DerivedConstants d{};
  d.m0 = -p.a / p.c;
  if (p.mu != 0.0) d.n0 = p.a * p.sigma / (p.c * p.mu);
  d.tau0 = d.n0 ? p.a + p.c * *d.n0 : p.a;
  d.lipschitz_l = std::abs(p.mu) + std::abs(p.sigma);
  return d;
}

}  // namespace raz
