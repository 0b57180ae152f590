#include "razumikhin/regions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include <boost/math/tools/roots.hpp>

#include "razumikhin/errors.hpp"
#include "razumikhin/expoly.hpp"
#include "razumikhin/functional.hpp"
#include "razumikhin/parallel.hpp"
#include "razumikhin/search.hpp"

namespace raz {

namespace {

constexpr std::size_t kCoarseCells = 32;
constexpr std::size_t kFineCells = 1024;

void require_k(int k) {
  if (k < 1 || k > 3) throw DomainError("k must be 1, 2 or 3");
}

void require_a(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be positive");
}

double solve_bracket(const std::function<double(double)>& f, double lo, double hi, double flo,
                     double fhi) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  std::uintmax_t iters = 200;
  auto tol = [](double x, double y) {
    return std::abs(x - y) <= kBoundaryTol * std::max(1.0, std::abs(x));
  };
  const auto [x0, x1] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (x0 + x1);
}

// First cell of an even grid on [lo, hi] where f changes from `from_nonneg`
// sign to the other one, then solved inside that cell.
std::optional<double> first_crossing(const std::function<double(double)>& f, double lo, double hi,
                                     bool from_nonneg, std::size_t cells) {
  const double h = (hi - lo) / static_cast<double>(cells);
  double x_prev = lo;
  double f_prev = f(lo);
  for (std::size_t i = 1; i <= cells; ++i) {
    const double x = i == cells ? hi : lo + h * static_cast<double>(i);
    const double fx = f(x);
    if ((f_prev >= 0.0) == from_nonneg && (fx >= 0.0) != from_nonneg) {
      return solve_bracket(f, x_prev, x, f_prev, fx);
    }
    x_prev = x;
    f_prev = fx;
  }
  return std::nullopt;
}

}  // namespace

std::string RegionVerdict::label() const {
  switch (kind) {
    case Kind::ConeCertified: return "ConeCertified";
    case Kind::PkCertified: return "PkCertified(" + std::to_string(k) + ")";
    case Kind::InSigmaStarUncertified: return "InSigmaStarUncertified";
    case Kind::OutsideSigmaStar: return "OutsideSigmaStar";
  }
  return "?";
}

double p_unit(int k, double mu, double sigma, double a) {
  return p_value(ModelParams(mu, sigma, a, 0.0), 1.0, k).value;
}

double boundary_sigma_for_mu(int k, double mu, double a) {
  require_k(k);
  require_a(a);
  if (!(mu < 1.0 / a)) throw DomainError("no boundary point at this mu (past the rightmost point)");

  if (k == 1) {
    // sigma^2 a phi1(mu a) + sigma + mu e^{mu a} = 0, outer root
    const double z = mu * a;
    const double q = a * phi1(z);
    const double disc = 1.0 - 4.0 * q * mu * std::exp(z);
    if (disc < 0.0) throw DomainError("no boundary point at this mu (past the rightmost point)");
    return (-1.0 - std::sqrt(disc)) / (2.0 * q);
  }

  const std::function<double(double)> f = [&](double s) { return p_unit(k, mu, s, a) - 1.0; };
  const double hi = -std::abs(mu) - kBoundaryTol * std::max(1.0, std::abs(mu));
  double lo = sigma_star_boundary(mu, a) - 1.0 / a;
  for (int i = 0; i < 30 && f(lo) < 0.0; ++i) lo -= (hi - lo);
  for (std::size_t cells : {kCoarseCells, kFineCells}) {
    if (auto root = first_crossing(f, lo, hi, true, cells)) return *root;
  }
  throw DomainError("no boundary point at this mu (past the rightmost point)");
}

double boundary_mu_for_sigma(int k, double sigma, double a) {
  require_k(k);
  require_a(a);
  if (!(sigma < 0.0)) throw DomainError("sigma must be negative");
  const std::function<double(double)> f = [&](double m) { return p_unit(k, m, sigma, a) - 1.0; };
  const double lo = sigma;
  const double hi = -sigma - kBoundaryTol * std::max(1.0, -sigma);
  for (std::size_t cells : {kCoarseCells, kFineCells}) {
    if (auto root = first_crossing(f, lo, hi, false, cells)) return *root;
  }
  throw DomainError("no boundary point at this sigma");
}

BoundaryPoint rightmost_point_k1_exact(double a) {
  require_a(a);
  const double mu = std::log((1.0 + std::numbers::sqrt2) / 2.0) / a;
  return {mu, -(1.0 + std::numbers::sqrt2) * mu};
}

BoundaryPoint rightmost_point(int k, double a) {
  require_k(k);
  require_a(a);
  auto f = [&](double s) { return boundary_mu_for_sigma(k, s, a); };
  const Maximum m = scan_then_refine_max(f, -2.0 / a, -0.05 / a, 16, 1e-9 / a);
  return {m.value, m.x};
}

BoundaryCurve sample_boundary(int k, double a, std::size_t n, double mu_min) {
  if (k < 0 || k > 3) throw DomainError("k must be 0 (exact region), 1, 2 or 3");
  require_a(a);
  if (n < 2) throw DomainError("need at least two boundary points");
  const BoundaryPoint end = k == 0 ? BoundaryPoint{1.0 / a, -1.0 / a} : rightmost_point(k, a);
  if (!(mu_min < end.mu)) throw DomainError("mu_min must lie left of the rightmost point");

  const double h = (end.mu - mu_min) / static_cast<double>(n - 1);
  const auto solved = parallel_map(
      n - 1,
      [&](std::size_t j) -> std::optional<BoundaryPoint> {
        const double mu = mu_min + h * static_cast<double>(j);
        try {
          const double s = k == 0 ? sigma_star_boundary(mu, a) : boundary_sigma_for_mu(k, mu, a);
          return BoundaryPoint{mu, s};
        } catch (const Error&) {
          return std::nullopt;
        }
      },
      1);

  BoundaryCurve curve{k, a, {}, kBoundaryTol, 0};
  curve.points.reserve(n);
  for (const auto& pt : solved) {
    if (pt) {
      curve.points.push_back(*pt);
    } else {
      ++curve.failures;
    }
  }
  curve.points.push_back(end);
  return curve;
}

bool barnea_x2_contains(double mu, double sigma, double a) {
  require_a(a);
  if (!(sigma < 0.0)) return false;
  const double ea = std::exp(mu * a);
  const double s_star = -ea / sigma;
  if (!(s_star >= 0.0 && s_star <= a)) return false;
  // Same expression as sigma (mu + sigma)/mu^2 [e^{mu s*} - sigma/(mu + sigma)],
  // regrouped so that mu = 0 needs no limit.
  const double pb = sigma * (mu + sigma) * s_star * s_star * phi2(mu * s_star) -
                    sigma * a * phi1(mu * a) - ea;
  return pb < 1.0;
}

bool myshkis_contains(double mu, double sigma, double a) {
  require_a(a);
  if (!(sigma >= -1.0 / a)) return false;
  return mu <= sigma * (a * sigma + 1.0) / (a * sigma - 1.0);
}

RegionVerdict verdict(const ModelParams& p, int k_max) {
  require_k(k_max);
  using Kind = RegionVerdict::Kind;
  const RegionLabel label = classify(p);
  if (label == RegionLabel::Cone) return {Kind::ConeCertified, 0};
  if (label == RegionLabel::OutsideSigmaStar) return {Kind::OutsideSigmaStar, 0};
  for (int k = 1; k <= k_max; ++k) {
    if (p_unit(k, p.mu, p.sigma, p.a) < 1.0) return {Kind::PkCertified, k};
  }
  return {Kind::InSigmaStarUncertified, 0};
}

}  // namespace raz
