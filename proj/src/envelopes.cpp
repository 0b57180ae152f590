#include "razumikhin/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "razumikhin/errors.hpp"

namespace raz {

namespace {

constexpr double kContinuityTol = 1e-12;

struct Piece {
  double lo;
  double hi;
  Quadratic q;  // local coordinate relative to lo
};

// Keeps the non-empty part of [lo, hi] inside [left, right], re-expressing
// the polynomial about the new left end.
void push_clipped(std::vector<Piece>& out, double lo, double hi, const Quadratic& q_at_lo,
                  double left, double right) {
  const double a = std::max(lo, left);
  const double b = std::min(hi, right);
  if (!(b > a)) return;
  const bool constant = q_at_lo.q1 == 0.0 && q_at_lo.q2 == 0.0;
  if (constant || a == lo) {
    out.push_back({a, b, q_at_lo});
    return;
  }
  const double s = a - lo;
  out.push_back({a, b, Quadratic{q_at_lo(s), q_at_lo.slope(s), q_at_lo.q2}});
}

PiecewisePoly assemble(const std::vector<Piece>& pieces, std::optional<double> endpoint) {
  std::vector<double> breaks;
  std::vector<Quadratic> segs;
  breaks.reserve(pieces.size() + 1);
  for (const auto& pc : pieces) {
    if (breaks.empty()) breaks.push_back(pc.lo);
    breaks.push_back(pc.hi);
    segs.push_back(pc.q);
  }
  return PiecewisePoly(std::move(breaks), std::move(segs), endpoint);
}

}  // namespace

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints, std::vector<Quadratic> segments,
                             std::optional<double> right_endpoint_value)
    : breaks_(std::move(breakpoints)), segs_(std::move(segments)), endpoint_(right_endpoint_value) {
  if (breaks_.size() < 2 || segs_.size() + 1 != breaks_.size()) {
    throw DomainError("piecewise polynomial needs m+1 breakpoints for m segments");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) {
      throw DomainError("breakpoints must be strictly ascending");
    }
  }
  for (std::size_t i = 0; i + 1 < segs_.size(); ++i) {
    const double left = segs_[i](breaks_[i + 1] - breaks_[i]);
    const double right = segs_[i + 1](0.0);
    if (std::abs(left - right) > kContinuityTol * std::max(1.0, std::abs(left))) {
      throw DomainError("piecewise polynomial is discontinuous at breakpoint " +
                        std::to_string(breaks_[i + 1]));
    }
  }
}

std::size_t PiecewisePoly::segment_index(double theta) const {
  if (!(theta >= lower() && theta <= upper())) {
    throw DomainError("theta " + std::to_string(theta) + " outside the envelope domain");
  }
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), theta);
  const auto idx = static_cast<std::size_t>(it - breaks_.begin());
  return std::min(idx == 0 ? 0 : idx - 1, segs_.size() - 1);
}

double PiecewisePoly::continuous_value(double theta) const {
  const std::size_t i = segment_index(theta);
  return segs_[i](theta - breaks_[i]);
}

double PiecewisePoly::operator()(double theta) const {
  if (endpoint_ && theta == upper()) return *endpoint_;
  return continuous_value(theta);
}

double PiecewisePoly::slope(double theta) const {
  const std::size_t i = segment_index(theta);
  return segs_[i].slope(theta - breaks_[i]);
}

double PiecewisePoly::integrate_exp(double rate) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < segs_.size(); ++i) {
    const double h = breaks_[i + 1] - breaks_[i];
    acc += std::exp(rate * breaks_[i]) * integrate_exp_quadratic(segs_[i], rate, h);
  }
  return acc;
}

double deriv_bound_d1(const ModelParams& p, double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  const double l = std::abs(p.mu) + std::abs(p.sigma);
  return l * (1.0 + l * std::abs(p.c) * delta);
}

double deriv_bound_d2(const ModelParams& p, double delta) {
  const double d1 = deriv_bound_d1(p, delta);
  const double l = std::abs(p.mu) + std::abs(p.sigma);
  return (d1 * d1 + l * l * l * std::abs(p.c) * delta) * (1.0 + std::abs(p.sigma * p.c) * delta);
}

DerivBounds deriv_bounds(const ModelParams& p, double delta) {
  return {deriv_bound_d1(p, delta), deriv_bound_d2(p, delta)};
}

Envelope build_envelope(int k, const ModelParams& p, double delta, double uhat, double r_plus) {
  if (k < 1 || k > 3) throw DomainError("envelopes exist only for k = 1, 2, 3");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (p.c != 0.0 && !(delta < p.a / std::abs(p.c))) {
    throw DomainError("delta must lie in (0, a/|c|)");
  }
  if (!(r_plus > 0.0)) throw DomainError("r_plus must be positive");
  if (!(p.sigma < 0.0)) throw DomainError("envelopes need sigma < 0");
  const double hi = uhat_upper(p, delta);
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * delta;
  if (!(uhat >= -delta - slack && uhat <= hi + slack)) {
    throw DomainError("uhat outside [-delta, -mu delta / sigma]");
  }

  const DerivBounds b = deriv_bounds(p, delta);
  const double left = -r_plus;
  std::vector<Piece> pieces;
  std::optional<double> endpoint;
  double shift = 0.0;

  switch (k) {
    case 1: {
      pieces.push_back({left, 0.0, Quadratic{-delta, 0.0, 0.0}});
      endpoint = uhat;
      break;
    }
    case 2: {
      const double slope = b.d1 * delta;
      const double knot = -(delta + uhat) / slope;
      // constant -delta up to the knot, then the steepest admissible rise to uhat
      push_clipped(pieces, -std::numeric_limits<double>::infinity(), knot, Quadratic{-delta, 0.0, 0.0},
                   left, 0.0);
      const double lo = std::max(knot, left);
      push_clipped(pieces, lo, 0.0, Quadratic{uhat + slope * lo, slope, 0.0}, left, 0.0);
      break;
    }
    case 3: {
      const double d1 = b.d1;
      const double d2 = b.d2;
      const double kink = delta * d1 * d1 / (2.0 * d2);  // rise over the quadratic part
      shift = (uhat + delta <= kink) ? std::sqrt(2.0 * (uhat + delta) / (d2 * delta))
                                     : (uhat + delta + kink) / (d1 * delta);
      const double b1 = -shift;
      const double b2 = -shift + d1 / d2;
      const double inf = std::numeric_limits<double>::infinity();
      push_clipped(pieces, -inf, b1, Quadratic{-delta, 0.0, 0.0}, left, 0.0);
      {
        const double lo = std::max(b1, left);
        const double u0 = lo + shift;
        push_clipped(pieces, lo, b2,
                     Quadratic{-delta + 0.5 * delta * d2 * u0 * u0, delta * d2 * u0, 0.5 * delta * d2},
                     left, 0.0);
      }
      {
        const double lo = std::max(b2, left);
        const double u0 = lo + shift;
        push_clipped(pieces, lo, inf, Quadratic{-delta - kink + delta * d1 * u0, delta * d1, 0.0},
                     left, 0.0);
      }
      break;
    }
  }

  return Envelope{k, assemble(pieces, endpoint), uhat, delta, r_plus, b, shift};
}

double envelope_value(const Envelope& e, double theta) {
  return e.pieces(theta);
}

}  // namespace raz
