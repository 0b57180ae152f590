#pragma once

#include <optional>
#include <span>
#include <vector>

#include "razumikhin/expoly.hpp"
#include "razumikhin/model.hpp"

namespace raz {

/// Piecewise polynomial of degree <= 2 on [breakpoints.front(), breakpoints.back()].
///
/// Segment i covers [x_i, x_{i+1}] and stores its polynomial in the local
/// coordinate t = theta - x_i. Adjacent segments agree at interior
/// breakpoints. An optional right-endpoint value overrides the last segment
/// at the single point x_m (a jump of measure zero).
class PiecewisePoly {
 public:
  PiecewisePoly(std::vector<double> breakpoints, std::vector<Quadratic> segments,
                std::optional<double> right_endpoint_value = std::nullopt);

  [[nodiscard]] double lower() const noexcept { return breaks_.front(); }
  [[nodiscard]] double upper() const noexcept { return breaks_.back(); }
  [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breaks_; }
  [[nodiscard]] std::span<const Quadratic> segments() const noexcept { return segs_; }
  [[nodiscard]] const std::optional<double>& right_endpoint_value() const noexcept {
    return endpoint_;
  }

  /// Value at theta, honouring the right-endpoint jump. Throws DomainError
  /// outside the domain.
  [[nodiscard]] double operator()(double theta) const;

  /// Value of the continuous part (left limit at the right endpoint).
  [[nodiscard]] double continuous_value(double theta) const;

  /// One-sided derivative from the right (from the left at the upper end).
  [[nodiscard]] double slope(double theta) const;

  /// \int e^{rate theta} p(theta) d theta over the whole domain.
  [[nodiscard]] double integrate_exp(double rate) const;

 private:
  [[nodiscard]] std::size_t segment_index(double theta) const;

  std::vector<double> breaks_;
  std::vector<Quadratic> segs_;
  std::optional<double> endpoint_;
};

struct DerivBounds {
  double d1;  // 1/time
  double d2;  // 1/time^2
};

/// D1 = (|mu|+|sigma|)(1 + (|mu|+|sigma|)|c| delta).
double deriv_bound_d1(const ModelParams& p, double delta);

/// D2 = (D1^2 + (|mu|+|sigma|)^3 |c| delta)(1 + |sigma c| delta).
double deriv_bound_d2(const ModelParams& p, double delta);

DerivBounds deriv_bounds(const ModelParams& p, double delta);

/// Most negative admissible delayed history with k-1 bounded derivatives
/// that ends at uhat, on [-r_plus, 0].
struct Envelope {
  int k;
  PiecewisePoly pieces;
  double uhat;
  double delta;
  double r_plus;
  DerivBounds bounds;
  double shift;  // theta_shift for k = 3, 0 otherwise
};

/// Builds eta_(k) for k in {1, 2, 3}.
///
/// Requires delta > 0 (and delta < a/|c| when c != 0), sigma < 0,
/// uhat in [-delta, -mu delta / sigma] and r_plus > 0. Pieces that become
/// empty after clipping to [-r_plus, 0] are dropped.
Envelope build_envelope(int k, const ModelParams& p, double delta, double uhat, double r_plus);

/// Pointwise value of the envelope; theta must lie in [-r_plus, 0].
double envelope_value(const Envelope& e, double theta);

/// Upper end of the admissible endpoint interval, -mu delta / sigma.
inline double uhat_upper(const ModelParams& p, double delta) { return -p.mu * delta / p.sigma; }

}  // namespace raz
