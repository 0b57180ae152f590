#include "razumikhin/expoly.hpp"

#include <cmath>

#include "razumikhin/errors.hpp"

namespace raz {

namespace {

constexpr double kSeriesRadius = 2.0;

double moment_series(int n, double z) {
  // sum_j z^j / (j! (n + j + 1))
  double term = 1.0;  // z^j / j!
  double sum = 1.0 / (n + 1);
  for (int j = 1; j < 60; ++j) {
    term *= z / j;
    const double add = term / (n + j + 1);
    sum += add;
    if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double expoly_moment(int n, double z) {
  if (n < 0 || n > 2) throw DomainError("expoly_moment supports n = 0, 1, 2");
  if (std::abs(z) < kSeriesRadius) return moment_series(n, z);
  const double ez = std::exp(z);
  double e = std::expm1(z) / z;
  for (int k = 1; k <= n; ++k) e = (ez - k * e) / z;
  return e;
}

double integrate_exp_quadratic(const Quadratic& q, double rate, double h) {
  if (h == 0.0) return 0.0;
  const double z = rate * h;
  double acc = q.q0 * h * expoly_moment(0, z);
  if (q.q1 != 0.0) acc += q.q1 * h * h * expoly_moment(1, z);
  if (q.q2 != 0.0) acc += q.q2 * h * h * h * expoly_moment(2, z);
  return acc;
}

}  // namespace raz
