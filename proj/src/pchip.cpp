#include "mrbot/pchip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrbot {

namespace {

bool same_sign(double a, double b) { return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0); }

// One-sided three-point tangent at an end node, kept shape preserving.
double end_slope(double h0, double h1, double d0, double d1) {
  double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (!same_sign(m, d0)) {
    return 0.0;
  }
  if (!same_sign(d0, d1) && std::abs(m) > std::abs(3.0 * d0)) {
    return 3.0 * d0;
  }
  return m;
}

}  // namespace

std::vector<double> fritsch_carlson_slopes(std::span<const double> x,
                                           std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) {
    throw std::invalid_argument("fritsch_carlson_slopes: need >= 2 matching knots");
  }
  std::vector<double> h(n - 1), d(n - 1), m(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    if (!(h[k] > 0.0)) {
      throw std::invalid_argument("fritsch_carlson_slopes: knots not strictly increasing");
    }
    d[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    m[0] = m[1] = d[0];
    return m;
  }

  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (same_sign(d[k - 1], d[k])) {
      m[k] = (h[k] * d[k - 1] + h[k - 1] * d[k]) / (h[k - 1] + h[k]);
    }
  }
  m[0] = end_slope(h[0], h[1], d[0], d[1]);
  m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);

  // Limiting pass. alpha, beta are already >= 0 here because every tangent
  // either matches the sign of its neighbouring secants or is zero.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (d[k] == 0.0) {
      m[k] = 0.0;
      m[k + 1] = 0.0;
      continue;
    }
    const double alpha = m[k] / d[k];
    const double beta = m[k + 1] / d[k];
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      m[k] = tau * alpha * d[k];
      m[k + 1] = tau * beta * d[k];
    }
  }
  return m;
}

MonotoneCubic::MonotoneCubic(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  slopes_ = fritsch_carlson_slopes(knots_, values_);
}

std::size_t MonotoneCubic::piece(double x) const {
  // upper_bound gives the first knot > x; the piece starts one before it.
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  std::size_t i = it == knots_.begin() ? 0 : std::size_t(it - knots_.begin()) - 1;
  return std::min(i, knots_.size() - 2);
}

MonotoneCubic::Sample MonotoneCubic::evaluate(double x, std::size_t i) const {
  const double x0 = knots_[i];
  const double h = knots_[i + 1] - x0;
  const double t = (x - x0) / h;
  const double y0 = values_[i];
  const double y1 = values_[i + 1];
  const double m0 = slopes_[i] * h;
  const double m1 = slopes_[i + 1] * h;

  const double t2 = t * t;
  const double t3 = t2 * t;
  Sample s;
  s.value = (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * m0 +
            (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * m1;
  s.d1 = ((6.0 * t2 - 6.0 * t) * (y0 - y1) + (3.0 * t2 - 4.0 * t + 1.0) * m0 +
          (3.0 * t2 - 2.0 * t) * m1) /
         h;
  s.d2 = ((12.0 * t - 6.0) * (y0 - y1) + (6.0 * t - 4.0) * m0 + (6.0 * t - 2.0) * m1) /
         (h * h);
  return s;
}

}  // namespace mrbot
