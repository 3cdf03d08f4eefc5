#include "relgas/pchip.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace relgas {

namespace {

// One-sided slope at an endpoint via the standard three-point formula,
// limited so the interpolant cannot overshoot the first interval.
double endpoint_slope(double h1, double h2, double d1, double d2) {
  double d = ((2.0 * h1 + h2) * d1 - h1 * d2) / (h1 + h2);
  if (d * d1 <= 0.0)
    d = 0.0;
  else if (d1 * d2 < 0.0 && std::abs(d) > 3.0 * std::abs(d1))
    d = 3.0 * d1;
  return d;
}

}  // namespace

Pchip::Pchip(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw DomainError("interpolation needs >= 2 knots and matching values");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw DomainError("interpolation knots must be strictly increasing");

  std::vector<double> h(n - 1), del(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    del[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = del[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] * del[i] <= 0.0) {
      d_[i] = 0.0;  // local extremum or flat: clamp to keep monotonicity
    } else {
      // Weighted harmonic mean of adjacent secants (Fritsch-Carlson).
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
  }
  d_[0] = endpoint_slope(h[0], h[1], del[0], del[1]);
  d_[n - 1] = endpoint_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
}

std::size_t Pchip::interval(double t) const {
  if (!(t >= x_.front()) || !(t <= x_.back()))
    throw OutOfRange("query " + std::to_string(t) + " outside [" +
                     std::to_string(x_.front()) + ", " +
                     std::to_string(x_.back()) + "]");
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = std::size_t(it - x_.begin());
  if (i > 0) --i;
  if (i + 1 >= x_.size()) i = x_.size() - 2;
  return i;
}

double Pchip::operator()(double t) const {
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double Pchip::derivative(double t) const {
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  const double g00 = (6.0 * s2 - 6.0 * s) / h;
  const double g10 = 3.0 * s2 - 4.0 * s + 1.0;
  const double g01 = (-6.0 * s2 + 6.0 * s) / h;
  const double g11 = 3.0 * s2 - 2.0 * s;
  return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

}  // namespace relgas
