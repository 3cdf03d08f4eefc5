// Monotone piecewise-cubic Hermite interpolation (Fritsch-Carlson slope
// limiting) on non-uniform knots.  Used to move fields between the material
// grid and a uniform laboratory grid: the map xi -> x is strictly monotone,
// and the limiter guarantees the interpolated inverse stays monotone too,
// at the cost of dropping to O(h^2) near extrema of general data.  On
// smooth monotone data the interpolant is O(h^3).
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "relgas/errors.hpp"

namespace relgas {

class Pchip {
 public:
  // Knots must be strictly increasing; at least two are required.
  Pchip(std::span<const double> x, std::span<const double> y);

  // Evaluate at t; throws OutOfRange outside [x.front(), x.back()].
  double operator()(double t) const;
  double derivative(double t) const;

  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }

 private:
  std::size_t interval(double t) const;
  std::vector<double> x_, y_, d_;  // knots, values, endpoint slopes
};

}  // namespace relgas
