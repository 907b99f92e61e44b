#pragma once

#include <cstddef>
#include <span>

namespace wchaos {

/// Ordinary least-squares line y = intercept + slope * x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double rss = 0.0;        // residual sum of squares
  double r_squared = 1.0;  // 1 when y is constant
  std::size_t count = 0;
};

/// Requires x.size() == y.size() >= 3 and x not constant.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace wchaos
