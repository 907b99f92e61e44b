#include "wchaos/regression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wchaos/kernels.hpp"

namespace wchaos {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  if (x.size() < 3) throw std::invalid_argument("fit_line: need at least 3 points");

  const auto n = static_cast<double>(x.size());
  const double mx = kernels::sum(x) / n;
  const double my = kernels::sum(y) / n;
  const kernels::CrossMoments m = kernels::centered_moments(x, y, mx, my);
  if (!(m.sxx > 0.0)) throw std::invalid_argument("fit_line: abscissae are constant");

  LinearFit fit;
  fit.count = x.size();
  fit.slope = m.sxy / m.sxx;
  fit.intercept = my - fit.slope * mx;
  // Second pass keeps the residual accurate when the fit is near perfect.
  fit.rss = kernels::residual_sum_squares(x, y, fit.intercept, fit.slope);
  fit.slope_stderr = std::sqrt(fit.rss / (n - 2.0) / m.sxx);
  fit.r_squared = m.syy > 0.0 ? std::max(0.0, 1.0 - fit.rss / m.syy) : 1.0;
  return fit;
}

}  // namespace wchaos
