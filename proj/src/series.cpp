#include "wchaos/series.hpp"

#include <stdexcept>
#include <string>

namespace wchaos {

SeparationSeries SeparationSeries::from_deltas(std::vector<double> times,
                                               std::span<const double> deltas) {
  if (times.size() != deltas.size()) {
    throw std::invalid_argument("separation series: times and deltas differ in length");
  }
  std::vector<double> logs(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0) || !std::isfinite(deltas[i])) {
      throw std::invalid_argument("separation series: delta at index " + std::to_string(i) +
                                  " is not a positive finite number");
    }
    logs[i] = std::log(deltas[i]);
  }
  return from_log_deltas(std::move(times), std::move(logs));
}

SeparationSeries SeparationSeries::from_log_deltas(std::vector<double> times,
                                                   std::vector<double> log_deltas) {
  if (times.size() != log_deltas.size()) {
    throw std::invalid_argument("separation series: times and deltas differ in length");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(log_deltas[i])) {
      throw std::invalid_argument("separation series: non-finite sample at index " +
                                  std::to_string(i));
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("separation series: times must be strictly increasing");
    }
  }
  return SeparationSeries(std::move(times), std::move(log_deltas));
}

SeparationSeries SeparationSeries::slice(std::size_t first, std::size_t count) const {
  if (first + count > size()) throw std::out_of_range("separation series: slice out of range");
  const auto b = static_cast<std::ptrdiff_t>(first);
  const auto e = static_cast<std::ptrdiff_t>(first + count);
  return SeparationSeries({times_.begin() + b, times_.begin() + e},
                          {log_deltas_.begin() + b, log_deltas_.begin() + e});
}

}  // namespace wchaos
