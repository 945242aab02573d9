#include "splitproj/trace.hpp"

#include <algorithm>
#include <cmath>

namespace splitproj {

std::size_t IterateTrace::fejer_violations() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const TraceRow& r) {
    return r.fejer_violation && *r.fejer_violation > kFejerTolerance;
  }));
}

bool decile_decay(const std::vector<double>& series, double floor) {
  if (series.size() < 10) return false;
  std::vector<double> sorted = series;
  std::sort(sorted.begin(), sorted.end());
  const double first_decile = sorted[(sorted.size() - 1) / 10];

  const std::size_t tail = std::max<std::size_t>(1, series.size() / 10);
  const double tail_max =
      *std::max_element(series.end() - static_cast<std::ptrdiff_t>(tail), series.end());
  return tail_max <= 10.0 * first_decile + floor;
}

}  // namespace splitproj
