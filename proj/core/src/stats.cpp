#include "biherm/stats.hpp"

#include <algorithm>
#include <cmath>

namespace biherm {

ResidualStats ResidualStats::from(std::span<const double> values) {
  ResidualStats s;
  s.count = values.size();
  if (values.empty()) return s;
  std::vector<double> sorted(values.begin(), values.end());
  // NaN sorts last and poisons the max, so a failed evaluation never passes.
  std::sort(sorted.begin(), sorted.end(), [](double a, double b) {
    if (std::isnan(a)) return false;
    if (std::isnan(b)) return true;
    return a < b;
  });
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.max = sorted.back();
  s.mean = sum / static_cast<double>(sorted.size());
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(sorted.size())));
  s.q95 = sorted[std::min(sorted.size(), std::max<std::size_t>(rank, 1)) - 1];
  return s;
}

}  // namespace biherm
