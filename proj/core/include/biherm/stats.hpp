#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace biherm {

/// Order-independent summary of a residual multiset.
struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
  double q95 = 0.0;
  std::size_t count = 0;

  static ResidualStats from(std::span<const double> values);
};

}  // namespace biherm
