#pragma once

#include <cstddef>
#include <span>

namespace esbgk {

/// Pairwise (cascade) summation. Fixed evaluation order, so results do not
/// depend on how callers partition work.
inline double pairwise_sum(std::span<const double> x) {
  constexpr std::size_t kBlock = 32;
  if (x.size() <= kBlock) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

}  // namespace esbgk
