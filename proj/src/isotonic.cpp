#include "softttl/isotonic.hpp"

#include <algorithm>

namespace softttl {

std::vector<double> isotonic_project(std::vector<double> v) {
  const std::size_t n = v.size();
  if (n == 0) return v;

  // PAV for a non-increasing fit: merge adjacent blocks whose means
  // violate the ordering and replace them by their pooled mean.
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  blocks.reserve(n);
  for (double x : v) {
    blocks.push_back({x, 1});
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      blocks[blocks.size() - 2].sum += blocks.back().sum;
      blocks[blocks.size() - 2].count += blocks.back().count;
      blocks.pop_back();
    }
  }

  std::size_t i = 0;
  for (const auto& b : blocks) {
    const double value = std::clamp(b.mean(), 0.0, 1.0);
    for (std::size_t j = 0; j < b.count; ++j) v[i++] = value;
  }
  return v;
}

}  // namespace softttl
