#pragma once

#include <vector>

namespace softttl {

// Euclidean projection onto {1 >= x[0] >= x[1] >= ... >= x[n-1] >= 0}:
// pool-adjacent-violators for the monotone cone followed by clipping to
// [0, 1], which is exact for this box-ordered cone.
std::vector<double> isotonic_project(std::vector<double> v);

}  // namespace softttl
