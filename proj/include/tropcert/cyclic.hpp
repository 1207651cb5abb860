#pragma once
#include <vector>

#include "tropcert/polynomial.hpp"

namespace tropcert {

// The cyclic n-roots system: equation k (1-based, k < n) sums the products
// of k consecutive variables around the cycle; the last equation is
// x1*...*xn - 1.
LaurentSystem cyclic_system(int n);

// Rotation of the variable cycle and its inverse.
std::vector<std::vector<int>> cyclic_generators(int n);

} // namespace tropcert
