#pragma once

#include <cstddef>
#include <vector>

namespace ascan {

// True when an order-n Hadamard matrix can be built here: n = 2, Sylvester
// doubling of a supported order, or Paley type I on a prime power q = n-1
// with q = 3 (mod 4).
bool hadamard_supported(std::size_t n);

// Row-major +/-1 entries; the first row is always the all-one row. Throws
// std::invalid_argument for unsupported orders.
std::vector<int> hadamard_matrix(std::size_t n);

}  // namespace ascan
