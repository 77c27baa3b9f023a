#pragma once

#include <cstddef>
#include <span>

#include "phantom/checked_arithmetic.hpp"

namespace phantom {

// Exact determinant of a size x size row-major integer matrix by Bareiss
// fraction-free elimination. Intermediate minors are carried in 128 bits;
// throws OverflowError if they or the result leave range.
Coeff exact_determinant(std::span<const Coeff> row_major, std::size_t size);

} // namespace phantom
