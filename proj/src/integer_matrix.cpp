#include "phantom/integer_matrix.hpp"

#include <utility>
#include <vector>

namespace phantom {

namespace {

using Wide = __int128;

Wide wide_mul(Wide a, Wide b) {
    Wide r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("overflow in exact determinant");
    return r;
}

Wide wide_sub(Wide a, Wide b) {
    Wide r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("overflow in exact determinant");
    return r;
}

} // namespace

Coeff exact_determinant(std::span<const Coeff> row_major, std::size_t size) {
    if (row_major.size() != size * size) throw DimensionError("determinant needs a square matrix");
    if (size == 0) return 1;

    std::vector<Wide> a(row_major.begin(), row_major.end());
    auto at = [&](std::size_t r, std::size_t c) -> Wide& { return a[r * size + c]; };

    int sign = 1;
    Wide previous = 1;
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (at(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < size && at(swap_row, k) == 0) ++swap_row;
            if (swap_row == size) return 0;
            for (std::size_t c = 0; c < size; ++c) std::swap(at(k, c), at(swap_row, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < size; ++i) {
            for (std::size_t j = k + 1; j < size; ++j) {
                // Exact by Sylvester's identity.
                at(i, j) = wide_sub(wide_mul(at(i, j), at(k, k)), wide_mul(at(i, k), at(k, j))) / previous;
            }
            at(i, k) = 0;
        }
        previous = at(k, k);
    }

    Wide det = at(size - 1, size - 1) * sign;
    if (det > INT64_MAX || det < INT64_MIN) throw OverflowError("determinant exceeds 64 bits");
    return static_cast<Coeff>(det);
}

} // namespace phantom
