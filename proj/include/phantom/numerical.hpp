#pragma once

// Riemann-Roch on the blow-up, the Euler pairing of line bundles and the
// numerical tests built on it.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "phantom/picard_lattice.hpp"

namespace phantom {

// An ordered list of line bundles O(D_1), ..., O(D_k) on one blow-up.
class Collection {
public:
    explicit Collection(std::vector<DivisorClass> entries, std::vector<std::string> labels = {});

    std::size_t n() const { return entries_.front().n(); }
    std::size_t size() const { return entries_.size(); }
    const DivisorClass& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<DivisorClass>& entries() const { return entries_; }
    // Falls back to "O(<literal>)" when no label was given.
    std::string label(std::size_t i) const;
    const std::vector<std::string>& labels() const { return labels_; }

    // Same collection twisted by T: O(D_i + T).
    Collection twisted(const DivisorClass& t) const;

private:
    std::vector<DivisorClass> entries_;
    std::vector<std::string> labels_;
};

// chi(O(D)) = 1 + (D.D - D.K) / 2
Coeff chi_divisor(const DivisorClass& d);

// chi(O(a), O(b)) = chi(O(b - a))
Coeff euler_pairing(const DivisorClass& a, const DivisorClass& b);

struct GramMatrix {
    std::size_t size = 0;
    std::vector<Coeff> values;  // row-major, (i, j) = chi(E_i, E_j)

    Coeff at(std::size_t i, std::size_t j) const { return values[i * size + j]; }
    std::vector<std::vector<Coeff>> rows() const;
    friend bool operator==(const GramMatrix&, const GramMatrix&) = default;
};

GramMatrix gram_matrix(const Collection& c);

struct GramViolation {
    std::size_t row;
    std::size_t col;
    Coeff value;
    friend bool operator==(const GramViolation&, const GramViolation&) = default;
};

struct NumericalExceptionality {
    bool exceptional;
    std::optional<GramViolation> first_violation;  // row-major order
};

// Unit diagonal and zeros strictly below it.
NumericalExceptionality is_numerically_exceptional(const Collection& c);

// Class in K_0(X) ~ Z^{n+3} as (rank, c1, chi).
struct K0Vector {
    Coeff rank;
    DivisorClass c1;
    Coeff chi;

    // (rank, d, m_1, ..., m_n, chi)
    std::vector<Coeff> flattened() const;
};

K0Vector k0_vector(const DivisorClass& d);

struct MaximalLengthResult {
    bool basis;
    std::optional<Coeff> determinant;  // absent when the length is wrong
    std::string reason;
};

// The K_0 classes of the collection form a Z-basis of Z^{n+3}.
MaximalLengthResult is_maximal_length_basis(const Collection& c);

} // namespace phantom
