#pragma once

// Integer model of Pic(X) for X the blow-up of the plane in n points:
// Z H + Z E_1 + ... + Z E_n with H^2 = 1, E_i^2 = -1 and all other
// products zero.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phantom/checked_arithmetic.hpp"

namespace phantom {

// The class d H - sum_i m_i E_i, stored as (d; m_1, ..., m_n).
// Indices of exceptional curves are 0-based throughout the C++ API.
class DivisorClass {
public:
    DivisorClass() = default;
    DivisorClass(Coeff degree, std::vector<Coeff> multiplicities)
        : degree_(degree), mult_(std::move(multiplicities)) {}

    static DivisorClass zero(std::size_t n) { return {0, std::vector<Coeff>(n, 0)}; }
    static DivisorClass hyperplane(std::size_t n) { return {1, std::vector<Coeff>(n, 0)}; }
    // E_i; note the stored multiplicity is -1.
    static DivisorClass exceptional(std::size_t n, std::size_t i);

    std::size_t n() const { return mult_.size(); }
    Coeff degree() const { return degree_; }
    Coeff multiplicity(std::size_t i) const { return mult_.at(i); }
    std::span<const Coeff> multiplicities() const { return mult_; }
    Coeff max_multiplicity() const;
    bool is_zero() const;

    // Coefficients on the basis (H, E_1, ..., E_n), i.e. (d, -m_1, ..., -m_n).
    std::vector<Coeff> basis_coordinates() const;
    static DivisorClass from_basis_coordinates(std::span<const Coeff> coords);

    DivisorClass with_multiplicities(std::vector<Coeff> m) const { return {degree_, std::move(m)}; }

    friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
    friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
    friend DivisorClass operator-(const DivisorClass& a);
    friend DivisorClass operator*(Coeff k, const DivisorClass& a);

    // Lexicographic on (d, m_1, ..., m_n).
    friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;
    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

private:
    Coeff degree_ = 0;
    std::vector<Coeff> mult_;
};

// a.d * b.d - sum_i a.m_i * b.m_i
Coeff intersect(const DivisorClass& a, const DivisorClass& b);

// K = -3H + sum E_i
DivisorClass canonical_class(std::size_t n);

// Literal form "d;m1,m2,...,mn" (no whitespace, "d;" when n = 0).
DivisorClass parse_divisor(std::string_view text);
std::string format_divisor(const DivisorClass& d);

// Integer (n+1)x(n+1) matrix acting on basis coordinates (H, E_1, ..., E_n)
// and preserving the intersection form. Column j holds the image of the
// j-th basis vector. Construction validates the isometry property.
class LatticeIsometry {
public:
    LatticeIsometry(std::size_t n, std::vector<Coeff> row_major);

    static LatticeIsometry identity(std::size_t n);
    // images[0] is the image of H, images[1 + i] the image of E_i.
    static LatticeIsometry from_basis_images(std::span<const DivisorClass> images);

    std::size_t n() const { return n_; }
    std::size_t dim() const { return n_ + 1; }
    Coeff at(std::size_t row, std::size_t col) const { return entries_[row * dim() + col]; }

    DivisorClass apply(const DivisorClass& d) const;
    // (*this) after (inner)
    LatticeIsometry compose(const LatticeIsometry& inner) const;
    bool fixes(const DivisorClass& d) const { return apply(d) == d; }
    bool fixes_canonical_class() const { return fixes(canonical_class(n_)); }
    // Exact; always +1 or -1 for a valid isometry.
    int determinant() const;

    friend bool operator==(const LatticeIsometry&, const LatticeIsometry&) = default;

private:
    std::size_t n_;
    std::vector<Coeff> entries_;
};

DivisorClass apply_isometry(const LatticeIsometry& iso, const DivisorClass& d);

// v -> -v - 2 (v.K) K: minus the identity on the orthogonal complement of K,
// identity on Z K. Only integral and K-preserving when K^2 = -1, so n must
// be 10.
LatticeIsometry iota_involution(std::size_t n = 10);

// Reflection v -> v + (v.r) r in the root r = H - E_i - E_j - E_k.
LatticeIsometry cremona_reflection(std::size_t n, std::size_t i, std::size_t j, std::size_t k);

// E_i -> E_{perm[i]}, H fixed.
LatticeIsometry permutation_isometry(std::span<const std::size_t> perm);

// A class C with C.C = -1 and C.K = -1.
class MinusOneClass {
public:
    explicit MinusOneClass(DivisorClass c);
    const DivisorClass& divisor() const { return class_; }
    friend auto operator<=>(const MinusOneClass&, const MinusOneClass&) = default;
    friend bool operator==(const MinusOneClass&, const MinusOneClass&) = default;

private:
    DivisorClass class_;
};

// All (-1)-classes (a; b_1, ..., b_n) with 0 <= a <= degree_bound, in
// lexicographic order of (a, b_1, ..., b_n).
std::vector<MinusOneClass> enumerate_minus_one_classes(std::size_t n, Coeff degree_bound);

} // namespace phantom
