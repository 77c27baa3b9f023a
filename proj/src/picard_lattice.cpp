#include "phantom/picard_lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "phantom/integer_matrix.hpp"

namespace phantom {

namespace {

void require_same_n(const DivisorClass& a, const DivisorClass& b) {
    if (a.n() != b.n()) {
        throw DimensionError("divisor classes on blow-ups in " + std::to_string(a.n()) + " and " +
                             std::to_string(b.n()) + " points");
    }
}

std::vector<Coeff> gram_diagonal(std::size_t n) {
    std::vector<Coeff> g(n + 1, -1);
    g[0] = 1;
    return g;
}

} // namespace

DivisorClass DivisorClass::exceptional(std::size_t n, std::size_t i) {
    if (i >= n) throw ParameterError("exceptional curve index out of range");
    DivisorClass e = zero(n);
    e.mult_[i] = -1;
    return e;
}

Coeff DivisorClass::max_multiplicity() const {
    return mult_.empty() ? 0 : *std::max_element(mult_.begin(), mult_.end());
}

bool DivisorClass::is_zero() const {
    return degree_ == 0 && std::all_of(mult_.begin(), mult_.end(), [](Coeff m) { return m == 0; });
}

std::vector<Coeff> DivisorClass::basis_coordinates() const {
    std::vector<Coeff> v;
    v.reserve(n() + 1);
    v.push_back(degree_);
    for (Coeff m : mult_) v.push_back(checked_neg(m));
    return v;
}

DivisorClass DivisorClass::from_basis_coordinates(std::span<const Coeff> coords) {
    if (coords.empty()) throw DimensionError("basis coordinates need at least the H coefficient");
    std::vector<Coeff> m;
    m.reserve(coords.size() - 1);
    for (std::size_t i = 1; i < coords.size(); ++i) m.push_back(checked_neg(coords[i]));
    return {coords[0], std::move(m)};
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    require_same_n(a, b);
    std::vector<Coeff> m(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) m[i] = checked_add(a.mult_[i], b.mult_[i]);
    return {checked_add(a.degree_, b.degree_), std::move(m)};
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    require_same_n(a, b);
    std::vector<Coeff> m(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) m[i] = checked_sub(a.mult_[i], b.mult_[i]);
    return {checked_sub(a.degree_, b.degree_), std::move(m)};
}

DivisorClass operator-(const DivisorClass& a) { return DivisorClass::zero(a.n()) - a; }

DivisorClass operator*(Coeff k, const DivisorClass& a) {
    std::vector<Coeff> m(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) m[i] = checked_mul(k, a.mult_[i]);
    return {checked_mul(k, a.degree_), std::move(m)};
}

Coeff intersect(const DivisorClass& a, const DivisorClass& b) {
    require_same_n(a, b);
    Coeff sum = checked_mul(a.degree(), b.degree());
    for (std::size_t i = 0; i < a.n(); ++i) {
        sum = checked_sub(sum, checked_mul(a.multiplicity(i), b.multiplicity(i)));
    }
    return sum;
}

DivisorClass canonical_class(std::size_t n) { return {-3, std::vector<Coeff>(n, -1)}; }

DivisorClass parse_divisor(std::string_view text) {
    const char* const begin = text.data();
    const char* const end = begin + text.size();
    const char* cursor = begin;

    auto read_int = [&](const char* what) {
        Coeff value = 0;
        auto [ptr, ec] = std::from_chars(cursor, end, value);
        if (ec == std::errc::result_out_of_range) {
            throw ParseError(std::string(what) + " out of range", static_cast<std::size_t>(cursor - begin));
        }
        if (ec != std::errc() || ptr == cursor) {
            throw ParseError(std::string("expected ") + what, static_cast<std::size_t>(cursor - begin));
        }
        cursor = ptr;
        return value;
    };

    Coeff degree = read_int("degree");
    if (cursor == end || *cursor != ';') {
        throw ParseError("expected ';'", static_cast<std::size_t>(cursor - begin));
    }
    ++cursor;

    std::vector<Coeff> mult;
    if (cursor != end) {
        while (true) {
            mult.push_back(read_int("multiplicity"));
            if (cursor == end) break;
            if (*cursor != ',') throw ParseError("expected ','", static_cast<std::size_t>(cursor - begin));
            ++cursor;
        }
    }
    return {degree, std::move(mult)};
}

std::string format_divisor(const DivisorClass& d) {
    std::ostringstream out;
    out << d.degree() << ';';
    for (std::size_t i = 0; i < d.n(); ++i) {
        if (i) out << ',';
        out << d.multiplicity(i);
    }
    return out.str();
}

LatticeIsometry::LatticeIsometry(std::size_t n, std::vector<Coeff> row_major)
    : n_(n), entries_(std::move(row_major)) {
    const std::size_t size = n_ + 1;
    if (entries_.size() != size * size) throw DimensionError("isometry matrix must be (n+1)x(n+1)");

    // M^T G M == G with G = diag(1, -1, ..., -1).
    const auto g = gram_diagonal(n_);
    for (std::size_t a = 0; a < size; ++a) {
        for (std::size_t b = a; b < size; ++b) {
            Coeff s = 0;
            for (std::size_t r = 0; r < size; ++r) {
                s = checked_add(s, checked_mul(g[r], checked_mul(at(r, a), at(r, b))));
            }
            const Coeff expected = (a == b) ? g[a] : 0;
            if (s != expected) throw ParameterError("matrix does not preserve the intersection form");
        }
    }
}

LatticeIsometry LatticeIsometry::identity(std::size_t n) {
    std::vector<Coeff> e((n + 1) * (n + 1), 0);
    for (std::size_t i = 0; i <= n; ++i) e[i * (n + 1) + i] = 1;
    return {n, std::move(e)};
}

LatticeIsometry LatticeIsometry::from_basis_images(std::span<const DivisorClass> images) {
    if (images.empty()) throw DimensionError("need the image of H");
    const std::size_t n = images.size() - 1;
    const std::size_t size = n + 1;
    std::vector<Coeff> e(size * size);
    for (std::size_t col = 0; col < size; ++col) {
        if (images[col].n() != n) throw DimensionError("basis image on the wrong lattice");
        const auto coords = images[col].basis_coordinates();
        for (std::size_t row = 0; row < size; ++row) e[row * size + col] = coords[row];
    }
    return {n, std::move(e)};
}

DivisorClass LatticeIsometry::apply(const DivisorClass& d) const {
    if (d.n() != n_) throw DimensionError("isometry and divisor live on different lattices");
    const auto v = d.basis_coordinates();
    std::vector<Coeff> out(dim(), 0);
    for (std::size_t r = 0; r < dim(); ++r) {
        Coeff s = 0;
        for (std::size_t c = 0; c < dim(); ++c) s = checked_add(s, checked_mul(at(r, c), v[c]));
        out[r] = s;
    }
    return DivisorClass::from_basis_coordinates(out);
}

LatticeIsometry LatticeIsometry::compose(const LatticeIsometry& inner) const {
    if (inner.n_ != n_) throw DimensionError("composing isometries of different lattices");
    std::vector<Coeff> e(dim() * dim(), 0);
    for (std::size_t r = 0; r < dim(); ++r) {
        for (std::size_t c = 0; c < dim(); ++c) {
            Coeff s = 0;
            for (std::size_t k = 0; k < dim(); ++k) s = checked_add(s, checked_mul(at(r, k), inner.at(k, c)));
            e[r * dim() + c] = s;
        }
    }
    return {n_, std::move(e)};
}

int LatticeIsometry::determinant() const { return static_cast<int>(exact_determinant(entries_, dim())); }

DivisorClass apply_isometry(const LatticeIsometry& iso, const DivisorClass& d) { return iso.apply(d); }

LatticeIsometry iota_involution(std::size_t n) {
    if (n != 10) throw ParameterError("the involution iota needs K^2 = -1, i.e. exactly 10 points");
    const DivisorClass k = canonical_class(n);
    std::vector<DivisorClass> images;
    images.reserve(n + 1);
    auto iota = [&](const DivisorClass& v) { return -v - checked_mul(2, intersect(v, k)) * k; };
    images.push_back(iota(DivisorClass::hyperplane(n)));
    for (std::size_t i = 0; i < n; ++i) images.push_back(iota(DivisorClass::exceptional(n, i)));
    return LatticeIsometry::from_basis_images(images);
}

LatticeIsometry cremona_reflection(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
    if (n < 3) throw ParameterError("Cremona reflection needs at least 3 points");
    if (i >= n || j >= n || k >= n) throw ParameterError("Cremona index out of range");
    if (i == j || j == k || i == k) throw ParameterError("Cremona indices must be distinct");

    DivisorClass root = DivisorClass::hyperplane(n);
    for (std::size_t idx : {i, j, k}) root = root - DivisorClass::exceptional(n, idx);

    auto reflect = [&](const DivisorClass& v) { return v + intersect(v, root) * root; };
    std::vector<DivisorClass> images;
    images.reserve(n + 1);
    images.push_back(reflect(DivisorClass::hyperplane(n)));
    for (std::size_t e = 0; e < n; ++e) images.push_back(reflect(DivisorClass::exceptional(n, e)));
    return LatticeIsometry::from_basis_images(images);
}

LatticeIsometry permutation_isometry(std::span<const std::size_t> perm) {
    const std::size_t n = perm.size();
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p]) throw ParameterError("not a permutation");
        seen[p] = true;
    }
    std::vector<DivisorClass> images;
    images.reserve(n + 1);
    images.push_back(DivisorClass::hyperplane(n));
    for (std::size_t i = 0; i < n; ++i) images.push_back(DivisorClass::exceptional(n, perm[i]));
    return LatticeIsometry::from_basis_images(images);
}

MinusOneClass::MinusOneClass(DivisorClass c) : class_(std::move(c)) {
    if (intersect(class_, class_) != -1 || intersect(class_, canonical_class(class_.n())) != -1) {
        throw ParameterError("not a (-1)-class: " + format_divisor(class_));
    }
}

namespace {

// Depth-first over b_i in increasing order. `sum` and `squares` are what the
// remaining coordinates still have to contribute.
void extend_minus_one(std::size_t index, Coeff sum, Coeff squares, Coeff degree, std::vector<Coeff>& b,
                      std::vector<MinusOneClass>& out) {
    const auto remaining = static_cast<Coeff>(b.size() - index);
    if (remaining == 0) {
        if (sum == 0 && squares == 0) out.emplace_back(DivisorClass(degree, b));
        return;
    }
    if (squares < 0 || sum * sum > remaining * squares || ((sum - squares) & 1) != 0) return;

    const auto bound = static_cast<Coeff>(std::sqrt(static_cast<double>(squares))) + 1;
    for (Coeff v = -bound; v <= bound; ++v) {
        if (v * v > squares) continue;
        b[index] = v;
        extend_minus_one(index + 1, sum - v, squares - v * v, degree, b, out);
    }
}

} // namespace

std::vector<MinusOneClass> enumerate_minus_one_classes(std::size_t n, Coeff degree_bound) {
    if (degree_bound < 0) throw ParameterError("degree bound must be non-negative");
    std::vector<MinusOneClass> out;
    std::vector<Coeff> b(n, 0);
    for (Coeff a = 0; a <= degree_bound; ++a) {
        // C.C = -1  <=> sum b_i^2 = a^2 + 1
        // C.K = -1  <=> sum b_i   = 3a - 1
        extend_minus_one(0, checked_sub(checked_mul(3, a), 1), checked_add(checked_mul(a, a), 1), a, b, out);
    }
    return out;
}

} // namespace phantom
