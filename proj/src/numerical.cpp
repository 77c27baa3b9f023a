#include "phantom/numerical.hpp"

#include "phantom/integer_matrix.hpp"

namespace phantom {

Collection::Collection(std::vector<DivisorClass> entries, std::vector<std::string> labels)
    : entries_(std::move(entries)), labels_(std::move(labels)) {
    if (entries_.empty()) throw ParameterError("a collection needs at least one object");
    for (const auto& e : entries_) {
        if (e.n() != entries_.front().n()) throw DimensionError("collection entries on different blow-ups");
    }
    if (!labels_.empty() && labels_.size() != entries_.size()) {
        throw ParameterError("label count does not match the collection length");
    }
}

std::string Collection::label(std::size_t i) const {
    if (!labels_.empty()) return labels_.at(i);
    return "O(" + format_divisor(entries_.at(i)) + ")";
}

Collection Collection::twisted(const DivisorClass& t) const {
    std::vector<DivisorClass> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e + t);
    return Collection(std::move(out));
}

Coeff chi_divisor(const DivisorClass& d) {
    const Coeff numerator = checked_sub(intersect(d, d), intersect(d, canonical_class(d.n())));
    // D^2 and D.K have the same parity (Wu's formula); anything else means
    // the intersection form is broken.
    if (numerator % 2 != 0) throw ConsistencyError("D^2 - D.K is odd for " + format_divisor(d));
    return checked_add(1, numerator / 2);
}

Coeff euler_pairing(const DivisorClass& a, const DivisorClass& b) { return chi_divisor(b - a); }

std::vector<std::vector<Coeff>> GramMatrix::rows() const {
    std::vector<std::vector<Coeff>> out(size);
    for (std::size_t i = 0; i < size; ++i) out[i].assign(values.begin() + i * size, values.begin() + (i + 1) * size);
    return out;
}

GramMatrix gram_matrix(const Collection& c) {
    GramMatrix g{c.size(), std::vector<Coeff>(c.size() * c.size())};
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) g.values[i * c.size() + j] = euler_pairing(c[i], c[j]);
    }
    return g;
}

NumericalExceptionality is_numerically_exceptional(const Collection& c) {
    const GramMatrix g = gram_matrix(c);
    for (std::size_t i = 0; i < g.size; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const Coeff expected = (i == j) ? 1 : 0;
            if (g.at(i, j) != expected) return {false, GramViolation{i, j, g.at(i, j)}};
        }
    }
    return {true, std::nullopt};
}

std::vector<Coeff> K0Vector::flattened() const {
    std::vector<Coeff> v;
    v.reserve(c1.n() + 3);
    v.push_back(rank);
    v.push_back(c1.degree());
    for (Coeff m : c1.multiplicities()) v.push_back(m);
    v.push_back(chi);
    return v;
}

K0Vector k0_vector(const DivisorClass& d) { return {1, d, chi_divisor(d)}; }

MaximalLengthResult is_maximal_length_basis(const Collection& c) {
    const std::size_t rank = c.n() + 3;
    if (c.size() != rank) {
        return {false, std::nullopt,
                "wrong length: " + std::to_string(c.size()) + " objects for K_0 of rank " + std::to_string(rank)};
    }
    std::vector<Coeff> matrix;
    matrix.reserve(rank * rank);
    for (const auto& e : c.entries()) {
        const auto row = k0_vector(e).flattened();
        matrix.insert(matrix.end(), row.begin(), row.end());
    }
    const Coeff det = exact_determinant(matrix, rank);
    const bool unimodular = det == 1 || det == -1;
    return {unimodular, det, unimodular ? "unimodular" : "determinant is not a unit"};
}

} // namespace phantom
