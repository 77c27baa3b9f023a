#pragma once

// Relative heights, pseudoheights and the presilting check for collections
// of line bundles on a surface.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "phantom/linear_systems.hpp"
#include "phantom/numerical.hpp"

namespace phantom {

// Integer or TOP, with TOP above every integer and absorbing under addition.
class Height {
public:
    constexpr Height() = default;  // TOP
    constexpr explicit Height(Coeff value) : value_(value) {}
    static constexpr Height top() { return Height(); }

    constexpr bool is_top() const { return !value_.has_value(); }
    Coeff value() const { return value_.value(); }
    std::string to_string() const { return is_top() ? "TOP" : std::to_string(*value_); }

    friend constexpr Height operator+(Height a, Height b) {
        return (a.is_top() || b.is_top()) ? top() : Height(*a.value_ + *b.value_);
    }
    friend constexpr Height operator+(Height a, Coeff k) { return a.is_top() ? top() : Height(*a.value_ + k); }

    friend constexpr bool operator==(Height a, Height b) = default;
    friend constexpr std::strong_ordering operator<=>(Height a, Height b) {
        if (a.is_top() || b.is_top()) return a.is_top() <=> b.is_top();
        return *a.value_ <=> *b.value_;
    }

private:
    std::optional<Coeff> value_;
};

using RelativeHeight = Height;

// Memoized cohomology of difference divisors under one oracle configuration.
// Concurrent lookups are safe; racing writers insert identical values.
class HeightOracle {
public:
    explicit HeightOracle(OracleConfig cfg = {}) : cfg_(cfg) {}

    const OracleConfig& config() const { return cfg_; }
    CohomologyVector cohomology(const DivisorClass& d);
    // e(O(a), O(b)): least k with H^k(b - a) != 0.
    RelativeHeight relative_height(const DivisorClass& a, const DivisorClass& b);
    std::size_t cached() const;

private:
    OracleConfig cfg_;
    mutable std::mutex mutex_;
    std::map<DivisorClass, CohomologyVector> table_;
};

RelativeHeight relative_height(const DivisorClass& a, const DivisorClass& b, const OracleConfig& cfg = {});

enum class ClosingKind {
    Serre,          // e(E_last, S^{-1} E_first) = e(E_last, E_first - K) + 2
    Anticanonical,  // e(E_last, E_first - K)
};
std::string to_string(ClosingKind k);

struct ChainReport {
    std::vector<std::size_t> chain;  // a_0 < ... < a_p
    std::vector<Height> edges;       // e(E_{a_i}, E_{a_{i+1}})
    Height closing;
    ClosingKind closing_kind = ClosingKind::Anticanonical;
    Height value;                    // sum(edges) + closing - p
};

struct PseudoheightResult {
    Height value;
    std::optional<ChainReport> witness;  // absent when every chain is TOP
};

// Minimum over increasing chains of sum edge(a_i, a_{i+1}) + closing(a_p, a_0) - p.
// Chains with a TOP term are skipped. Dynamic programming per start index.
PseudoheightResult minimize_chains(std::size_t k, const std::function<Height(std::size_t, std::size_t)>& edge,
                                   const std::function<Height(std::size_t, std::size_t)>& closing,
                                   ClosingKind kind);

PseudoheightResult pseudoheight(const Collection& c, HeightOracle& oracle);
PseudoheightResult pseudoheight(const Collection& c, const OracleConfig& cfg = {});
PseudoheightResult anticanonical_pseudoheight(const Collection& c, HeightOracle& oracle);
PseudoheightResult anticanonical_pseudoheight(const Collection& c, const OracleConfig& cfg = {});

struct NotFullEvidence {
    bool not_full;
    PseudoheightResult anticanonical;
    // forward[i][j] = e(E_i, E_j) for i < j; unset on and below the diagonal.
    std::vector<std::vector<std::optional<Height>>> forward;
};

// Not full when ph_ac > -dim X = -2 (TOP included). The collection is assumed
// exceptional. Oracle answers only overestimate cohomology, so computed
// heights never exceed the true ones and a positive verdict is rigorous.
NotFullEvidence not_full_criterion(const Collection& c, HeightOracle& oracle);
NotFullEvidence not_full_criterion(const Collection& c, const OracleConfig& cfg = {});

struct PresiltingViolation {
    std::size_t from;  // a
    std::size_t to;    // b
    int degree;        // k with Ext^k(O(D_a), O(D_b)) != 0
    Coeff dimension;
};

struct PresiltingResult {
    bool presilting;
    std::vector<PresiltingViolation> violations;  // (a, b) row-major, then k
    std::optional<PresiltingViolation> first_violation() const {
        return violations.empty() ? std::nullopt : std::optional(violations.front());
    }
};

// Hom(P, P[i]) = 0 for i > 0 where P = sum O(D_a)[s_a].
PresiltingResult presilting_check(const Collection& c, const std::vector<int>& shifts, HeightOracle& oracle);
PresiltingResult presilting_check(const Collection& c, const std::vector<int>& shifts,
                                  const OracleConfig& cfg = {});

} // namespace phantom
