#pragma once

// End-to-end verification that
//   O, O(D_1), ..., O(D_10), O(F), O(2F),  D_i = iota(E_i), F = iota(H),
// on the blow-up of the plane in 10 general points is an exceptional
// collection of maximal length that is not full, so its orthogonal
// complement is a phantom.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "phantom/heights.hpp"
#include "phantom/linear_systems.hpp"
#include "phantom/numerical.hpp"
#include "phantom/picard_lattice.hpp"

namespace phantom {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

struct TheoremConfig {
    std::uint64_t prime = kMersenne31;
    std::uint64_t seed = 1;
    int trials = 3;
    Coeff degree_bound = 10;  // (-1)-classes used for the C.D >= -1 spot check

    OracleConfig oracle() const { return {prime, seed, trials}; }
    // Throws ParameterError unless prime is prime and exceeds 38, the largest
    // degree among the divisors that need certificates.
    void validate() const;
};

// (O, O(E_1), ..., O(E_n), O(H), O(2H))
Collection build_standard_collection(std::size_t n = 10);

// iota applied to the standard collection, cross-checked against the closed
// forms; throws ConsistencyError on mismatch.
Collection build_theorem_collection();

// Shifts (0, 2, ..., 2, 4, 6) of the presilting object.
std::vector<int> theorem_shifts();

enum class VanishingTag { NeedsOracle, TrivialVanishing };
std::string to_string(VanishingTag t);

struct VanishingEntry {
    DivisorClass divisor;
    std::string label;
    VanishingTag tag;
};

// Negative degree, or of the form E_i - E_j.
bool is_trivially_vanishing(const DivisorClass& d);

struct VanishingLists {
    // -F, -2F, -D_i, D_i - F, D_i - 2F: every h^0 must vanish (32 entries).
    std::vector<VanishingEntry> exceptionality;
    // D_i, F, 2F, F - D_i, 2F - D_i, D_j - D_i: forward Homs.
    std::vector<VanishingEntry> not_full;
};

VanishingLists vanishing_lists();

// Divisors X = D_b - D_a (a > b) and K - X that are not trivially zero: the
// h^0 that must vanish for the collection to be exceptional, given that it
// is numerically exceptional. Deduplicated, first-occurrence order.
std::vector<DivisorClass> exceptionality_divisors(const Collection& c);

struct StageResult {
    std::string name;
    bool pass = false;
    nlohmann::json witnesses = nlohmann::json::object();
    std::vector<OracleResult> certificates{};
    double duration_ms = 0.0;
};

struct VerificationReport {
    int schema = kReportSchema;
    bool pass = false;
    std::vector<StageResult> stages;
    TheoremConfig config;
    std::string version = kVersion;

    const StageResult* stage(const std::string& name) const;
};

nlohmann::json stage_to_json(const StageResult& s);
nlohmann::json report_to_json(const VerificationReport& r, bool include_durations = true);

// Per divisor: chi = 0, standard form after sorting, h^0 = 0 with a rank
// certificate, h^2 = h^0(K - D) = 0, and C.D >= -1 for the enumerated
// (-1)-classes C. Passes iff every divisor passes.
StageResult verify_exceptionality(std::span<const DivisorClass> divisors, const TheoremConfig& cfg);
StageResult verify_exceptionality(const TheoremConfig& cfg);

// Stages: construction, numerical exceptionality, maximal length,
// exceptionality, not-full criterion, presilting. `candidate` replaces the
// collection checked by stages 2-6.
VerificationReport verify_theorem(const TheoremConfig& cfg);
VerificationReport verify_theorem(const TheoremConfig& cfg, const Collection& candidate);

// Breadth-first images of `base` under words of length <= depth in the
// generators, keeping numerically exceptional collections, deduplicated up
// to a common twist (entries normalized by subtracting the first).
std::vector<Collection> orbit_search(std::span<const LatticeIsometry> generators, const Collection& base,
                                     std::size_t depth);

} // namespace phantom
