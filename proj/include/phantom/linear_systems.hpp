#pragma once

// Linear systems of plane curves with fat points at general positions:
// Cremona reduction to standard form, the expected dimension, and a
// finite-field interpolation oracle for h^0.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "phantom/picard_lattice.hpp"

namespace phantom {

inline constexpr std::uint64_t kMersenne31 = 2147483647;  // 2^31 - 1

// Trial division; p must be below 2^32.
bool is_prime(std::uint64_t p);

struct OracleConfig {
    std::uint64_t prime = kMersenne31;
    std::uint64_t seed = 1;
    int trials = 3;
    friend bool operator==(const OracleConfig&, const OracleConfig&) = default;
};

// A zero from the oracle is a proof that h^0 vanishes for general points in
// characteristic zero. A positive answer is only an upper bound.
enum class Certificate { RankCertificate, MonteCarlo };
std::string to_string(Certificate c);

struct OracleResult {
    DivisorClass divisor;
    std::uint64_t prime;
    std::vector<std::uint64_t> seeds;  // one per trial actually run
    Coeff value;
    Certificate certificate;
};

// Seed of the counter-th trial derived from the user seed.
std::uint64_t trial_seed(std::uint64_t user_seed, std::uint64_t counter);

struct AffinePoint {
    std::uint64_t x;
    std::uint64_t y;
    friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

// n distinct points [x : y : 1] over F_p.
std::vector<AffinePoint> sample_points(std::size_t n, std::uint64_t prime, std::uint64_t seed);

// C(d+2, 2) minus the rank of the fat-point conditions at the given points.
// Negative multiplicities are clipped to zero; d < 0 gives 0.
Coeff h0_at_points(const DivisorClass& d, std::span<const AffinePoint> points, std::uint64_t prime);

// Minimum of h0_at_points over cfg.trials independent samples, stopping early
// at zero.
OracleResult h0_oracle(const DivisorClass& d, const OracleConfig& cfg = {});

// d >= m_1 >= ... >= m_n and d - m_1 - m_2 - m_3 >= 0. With fewer than three
// points only the ordering is required.
bool is_standard_form(const DivisorClass& d);

// new m[t] = old m[order[t]]
struct PermutationStep {
    std::vector<std::size_t> order;
    friend bool operator==(const PermutationStep&, const PermutationStep&) = default;
};

struct CremonaStep {
    std::size_t i, j, k;
    friend bool operator==(const CremonaStep&, const CremonaStep&) = default;
};

using ReductionStep = std::variant<PermutationStep, CremonaStep>;

enum class ReductionVerdict {
    StandardForm,
    NegativeDegree,
    // d >= 0 but m_1 > d with the remaining multiplicities negative: after
    // clipping, no curve of degree d has such a point.
    EmptyByClip,
};
std::string to_string(ReductionVerdict v);

struct ReductionTrace {
    DivisorClass input;
    std::vector<ReductionStep> steps;
    DivisorClass result;
    ReductionVerdict verdict;

    std::size_t cremona_steps() const;
};

DivisorClass apply_step(const ReductionStep& step, const DivisorClass& d);

// Sort multiplicities, apply the quadratic transformation on the three
// largest while d < m_1 + m_2 + m_3, repeat. Stops as soon as d < 0.
ReductionTrace standard_form_reduce(const DivisorClass& d);

// max(0, chi(D)); the SHGH prediction for standard-form D.
Coeff expected_dimension(const DivisorClass& d);

struct CohomologyVector {
    Coeff h0 = 0;
    Coeff h1 = 0;
    Coeff h2 = 0;
    // RankCertificate only when h0 and h2 both carry one, which makes the
    // whole vector exact.
    Certificate certificate = Certificate::RankCertificate;
    Certificate h0_certificate = Certificate::RankCertificate;
    Certificate h2_certificate = Certificate::RankCertificate;
    std::vector<std::uint64_t> seeds;

    Coeff at(int degree) const { return degree == 0 ? h0 : degree == 1 ? h1 : h2; }
};

// h^0 from the oracle, h^2 = h^0(K - D) by Serre duality, h^1 from
// Riemann-Roch. Every oracle answer bounds the true value from above, so the
// three entries are upper bounds of the true dimensions.
CohomologyVector cohomology_vector(const DivisorClass& d, const OracleConfig& cfg = {});

} // namespace phantom
