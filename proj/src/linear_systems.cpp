#include "phantom/linear_systems.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "phantom/numerical.hpp"

namespace phantom {

namespace {

using u64 = std::uint64_t;

u64 pow_mod(u64 base, u64 exp, u64 p) {
    u64 result = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return result;
}

u64 inverse_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

u64 splitmix64(u64 x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform residue mod p without relying on std::uniform_int_distribution,
// whose output is implementation-defined.
u64 uniform_residue(std::mt19937_64& rng, u64 p) {
    const u64 limit = (UINT64_MAX / p) * p;
    u64 x;
    do {
        x = rng();
    } while (x >= limit);
    return x % p;
}

// Rank over F_p of a rows x cols row-major matrix (entries already reduced).
std::size_t rank_mod_p(std::vector<u64>& a, std::size_t rows, std::size_t cols, u64 p) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank) {
            std::swap_ranges(a.begin() + pivot * cols, a.begin() + (pivot + 1) * cols, a.begin() + rank * cols);
        }
        u64* prow = &a[rank * cols];
        const u64 inv = inverse_mod(prow[c], p);
        for (std::size_t j = c; j < cols; ++j) prow[j] = prow[j] * inv % p;

        for (std::size_t r = rank + 1; r < rows; ++r) {
            u64* row = &a[r * cols];
            if (row[c] == 0) continue;
            const u64 f = p - row[c];
            // f * prow[j] + row[j] <= (p-1)^2 + (p-1) < 2^64 for p < 2^32.
            for (std::size_t j = c; j < cols; ++j) row[j] = (row[j] + f * prow[j]) % p;
        }
        ++rank;
    }
    return rank;
}

Coeff monomial_count(Coeff d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }

void check_oracle_parameters(const DivisorClass& d, u64 p) {
    if (!is_prime(p)) throw ParameterError("modulus " + std::to_string(p) + " is not a prime below 2^32");
    const Coeff largest = std::max<Coeff>(d.degree(), d.max_multiplicity());
    if (largest >= 0 && p <= static_cast<u64>(largest)) {
        throw ParameterError("prime " + std::to_string(p) + " must exceed the degree and every multiplicity of " +
                             format_divisor(d));
    }
}

} // namespace

bool is_prime(std::uint64_t p) {
    if (p < 2 || p >= (u64{1} << 32)) return false;
    if (p % 2 == 0) return p == 2;
    for (u64 q = 3; q * q <= p; q += 2) {
        if (p % q == 0) return false;
    }
    return true;
}

std::string to_string(Certificate c) {
    return c == Certificate::RankCertificate ? "RANK_CERTIFICATE" : "MONTE_CARLO";
}

std::uint64_t trial_seed(std::uint64_t user_seed, std::uint64_t counter) {
    return splitmix64(user_seed ^ splitmix64(counter));
}

std::vector<AffinePoint> sample_points(std::size_t n, std::uint64_t prime, std::uint64_t seed) {
    constexpr int kMaxRetries = 64;
    std::mt19937_64 rng(seed);
    std::vector<AffinePoint> points;
    points.reserve(n);
    while (points.size() < n) {
        int attempts = 0;
        while (true) {
            AffinePoint q{uniform_residue(rng, prime), uniform_residue(rng, prime)};
            if (std::find(points.begin(), points.end(), q) == points.end()) {
                points.push_back(q);
                break;
            }
            if (++attempts == kMaxRetries) throw SamplingError("could not sample distinct points over F_p");
        }
    }
    return points;
}

Coeff h0_at_points(const DivisorClass& d, std::span<const AffinePoint> points, std::uint64_t prime) {
    if (points.size() != d.n()) throw DimensionError("need one point per exceptional curve");
    const Coeff degree = d.degree();
    if (degree < 0) return 0;

    // Columns: monomials x^i y^j, i + j <= degree.
    std::vector<std::pair<Coeff, Coeff>> monomials;
    for (Coeff i = 0; i <= degree; ++i) {
        for (Coeff j = 0; i + j <= degree; ++j) monomials.emplace_back(i, j);
    }
    const std::size_t cols = monomials.size();

    std::size_t rows = 0;
    for (Coeff m : d.multiplicities()) {
        if (m > 0) rows += static_cast<std::size_t>(m * (m + 1) / 2);
    }
    if (rows == 0) return static_cast<Coeff>(cols);

    // Binomials mod p, Pascal's triangle up to the degree.
    const auto dim = static_cast<std::size_t>(degree + 1);
    std::vector<u64> binom(dim * dim, 0);
    for (std::size_t a = 0; a < dim; ++a) {
        binom[a * dim] = 1;
        for (std::size_t b = 1; b <= a; ++b) binom[a * dim + b] = (binom[(a - 1) * dim + b - 1] + binom[(a - 1) * dim + b]) % prime;
    }

    // A row per (point, s, t) with s + t < m: the coefficient of x^s y^t in
    // f(x + px, y + py), i.e. sum over (i, j) of c_ij C(i,s) C(j,t) px^(i-s) py^(j-t).
    std::vector<u64> matrix(rows * cols, 0);
    std::vector<u64> xpow(dim), ypow(dim);
    std::size_t row = 0;
    for (std::size_t idx = 0; idx < d.n(); ++idx) {
        const Coeff m = d.multiplicity(idx);
        if (m <= 0) continue;
        xpow[0] = ypow[0] = 1;
        for (std::size_t e = 1; e < dim; ++e) {
            xpow[e] = xpow[e - 1] * points[idx].x % prime;
            ypow[e] = ypow[e - 1] * points[idx].y % prime;
        }
        for (Coeff s = 0; s < m; ++s) {
            for (Coeff t = 0; s + t < m; ++t, ++row) {
                u64* out = &matrix[row * cols];
                for (std::size_t c = 0; c < cols; ++c) {
                    const auto [i, j] = monomials[c];
                    if (i < s || j < t) continue;
                    const u64 xs = binom[i * dim + s] * xpow[i - s] % prime;
                    const u64 yt = binom[j * dim + t] * ypow[j - t] % prime;
                    out[c] = xs * yt % prime;
                }
            }
        }
    }
    return static_cast<Coeff>(cols - rank_mod_p(matrix, rows, cols, prime));
}

OracleResult h0_oracle(const DivisorClass& d, const OracleConfig& cfg) {
    check_oracle_parameters(d, cfg.prime);
    if (cfg.trials < 1) throw ParameterError("at least one trial is required");

    OracleResult result{d, cfg.prime, {}, 0, Certificate::RankCertificate};

    std::vector<Coeff> clipped(d.multiplicities().begin(), d.multiplicities().end());
    for (Coeff& m : clipped) m = std::max<Coeff>(m, 0);
    const DivisorClass conditions = d.with_multiplicities(clipped);

    if (conditions.degree() < 0) return result;
    // Only the zero polynomial has a point of multiplicity above its degree.
    if (conditions.max_multiplicity() > conditions.degree()) return result;
    if (std::all_of(clipped.begin(), clipped.end(), [](Coeff m) { return m == 0; })) {
        result.value = monomial_count(conditions.degree());
        result.certificate = Certificate::MonteCarlo;
        return result;
    }

    Coeff best = monomial_count(conditions.degree());
    for (int t = 0; t < cfg.trials; ++t) {
        const u64 seed = trial_seed(cfg.seed, static_cast<u64>(t));
        result.seeds.push_back(seed);
        const auto points = sample_points(d.n(), cfg.prime, seed);
        best = std::min(best, h0_at_points(conditions, points, cfg.prime));
        if (best == 0) break;
    }
    result.value = best;
    result.certificate = best == 0 ? Certificate::RankCertificate : Certificate::MonteCarlo;
    return result;
}

bool is_standard_form(const DivisorClass& d) {
    const auto m = d.multiplicities();
    if (!std::is_sorted(m.begin(), m.end(), std::greater<>())) return false;
    if (d.n() < 3) return true;
    return d.degree() >= m[0] && d.degree() - m[0] - m[1] - m[2] >= 0;
}

std::string to_string(ReductionVerdict v) {
    switch (v) {
        case ReductionVerdict::StandardForm: return "STANDARD_FORM";
        case ReductionVerdict::NegativeDegree: return "NEGATIVE_DEGREE";
        case ReductionVerdict::EmptyByClip: return "EMPTY_BY_CLIP";
    }
    return "UNKNOWN";
}

std::size_t ReductionTrace::cremona_steps() const {
    return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const ReductionStep& s) {
        return std::holds_alternative<CremonaStep>(s);
    }));
}

DivisorClass apply_step(const ReductionStep& step, const DivisorClass& d) {
    if (const auto* perm = std::get_if<PermutationStep>(&step)) {
        if (perm->order.size() != d.n()) throw DimensionError("permutation length differs from point count");
        std::vector<Coeff> m(d.n());
        for (std::size_t t = 0; t < d.n(); ++t) m[t] = d.multiplicity(perm->order[t]);
        return d.with_multiplicities(std::move(m));
    }
    const auto& c = std::get<CremonaStep>(step);
    return cremona_reflection(d.n(), c.i, c.j, c.k).apply(d);
}

ReductionTrace standard_form_reduce(const DivisorClass& d) {
    ReductionTrace trace{d, {}, d, ReductionVerdict::StandardForm};
    DivisorClass current = d;

    while (true) {
        std::vector<std::size_t> order(current.n());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return current.multiplicity(a) > current.multiplicity(b);
        });
        if (!std::is_sorted(order.begin(), order.end())) {
            ReductionStep step = PermutationStep{std::move(order)};
            current = apply_step(step, current);
            trace.steps.push_back(std::move(step));
        }
        if (current.degree() < 0) break;
        if (current.n() >= 3 &&
            current.degree() - current.multiplicity(0) - current.multiplicity(1) - current.multiplicity(2) < 0) {
            ReductionStep step = CremonaStep{0, 1, 2};
            current = apply_step(step, current);
            trace.steps.push_back(step);
            continue;
        }
        break;
    }

    trace.result = current;
    if (current.degree() < 0) {
        trace.verdict = ReductionVerdict::NegativeDegree;
    } else if (is_standard_form(current)) {
        trace.verdict = ReductionVerdict::StandardForm;
    } else {
        trace.verdict = ReductionVerdict::EmptyByClip;
    }
    return trace;
}

Coeff expected_dimension(const DivisorClass& d) { return std::max<Coeff>(0, chi_divisor(d)); }

CohomologyVector cohomology_vector(const DivisorClass& d, const OracleConfig& cfg) {
    constexpr int kAttempts = 3;
    const DivisorClass dual = canonical_class(d.n()) - d;
    const Coeff chi = chi_divisor(d);

    OracleConfig attempt_cfg = cfg;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        const OracleResult h0 = h0_oracle(d, attempt_cfg);
        const OracleResult h2 = h0_oracle(dual, attempt_cfg);
        const Coeff h1 = h0.value + h2.value - chi;
        if (h1 >= 0) {
            CohomologyVector v;
            v.h0 = h0.value;
            v.h1 = h1;
            v.h2 = h2.value;
            v.h0_certificate = h0.certificate;
            v.h2_certificate = h2.certificate;
            v.certificate = (h0.certificate == Certificate::RankCertificate &&
                             h2.certificate == Certificate::RankCertificate)
                                ? Certificate::RankCertificate
                                : Certificate::MonteCarlo;
            v.seeds = h0.seeds;
            for (u64 s : h2.seeds) {
                if (std::find(v.seeds.begin(), v.seeds.end(), s) == v.seeds.end()) v.seeds.push_back(s);
            }
            return v;
        }
        attempt_cfg.seed = splitmix64(attempt_cfg.seed);
    }
    std::ostringstream msg;
    msg << "negative h^1 for " << format_divisor(d) << " after " << kAttempts << " samples";
    throw ConsistencyError(msg.str());
}

} // namespace phantom
