#include "phantom/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "phantom/json_io.hpp"

namespace phantom {

using nlohmann::json;

namespace {

constexpr std::size_t kPoints = 10;
constexpr Coeff kLargestCertifiedDegree = 38;  // -2F = 38H - 12 sum E_j

// Runs body(stage) and records its wall time in the stage.
template <class Body>
StageResult timed_stage(std::string name, Body&& body) {
    StageResult stage{.name = std::move(name)};
    const auto start = std::chrono::steady_clock::now();
    body(stage);
    stage.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return stage;
}

DivisorClass sum_of_exceptionals(std::size_t n) {
    return {0, std::vector<Coeff>(n, -1)};
}

DivisorClass sorted_multiplicities(const DivisorClass& d) {
    std::vector<Coeff> m(d.multiplicities().begin(), d.multiplicities().end());
    std::sort(m.begin(), m.end(), std::greater<>());
    return d.with_multiplicities(std::move(m));
}

json height_table(const std::vector<std::vector<std::optional<Height>>>& table) {
    json rows = json::array();
    for (const auto& row : table) {
        json r = json::array();
        for (const auto& h : row) r.push_back(h ? json(*h) : json(nullptr));
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace

void TheoremConfig::validate() const {
    if (!is_prime(prime)) throw ParameterError("prime " + std::to_string(prime) + " is not a prime below 2^32");
    if (prime <= static_cast<std::uint64_t>(kLargestCertifiedDegree)) {
        throw ParameterError("prime must exceed 38, the largest degree to certify");
    }
    if (trials < 1) throw ParameterError("at least one trial is required");
    if (degree_bound < 0) throw ParameterError("degree bound must be non-negative");
}

Collection build_standard_collection(std::size_t n) {
    std::vector<DivisorClass> entries{DivisorClass::zero(n)};
    std::vector<std::string> labels{"O"};
    for (std::size_t i = 0; i < n; ++i) {
        entries.push_back(DivisorClass::exceptional(n, i));
        labels.push_back("O(E" + std::to_string(i + 1) + ")");
    }
    entries.push_back(DivisorClass::hyperplane(n));
    labels.push_back("O(H)");
    entries.push_back(2 * DivisorClass::hyperplane(n));
    labels.push_back("O(2H)");
    return Collection(std::move(entries), std::move(labels));
}

Collection build_theorem_collection() {
    const LatticeIsometry iota = iota_involution(kPoints);
    const Collection standard = build_standard_collection(kPoints);

    const DivisorClass sum_e = sum_of_exceptionals(kPoints);
    const DivisorClass h = DivisorClass::hyperplane(kPoints);
    // D_i = -6H + 2 sum E_j - E_i,  F = -19H + 6 sum E_j
    const DivisorClass f_closed = -19 * h + 6 * sum_e;

    std::vector<DivisorClass> entries;
    std::vector<std::string> labels{"O"};
    for (const auto& e : standard.entries()) entries.push_back(iota.apply(e));
    for (std::size_t i = 0; i < kPoints; ++i) labels.push_back("O(D" + std::to_string(i + 1) + ")");
    labels.push_back("O(F)");
    labels.push_back("O(2F)");

    bool matches = entries[0].is_zero() && entries[kPoints + 1] == f_closed && entries[kPoints + 2] == 2 * f_closed;
    for (std::size_t i = 0; i < kPoints; ++i) {
        const DivisorClass d_closed = -6 * h + 2 * sum_e - DivisorClass::exceptional(kPoints, i);
        matches = matches && entries[i + 1] == d_closed;
    }
    if (!matches) throw ConsistencyError("iota images disagree with the closed-form D_i and F");
    return Collection(std::move(entries), std::move(labels));
}

std::vector<int> theorem_shifts() {
    std::vector<int> shifts{0};
    shifts.insert(shifts.end(), kPoints, 2);
    shifts.push_back(4);
    shifts.push_back(6);
    return shifts;
}

std::string to_string(VanishingTag t) {
    return t == VanishingTag::TrivialVanishing ? "TRIVIAL_VANISHING" : "NEEDS_ORACLE";
}

bool is_trivially_vanishing(const DivisorClass& d) {
    if (d.degree() < 0) return true;
    if (d.degree() != 0) return false;
    // E_i - E_j: stored multiplicities are -1 at i, +1 at j, zero elsewhere.
    int plus = 0, minus = 0;
    for (Coeff m : d.multiplicities()) {
        if (m == 1) {
            ++plus;
        } else if (m == -1) {
            ++minus;
        } else if (m != 0) {
            return false;
        }
    }
    return plus == 1 && minus == 1;
}

VanishingLists vanishing_lists() {
    const Collection c = build_theorem_collection();
    const DivisorClass& f = c[kPoints + 1];
    const DivisorClass& f2 = c[kPoints + 2];
    auto d = [&](std::size_t i) -> const DivisorClass& { return c[i + 1]; };
    auto entry = [](DivisorClass x, std::string label) {
        const VanishingTag tag = is_trivially_vanishing(x) ? VanishingTag::TrivialVanishing : VanishingTag::NeedsOracle;
        return VanishingEntry{std::move(x), std::move(label), tag};
    };

    VanishingLists lists;
    auto& a = lists.exceptionality;
    a.push_back(entry(-f, "-F"));
    a.push_back(entry(-f2, "-2F"));
    for (std::size_t i = 0; i < kPoints; ++i) a.push_back(entry(-d(i), "-D" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < kPoints; ++i) a.push_back(entry(d(i) - f, "D" + std::to_string(i + 1) + "-F"));
    for (std::size_t i = 0; i < kPoints; ++i) a.push_back(entry(d(i) - f2, "D" + std::to_string(i + 1) + "-2F"));

    auto& b = lists.not_full;
    for (std::size_t i = 0; i < kPoints; ++i) b.push_back(entry(d(i), "D" + std::to_string(i + 1)));
    b.push_back(entry(f, "F"));
    b.push_back(entry(f2, "2F"));
    for (std::size_t i = 0; i < kPoints; ++i) b.push_back(entry(f - d(i), "F-D" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < kPoints; ++i) b.push_back(entry(f2 - d(i), "2F-D" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < kPoints; ++i) {
        for (std::size_t j = 0; j < kPoints; ++j) {
            if (i != j) b.push_back(entry(d(j) - d(i), "D" + std::to_string(j + 1) + "-D" + std::to_string(i + 1)));
        }
    }
    return lists;
}

std::vector<DivisorClass> exceptionality_divisors(const Collection& c) {
    const DivisorClass k = canonical_class(c.n());
    std::vector<DivisorClass> out;
    std::set<DivisorClass> seen;
    for (std::size_t a = 0; a < c.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            const DivisorClass hom = c[b] - c[a];
            for (const DivisorClass& x : {hom, k - hom}) {
                if (!is_trivially_vanishing(x) && seen.insert(x).second) out.push_back(x);
            }
        }
    }
    return out;
}

const StageResult* VerificationReport::stage(const std::string& name) const {
    for (const auto& s : stages) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

json stage_to_json(const StageResult& s) {
    return json{{"name", s.name},
                {"pass", s.pass},
                {"witnesses", s.witnesses},
                {"certificates", s.certificates},
                {"duration_ms", s.duration_ms}};
}

json report_to_json(const VerificationReport& r, bool include_durations) {
    json stages = json::array();
    for (const auto& s : r.stages) {
        json js = stage_to_json(s);
        if (!include_durations) js.erase("duration_ms");
        stages.push_back(std::move(js));
    }
    return json{{"schema", r.schema},
                {"verdict", r.pass ? "pass" : "fail"},
                {"stages", stages},
                {"environment",
                 {{"prime", r.config.prime},
                  {"seed", r.config.seed},
                  {"trials", r.config.trials},
                  {"degree_bound", r.config.degree_bound},
                  {"version", r.version}}}};
}

StageResult verify_exceptionality(std::span<const DivisorClass> divisors, const TheoremConfig& cfg) {
    cfg.validate();
    return timed_stage("exceptionality", [&](StageResult& stage) {
        const OracleConfig oracle = cfg.oracle();
        std::vector<MinusOneClass> minus_one;
        if (!divisors.empty()) minus_one = enumerate_minus_one_classes(divisors.front().n(), cfg.degree_bound);

        bool all = true;
        json checks = json::array();
        for (const DivisorClass& d : divisors) {
            json w{{"divisor", d}};
            const Coeff chi = chi_divisor(d);
            w["chi"] = chi;
            if (chi != 0) {
                // h^0 = h^1 = h^2 = 0 is impossible; no need to sample.
                w["pass"] = false;
                w["reason"] = "chi != 0";
                all = false;
                checks.push_back(std::move(w));
                continue;
            }
            const DivisorClass sorted = sorted_multiplicities(d);
            const bool standard = is_standard_form(sorted);
            w["sorted"] = sorted;
            w["standard_form"] = standard;

            const OracleResult h0 = h0_oracle(d, oracle);
            const OracleResult h2 = h0_oracle(canonical_class(d.n()) - d, oracle);
            w["h0"] = h0.value;
            w["h2"] = h2.value;
            w["h2_certificate"] = to_string(h2.certificate);

            Coeff min_pairing = 0;
            for (const auto& c : minus_one) min_pairing = std::min(min_pairing, intersect(c.divisor(), d));
            w["min_minus_one_pairing"] = min_pairing;

            const bool ok = standard && h0.value == 0 && h0.certificate == Certificate::RankCertificate &&
                            h2.value == 0 && h2.certificate == Certificate::RankCertificate && min_pairing >= -1;
            // chi = 0 and h^0 = h^2 = 0 force h^1 = 0.
            w["h1"] = ok ? json(0) : json(nullptr);
            w["pass"] = ok;
            if (!ok) all = false;
            stage.certificates.push_back(h0);
            checks.push_back(std::move(w));
        }
        stage.witnesses = json{{"divisors", checks.size()},
                               {"minus_one_classes_checked", minus_one.size()},
                               {"checks", std::move(checks)}};
        stage.pass = all;
    });
}

StageResult verify_exceptionality(const TheoremConfig& cfg) {
    std::vector<DivisorClass> divisors;
    for (const auto& e : vanishing_lists().exceptionality) divisors.push_back(e.divisor);
    return verify_exceptionality(divisors, cfg);
}

VerificationReport verify_theorem(const TheoremConfig& cfg) {
    return verify_theorem(cfg, build_theorem_collection());
}

VerificationReport verify_theorem(const TheoremConfig& cfg, const Collection& candidate) {
    cfg.validate();
    VerificationReport report;
    report.config = cfg;
    HeightOracle oracle(cfg.oracle());

    report.stages.push_back(timed_stage("construction", [&](StageResult& s) {
        const Collection built = build_theorem_collection();
        s.witnesses = json{{"collection", built},
                           {"iota_matches_closed_form", true},
                           {"candidate_is_theorem_collection", candidate.entries() == built.entries()}};
        s.pass = candidate.n() == kPoints && candidate.size() == kPoints + 3;
    }));

    report.stages.push_back(timed_stage("numerical_exceptionality", [&](StageResult& s) {
        const auto result = is_numerically_exceptional(candidate);
        s.witnesses = json{{"gram_matrix", gram_matrix(candidate)}};
        if (result.first_violation) {
            const auto& v = *result.first_violation;
            s.witnesses["violation"] = {{"row", v.row},
                                        {"col", v.col},
                                        {"value", v.value},
                                        {"pair", {candidate.label(v.row), candidate.label(v.col)}}};
        }
        s.pass = result.exceptional;
    }));

    report.stages.push_back(timed_stage("maximal_length", [&](StageResult& s) {
        const auto result = is_maximal_length_basis(candidate);
        s.witnesses = json{{"determinant", result.determinant ? json(*result.determinant) : json(nullptr)},
                           {"reason", result.reason}};
        s.pass = result.basis;
    }));

    report.stages.push_back(verify_exceptionality(exceptionality_divisors(candidate), cfg));

    report.stages.push_back(timed_stage("not_full", [&](StageResult& s) {
        const NotFullEvidence evidence = not_full_criterion(candidate, oracle);
        const PseudoheightResult serre = pseudoheight(candidate, oracle);

        const DivisorClass k = canonical_class(candidate.n());
        bool forward_ok = true, closing_ok = true;
        std::size_t trivial_forward = 0;
        std::vector<std::vector<std::optional<Height>>> closing(
            candidate.size(), std::vector<std::optional<Height>>(candidate.size()));
        for (std::size_t i = 0; i < candidate.size(); ++i) {
            for (std::size_t j = 0; j < candidate.size(); ++j) {
                if (j > i) {
                    if (*evidence.forward[i][j] < Height(1)) forward_ok = false;
                    if (is_trivially_vanishing(candidate[j] - candidate[i])) ++trivial_forward;
                } else {
                    closing[i][j] = oracle.relative_height(candidate[i], candidate[j] - k);
                    if (*closing[i][j] < Height(0)) closing_ok = false;
                }
            }
        }
        const bool serre_consistent = serre.value.is_top() == evidence.anticanonical.value.is_top() &&
                                      (serre.value.is_top() || serre.value == evidence.anticanonical.value + 2);

        s.witnesses = json{{"ph_ac", evidence.anticanonical.value},
                           {"ph", serre.value},
                           {"ph_equals_ph_ac_plus_2", serre_consistent},
                           {"minimizing_chain", evidence.anticanonical},
                           {"forward_heights", height_table(evidence.forward)},
                           {"closing_heights", height_table(closing)},
                           {"forward_pairs_trivially_vanishing", trivial_forward},
                           {"every_forward_height_at_least_1", forward_ok},
                           {"every_closing_height_at_least_0", closing_ok},
                           {"not_full", evidence.not_full}};
        s.pass = evidence.not_full && evidence.anticanonical.value >= Height(0) && forward_ok && closing_ok &&
                 serre_consistent;
    }));

    report.stages.push_back(timed_stage("presilting", [&](StageResult& s) {
        std::vector<int> shifts = theorem_shifts();
        shifts.resize(candidate.size(), shifts.back());
        const PresiltingResult result = presilting_check(candidate, shifts, oracle);
        s.witnesses = json{{"shifts", shifts}, {"violations", result.violations}};
        s.pass = result.presilting;
    }));

    report.pass = std::all_of(report.stages.begin(), report.stages.end(), [](const StageResult& s) { return s.pass; });
    return report;
}

std::vector<Collection> orbit_search(std::span<const LatticeIsometry> generators, const Collection& base,
                                     std::size_t depth) {
    for (const auto& g : generators) {
        if (g.n() != base.n()) throw DimensionError("generator acts on a different lattice");
        if (!g.fixes_canonical_class()) throw ParameterError("orbit generators must fix the canonical class");
    }

    auto normalized = [](const Collection& c) {
        std::vector<DivisorClass> key;
        key.reserve(c.size());
        for (const auto& e : c.entries()) key.push_back(e - c[0]);
        return key;
    };

    std::vector<Collection> results;
    std::set<std::vector<DivisorClass>> seen{normalized(base)};
    if (is_numerically_exceptional(base).exceptional) results.push_back(base);

    std::vector<Collection> frontier{base};
    for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<Collection> next;
        for (const auto& c : frontier) {
            for (const auto& g : generators) {
                std::vector<DivisorClass> image;
                image.reserve(c.size());
                for (const auto& e : c.entries()) image.push_back(g.apply(e));
                Collection mapped(std::move(image));
                if (!seen.insert(normalized(mapped)).second) continue;
                if (is_numerically_exceptional(mapped).exceptional) results.push_back(mapped);
                next.push_back(std::move(mapped));
            }
        }
        frontier = std::move(next);
    }
    return results;
}

} // namespace phantom
