#include "phantom/heights.hpp"

#include <algorithm>

namespace phantom {

CohomologyVector HeightOracle::cohomology(const DivisorClass& d) {
    {
        std::lock_guard lock(mutex_);
        if (auto it = table_.find(d); it != table_.end()) return it->second;
    }
    CohomologyVector v = cohomology_vector(d, cfg_);
    std::lock_guard lock(mutex_);
    table_.emplace(d, v);
    return v;
}

RelativeHeight HeightOracle::relative_height(const DivisorClass& a, const DivisorClass& b) {
    const CohomologyVector v = cohomology(b - a);
    for (int k = 0; k <= 2; ++k) {
        if (v.at(k) != 0) return Height(k);
    }
    return Height::top();
}

std::size_t HeightOracle::cached() const {
    std::lock_guard lock(mutex_);
    return table_.size();
}

RelativeHeight relative_height(const DivisorClass& a, const DivisorClass& b, const OracleConfig& cfg) {
    HeightOracle oracle(cfg);
    return oracle.relative_height(a, b);
}

std::string to_string(ClosingKind k) { return k == ClosingKind::Serre ? "serre" : "anticanonical"; }

PseudoheightResult minimize_chains(std::size_t k, const std::function<Height(std::size_t, std::size_t)>& edge,
                                   const std::function<Height(std::size_t, std::size_t)>& closing,
                                   ClosingKind kind) {
    std::vector<Height> edges(k * k), closings(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            if (i < j) edges[i * k + j] = edge(i, j);
            closings[j * k + i] = closing(j, i);
        }
    }

    PseudoheightResult best{Height::top(), std::nullopt};
    std::vector<Height> reach(k);
    std::vector<std::size_t> previous(k);

    for (std::size_t start = 0; start < k; ++start) {
        // reach[j]: least sum of (edge - 1) over chains start -> ... -> j.
        std::fill(reach.begin(), reach.end(), Height::top());
        reach[start] = Height(0);
        for (std::size_t j = start + 1; j < k; ++j) {
            for (std::size_t i = start; i < j; ++i) {
                const Height candidate = reach[i] + edges[i * k + j] + Coeff{-1};
                if (candidate < reach[j]) {
                    reach[j] = candidate;
                    previous[j] = i;
                }
            }
        }
        for (std::size_t last = start; last < k; ++last) {
            const Height total = reach[last] + closings[last * k + start];
            if (total.is_top() || !(total < best.value)) continue;

            ChainReport report;
            for (std::size_t v = last; v != start; v = previous[v]) report.chain.push_back(v);
            report.chain.push_back(start);
            std::reverse(report.chain.begin(), report.chain.end());
            for (std::size_t e = 0; e + 1 < report.chain.size(); ++e) {
                report.edges.push_back(edges[report.chain[e] * k + report.chain[e + 1]]);
            }
            report.closing = closings[last * k + start];
            report.closing_kind = kind;
            report.value = total;
            best = {total, std::move(report)};
        }
    }
    return best;
}

namespace {

PseudoheightResult chain_minimum(const Collection& c, HeightOracle& oracle, ClosingKind kind) {
    const DivisorClass k = canonical_class(c.n());
    const Coeff shift = kind == ClosingKind::Serre ? 2 : 0;
    return minimize_chains(
        c.size(), [&](std::size_t i, std::size_t j) { return oracle.relative_height(c[i], c[j]); },
        // S^{-1}(E) = E (x) O(-K) [-2]; the shift raises Ext degrees by dim X.
        [&](std::size_t last, std::size_t first) { return oracle.relative_height(c[last], c[first] - k) + shift; },
        kind);
}

} // namespace

PseudoheightResult pseudoheight(const Collection& c, HeightOracle& oracle) {
    return chain_minimum(c, oracle, ClosingKind::Serre);
}

PseudoheightResult pseudoheight(const Collection& c, const OracleConfig& cfg) {
    HeightOracle oracle(cfg);
    return pseudoheight(c, oracle);
}

PseudoheightResult anticanonical_pseudoheight(const Collection& c, HeightOracle& oracle) {
    return chain_minimum(c, oracle, ClosingKind::Anticanonical);
}

PseudoheightResult anticanonical_pseudoheight(const Collection& c, const OracleConfig& cfg) {
    HeightOracle oracle(cfg);
    return anticanonical_pseudoheight(c, oracle);
}

NotFullEvidence not_full_criterion(const Collection& c, HeightOracle& oracle) {
    constexpr Coeff kSurfaceDimension = 2;
    NotFullEvidence evidence{false, {}, std::vector(c.size(), std::vector<std::optional<Height>>(c.size()))};
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) evidence.forward[i][j] = oracle.relative_height(c[i], c[j]);
    }
    evidence.anticanonical = anticanonical_pseudoheight(c, oracle);
    evidence.not_full = evidence.anticanonical.value > Height(-kSurfaceDimension);
    return evidence;
}

NotFullEvidence not_full_criterion(const Collection& c, const OracleConfig& cfg) {
    HeightOracle oracle(cfg);
    return not_full_criterion(c, oracle);
}

PresiltingResult presilting_check(const Collection& c, const std::vector<int>& shifts, HeightOracle& oracle) {
    if (shifts.size() != c.size()) throw ParameterError("need exactly one shift per object");
    PresiltingResult result{true, {}};
    for (std::size_t a = 0; a < c.size(); ++a) {
        for (std::size_t b = 0; b < c.size(); ++b) {
            // Hom(O(D_a)[s_a], O(D_b)[s_b + i]) = Ext^{s_b - s_a + i}; only
            // degrees 0..2 can be nonzero.
            const int lowest = std::max(0, shifts[b] - shifts[a] + 1);
            if (lowest > 2) continue;
            const CohomologyVector v = oracle.cohomology(c[b] - c[a]);
            for (int k = lowest; k <= 2; ++k) {
                if (v.at(k) != 0) result.violations.push_back({a, b, k, v.at(k)});
            }
        }
    }
    result.presilting = result.violations.empty();
    return result;
}

PresiltingResult presilting_check(const Collection& c, const std::vector<int>& shifts, const OracleConfig& cfg) {
    HeightOracle oracle(cfg);
    return presilting_check(c, shifts, oracle);
}

} // namespace phantom
