#include "phantom/json_io.hpp"

namespace phantom {

using nlohmann::json;

void to_json(json& j, const DivisorClass& d) { j = format_divisor(d); }

void from_json(const json& j, DivisorClass& d) { d = parse_divisor(j.get<std::string>()); }

void to_json(json& j, const Height& h) {
    if (h.is_top()) {
        j = "TOP";
    } else {
        j = h.value();
    }
}

void to_json(json& j, const GramMatrix& g) { j = g.rows(); }

void to_json(json& j, const OracleResult& r) {
    j = json{{"divisor", r.divisor},
             {"prime", r.prime},
             {"seeds", r.seeds},
             {"value", r.value},
             {"certificate", to_string(r.certificate)}};
}

void to_json(json& j, const CohomologyVector& v) {
    j = json{{"h0", v.h0},
             {"h1", v.h1},
             {"h2", v.h2},
             {"certificate", to_string(v.certificate)},
             {"h0_certificate", to_string(v.h0_certificate)},
             {"h2_certificate", to_string(v.h2_certificate)},
             {"seeds", v.seeds}};
}

void to_json(json& j, const ReductionTrace& t) {
    json steps = json::array();
    for (const auto& step : t.steps) {
        if (const auto* p = std::get_if<PermutationStep>(&step)) {
            steps.push_back({{"permute", p->order}});
        } else {
            const auto& c = std::get<CremonaStep>(step);
            steps.push_back({{"cremona", {c.i, c.j, c.k}}});
        }
    }
    j = json{{"input", t.input},
             {"steps", steps},
             {"cremona_steps", t.cremona_steps()},
             {"result", t.result},
             {"verdict", to_string(t.verdict)}};
}

void to_json(json& j, const ChainReport& c) {
    json edges = json::array();
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        edges.push_back({{"from", c.chain[e]}, {"to", c.chain[e + 1]}, {"height", c.edges[e]}});
    }
    j = json{{"chain", c.chain},
             {"edges", edges},
             {"closing", {{"from", c.chain.back()}, {"to", c.chain.front()}, {"kind", to_string(c.closing_kind)},
                          {"height", c.closing}}},
             {"value", c.value}};
}

void to_json(json& j, const PseudoheightResult& r) {
    j = json{{"value", r.value}};
    j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
}

void to_json(json& j, const PresiltingViolation& v) {
    j = json{{"from", v.from}, {"to", v.to}, {"degree", v.degree}, {"dimension", v.dimension}};
}

void to_json(json& j, const Collection& c) {
    j = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) j.push_back({{"label", c.label(i)}, {"divisor", c[i]}});
}

} // namespace phantom
