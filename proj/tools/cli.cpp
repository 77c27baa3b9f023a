#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <optional>
#include <sstream>

#include "phantom/heights.hpp"
#include "phantom/json_io.hpp"
#include "phantom/linear_systems.hpp"
#include "phantom/numerical.hpp"
#include "phantom/picard_lattice.hpp"
#include "phantom/verifier.hpp"

namespace phantom::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string output = "text";
    std::uint64_t prime = kMersenne31;
    std::uint64_t seed = 1;
    int trials = 3;
    Coeff degree_bound = 10;

    std::string divisor;
    std::vector<std::string> divisors;
    std::string preset;
    std::string shifts;
    std::vector<std::string> generators;
    std::size_t depth = 1;
    std::size_t points = 10;

    OracleConfig oracle() const { return {prime, seed, trials}; }
    TheoremConfig theorem() const { return {prime, seed, trials, degree_bound}; }
    bool json_output() const { return output == "json"; }
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

std::size_t parse_index(const std::string& text, std::size_t n) {
    std::size_t pos = 0;
    unsigned long value = 0;
    try {
        value = std::stoul(text, &pos);
    } catch (const std::exception&) {
        throw ParameterError("bad index '" + text + "'");
    }
    if (pos != text.size() || value < 1 || value > n) {
        throw ParameterError("index '" + text + "' outside 1.." + std::to_string(n));
    }
    return value - 1;
}

Collection collection_from(const Options& opt) {
    if (!opt.divisors.empty()) {
        if (!opt.preset.empty()) throw ParameterError("give either divisors or --preset, not both");
        std::vector<DivisorClass> entries;
        for (const auto& text : opt.divisors) entries.push_back(parse_divisor(text));
        return Collection(std::move(entries));
    }
    if (opt.preset == "theorem") return build_theorem_collection();
    if (opt.preset == "standard") return build_standard_collection(opt.points);
    throw ParameterError("need divisor literals or --preset theorem|standard");
}

std::vector<int> shifts_from(const Options& opt, const Collection& c) {
    if (opt.shifts.empty()) {
        if (opt.preset == "theorem") return theorem_shifts();
        return std::vector<int>(c.size(), 0);
    }
    std::vector<int> shifts;
    for (const auto& s : split(opt.shifts, ',')) {
        try {
            std::size_t pos = 0;
            shifts.push_back(std::stoi(s, &pos));
            if (pos != s.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw ParameterError("bad shift '" + s + "'");
        }
    }
    return shifts;
}

// "iota", "cremona:i,j,k" or "perm:p1,...,pn" with 1-based point indices.
LatticeIsometry generator_from(const std::string& text, std::size_t n) {
    if (text == "iota") return iota_involution(n);
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParameterError("unknown generator '" + text + "'");
    const std::string kind = text.substr(0, colon);
    const auto args = split(text.substr(colon + 1), ',');
    if (kind == "cremona") {
        if (args.size() != 3) throw ParameterError("cremona needs three indices");
        return cremona_reflection(n, parse_index(args[0], n), parse_index(args[1], n), parse_index(args[2], n));
    }
    if (kind == "perm") {
        if (args.size() != n) throw ParameterError("perm needs one image per point");
        std::vector<std::size_t> perm;
        for (const auto& a : args) perm.push_back(parse_index(a, n));
        return permutation_isometry(perm);
    }
    throw ParameterError("unknown generator '" + text + "'");
}

void print_matrix(std::ostream& out, const GramMatrix& g) {
    std::size_t width = 1;
    for (Coeff v : g.values) width = std::max(width, std::to_string(v).size());
    for (std::size_t i = 0; i < g.size; ++i) {
        for (std::size_t j = 0; j < g.size; ++j) out << (j ? " " : "") << std::setw(static_cast<int>(width)) << g.at(i, j);
        out << '\n';
    }
}

void print_chain(std::ostream& out, const Collection& c, const PseudoheightResult& r) {
    if (!r.witness) {
        out << "  no finite chain\n";
        return;
    }
    out << "  chain:";
    for (std::size_t idx : r.witness->chain) out << ' ' << c.label(idx);
    out << "\n  edges:";
    for (const auto& e : r.witness->edges) out << ' ' << e.to_string();
    out << "\n  closing (" << to_string(r.witness->closing_kind) << "): " << r.witness->closing.to_string() << '\n';
}

int cmd_verify(const Options& opt, std::ostream& out) {
    const VerificationReport report = verify_theorem(opt.theorem());
    if (opt.json_output()) {
        out << report_to_json(report).dump(2) << '\n';
    } else {
        for (const auto& s : report.stages) {
            out << (s.pass ? "PASS " : "FAIL ") << std::left << std::setw(26) << s.name << std::right << std::fixed
                << std::setprecision(1) << s.duration_ms << " ms\n";
        }
        out << "verdict: " << (report.pass ? "pass" : "fail") << '\n';
    }
    return report.pass ? kExitOk : kExitFailed;
}

int cmd_chi(const Options& opt, std::ostream& out) {
    const DivisorClass d = parse_divisor(opt.divisor);
    const Coeff chi = chi_divisor(d);
    if (opt.json_output()) {
        out << json{{"divisor", d}, {"chi", chi}}.dump() << '\n';
    } else {
        out << chi << '\n';
    }
    return kExitOk;
}

int cmd_h0(const Options& opt, std::ostream& out) {
    const OracleResult r = h0_oracle(parse_divisor(opt.divisor), opt.oracle());
    if (opt.json_output()) {
        out << json(r).dump() << '\n';
    } else {
        out << r.value << ' ' << to_string(r.certificate) << '\n';
    }
    return kExitOk;
}

int cmd_standard_form(const Options& opt, std::ostream& out) {
    const ReductionTrace t = standard_form_reduce(parse_divisor(opt.divisor));
    if (opt.json_output()) {
        out << json(t).dump() << '\n';
    } else {
        out << format_divisor(t.result) << ' ' << to_string(t.verdict) << " (" << t.cremona_steps()
            << " Cremona steps)\n";
    }
    return kExitOk;
}

int cmd_euler_matrix(const Options& opt, std::ostream& out) {
    const Collection c = collection_from(opt);
    const GramMatrix g = gram_matrix(c);
    if (opt.json_output()) {
        out << json(g).dump() << '\n';
    } else {
        print_matrix(out, g);
    }
    return kExitOk;
}

int cmd_pseudoheight(const Options& opt, std::ostream& out) {
    const Collection c = collection_from(opt);
    HeightOracle oracle(opt.oracle());
    const PseudoheightResult ph = pseudoheight(c, oracle);
    const PseudoheightResult ph_ac = anticanonical_pseudoheight(c, oracle);
    const bool not_full = ph_ac.value > Height(-2);
    if (opt.json_output()) {
        out << json{{"ph", ph}, {"ph_ac", ph_ac}, {"not_full", not_full}}.dump() << '\n';
    } else {
        out << "ph = " << ph.value.to_string() << '\n';
        print_chain(out, c, ph);
        out << "ph_ac = " << ph_ac.value.to_string() << '\n';
        print_chain(out, c, ph_ac);
        out << (not_full ? "not full (ph_ac > -2)" : "no obstruction to fullness") << '\n';
    }
    return kExitOk;
}

int cmd_presilting(const Options& opt, std::ostream& out) {
    const Collection c = collection_from(opt);
    const std::vector<int> shifts = shifts_from(opt, c);
    const PresiltingResult r = presilting_check(c, shifts, opt.oracle());
    if (opt.json_output()) {
        out << json{{"presilting", r.presilting}, {"shifts", shifts}, {"violations", r.violations}}.dump() << '\n';
    } else if (r.presilting) {
        out << "presilting\n";
    } else {
        out << "not presilting; " << r.violations.size() << " nonzero Ext groups, first:\n";
        const auto& v = *r.first_violation();
        out << "  Ext^" << v.degree << '(' << c.label(v.from) << ", " << c.label(v.to) << ") has dimension "
            << v.dimension << '\n';
    }
    return r.presilting ? kExitOk : kExitFailed;
}

int cmd_search(const Options& opt, std::ostream& out) {
    const Collection base = collection_from(opt);
    std::vector<LatticeIsometry> generators;
    for (const auto& g : opt.generators) generators.push_back(generator_from(g, base.n()));
    const auto found = orbit_search(generators, base, opt.depth);
    if (opt.json_output()) {
        json list = json::array();
        for (const auto& c : found) list.push_back(c.entries());
        out << json{{"count", found.size()}, {"collections", list}}.dump() << '\n';
    } else {
        out << found.size() << " numerically exceptional collections\n";
        for (const auto& c : found) {
            for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << format_divisor(c[i]);
            out << '\n';
        }
    }
    return kExitOk;
}

int cmd_minus_one(const Options& opt, std::ostream& out) {
    const auto classes = enumerate_minus_one_classes(opt.points, opt.degree_bound);
    if (opt.json_output()) {
        json list = json::array();
        for (const auto& c : classes) list.push_back(c.divisor());
        out << json{{"n", opt.points}, {"degree_bound", opt.degree_bound}, {"count", classes.size()}, {"classes", list}}
                   .dump()
            << '\n';
    } else {
        out << classes.size() << '\n';
        for (const auto& c : classes) out << format_divisor(c.divisor()) << '\n';
    }
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact divisor calculus on blow-ups of the plane and verification of a phantom-producing "
                 "exceptional collection"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--output", opt.output, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--prime", opt.prime, "Prime modulus of the interpolation oracle");
    app.add_option("--seed", opt.seed, "Seed for point sampling")->envname("PHANTOM_SEED");
    app.add_option("--trials", opt.trials, "Independent point samples per oracle call");
    app.add_option("--degree-bound", opt.degree_bound, "Largest H-degree of enumerated (-1)-classes");

    auto add_collection = [&](CLI::App* sub) {
        sub->add_option("divisors", opt.divisors, "Divisor literals d;m1,...,mn (use -- before negative ones)");
        sub->add_option("--preset", opt.preset, "Named collection")->check(CLI::IsMember({"theorem", "standard"}));
        sub->add_option("--points", opt.points, "Point count for --preset standard");
    };

    std::function<int()> action;
    auto* verify = app.add_subcommand("verify-theorem", "Run the full verification pipeline");
    verify->callback([&] { action = [&] { return cmd_verify(opt, out); }; });

    auto* chi = app.add_subcommand("chi", "Euler characteristic of O(D)");
    chi->add_option("divisor", opt.divisor)->required();
    chi->callback([&] { action = [&] { return cmd_chi(opt, out); }; });

    auto* h0 = app.add_subcommand("h0", "Interpolation oracle for h^0(D) at general points");
    h0->add_option("divisor", opt.divisor)->required();
    h0->callback([&] { action = [&] { return cmd_h0(opt, out); }; });

    auto* sf = app.add_subcommand("standard-form", "Cremona reduction to standard form");
    sf->add_option("divisor", opt.divisor)->required();
    sf->callback([&] { action = [&] { return cmd_standard_form(opt, out); }; });

    auto* euler = app.add_subcommand("euler-matrix", "Gram matrix of the Euler pairing");
    add_collection(euler);
    euler->callback([&] { action = [&] { return cmd_euler_matrix(opt, out); }; });

    auto* ph = app.add_subcommand("pseudoheight", "Pseudoheight and anticanonical pseudoheight");
    add_collection(ph);
    ph->callback([&] { action = [&] { return cmd_pseudoheight(opt, out); }; });

    auto* pre = app.add_subcommand("presilting", "Check Hom(P, P[i]) = 0 for i > 0");
    add_collection(pre);
    pre->add_option("--shifts", opt.shifts, "Comma-separated shifts, one per object");
    pre->callback([&] { action = [&] { return cmd_presilting(opt, out); }; });

    auto* search = app.add_subcommand("search", "Isometry-orbit search for numerically exceptional collections");
    add_collection(search);
    search->add_option("--generator", opt.generators, "iota | cremona:i,j,k | perm:p1,...,pn (1-based)");
    search->add_option("--depth", opt.depth, "Maximal word length");
    search->callback([&] { action = [&] { return cmd_search(opt, out); }; });

    auto* minus_one = app.add_subcommand("minus-one-classes", "Enumerate (-1)-classes up to a degree bound");
    minus_one->add_option("--points", opt.points, "Number of blown-up points");
    minus_one->callback([&] { action = [&] { return cmd_minus_one(opt, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    try {
        return action();
    } catch (const ParseError& e) {
        err << "malformed divisor: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DimensionError& e) {
        err << "dimension error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}

} // namespace phantom::cli
