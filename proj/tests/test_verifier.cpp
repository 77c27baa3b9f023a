#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "phantom/errors.hpp"
#include "phantom/verifier.hpp"

using namespace phantom;

namespace {

DivisorClass uniform(Coeff d, Coeff m) { return {d, std::vector<Coeff>(10, m)}; }

DivisorClass d_i(std::size_t i) {
    std::vector<Coeff> m(10, -2);
    m[i] = -1;
    return {-6, m};
}

DivisorClass sorted(const DivisorClass& d) {
    std::vector<Coeff> m(d.multiplicities().begin(), d.multiplicities().end());
    std::sort(m.rbegin(), m.rend());
    return d.with_multiplicities(m);
}

bool contains(const std::vector<VanishingEntry>& list, const DivisorClass& d) {
    return std::any_of(list.begin(), list.end(), [&](const VanishingEntry& e) { return e.divisor == d; });
}

} // namespace

TEST_CASE("theorem collection entries") {
    const auto c = build_theorem_collection();
    REQUIRE(c.size() == 13);
    CHECK(c.n() == 10);
    CHECK(c[0].is_zero());
    CHECK(c[1] == d_i(0));
    CHECK(c[10] == d_i(9));
    CHECK(c[11] == uniform(-19, -6));
    CHECK(c[12] == uniform(-38, -12));
    CHECK(c.label(0) == "O");
    CHECK(c.label(1) == "O(D1)");
    CHECK(c.label(12) == "O(2F)");

    const auto s = build_standard_collection();
    CHECK(s.size() == 13);
    CHECK(s[12] == 2 * DivisorClass::hyperplane(10));
    CHECK(s.label(1) == "O(E1)");

    const auto shifts = theorem_shifts();
    CHECK(shifts == std::vector<int>{0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4, 6});
}

TEST_CASE("vanishing lists") {
    const auto lists = vanishing_lists();
    CHECK(lists.exceptionality.size() == 32);
    CHECK(lists.not_full.size() == 10 + 1 + 1 + 10 + 10 + 10 * 9);

    std::vector<Coeff> m(10, 10);
    m[9] = 11;
    bool found = false;
    for (const auto& e : lists.exceptionality) found = found || sorted(e.divisor) == sorted(DivisorClass(32, m));
    CHECK(found);
    CHECK(contains(lists.exceptionality, uniform(19, 6)));
    CHECK(contains(lists.exceptionality, uniform(38, 12)));
    for (std::size_t i = 0; i < 10; ++i) CHECK(contains(lists.exceptionality, -d_i(i)));
    for (const auto& e : lists.exceptionality) {
        CHECK(e.tag == VanishingTag::NeedsOracle);
        CHECK(chi_divisor(e.divisor) == 0);
    }
    for (const auto& e : lists.not_full) {
        CHECK(e.tag == VanishingTag::TrivialVanishing);
        CHECK(is_trivially_vanishing(e.divisor));
    }
    CHECK(to_string(VanishingTag::TrivialVanishing) == "TRIVIAL_VANISHING");
}

TEST_CASE("derived exceptionality divisors are list A") {
    const auto derived = exceptionality_divisors(build_theorem_collection());
    const auto a = vanishing_lists().exceptionality;
    std::set<DivisorClass> lhs(derived.begin(), derived.end()), rhs;
    for (const auto& e : a) rhs.insert(e.divisor);
    CHECK(derived.size() == lhs.size());
    CHECK(lhs == rhs);
}

TEST_CASE("(-1)-classes pair with list A at least -1") {
    const auto classes = enumerate_minus_one_classes(10, 10);
    for (const auto& e : vanishing_lists().exceptionality) {
        Coeff least = 0;
        for (const auto& c : classes) least = std::min(least, intersect(c.divisor(), e.divisor));
        CHECK(least >= -1);
    }
}

TEST_CASE("config validation") {
    TheoremConfig cfg;
    cfg.prime = 31;
    CHECK_THROWS_AS(verify_theorem(cfg), ParameterError);
    cfg.prime = 39;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg.prime = 41;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("exceptionality stage") {
    TheoremConfig cfg;
    cfg.degree_bound = 4;
    const std::vector<DivisorClass> good{uniform(38, 12), -d_i(3)};
    const auto pass = verify_exceptionality(good, cfg);
    CHECK(pass.pass);
    CHECK(pass.name == "exceptionality");
    CHECK(pass.certificates.size() == 2);
    for (const auto& c : pass.certificates) CHECK(c.certificate == Certificate::RankCertificate);

    std::vector<Coeff> m(10, 2);
    m[9] = 0;
    const DivisorClass tampered(6, m);
    CHECK(chi_divisor(tampered) != 0);
    const std::vector<DivisorClass> bad{tampered};
    const auto fail = verify_exceptionality(bad, cfg);
    CHECK_FALSE(fail.pass);
    CHECK(fail.certificates.empty());
    CHECK(fail.witnesses["checks"][0]["reason"] == "chi != 0");
}

TEST_CASE("numerical stage catches a replaced entry") {
    auto entries = build_theorem_collection().entries();
    entries[1] = DivisorClass::exceptional(10, 0);
    TheoremConfig cfg;
    cfg.degree_bound = 2;
    const auto report = verify_theorem(cfg, Collection(entries));
    CHECK_FALSE(report.pass);
    const auto* stage = report.stage("numerical_exceptionality");
    REQUIRE(stage);
    CHECK_FALSE(stage->pass);
    CHECK(stage->witnesses.contains("violation"));
    CHECK(stage->witnesses["violation"]["value"] != 0);
    CHECK(report.stages.size() == 6);
}

TEST_CASE("full run is deterministic") {
    TheoremConfig cfg;
    cfg.degree_bound = 4;
    const auto a = verify_theorem(cfg);
    const auto b = verify_theorem(cfg);
    CHECK(a.pass);
    CHECK(report_to_json(a, false).dump() == report_to_json(b, false).dump());
    const auto j = report_to_json(a);
    CHECK(j["schema"] == 1);
    CHECK(j["verdict"] == "pass");
    CHECK(j["stages"].size() == 6);
    CHECK(j["environment"]["prime"] == kMersenne31);
    CHECK(j.dump().find("MONTE_CARLO") == std::string::npos);
    const auto* ex = a.stage("exceptionality");
    REQUIRE(ex);
    CHECK(ex->certificates.size() == 32);
}

TEST_CASE("orbit search") {
    const auto base = build_standard_collection();
    CHECK(orbit_search({}, base, 3).size() == 1);

    const std::vector<LatticeIsometry> iota{iota_involution()};
    const auto found = orbit_search(iota, base, 1);
    const auto thm = build_theorem_collection();
    CHECK(std::any_of(found.begin(), found.end(), [&](const Collection& c) { return c.entries() == thm.entries(); }));

    const std::vector<LatticeIsometry> cremona{cremona_reflection(10, 0, 1, 2)};
    const auto moved = orbit_search(cremona, base, 1);
    CHECK(moved.size() == 2);
    for (const auto& c : moved) {
        CHECK(is_numerically_exceptional(c).exceptional);
        CHECK(gram_matrix(c) == gram_matrix(base));
    }

    std::vector<Coeff> m(16, 0);
    for (std::size_t i = 0; i < 4; ++i) m[i * 4 + i] = 1;
    m[1 * 4 + 1] = 0;
    m[1 * 4 + 2] = 1;
    m[2 * 4 + 2] = 0;
    m[2 * 4 + 1] = 1;
    const std::vector<LatticeIsometry> swap{LatticeIsometry(3, m)};
    CHECK(orbit_search(swap, build_standard_collection(3), 2).size() == 2);
}
