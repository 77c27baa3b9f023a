#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../tools/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "phantom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = phantom::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json parse(const Run& r) {
    json j;
    CHECK_NOTHROW(j = json::parse(r.out));
    return j;
}

const std::string kMinusF = "19;6,6,6,6,6,6,6,6,6,6";

} // namespace

TEST_CASE("chi") {
    const auto r = run({"chi", kMinusF});
    CHECK(r.code == 0);
    CHECK(r.out == "0\n");
    const auto j = parse(run({"--output", "json", "chi", "0;"}));
    CHECK(j["chi"] == 1);
}

TEST_CASE("h0") {
    const auto r = run({"h0", "1;1,1,1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 RANK_CERTIFICATE") != std::string::npos);
    const auto j = parse(run({"h0", "2;1,1,1,1,1,0,0,0,0,0", "--output", "json"}));
    CHECK(j["value"] == 1);
    CHECK(j["certificate"] == "MONTE_CARLO");
}

TEST_CASE("seed from the environment, flag wins") {
    ::setenv("PHANTOM_SEED", "9", 1);
    const auto env = parse(run({"--output", "json", "h0", "3;1,1,1,1,1,1,1,1,1,1"}));
    const auto flag = parse(run({"--output", "json", "--seed", "1", "h0", "3;1,1,1,1,1,1,1,1,1,1"}));
    ::unsetenv("PHANTOM_SEED");
    const auto plain = parse(run({"--output", "json", "h0", "3;1,1,1,1,1,1,1,1,1,1"}));
    CHECK(env["seeds"] != plain["seeds"]);
    CHECK(flag["seeds"] == plain["seeds"]);
}

TEST_CASE("standard form") {
    const auto j = parse(run({"--output", "json", "standard-form", "1;1,1,1"}));
    CHECK(j["verdict"] == "NEGATIVE_DEGREE");
    CHECK(j["result"] == "-1;-1,-1,-1");
}

TEST_CASE("euler matrix") {
    const auto j = parse(run({"--output", "json", "euler-matrix", "--preset", "theorem"}));
    REQUIRE(j.size() == 13);
    for (std::size_t i = 0; i < 13; ++i)
        for (std::size_t k = 0; k < i; ++k) CHECK(j[i][k] == 0);
    CHECK(run({"euler-matrix", "0;0", "1;0"}).code == 0);
}

TEST_CASE("pseudoheight and presilting") {
    const auto j = parse(run({"--output", "json", "pseudoheight", "--preset", "standard"}));
    CHECK(j.contains("ph"));
    CHECK(j["ph_ac"]["value"] == -2);

    CHECK(run({"presilting", "--preset", "theorem"}).code == 0);
    const auto flat = run({"--output", "json", "presilting", "--preset", "theorem", "--shifts",
                           "0,0,0,0,0,0,0,0,0,0,0,0,0"});
    CHECK(flat.code == 1);
    CHECK(parse(flat)["presilting"] == false);
}

TEST_CASE("search and minus-one classes") {
    const auto j = parse(run({"--output", "json", "search", "--preset", "standard", "--generator", "iota"}));
    CHECK(j["collections"].size() == 2);
    const auto m = parse(run({"--output", "json", "minus-one-classes", "--points", "6", "--degree-bound", "2"}));
    CHECK(m["classes"].size() == 27);
    CHECK(run({"search", "--preset", "standard", "--generator", "cremona:1,2,11"}).code == 2);
}

TEST_CASE("usage and parameter errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const auto bad = run({"chi", "3;1,1,"});
    CHECK(bad.code == 2);
    CHECK(bad.out.empty());
    CHECK_FALSE(bad.err.empty());
    CHECK(run({"--prime", "31", "h0", "38;12,12,12,12,12,12,12,12,12,12"}).code == 2);
    CHECK(run({"--prime", "15", "h0", "1;1"}).code == 2);
    CHECK(run({"--output", "xml", "chi", "0;"}).code == 2);
    CHECK(run({"--prime", "31", "verify-theorem"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify-theorem") {
    const auto r = run({"--output", "json", "--seed", "7", "verify-theorem"});
    CHECK(r.code == 0);
    const auto j = parse(r);
    CHECK(j["verdict"] == "pass");
    CHECK(j["environment"]["seed"] == 7);
    CHECK(j["stages"].size() == 6);
}
