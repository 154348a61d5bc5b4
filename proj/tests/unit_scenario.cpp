#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "bcmono/scenario.hpp"

using namespace bcmono;

namespace {

std::string fixture(const char* name) {
    return std::string(BCMONO_SCENARIO_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("bundled rotation/ball scenario loads") {
    auto sc = load_scenario_file(fixture("ex44.json"));
    CHECK(sc.name == "ex44-rotation-ball");
    REQUIRE(sc.operators.size() == 1);
    CHECK(sc.operators[0].matrix(0, 1) == -1.0);
    REQUIRE(sc.sets.size() == 1);
    CHECK(sc.sets[0].set.dim() == 2);
    CHECK(sc.j_function.lower_slope == 1.0);
    REQUIRE(sc.suites.size() == 3);
    CHECK(sc.suites[0].suite == "ex44");
}

TEST_CASE("bundled truncated-shift scenario loads") {
    auto sc = load_scenario_file(fixture("ex52.json"));
    CHECK(sc.j_function.lower_slope == 0.5);
    REQUIRE(sc.suites.size() == 3);
    CHECK(sc.suites[0].suite == "ex52-gap");
}

TEST_CASE("dimension conflicts are rejected") {
    const char* doc = R"({
        "schema_version": 1,
        "operators": [{"name": "a", "matrix": [[1.0, 0.0], [0.0, 1.0]]}],
        "sets": [{"name": "s", "variant": "singleton", "point": [0.0, 0.0, 0.0]}]
    })";
    CHECK_THROWS_AS(load_scenario(doc), ValidationError);
}

TEST_CASE("unknown suites are rejected at parse time") {
    const char* doc = R"({"suites": [{"suite": "no-such-suite"}]})";
    CHECK_THROWS_AS(load_scenario(doc), ValidationError);
}

TEST_CASE("malformed json raises a parse error") {
    CHECK_THROWS_AS(load_scenario("{ not json"), ParseError);
    CHECK_THROWS_AS(load_scenario_file("/nonexistent/path.json"), ParseError);
}

TEST_CASE("set variants parse") {
    const char* doc = R"({
        "sets": [
            {"variant": "ball", "center": [0.0, 0.0], "radius": 2.0},
            {"variant": "segment", "a": [0.0, 0.0], "b": [1.0, 0.0]},
            {"variant": "box", "lower": [-1.0, "-inf"], "upper": [1.0, "inf"]},
            {"variant": "subspace", "basis": [[1.0, 0.0]]},
            {"variant": "singleton", "point": [0.0, 1.0]},
            {"variant": "polytope", "vertices": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]}
        ]
    })";
    auto sc = load_scenario(doc);
    CHECK(sc.sets.size() == 6);
    CHECK_FALSE(sc.sets[2].set.bounded());  // infinite box bounds parsed from literals
}

TEST_CASE("running a scenario produces verdicts and exit codes") {
    SuiteOptions opts;
    opts.samples = 500;
    auto sc = load_scenario_file(fixture("ex52.json"));
    auto verdicts = run_scenario(sc, {"ex52-gap"}, opts);
    REQUIRE(verdicts.size() == 1);
    CHECK(verdicts[0].suite == "ex52-gap");
    CHECK(verdicts[0].pass);
    CHECK(exit_code_for(verdicts) == 0);
}

TEST_CASE("verdict json is deterministic") {
    SuiteOptions opts;
    opts.seed = 42;
    opts.samples = 300;
    auto v1 = run_suite("ex52-gap", nullptr, opts);
    auto v2 = run_suite("ex52-gap", nullptr, opts);
    CHECK(verdict_to_json(v1) == verdict_to_json(v2));
}

TEST_CASE("unreachable tolerance fails loudly") {
    SuiteOptions opts;
    opts.samples = 100;
    opts.tol = 1e-30;  // below machine precision: residuals cannot comply
    auto v = run_suite("ex52-maximality", nullptr, opts);
    CHECK_FALSE(v.pass);
    CHECK(exit_code_for({v}) == 1);
}

TEST_CASE("hypothesis failures map to exit code two") {
    const char* doc = R"({
        "operators": [{"name": "id", "matrix": [[1.0, 0.0], [0.0, 1.0]]}],
        "sets": [{"name": "zero", "variant": "singleton", "point": [0.0, 0.0]}],
        "suites": [{"suite": "thm43", "operator": "id", "set": "zero"}]
    })";
    auto sc = load_scenario(doc);
    SuiteOptions opts;
    auto verdicts = run_scenario(sc, {}, opts);
    REQUIRE(verdicts.size() == 1);
    CHECK_FALSE(verdicts[0].pass);
    CHECK(exit_code_for(verdicts) == 2);
}

TEST_CASE("monotonicity report serialization") {
    auto rep = rotation_relation().classify();
    auto text = monotonicity_report_to_json(rep);
    CHECK(text.find("\"monotone\": true") != std::string::npos);
    CHECK(text.find("\"skew\": true") != std::string::npos);
    CHECK(text.find("\"witness\": null") != std::string::npos);
}
