// Scenario files: JSON declarations of operators, sets, grids and suite
// selections, plus the dispatcher that turns them into verdicts and the
// JSON serialization of every report type.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcmono/suites.hpp"

namespace bcmono {

struct RelationDecl {
    std::string name;
    Mat matrix;
    std::optional<Mat> domain_constraints;  // rows c with <c, x> = 0
};

struct SetDecl {
    std::string name;
    ConvexSet set;
};

struct SuiteDecl {
    std::string suite;
    std::string json_params;  // raw JSON object with per-suite parameters
};

struct Scenario {
    int schema_version = 1;
    std::string name;
    std::vector<RelationDecl> operators;
    std::vector<SetDecl> sets;
    GridSpec grids = config::default_grid_2d();
    JFunction j_function{1.0};
    std::vector<SuiteDecl> suites;

    const RelationDecl* find_operator(const std::string& name) const;
    const SetDecl* find_set(const std::string& name) const;
};

// Parses and validates a scenario document.  ParseError on malformed JSON,
// ValidationError on inconsistent dimensions or unknown suite names.
Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

// Known suite identifiers (the CLI's verify vocabulary).
const std::vector<std::string>& known_suites();

// Runs one suite by name.  A null scenario uses the built-in defaults
// (rotation/ball, unit interval, truncated shift).  HypothesisFailed
// propagates to the caller; other errors become BcmonoError.
CounterexampleVerdict run_suite(const std::string& suite, const Scenario* scenario,
                                const SuiteOptions& opts);

// Runs every suite the scenario names (or `filters` when nonempty).
std::vector<CounterexampleVerdict> run_scenario(const Scenario& scenario,
                                                const std::vector<std::string>& filters,
                                                const SuiteOptions& opts);

// JSON serializations (deterministic: no timestamps, ExtReal as strings).
std::string verdict_to_json(const CounterexampleVerdict& v);
std::string verdicts_to_json(const std::vector<CounterexampleVerdict>& vs);
std::string monotonicity_report_to_json(const MonotonicityReport& rep);
std::string bc_report_to_json(const BcReport& rep, const GridSpec& grid);

// Exit-code contract: 0 all pass, 1 verdict failure, 2 hypothesis failure,
// 3 input error.
int exit_code_for(const std::vector<CounterexampleVerdict>& vs);

}  // namespace bcmono
