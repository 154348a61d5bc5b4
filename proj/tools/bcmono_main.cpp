// bcmono command-line front end.  Talks to the shared library exclusively
// through the C interface in bcmono.h.
//
//   bcmono verify <suite>... [flags]     run named suites (built-in defaults
//                                        unless --scenario provides one)
//   bcmono run --scenario FILE [flags]   run every suite a scenario declares
//
// Exit codes: 0 all pass, 1 verdict failure, 2 hypothesis failure,
// 3 input error.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bcmono.h"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string scenario_path;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    int grid_n = 0;
    double box_radius = 0.0;
    int truncation_n = 0;
    long samples = 0;
    std::string out_path;
    std::string csv_dir;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool scenario_required) {
    auto* sc = cmd->add_option("--scenario", flags.scenario_path, "scenario JSON file");
    if (scenario_required) sc->required();
    cmd->add_option("--seed", flags.seed, "RNG seed threaded to every sampler");
    cmd->add_option("--tol", flags.tol, "verification tolerance")->capture_default_str();
    cmd->add_option("--grid-n", flags.grid_n, "grid points per axis");
    cmd->add_option("--box-radius", flags.box_radius, "grid box radius");
    cmd->add_option("--n", flags.truncation_n, "truncation dimension for the shift suites");
    cmd->add_option("--samples", flags.samples, "sample count override");
    cmd->add_option("--out", flags.out_path, "write the JSON verdict array here");
    cmd->add_option("--csv-dir", flags.csv_dir, "directory for CSV artifacts");
}

std::string options_json(const CommonFlags& flags) {
    json j;
    j["seed"] = flags.seed;
    j["tol"] = flags.tol;
    if (flags.grid_n > 0) j["grid_n"] = flags.grid_n;
    if (flags.box_radius > 0) j["box_radius"] = flags.box_radius;
    if (flags.truncation_n > 0) j["n"] = flags.truncation_n;
    if (flags.samples > 0) j["samples"] = flags.samples;
    return j.dump();
}

int status_to_exit(bcmono_status st) {
    switch (st) {
        case BCMONO_OK:
            return 0;
        case BCMONO_ERR_HYPOTHESIS_FAILED:
            return 2;
        case BCMONO_ERR_PARSE:
        case BCMONO_ERR_VALIDATION:
        case BCMONO_ERR_INVALID_ARGUMENT:
            return 3;
        default:
            return 3;
    }
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_csv_artifacts(const json& verdicts, const std::string& csv_dir) {
    if (csv_dir.empty()) return;
    std::filesystem::create_directories(csv_dir);
    for (const auto& v : verdicts) {
        if (!v.contains("csv")) continue;
        for (auto it = v["csv"].begin(); it != v["csv"].end(); ++it) {
            std::ofstream out(std::filesystem::path(csv_dir) / it.key());
            out << it.value().get<std::string>();
        }
    }
}

// Strip the "csv" payloads from the report (they land on disk instead).
json strip_csv(json verdicts) {
    for (auto& v : verdicts) v.erase("csv");
    return verdicts;
}

int emit_report(const json& verdicts, const CommonFlags& flags, int exit_code) {
    write_csv_artifacts(verdicts, flags.csv_dir);
    std::string text = strip_csv(verdicts).dump(2);
    if (!flags.out_path.empty()) {
        std::ofstream out(flags.out_path);
        if (!out) {
            std::cerr << "bcmono: cannot write " << flags.out_path << "\n";
            return 3;
        }
        out << text << "\n";
    }
    std::cout << text << "\n";
    if (exit_code != 0) {
        for (const auto& v : verdicts) {
            bool hyp_fail = false;
            for (const auto& h : v["hypotheses"])
                if (!h["ok"].get<bool>()) hyp_fail = true;
            if (hyp_fail || v["verdict"] == "fail") {
                std::cerr << "bcmono: suite '" << v["suite"].get<std::string>() << "' "
                          << (hyp_fail ? "hypothesis failure" : "verdict failure") << "\n";
                break;
            }
        }
    }
    return exit_code;
}

int run_verify(const std::vector<std::string>& suites, const CommonFlags& flags) {
    bcmono_scenario* scenario = nullptr;
    if (!flags.scenario_path.empty()) {
        auto text = read_file(flags.scenario_path);
        if (!text) {
            std::cerr << "bcmono: cannot open scenario '" << flags.scenario_path << "'\n";
            return 3;
        }
        if (bcmono_scenario_load(text->c_str(), &scenario) != BCMONO_OK) {
            std::cerr << "bcmono: " << bcmono_last_error() << "\n";
            return 3;
        }
    }

    json verdicts = json::array();
    std::string opts = options_json(flags);
    int exit_code = 0;
    for (const auto& suite : suites) {
        char* verdict_json = nullptr;
        bcmono_status st = bcmono_suite_run(scenario, suite.c_str(), opts.c_str(), &verdict_json);
        if (st == BCMONO_OK) {
            json v = json::parse(verdict_json);
            bcmono_string_free(verdict_json);
            bool hyp_fail = false;
            for (const auto& h : v["hypotheses"])
                if (!h["ok"].get<bool>()) hyp_fail = true;
            if (hyp_fail)
                exit_code = std::max(exit_code, 2);
            else if (v["verdict"] == "fail")
                exit_code = 1;
            verdicts.push_back(std::move(v));
        } else if (st == BCMONO_ERR_HYPOTHESIS_FAILED) {
            json v;
            v["schema_version"] = 1;
            v["suite"] = suite;
            v["name"] = "hypothesis failure";
            v["hypotheses"] = json::array({{{"name", bcmono_last_error()}, {"ok", false}}});
            v["values"] = json::object();
            v["margin"] = 0.0;
            v["slack"] = 0.0;
            v["verdict"] = "fail";
            v["notes"] = json::array({std::string(bcmono_last_error())});
            verdicts.push_back(std::move(v));
            exit_code = std::max(exit_code, 2);
        } else {
            std::cerr << "bcmono: suite '" << suite << "': " << bcmono_last_error() << "\n";
            if (scenario) bcmono_scenario_free(scenario);
            return status_to_exit(st);
        }
    }
    if (scenario) bcmono_scenario_free(scenario);
    if (exit_code == 1) {
        // Verdict failures dominate hypothesis failures in the contract.
    }
    return emit_report(verdicts, flags, exit_code);
}

int run_scenario_cmd(const std::vector<std::string>& filters, const CommonFlags& flags) {
    auto text = read_file(flags.scenario_path);
    if (!text) {
        std::cerr << "bcmono: cannot open scenario '" << flags.scenario_path << "'\n";
        return 3;
    }
    bcmono_scenario* scenario = nullptr;
    if (bcmono_scenario_load(text->c_str(), &scenario) != BCMONO_OK) {
        std::cerr << "bcmono: " << bcmono_last_error() << "\n";
        return 3;
    }
    std::string filter_csv;
    for (size_t i = 0; i < filters.size(); ++i) {
        if (i) filter_csv += ",";
        filter_csv += filters[i];
    }
    char* verdicts_json = nullptr;
    int exit_code = 0;
    bcmono_status st = bcmono_scenario_run(scenario, filter_csv.c_str(),
                                           options_json(flags).c_str(), &verdicts_json, &exit_code);
    bcmono_scenario_free(scenario);
    if (st != BCMONO_OK) {
        std::cerr << "bcmono: " << bcmono_last_error() << "\n";
        return status_to_exit(st);
    }
    json verdicts = json::parse(verdicts_json);
    bcmono_string_free(verdicts_json);
    return emit_report(verdicts, flags, exit_code);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bcmono: numerical verification of bigger-conjugate counterexamples"};
    app.require_subcommand(1);

    CommonFlags verify_flags, run_flags;
    std::vector<std::string> suites, filters;

    auto* verify = app.add_subcommand("verify", "run named verification suites");
    verify->add_option("suites", suites, "suite names (thm43, ex44, ex52-gap, ...)")->required();
    add_common_flags(verify, verify_flags, false);

    auto* run = app.add_subcommand("run", "run the suites a scenario file declares");
    run->add_option("--suite", filters, "restrict to these suites");
    add_common_flags(run, run_flags, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return run_verify(suites, verify_flags);
        return run_scenario_cmd(filters, run_flags);
    } catch (const std::exception& e) {
        std::cerr << "bcmono: " << e.what() << "\n";
        return 3;
    }
}
