// Acceptance suite: runs every criterion end to end and prints one
// [PASS]/[FAIL] line per criterion.  Criteria phrased as CLI invocations
// drive the installed binary through a subprocess; the rest run in-process.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bcmono/convex_fn.hpp"
#include "bcmono/grid_fn.hpp"
#include "bcmono/scenario.hpp"
#include "bcmono/suites.hpp"

using namespace bcmono;
using nlohmann::json;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& description, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << description
              << " (" << detail << ")" << std::endl;
    if (!pass) ++g_failures;
}

struct CliResult {
    int exit_code = -1;
    std::string stdout_text;
    double seconds = 0.0;
};

CliResult run_cli(const std::string& args) {
    CliResult res;
    std::string cmd = std::string(BCMONO_CLI_PATH) + " " + args + " 2>/dev/null";
    auto t0 = std::chrono::steady_clock::now();
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof(buf), pipe)) res.stdout_text.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

double num(const json& values, const char* key) {
    return std::stod(values.at(key).get<std::string>());
}

ExtReal value_of(const CounterexampleVerdict& v, const std::string& label) {
    for (const auto& [name, val] : v.values)
        if (name == label) return val;
    throw BcmonoError("missing value " + label);
}

std::vector<ExtReal> random_convex_samples(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> slope(-5.0, 5.0);
    std::uniform_int_distribution<int> cut(0, n / 4);
    std::vector<double> slopes(n - 1);
    for (auto& s : slopes) s = slope(rng);
    std::sort(slopes.begin(), slopes.end());
    std::vector<ExtReal> f(n, ExtReal(0.0));
    double v = slope(rng);
    f[0] = ExtReal(v);
    const double h = 8.0 / (n - 1);
    for (int i = 1; i < n; ++i) {
        v += slopes[i - 1] * h;
        f[i] = ExtReal(v);
    }
    int lo = cut(rng), hi = cut(rng);
    for (int i = 0; i < lo; ++i) f[i] = ExtReal::pos_inf();
    for (int i = 0; i < hi; ++i) f[n - 1 - i] = ExtReal::pos_inf();
    if (lo + hi >= n) f[n / 2] = ExtReal(0.0);
    return f;
}

void criterion_1() {
    auto res = run_cli("verify ex52-gap --n 8");
    bool pass = res.exit_code == 0 && res.seconds < 5.0;
    std::ostringstream detail;
    try {
        json verdicts = json::parse(res.stdout_text);
        const json& values = verdicts.at(0).at("values");
        double lhs = num(values, "lhs_at_xstar_zero");
        double rhs = num(values, "rhs_inner_reduction");
        double margin = verdicts.at(0).at("margin").get<double>();
        pass = pass && lhs == 0.5 && std::abs(rhs - 0.125) <= 1e-6 &&
               std::abs(margin - 0.375) <= 1e-6;
        detail << "lhs=" << lhs << " rhs=" << rhs << " margin=" << margin << " time="
               << res.seconds << "s";
    } catch (const std::exception& e) {
        pass = false;
        detail << "cli output unusable: " << e.what();
    }
    report(1, "ex52-gap reports 1/2 against 1/8 with margin 3/8 in under 5 s", pass, detail.str());
}

void criterion_2() {
    auto res = run_cli("verify ex44 --samples 1000");
    bool pass = res.exit_code == 0 && res.seconds < 2.0;
    std::ostringstream detail;
    try {
        json verdicts = json::parse(res.stdout_text);
        const json& values = verdicts.at(0).at("values");
        double margin = num(values, "margin_at_xstar_zero");
        double sampled = num(values, "sampled_nonzero_xstar");
        double infinite = num(values, "infinite_lhs_count");
        pass = pass && std::abs(margin - 1.0) <= 1e-9 && sampled == 1000.0 && infinite == sampled;
        detail << "margin=" << margin << " infinite_lhs=" << infinite << "/" << sampled
               << " time=" << res.seconds << "s";
    } catch (const std::exception& e) {
        pass = false;
        detail << "cli output unusable: " << e.what();
    }
    report(2, "ex44 certifies margin 1 at x*=0 and an infinite left side off zero in under 2 s",
           pass, detail.str());
}

void criteria_3_4_5() {
    SuiteOptions opts;
    opts.seed = 20260810;
    opts.samples = 1000;
    auto t0 = std::chrono::steady_clock::now();
    auto v = fact51_suite(opts);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    double pairing = value_of(v, "worst_pairing_relative_error").finite();
    double skew = value_of(v, "worst_skew_value").finite();
    double adjoint = value_of(v, "worst_adjoint_distance").finite();

    {
        std::ostringstream d;
        d << "relative error " << pairing << ", time " << secs << "s";
        report(3, "pairing identity <Sx,x> = (sum x)^2/2 to 1e-12 over n in {2..128}",
               pairing <= 1e-12 && secs < 2.0, d.str());
    }
    {
        std::ostringstream d;
        d << "worst |<Tx,x>| = " << skew;
        report(4, "skewness on the zero-sum hyperplane to 1e-12", skew <= 1e-12, d.str());
    }
    {
        std::ostringstream d;
        d << "worst subspace distance " << adjoint;
        report(5, "computed adjoint graph matches {(y, Sy + a*ones)} to 1e-10 for n in {2,4,8,16}",
               adjoint <= 1e-10 && v.pass, d.str());
    }
}

void criterion_6() {
    SuiteOptions opts;
    opts.seed = 6;
    opts.samples = 1000;
    auto v = fact41_suite(opts);
    double err1 = value_of(v, "sup_error_base_density").finite();
    double err2 = value_of(v, "sup_error_double_density").finite();
    std::ostringstream d;
    d << "error " << err1 << " -> " << err2 << " after doubling";
    report(6, "sampled Fitzpatrick function of gra N_[-1,1] matches iota (+) sigma to 1e-2",
           v.pass && err1 <= 1e-2 && err2 <= 0.6 * err1 + 1e-12, d.str());
}

void criterion_7() {
    SuiteOptions opts;
    opts.seed = 7;
    auto v = fact42_suite(opts);
    double on_err = value_of(v, "on_graph_worst_error").finite();
    double final_sup = value_of(v, "off_graph_min_final_sup").finite();
    double escalated = value_of(v, "off_graph_escalated").finite();
    double off_n = value_of(v, "off_graph_queries").finite();
    std::ostringstream d;
    d << "on-graph error " << on_err << ", escalated " << escalated << "/" << off_n
      << ", final sup >= " << final_sup;
    report(7, "rotation conjugate equals the pairing on the graph and escalates past 1e6 off it",
           v.pass && final_sup >= 1e6 && escalated == off_n, d.str());
}

void criterion_8() {
    SuiteOptions opts;
    opts.seed = 8;
    auto v = fact33_suite(rotation_relation(), unit_ball_2d(), opts);
    double gap = value_of(v, "worst_gap").finite();
    double tol = value_of(v, "tolerance_2h").finite();
    double queries = value_of(v, "queries").finite();
    std::ostringstream d;
    d << "gap " << gap << " <= " << tol << " at " << queries << " query points";
    report(8, "partial inf-convolution conjugate identity gap within 2h on rotation/ball",
           v.pass && queries >= 9, d.str());
}

void criterion_9() {
    std::mt19937_64 rng(909);
    bool bit_identical = true;
    for (int trial = 0; trial < 100 && bit_identical; ++trial) {
        auto f = random_convex_samples(rng, 1025);
        auto brute = legendre::transform_1d_brute(f, 4.0);
        auto fast = legendre::transform_1d_fast(f, 4.0);
        for (size_t i = 0; i < brute.size(); ++i)
            if (brute[i].raw() != fast[i].raw()) bit_identical = false;
    }

    GridSpec spec = config::default_grid_1d();
    const double h = spec.spacing();
    double g1 = biconjugate_check(ConvexFunction::norm(1, 1.0), spec).sup_gap;
    double g2 =
        biconjugate_check(ConvexFunction::quadratic(Mat::Identity(1, 1), Vec::Zero(1)), spec)
            .sup_gap;
    double g3 =
        biconjugate_check(ConvexFunction::indicator(ConvexSet::interval(0.0, 1.0)), spec).sup_gap;
    std::ostringstream d;
    d << "bit-identical over 100 inputs at N=1025: " << (bit_identical ? "yes" : "no")
      << "; biconjugate gaps " << g1 << ", " << g2 << ", " << g3 << " vs 2h=" << 2.0 * h;
    report(9, "fast Legendre path matches brute force bitwise; biconjugate gaps within 2h",
           bit_identical && g1 <= 2.0 * h && g2 <= 2.0 * h && g3 <= 2.0 * h, d.str());
}

void criterion_10() {
    SuiteOptions opts;
    opts.seed = 10;
    opts.samples = 100000;
    auto t0 = std::chrono::steady_clock::now();
    auto v43 = implication43_check(rotation_relation(), unit_ball_2d(), JFunction{1.0}, opts);
    auto v52 = implication52_check(8, opts);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    double processed43 = value_of(v43, "pairs_processed").finite();
    double processed52 = value_of(v52, "pairs_processed").finite();
    double viol = value_of(v43, "conclusion_violations").finite() +
                  value_of(v52, "conclusion_violations").finite();
    double seeded43 = value_of(v43, "seeded_premise_hits").finite();
    double seeded52 = value_of(v52, "seeded_premise_hits").finite();
    std::ostringstream d;
    d << processed43 << " + " << processed52 << " pairs, " << viol << " violations, seeded hits "
      << seeded43 << "/" << seeded52 << ", time " << secs << "s";
    report(10, "both implication suites: 1e5 pairs, zero violations, 1e2 seeded hits, under 30 s",
           v43.pass && v52.pass && processed43 >= 100000 && processed52 >= 100000 && viol == 0 &&
               seeded43 >= 100 && seeded52 >= 100 && secs < 30.0,
           d.str());
}

void criterion_11() {
    SuiteOptions opts;
    opts.seed = 11;
    opts.samples = 1000;
    auto v = example52_maximality(8, opts);
    double solved = value_of(v, "solved").finite();
    double residual = value_of(v, "worst_residual").finite();
    std::ostringstream d;
    d << solved << "/1000 solved, worst residual " << residual;
    report(11, "resolvent inclusion solved for 1e3 random z with residual 1e-8",
           v.pass && solved == 1000.0 && residual <= 1e-8, d.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criteria_3_4_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}
