// Executable reproductions of the refutation examples: the strict
// "bigger conjugate" inequality for linear relation + normal cone pairs,
// the rotation/ball instance, the truncated-shift instance with its exact
// 1/2 vs 1/8 gap, the alignment-implication checks, and the supporting
// identity suites.  Every suite emits a verdict with named hypotheses,
// labeled values and a numeric margin.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bcmono/bivariate.hpp"
#include "bcmono/relations.hpp"
#include "bcmono/sets.hpp"
#include "bcmono/shift.hpp"

namespace bcmono {

struct SuiteOptions {
    std::uint64_t seed = 1;
    double tol = config::kDefaultTol;
    GridSpec grid_1d = config::default_grid_1d();
    GridSpec grid_2d = config::default_grid_2d();
    int truncation_n = 8;
    long samples = 0;  // 0 = suite default

    // Strict inequalities are certified with this much slack.
    double slack() const { return 10.0 * tol; }
};

struct CounterexampleVerdict {
    std::string suite;
    std::string name;
    std::vector<std::pair<std::string, bool>> hypotheses;
    std::vector<std::pair<std::string, ExtReal>> values;
    double margin = 0.0;
    double slack = 0.0;
    bool pass = false;
    std::vector<std::string> notes;
    std::map<std::string, std::string> csv;  // artifact name -> contents

    void value(const std::string& label, ExtReal v) { values.emplace_back(label, v); }
    void note(std::string s) { notes.push_back(std::move(s)); }
};

// Theorem-level suite: identities for the conjugate pair, existence of a
// strict-gap witness (z, z*), and the certified strict inequality sweep.
// Throws HypothesisFailed when a precondition fails.
CounterexampleVerdict theorem43_suite(const LinearRelation& a, const ConvexSet& c,
                                      const JFunction& j, const SuiteOptions& opts);

// The rotation/ball refutation at z = 0 with a caller-chosen z* != 0.
CounterexampleVerdict example44_suite(const LinearRelation& a, const ConvexSet& c, const Vec& zstar,
                                      const SuiteOptions& opts);

// Alignment implication for a maximal monotone A and the unit ball.
CounterexampleVerdict implication43_check(const LinearRelation& a, const ConvexSet& ball,
                                          const JFunction& j, const SuiteOptions& opts);

// The 1/2 vs 1/8 truncated-shift gap, computed by closed forms on the left
// and two independent routes on the right.
CounterexampleVerdict example52_gap(int n, const SuiteOptions& opts);

// Alignment implication for the truncated adjoint selection and C = [0, e1].
CounterexampleVerdict implication52_check(int n, const SuiteOptions& opts);

// Resolvent surjectivity probe for S + N_[0,e1].
CounterexampleVerdict example52_maximality(int n, const SuiteOptions& opts);

// Sampled Fitzpatrick function of gra N_[-1,1] against the separable
// closed form, with the density-halving error law.
CounterexampleVerdict fact41_suite(const SuiteOptions& opts);

// Grid flipped-conjugate of the rotation Fitzpatrick function against the
// graph-indicator closed form, including the +inf escalation protocol.
CounterexampleVerdict fact42_suite(const SuiteOptions& opts);

// Truncated-shift identity sweep over n in {2,...,128} plus adjoint
// agreement; emits the (n, max_abs_error) CSV.
CounterexampleVerdict fact51_suite(const SuiteOptions& opts);

// Partial inf-convolution conjugate identity on a declared pair at a
// batch of query points (the rotation/ball instance by default).
CounterexampleVerdict fact33_suite(const LinearRelation& a, const ConvexSet& c,
                                   const SuiteOptions& opts);

// Report-only probe of the second problem's inequality on a declared pair;
// records findings without interpreting them.
CounterexampleVerdict probe_probcon(const BivariateFunction& f1, const BivariateFunction& f2,
                                    const Vec& z, const Vec& zstar, const SuiteOptions& opts);

// Built-in default instances.
LinearRelation rotation_relation(double angle_degrees = 90.0);
ConvexSet unit_ball_2d();

}  // namespace bcmono
