#include "bcmono/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcmono/numeric.hpp"
#include "bcmono/sampling.hpp"

namespace bcmono {

namespace {

void require_hypothesis(CounterexampleVerdict& v, const std::string& name, bool ok) {
    v.hypotheses.emplace_back(name, ok);
    if (!ok) throw HypothesisFailed(name);
}

// Deterministic points of C intersected with dom A (suite query material).
std::vector<Vec> dom_cap_c_points(const LinearRelation& a, const ConvexSet& c, Rng& rng,
                                  int count) {
    std::vector<Vec> out;
    const int n = a.ambient_dim();
    auto try_add = [&](const Vec& x) {
        if (c.contains(x, 1e-9) && a.apply(x).kind != LinearRelation::ApplyResult::Kind::Empty)
            out.push_back(x);
    };
    try_add(Vec::Zero(n));
    const int k = static_cast<int>(a.dom_basis().cols());
    for (int it = 0; k > 0 && it < 8 * count && static_cast<int>(out.size()) < count; ++it)
        try_add(c.project(Vec(a.dom_basis() * rng.vec_in_box(k, 1.0))));
    return out;
}

std::string format_double(double v) { return ExtReal(v).str(); }

}  // namespace

LinearRelation rotation_relation(double angle_degrees) {
    double th = angle_degrees * M_PI / 180.0;
    Mat r(2, 2);
    r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    return LinearRelation::from_matrix(r);
}

ConvexSet unit_ball_2d() { return ConvexSet::ball(Vec::Zero(2), 1.0); }

// ---------------------------------------------------------------------------
// Theorem-level suite
// ---------------------------------------------------------------------------

CounterexampleVerdict theorem43_suite(const LinearRelation& a, const ConvexSet& c,
                                      const JFunction& j, const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "thm43";
    v.name = "strict bigger-conjugate gap for a linear relation plus a normal cone";
    v.slack = opts.slack();

    auto cls = a.classify();
    require_hypothesis(v, "A monotone", cls.monotone);
    require_hypothesis(v, "A maximally monotone", cls.maximal);
    require_hypothesis(v, "A at most single-valued", a.at_most_single_valued());
    require_hypothesis(v, "C bounded closed convex", c.bounded());
    require_hypothesis(v, "C != {0}", !c.is_zero_singleton());
    require_hypothesis(v, "transversality: cone(dom A - C) is a subspace",
                       minkowski_span_closed_subspace(a.domain_set(), c));
    require_hypothesis(v, "j increasing with j(g) >= g", j.well_formed() && j.lower_slope >= 1.0);

    const int n = a.ambient_dim();
    Rng rng(opts.seed);
    BivariateFunction fa = BivariateFunction::fitz_linear(a);
    BivariateFunction fnc = BivariateFunction::fitz_normal_cone(c);
    const GridSpec grid = n == 1 ? opts.grid_1d : opts.grid_2d;
    const double h = grid.spacing();

    // (ii): F_A*(x*, x) + F_NC*(y* - x*, x) against the indicator + pairing
    // + support expansion, closed form on both routes plus a grid route for
    // the Fitzpatrick side.  The grid tolerance follows the resolution the
    // anchor budget affords in the finiteness-subspace dimension.
    double worst_identity2 = 0.0;
    double worst_identity2_grid = 0.0;
    double tol_ii;
    {
        int axis = anchor_axis_count(fa.finiteness_dim(), grid.points_per_axis);
        tol_ii = 2.0 * (2.0 * grid.box_radius / (axis - 1)) + v.slack;
        auto xs = dom_cap_c_points(a, c, rng, 4);
        int finite_checked = 0;
        for (const auto& x : xs) {
            Vec ax = a.selection(x);
            std::vector<Vec> xstars = {ax, Vec(ax + Vec::Unit(n, 0))};
            std::vector<Vec> ystars = {Vec::Zero(n), Vec::Unit(n, 0), Vec(-0.5 * Vec::Unit(n, n - 1))};
            for (const auto& xstar : xstars)
                for (const auto& ystar : ystars) {
                    ExtReal lhs = flipped_conjugate(fa, xstar, x, grid).value +
                                  flipped_conjugate(fnc, ystar - xstar, x, grid).value;
                    bool on_graph = a.contains(x, xstar, 1e-9) && c.contains(x, 1e-9);
                    ExtReal rhs = on_graph
                                      ? ExtReal(x.dot(xstar)) + c.support(ystar - xstar)
                                      : ExtReal::pos_inf();
                    if (lhs.is_finite() != rhs.is_finite()) {
                        worst_identity2 = std::numeric_limits<double>::infinity();
                    } else if (lhs.is_finite()) {
                        worst_identity2 =
                            std::max(worst_identity2, std::abs(lhs.finite() - rhs.finite()));
                        ++finite_checked;
                        FlippedConjugateOptions gopt;
                        gopt.backend = ConjugateBackend::Grid;
                        ExtReal fa_grid = flipped_conjugate(fa, xstar, x, grid, gopt).value;
                        ExtReal fa_closed = flipped_conjugate(fa, xstar, x, grid).value;
                        if (fa_grid.is_finite() && fa_closed.is_finite())
                            worst_identity2_grid = std::max(
                                worst_identity2_grid,
                                std::abs(fa_grid.finite() - fa_closed.finite()));
                    }
                }
        }
        v.value("identity_ii_checked_points", ExtReal(double(finite_checked)));
        v.value("identity_ii_closed_form_error", ExtReal(worst_identity2));
        v.value("identity_ii_grid_error", ExtReal(worst_identity2_grid));
        v.value("identity_ii_grid_tolerance", ExtReal(tol_ii));
    }

    // (iii): the partial inf-convolution conjugate closed form against
    // brute-force flipped conjugation.  Skew relations ride the exact inner
    // reduction; otherwise the inner minimization runs on a coarser grid
    // and the tolerance widens with it.
    double worst_identity3 = 0.0;
    double tol_iii;
    {
        int cap = cls.skew ? std::min(grid.points_per_axis, 33) : std::min(grid.points_per_axis, 17);
        GridSpec iii_grid{grid.box_radius, cap};
        tol_iii = 2.0 * iii_grid.spacing() + v.slack;
        BivariateFunction f1 =
            cls.skew ? BivariateFunction::graph_indicator_plus_pairing(a) : fa;
        BivariateFunction conv = BivariateFunction::partial_inf_conv_fn(f1, fnc, iii_grid);
        auto xs = dom_cap_c_points(a, c, rng, 2);
        FlippedConjugateOptions gopt;
        gopt.backend = ConjugateBackend::Grid;
        gopt.escalate = false;
        gopt.axis_cap = cap;
        for (const auto& x : xs) {
            Vec ax = a.selection(x);
            gopt.extra_anchors.emplace_back(x, ax);  // the attained maximizer family
            for (const Vec& xstar : {Vec(ax), Vec(ax + 0.5 * Vec::Unit(n, 0))})
                gopt.extra_anchors.emplace_back(x, xstar);
        }
        for (const auto& x : xs) {
            Vec ax = a.selection(x);
            for (const Vec& xstar : {Vec(ax), Vec(ax + 0.5 * Vec::Unit(n, 0))}) {
                ExtReal closed = ExtReal(x.dot(ax)) + c.support(xstar - ax);
                ExtReal brute = flipped_conjugate(conv, xstar, x, iii_grid, gopt).value;
                if (closed.is_finite() && brute.is_finite())
                    worst_identity3 =
                        std::max(worst_identity3, std::abs(closed.finite() - brute.finite()));
                else if (closed.is_finite() != brute.is_finite())
                    worst_identity3 = std::numeric_limits<double>::infinity();
            }
        }
        v.value("identity_iii_error", ExtReal(worst_identity3));
        v.value("identity_iii_tolerance", ExtReal(tol_iii));
    }

    // (iv): a witness (z, z*) with z in dom A cap C and sigma_C(z* - Az) > 0.
    Vec z, zstar;
    double witness_gap = 0.0;
    {
        auto zs = dom_cap_c_points(a, c, rng, 3);
        bool found = false;
        for (const auto& cand : zs) {
            Vec az = a.selection(cand);
            for (int i = 0; i < n && !found; ++i) {
                for (double sgn : {1.0, -1.0}) {
                    Vec cz = az + sgn * Vec::Unit(n, i);
                    ExtReal s = c.support(cz - az);
                    if (s.is_finite() && s.finite() > v.slack) {
                        z = cand;
                        zstar = cz;
                        witness_gap = s.finite();
                        found = true;
                        break;
                    }
                }
            }
            if (found) break;
        }
        require_hypothesis(v, "witness (z, z*) with sigma_C(z* - Az) > 0 exists", found);
        v.value("sigma_C(zstar - Az)", ExtReal(witness_gap));
    }

    // (v): the strict inequality over an x* sweep including the critical
    // point x* = Az.
    {
        Vec az = a.selection(z);
        double min_margin = std::numeric_limits<double>::infinity();
        long infinite_lhs = 0;
        std::vector<Vec> sweep;
        sweep.push_back(az);
        for (int k = 0; k < 200; ++k) sweep.push_back(az + rng.vec_in_ball(n, 2.0));
        for (const auto& xstar : sweep) {
            ExtReal lhs = flipped_conjugate(fa, xstar, z, grid).value +
                          flipped_conjugate(fnc, zstar - xstar, z, grid).value;
            ExtReal rhs = ExtReal(z.dot(az)) + c.support(xstar - az);
            if (!lhs.is_finite()) {
                ++infinite_lhs;
                continue;
            }
            min_margin = std::min(min_margin, lhs.finite() - rhs.finite());
        }
        v.value("strict_margin_min", ExtReal(min_margin));
        v.value("sweep_infinite_lhs", ExtReal(double(infinite_lhs)));
        v.margin = min_margin;
    }

    v.pass = v.margin > v.slack && worst_identity2 <= 2.0 * h + v.slack &&
             worst_identity2_grid <= tol_ii && worst_identity3 <= tol_iii;
    return v;
}

CounterexampleVerdict example44_suite(const LinearRelation& a, const ConvexSet& c, const Vec& zstar,
                                      const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "ex44";
    v.name = "rotation/ball refutation at z = 0";
    v.slack = opts.slack();

    const int n = a.ambient_dim();
    require_dim(zstar.size(), n, "example44_suite");
    auto cls = a.classify();
    require_hypothesis(v, "A maximally monotone", cls.monotone && cls.maximal);
    require_hypothesis(v, "A at most single-valued", a.at_most_single_valued());
    require_hypothesis(v, "C bounded closed convex", c.bounded());
    require_hypothesis(v, "0 in dom A cap C",
                       c.contains(Vec::Zero(n), 1e-9) &&
                           a.apply(Vec::Zero(n)).kind != LinearRelation::ApplyResult::Kind::Empty);
    require_hypothesis(v, "z* != 0", zstar.norm() > 0);

    Vec z = Vec::Zero(n);
    Vec az = a.selection(z);  // = 0 for a linear relation
    ExtReal sigma = c.support(zstar - az);
    require_hypothesis(v, "sigma_C(z* - Az) > 0", sigma.is_finite() && sigma.finite() > v.slack);

    BivariateFunction fa = BivariateFunction::fitz_linear(a);
    BivariateFunction fnc = BivariateFunction::fitz_normal_cone(c);
    const GridSpec grid = opts.grid_2d;

    // x* = 0: both sides finite; the margin is sigma_C(z*).
    ExtReal lhs0 = flipped_conjugate(fa, Vec::Zero(n), z, grid).value +
                   flipped_conjugate(fnc, zstar, z, grid).value;
    ExtReal rhs0 = ExtReal(0.0) + c.support(Vec::Zero(n));
    v.value("lhs_at_xstar_zero", lhs0);
    v.value("rhs_at_xstar_zero", rhs0);
    v.margin = lhs0.finite() - rhs0.finite();
    v.value("margin_at_xstar_zero", ExtReal(v.margin));

    // x* != 0: the graph indicator drives the left side to +inf.
    Rng rng(opts.seed);
    long samples = opts.samples > 0 ? opts.samples : 1000;
    long infinite_count = 0;
    for (long k = 0; k < samples; ++k) {
        Vec xstar = rng.vec_in_ball(n, 3.0);
        if (xstar.norm() < 1e-12) continue;
        ExtReal lhs = flipped_conjugate(fa, xstar, z, grid).value +
                      flipped_conjugate(fnc, zstar - xstar, z, grid).value;
        if (!lhs.is_finite()) ++infinite_count;
    }
    v.value("sampled_nonzero_xstar", ExtReal(double(samples)));
    v.value("infinite_lhs_count", ExtReal(double(infinite_count)));

    v.pass = v.margin > v.slack && infinite_count == samples;
    return v;
}

// ---------------------------------------------------------------------------
// Implication checks
// ---------------------------------------------------------------------------

namespace {

struct ImplicationTally {
    long processed = 0;
    long premise_hits = 0;
    long seeded_hits = 0;
    long violations = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
};

// Premise: <x - y, y*> = |x - y| |y*| and x != y.
bool alignment_premise(const Vec& x, const Vec& y, const Vec& ystar, double tol) {
    double lhs = (x - y).dot(ystar);
    double rhs = (x - y).norm() * ystar.norm();
    return (x - y).norm() > 1e-9 && std::abs(lhs - rhs) <= tol * std::max(1.0, rhs);
}

}  // namespace

CounterexampleVerdict implication43_check(const LinearRelation& a, const ConvexSet& ball,
                                          const JFunction& j, const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "ex44-implication";
    v.name = "alignment implication for pos F_A and pos F_N_ball";
    v.slack = opts.slack();

    const auto* b = std::get_if<ConvexSet::Ball>(&ball.variant());
    require_hypothesis(v, "C is the unit ball",
                       b != nullptr && b->radius == 1.0 && b->center.norm() == 0.0);
    auto cls = a.classify();
    require_hypothesis(v, "A maximally monotone", cls.monotone && cls.maximal);
    require_hypothesis(v, "j increasing with j(g) >= g", j.well_formed() && j.lower_slope >= 1.0);

    const int n = a.ambient_dim();
    Rng rng(opts.seed);
    const long total = opts.samples > 0 ? opts.samples : 100000;
    const double tol = 1e-9;
    ImplicationTally tally;

    auto check_conclusion = [&](const Vec& x, const Vec& xstar, const Vec& y, const Vec& ystar,
                                bool seeded) {
        ++tally.premise_hits;
        if (seeded) ++tally.seeded_hits;
        double ynorm = ystar.norm();
        double sum_norm = (xstar + ystar).norm();
        double arg = x.norm() + sum_norm + y.norm() + (x - y).norm() * ynorm;
        double slack1 = sum_norm - ynorm;
        double slack2 = j.eval(arg) - sum_norm;
        tally.worst_slack = std::min({tally.worst_slack, slack1, slack2});
        if (slack1 < -opts.tol || slack2 < -opts.tol) ++tally.violations;
    };

    // Random stream over pos F_A = gra A and pos F_N_C = gra N_C.
    for (long k = 0; k < total; ++k) {
        ++tally.processed;
        Vec x = a.dom_basis() * rng.vec_in_box(static_cast<int>(a.dom_basis().cols()), 3.0);
        Vec xstar = a.selection(x);
        Vec y, ystar;
        if (rng.uniform(0.0, 1.0) < 0.5) {
            y = rng.vec_in_ball(n, 1.0);
            ystar = Vec::Zero(n);
        } else {
            y = rng.unit_vec(n);
            ystar = rng.uniform(0.0, 3.0) * y;
        }
        if (alignment_premise(x, y, ystar, tol)) check_conclusion(x, xstar, y, ystar, false);
    }

    // Seeded aligned family: y on the sphere, y* = gamma y, x = c y.
    for (int dir = 0; dir < 64; ++dir) {
        double th = 2.0 * M_PI * dir / 64.0;
        Vec y = Vec::Zero(n);
        y(0) = std::cos(th);
        y(n > 1 ? 1 : 0) = n > 1 ? std::sin(th) : y(0);
        y.normalize();
        for (double cmul : {1.5, 2.0, 3.0})
            for (double gamma : {0.5, 1.0, 2.0}) {
                Vec x = cmul * y;
                // Project onto dom A (keeps the family on the graph).
                x = a.dom_basis() * (a.dom_basis().transpose() * x);
                if ((x - y).norm() < 1e-9) continue;
                Vec ystar = gamma * y;
                ++tally.processed;
                if (alignment_premise(x, y, ystar, tol))
                    check_conclusion(x, a.selection(x), y, ystar, true);
            }
    }

    // The x = 0 slice with y* != 0 must produce no premise hits.
    long zero_slice_hits = 0;
    for (int k = 0; k < 2000; ++k) {
        Vec y = rng.unit_vec(n);
        Vec ystar = rng.uniform(1e-3, 3.0) * y;
        if (alignment_premise(Vec::Zero(n), y, ystar, 1e-6)) ++zero_slice_hits;
    }

    v.value("pairs_processed", ExtReal(double(tally.processed)));
    v.value("premise_hits", ExtReal(double(tally.premise_hits)));
    v.value("seeded_premise_hits", ExtReal(double(tally.seeded_hits)));
    v.value("conclusion_violations", ExtReal(double(tally.violations)));
    v.value("worst_conclusion_slack", ExtReal(tally.worst_slack));
    v.value("zero_x_slice_premise_hits", ExtReal(double(zero_slice_hits)));
    v.margin = tally.worst_slack;
    v.pass = tally.violations == 0 && tally.seeded_hits >= 100 && tally.premise_hits > 0 &&
             zero_slice_hits == 0;
    return v;
}

CounterexampleVerdict implication52_check(int n, const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "ex52-implication";
    v.name = "alignment implication for pos F_N_[0,e1] and the truncated adjoint selection";
    v.slack = opts.slack();
    require_hypothesis(v, "n >= 2", n >= 2);

    auto ts = TruncatedShift::build(n);
    const Mat& s = ts.s();
    Vec e1 = Vec::Unit(n, 0);
    ConvexSet c = ConvexSet::segment(Vec::Zero(n), e1);
    JFunction j{0.5};

    Rng rng(opts.seed);
    const long total = opts.samples > 0 ? opts.samples : 100000;
    const double tol = 1e-9;
    ImplicationTally tally;

    auto check_conclusion = [&](const Vec& x, const Vec& xstar, const Vec& y, const Vec& ystar,
                                bool seeded) {
        ++tally.premise_hits;
        if (seeded) ++tally.seeded_hits;
        double half_y = 0.5 * y.norm();
        double arg = x.norm() + (xstar + ystar).norm() + y.norm() + (x - y).norm() * ystar.norm();
        double slack1 = half_y - ystar.norm();
        double slack2 = j.eval(arg) - half_y;
        tally.worst_slack = std::min({tally.worst_slack, slack1, slack2});
        if (slack1 < -opts.tol || slack2 < -opts.tol) ++tally.violations;
    };

    // Random stream: (x, x*) from gra N_C, (y, Sy) from the selection graph.
    auto nc_points = sample_normal_cone_graph(c, static_cast<int>(total), 2.0, rng);
    for (long k = 0; k < total; ++k) {
        ++tally.processed;
        const auto& [x, xstar] = nc_points[static_cast<size_t>(k)];
        Vec y = rng.vec_in_box(n, 2.0);
        Vec ystar = s * y;
        if (alignment_premise(x, y, ystar, tol)) check_conclusion(x, xstar, y, ystar, false);
    }

    // Seeded family from the proof's conclusion: y = beta e1, y* = (beta/2) e1,
    // x = t e1 with beta < t <= 1.
    for (int i = 0; i < 150; ++i) {
        double beta = 0.025 + 0.006 * i;
        if (beta >= 0.95) break;
        double t = 0.5 * (beta + 1.0);
        Vec y = beta * e1;
        Vec ystar = s * y;
        Vec x = t * e1;
        for (const Vec& xstar : {Vec(Vec::Zero(n)), Vec(0.3 * Vec::Unit(n, n - 1))}) {
            ++tally.processed;
            if (alignment_premise(x, y, ystar, tol)) check_conclusion(x, xstar, y, ystar, true);
        }
    }

    // Off-axis premise emptiness at n = 3: exhaustive grid scan.
    long off_axis_hits = 0;
    if (n >= 3) {
        auto ts3 = TruncatedShift::build(3);
        Vec e13 = Vec::Unit(3, 0);
        const int g = 21;
        for (int iy = 0; iy < g; ++iy)
            for (int jy = 0; jy < g; ++jy)
                for (int ky = 0; ky < g; ++ky) {
                    Vec y(3);
                    y << -2.0 + 4.0 * iy / (g - 1), -2.0 + 4.0 * jy / (g - 1),
                        -2.0 + 4.0 * ky / (g - 1);
                    if (std::max(std::abs(y(1)), std::abs(y(2))) <= 0.05) continue;
                    Vec ystar = ts3.s() * y;
                    for (int it = 0; it <= 20; ++it) {
                        Vec x = (it / 20.0) * e13;
                        if (alignment_premise(x, y, ystar, 1e-6)) ++off_axis_hits;
                    }
                }
    }

    v.value("pairs_processed", ExtReal(double(tally.processed)));
    v.value("premise_hits", ExtReal(double(tally.premise_hits)));
    v.value("seeded_premise_hits", ExtReal(double(tally.seeded_hits)));
    v.value("conclusion_violations", ExtReal(double(tally.violations)));
    v.value("worst_conclusion_slack", ExtReal(tally.worst_slack));
    v.value("off_axis_premise_hits_n3", ExtReal(double(off_axis_hits)));
    v.margin = tally.worst_slack;
    v.pass = tally.violations == 0 && tally.seeded_hits >= 100 && off_axis_hits == 0;
    return v;
}

// ---------------------------------------------------------------------------
// Example 5.2
// ---------------------------------------------------------------------------

CounterexampleVerdict example52_gap(int n, const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "ex52-gap";
    v.name = "1/2 vs 1/8 gap for the truncated adjoint selection and C = [0, e1]";
    v.slack = opts.slack();
    require_hypothesis(v, "n >= 2", n >= 2);

    auto ts = TruncatedShift::build(n);
    LinearRelation srel = ts.relation_s();
    auto cls = srel.classify();
    require_hypothesis(v, "selection S maximally monotone", cls.monotone && cls.maximal);
    require_hypothesis(v, "selection S not skew", !cls.skew);

    Vec e1 = Vec::Unit(n, 0);
    Vec zero = Vec::Zero(n);
    Vec se1 = ts.s() * e1;  // = e1 / 2
    ConvexSet c = ConvexSet::segment(zero, e1);

    BivariateFunction fadj = BivariateFunction::fitz_linear(srel);
    BivariateFunction gadj = BivariateFunction::graph_indicator_plus_pairing(srel);
    BivariateFunction fnc = BivariateFunction::fitz_normal_cone(c);

    // LHS(x*) = F*_{A*}(x*, 0) + F*_{N_C}(A*e1 - x*, 0) by the closed forms:
    // the graph indicator collapses to iota_{0}(x*), the normal-cone side to
    // sigma_C(A*e1 - x*).
    ExtReal lhs_zero = flipped_conjugate(fadj, zero, zero, opts.grid_1d).value +
                       flipped_conjugate(fnc, se1 - zero, zero, opts.grid_1d).value;
    v.value("lhs_at_xstar_zero", lhs_zero);

    ExtReal lhs_e2 = ExtReal::pos_inf();
    if (n >= 2) {
        Vec e2 = Vec::Unit(n, 1);
        lhs_e2 = flipped_conjugate(fadj, e2, zero, opts.grid_1d).value +
                 flipped_conjugate(fnc, se1 - e2, zero, opts.grid_1d).value;
    }
    v.value("lhs_at_xstar_e2", lhs_e2);

    // RHS route 1: the analytic inner reduction over the segment parameter,
    // sup over t in [0,1] of t<e1, A*e1> - t^2 <e1, A*e1>.
    const int tgrid = 10001;
    double rhs_route1 = -std::numeric_limits<double>::infinity();
    double ip = e1.dot(se1);
    for (int i = 0; i < tgrid; ++i) {
        double t = double(i) / (tgrid - 1);
        rhs_route1 = std::max(rhs_route1, t * ip - t * t * ip);
    }
    v.value("rhs_inner_reduction", ExtReal(rhs_route1));

    // RHS route 2: brute-force flipped conjugation of the partial
    // inf-convolution over a sampled grid restricted to x = t e1.
    double rhs_route2;
    {
        BivariateFunction conv = BivariateFunction::partial_inf_conv_fn(gadj, fnc, opts.grid_1d);
        FlippedConjugateOptions gopt;
        gopt.backend = ConjugateBackend::Grid;
        gopt.escalate = false;
        const int tpts = 2001;
        for (int i = 0; i < tpts; ++i) {
            double t = double(i) / (tpts - 1);
            Vec x = t * e1;
            gopt.extra_anchors.emplace_back(x, Vec(ts.s() * x));
            gopt.extra_anchors.emplace_back(x, Vec((0.25 + 0.5 * t) * e1));
        }
        ExtReal r2 = flipped_conjugate(conv, se1, zero, opts.grid_1d, gopt).value;
        require_hypothesis(v, "brute-force conjugate finite", r2.is_finite());
        rhs_route2 = r2.finite();
    }
    v.value("rhs_brute_force", ExtReal(rhs_route2));

    require_hypothesis(v, "LHS finite at x* = 0", lhs_zero.is_finite());
    require_hypothesis(v, "LHS infinite off x* = 0", lhs_e2.is_pos_inf());
    v.margin = lhs_zero.finite() - rhs_route1;
    v.value("margin", ExtReal(v.margin));
    double route_gap = std::abs(rhs_route1 - rhs_route2);
    v.value("rhs_route_gap", ExtReal(route_gap));

    v.pass = std::abs(lhs_zero.finite() - 0.5) <= 1e-12 &&
             std::abs(rhs_route1 - 0.125) <= 1e-6 && route_gap <= 1e-6 &&
             std::abs(v.margin - 0.375) <= 1e-6;
    return v;
}

CounterexampleVerdict example52_maximality(int n, const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "ex52-maximality";
    v.name = "resolvent surjectivity of S + N_[0,e1]";
    v.slack = opts.slack();
    require_hypothesis(v, "n >= 2", n >= 2);

    auto ts = TruncatedShift::build(n);
    LinearRelation srel = ts.relation_s();
    Vec e1 = Vec::Unit(n, 0);
    ConvexSet c = ConvexSet::segment(Vec::Zero(n), e1);

    Rng rng(opts.seed);
    const long samples = opts.samples > 0 ? opts.samples : 1000;
    long solved = 0;
    double worst_residual = 0.0;
    for (long k = 0; k < samples; ++k) {
        Vec z = rng.vec_in_ball(n, 10.0);
        auto x = resolvent_solve(srel, c, z, opts.tol);
        if (!x) continue;
        ++solved;
        Vec r = z - *x - ts.s() * (*x);
        worst_residual = std::max(worst_residual, c.normal_cone(*x, 1e-9).distance(r));
    }
    v.value("samples", ExtReal(double(samples)));
    v.value("solved", ExtReal(double(solved)));
    v.value("worst_residual", ExtReal(worst_residual));

    // Hand-solvable anchors.
    auto expect = [&](const Vec& z, double t_expected) {
        auto x = resolvent_solve(srel, c, z, opts.tol);
        return x && (*x - t_expected * e1).norm() <= 1e-9;
    };
    bool anchors_ok = expect(e1, 2.0 / 3.0) && expect(-e1, 0.0) && expect(Vec::Zero(n), 0.0);
    v.value("anchor_solutions_ok", ExtReal(anchors_ok ? 1.0 : 0.0));

    // Pairwise monotonicity of the sampled sum graph.
    auto graph = sample_normal_cone_graph(c, 60, 2.0, rng);
    double worst_pair = 0.0;
    for (auto& [x, nu] : graph) nu += ts.s() * x;
    for (size_t i = 0; i < graph.size(); ++i)
        for (size_t j2 = i + 1; j2 < graph.size(); ++j2)
            worst_pair = std::min(worst_pair, (graph[i].first - graph[j2].first)
                                                  .dot(graph[i].second - graph[j2].second));
    v.value("sum_graph_worst_pair", ExtReal(worst_pair));

    v.margin = opts.tol - worst_residual;
    v.pass = solved == samples && worst_residual <= opts.tol && anchors_ok &&
             worst_pair >= -1e-12;
    return v;
}

// ---------------------------------------------------------------------------
// Fact-level suites
// ---------------------------------------------------------------------------

CounterexampleVerdict fact41_suite(const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "fact41";
    v.name = "sampled Fitzpatrick function of N_[-1,1] against iota (+) sigma";
    v.slack = opts.slack();

    ConvexSet c = ConvexSet::interval(-1.0, 1.0);
    const double cap = 1e6;
    const double ray_scale = 1e9;

    auto sup_error = [&](int interior, int rays) {
        auto graph = interval_normal_cone_graph(-1.0, 1.0, interior, rays, ray_scale);
        BivariateFunction fs = BivariateFunction::fitz_from_sample(graph);
        Rng rng(opts.seed);
        double worst = 0.0;
        long quers = opts.samples > 0 ? opts.samples : 1000;
        for (long k = 0; k < quers; ++k) {
            Vec x(1), xstar(1);
            do {
                x(0) = rng.uniform(-2.0, 2.0);
            } while (std::abs(std::abs(x(0)) - 1.0) < 2e-3);  // capped-comparison sliver
            xstar(0) = rng.uniform(-2.0, 2.0);
            double sampled = std::min(fs.eval(x, xstar).raw(), cap);
            ExtReal truth = (c.contains(x, 0.0) ? ExtReal(0.0) : ExtReal::pos_inf()) +
                            c.support(xstar);
            double capped_truth = std::min(truth.raw(), cap);
            worst = std::max(worst, std::abs(sampled - capped_truth));
        }
        return worst;
    };

    double err1 = sup_error(5000, 2500);
    double err2 = sup_error(10000, 2500);
    v.value("sup_error_base_density", ExtReal(err1));
    v.value("sup_error_double_density", ExtReal(err2));
    v.value("halving_ratio", ExtReal(err1 > 0 ? err2 / err1 : 0.0));
    v.margin = 1e-2 - err1;
    v.pass = err1 <= 1e-2 && err2 <= 0.6 * err1 + 1e-12;
    return v;
}

CounterexampleVerdict fact42_suite(const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "fact42";
    v.name = "flipped conjugate of the rotation Fitzpatrick function";
    v.slack = opts.slack();

    LinearRelation rot = rotation_relation();
    BivariateFunction fa = BivariateFunction::fitz_linear(rot);
    const GridSpec grid = opts.grid_2d;
    const double h = grid.spacing();

    FlippedConjugateOptions gopt;
    gopt.backend = ConjugateBackend::Grid;

    // On-graph queries: the grid conjugate must reproduce the pairing.
    Rng rng(opts.seed);
    double worst_on = 0.0;
    const int on_count = 100;
    for (int k = 0; k < on_count; ++k) {
        Vec x = rng.vec_in_ball(2, 2.0);
        Vec xstar = rot.selection(x);
        gopt.escalate = false;
        ExtReal val = flipped_conjugate(fa, xstar, x, grid, gopt).value;
        worst_on = std::max(worst_on, std::abs(val.finite() - x.dot(xstar)));
    }
    v.value("on_graph_queries", ExtReal(double(on_count)));
    v.value("on_graph_worst_error", ExtReal(worst_on));

    // Off-graph queries: escalation from box radius 1e3 must flag +inf and
    // push the sup past 1e6.
    double min_final_sup = std::numeric_limits<double>::infinity();
    long escalated = 0;
    const int off_count = 20;
    GridSpec big{1e3, grid.points_per_axis};
    for (int k = 0; k < off_count; ++k) {
        Vec x = rng.vec_in_ball(2, 2.0);
        Vec w = 2.0 * rng.unit_vec(2);
        Vec xstar = rot.selection(x) + w;
        gopt.escalate = true;
        auto val = flipped_conjugate(fa, xstar, x, big, gopt);
        if (val.value.is_pos_inf()) {
            ++escalated;
            min_final_sup = std::min(min_final_sup, val.escalation.back().second);
        }
    }
    v.value("off_graph_queries", ExtReal(double(off_count)));
    v.value("off_graph_escalated", ExtReal(double(escalated)));
    v.value("off_graph_min_final_sup", ExtReal(min_final_sup));

    v.margin = 2.0 * h - worst_on;
    v.pass = worst_on <= 2.0 * h && escalated == off_count && min_final_sup >= 1e6;
    return v;
}

CounterexampleVerdict fact51_suite(const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "fact51";
    v.name = "truncated shift identity sweep";
    v.slack = opts.slack();

    const std::vector<int> all_n = {2, 4, 8, 16, 32, 64, 128};
    const std::vector<int> adjoint_n = {2, 4, 8, 16};
    Rng rng(opts.seed);
    const long per_n = opts.samples > 0 ? opts.samples : 1000;

    double worst_pairing_rel = 0.0, worst_skew = 0.0, worst_structure = 0.0;
    std::ostringstream csv;
    csv << "n,max_abs_error\n";
    for (int n : all_n) {
        auto ts = TruncatedShift::build(n);
        Vec ones = Vec::Ones(n);
        double sweep_err = 0.0;
        for (long k = 0; k < per_n; ++k) {
            Vec x = rng.vec_in_box(n, 1.0);
            auto [lhs, rhs] = ts.pairing_identity(x);
            double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
            worst_pairing_rel = std::max(worst_pairing_rel, rel);
            sweep_err = std::max(sweep_err, std::abs(lhs - rhs));

            Vec y = x.array() - x.mean();  // exact-mean projection onto sum = 0
            double ny = y.norm();
            if (ny > 1e-12) {
                y /= ny;
                worst_skew = std::max(worst_skew, std::abs((ts.t() * y).dot(y)));
            }
        }
        csv << n << "," << format_double(sweep_err) << "\n";
        worst_structure =
            std::max(worst_structure, (ts.t() + ts.s() - ones * ones.transpose()).norm());

        // Strict positivity off the hyperplane.
        Vec off = rng.vec_in_box(n, 1.0);
        off(0) += 2.0 - off.sum();  // force sum = 2
        if ((ts.s() * off).dot(off) <= 0.0) worst_skew = std::numeric_limits<double>::infinity();
    }

    double worst_adjoint = 0.0;
    bool selection_ok = true;
    for (int n : adjoint_n) {
        auto ts = TruncatedShift::build(n);
        auto agree = ts.adjoint_agreement();
        worst_adjoint = std::max(worst_adjoint, agree.subspace_distance);
        selection_ok = selection_ok && agree.selection_member && agree.adjoint_dim == n + 1;
    }

    auto ts8 = TruncatedShift::build(8);
    auto cls_s = ts8.relation_s().classify();
    auto cls_t = ts8.relation_t().classify();

    v.value("worst_pairing_relative_error", ExtReal(worst_pairing_rel));
    v.value("worst_skew_value", ExtReal(worst_skew));
    v.value("worst_structure_error", ExtReal(worst_structure));
    v.value("worst_adjoint_distance", ExtReal(worst_adjoint));
    v.value("classify_S_monotone_maximal",
            ExtReal(cls_s.monotone && cls_s.maximal && !cls_s.skew ? 1.0 : 0.0));
    v.value("classify_T_skew_nonmaximal",
            ExtReal(cls_t.monotone && cls_t.skew && !cls_t.maximal ? 1.0 : 0.0));
    v.csv["fact51_sweep.csv"] = csv.str();

    v.margin = 1e-12 - std::max(worst_pairing_rel, worst_skew);
    v.pass = worst_pairing_rel <= 1e-12 && worst_skew <= 1e-12 && worst_structure == 0.0 &&
             worst_adjoint <= 1e-10 && selection_ok && cls_s.monotone && cls_s.maximal &&
             !cls_s.skew && cls_t.monotone && cls_t.skew && !cls_t.maximal;
    return v;
}

CounterexampleVerdict fact33_suite(const LinearRelation& a, const ConvexSet& c,
                                   const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "fact33";
    v.name = "partial inf-convolution conjugate identity";
    v.slack = opts.slack();

    auto cls = a.classify();
    require_hypothesis(v, "A maximally monotone", cls.monotone && cls.maximal);

    BivariateFunction f1 = cls.skew ? BivariateFunction::graph_indicator_plus_pairing(a)
                                    : BivariateFunction::fitz_linear(a);
    BivariateFunction f2 = BivariateFunction::fitz_normal_cone(c);

    const int n = a.ambient_dim();
    GridSpec outer{opts.grid_2d.box_radius, std::min(opts.grid_2d.points_per_axis, 33)};
    GridSpec inner = outer;

    Rng rng(opts.seed);
    double worst_gap = 0.0, tolerance = 0.0;
    int checked = 0;
    auto xs = dom_cap_c_points(a, c, rng, 3);
    for (const auto& x : xs) {
        Vec ax = a.selection(x);
        for (const Vec& xstar : {Vec(ax), Vec(ax + 0.3 * Vec::Unit(n, 0)),
                                 Vec(ax - 0.2 * Vec::Unit(n, n - 1))}) {
            auto rep = simons_zalinescu_crosscheck(f1, f2, xstar, x, outer, inner);
            tolerance = rep.tolerance;
            worst_gap = std::max(worst_gap, rep.gap);
            ++checked;
            if (checked >= 9) break;
        }
        if (checked >= 9) break;
    }
    require_hypothesis(v, "nine query points evaluated", checked >= 9);

    v.value("queries", ExtReal(double(checked)));
    v.value("worst_gap", ExtReal(worst_gap));
    v.value("tolerance_2h", ExtReal(tolerance));
    v.margin = tolerance - worst_gap;
    v.pass = worst_gap <= tolerance;
    return v;
}

CounterexampleVerdict probe_probcon(const BivariateFunction& f1, const BivariateFunction& f2,
                                    const Vec& z, const Vec& zstar, const SuiteOptions& opts) {
    CounterexampleVerdict v;
    v.suite = "probe-probcon";
    v.name = "report-only probe of the fixed-argument conjugate inequality";
    v.slack = opts.slack();

    const int n = f1.ambient_dim();
    GridSpec grid{opts.grid_2d.box_radius, std::min(opts.grid_2d.points_per_axis, 33)};
    BivariateFunction conv = BivariateFunction::partial_inf_conv_fn(f1, f2, grid);
    FlippedConjugateOptions gopt;
    gopt.backend = ConjugateBackend::Grid;
    gopt.escalate = false;
    ExtReal rhs = flipped_conjugate(conv, zstar, z, grid, gopt).value;
    v.value("conv_conjugate_at_zstar_z", rhs);

    // Scan v* for F1*(v*, z) + F2*(z* - v*, z) <= rhs.
    ExtReal best = ExtReal::pos_inf();
    Vec best_v = Vec::Zero(n);
    auto nodes_count = n == 1 ? grid.points_per_axis : 17;
    for (int i = 0; i < nodes_count; ++i) {
        for (int j2 = 0; j2 < (n == 1 ? 1 : nodes_count); ++j2) {
            Vec vstar = Vec::Zero(n);
            vstar(0) = -grid.box_radius + 2.0 * grid.box_radius * i / (nodes_count - 1);
            if (n > 1) vstar(1) = -grid.box_radius + 2.0 * grid.box_radius * j2 / (nodes_count - 1);
            ExtReal lhs = flipped_conjugate(f1, vstar, z, grid).value +
                          flipped_conjugate(f2, zstar - vstar, z, grid).value;
            if (lhs < best) {
                best = lhs;
                best_v = vstar;
            }
        }
    }
    v.value("best_split_value", best);
    bool found = best <= rhs + ExtReal(opts.slack());
    v.value("splitting_vstar_found", ExtReal(found ? 1.0 : 0.0));
    std::ostringstream note;
    note << "probe reports values only; no interpretation is attached";
    v.note(note.str());
    v.margin = 0.0;
    v.pass = true;  // report-only mode
    return v;
}

}  // namespace bcmono
