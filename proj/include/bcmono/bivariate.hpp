// Bivariate functions F(x, x*) on R^n x R^n: Fitzpatrick functions from
// graphs and closed forms, flipped conjugation, partial inf-convolution
// in the second slot, pos-set extraction and BC verification.
//
// Argument-order convention: F lives on X x X*; its conjugate is always
// queried as F*(x*, x) through the named flipped operation, matching the
// BC inequality F*(x*, x) >= F(x, x*) >= <x, x*>.  No silent transposition
// happens anywhere else.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bcmono/convex_fn.hpp"
#include "bcmono/relations.hpp"
#include "bcmono/sets.hpp"

namespace bcmono {

// The set where F equals the duality pairing, collected on a grid.
struct PosSet {
    std::vector<std::pair<Vec, Vec>> points;
    double tol = 0.0;
};

// Increasing map [0, inf) -> [0, inf) with a guaranteed linear lower bound
// j(gamma) >= lower_slope * gamma.
struct JFunction {
    double lower_slope = 1.0;
    double eval(double gamma) const { return lower_slope * gamma; }
    bool well_formed() const { return lower_slope > 0.0; }
};

class BivariateFunction {
public:
    struct FitzFromSample {  // pointwise sup of affine minorants from graph samples
        std::vector<std::pair<Vec, Vec>> sample;
    };
    struct FitzNormalCone {  // iota_C(x) + sigma_C(x*)
        ConvexSet set;
    };
    struct FitzLinearClosed {  // exact Fitzpatrick function of a closed monotone linear relation
        LinearRelation rel;
        // Cached eigen-decomposition of the pairing form restricted to the
        // graph; filled by the factory, consumed on every evaluation.
        Mat top, bot, eig_vectors;
        Vec eig_values;
        double form_scale = 1.0;
    };
    struct GraphIndicatorPlusPairing {  // iota_{gra A}(x, x*) + <x, x*>
        LinearRelation rel;
        double member_tol = 1e-9;
    };
    struct PartialInfConv {  // (F1 box_2 F2)(x, x*)
        std::shared_ptr<const BivariateFunction> f1, f2;
        GridSpec inner_grid;
    };
    struct ExplicitSupport {  // declared finite support, +inf elsewhere
        std::vector<std::tuple<Vec, Vec, double>> points;
        double match_tol = 1e-9;
    };

    static BivariateFunction fitz_from_sample(std::vector<std::pair<Vec, Vec>> sample);
    static BivariateFunction fitz_normal_cone(ConvexSet c);
    static BivariateFunction fitz_linear(LinearRelation rel);
    static BivariateFunction graph_indicator_plus_pairing(LinearRelation rel,
                                                          double member_tol = 1e-9);
    static BivariateFunction partial_inf_conv_fn(BivariateFunction f1, BivariateFunction f2,
                                                 GridSpec inner_grid);
    static BivariateFunction explicit_support(std::vector<std::tuple<Vec, Vec, double>> points,
                                              double match_tol = 1e-9);

    int ambient_dim() const { return n_; }

    ExtReal eval(const Vec& x, const Vec& xstar) const;

    // The projection of dom F onto the primal slot, as a ConvexSet (used by
    // the transversality predicate).
    ConvexSet domain_projection() const;

    // Sample points (y, y*) over which grid conjugation takes its sup:
    // graph/coefficient grids for relation-backed variants, set-by-dual
    // tensor grids for the normal-cone variant, the raw sample otherwise.
    // axis_cap == 0 keeps the variant default per-axis budget.
    std::vector<std::pair<Vec, Vec>> conjugation_anchors(const GridSpec& spec,
                                                         int axis_cap = 0) const;

    // Dimension of the subspace on which a relation-backed variant is
    // finite (the anchor sampling space); 2n for the other variants.
    int finiteness_dim() const;

    using Variant = std::variant<FitzFromSample, FitzNormalCone, FitzLinearClosed,
                                 GraphIndicatorPlusPairing, PartialInfConv, ExplicitSupport>;
    const Variant& variant() const { return *variant_; }

private:
    BivariateFunction(Variant v, int n);
    std::shared_ptr<const Variant> variant_;
    int n_;
};

enum class ConjugateBackend { Auto, ClosedForm, Grid };

struct ConjugateValue {
    ExtReal value = ExtReal::pos_inf();
    std::string backend;  // "closed_form" | "grid" | "grid_escalated"
    // Escalation trace (box radius, sup) when the grid backend probed for
    // unbounded growth.
    std::vector<std::pair<double, double>> escalation;
};

struct FlippedConjugateOptions {
    ConjugateBackend backend = ConjugateBackend::Auto;
    // Escalate the box radius (x32 twice) and report +inf when the sup keeps
    // growing linearly with the radius.
    bool escalate = true;
    // Per-axis anchor budget override (0 = variant default).
    int axis_cap = 0;
    // Extra sup candidates appended to the variant anchors.
    std::vector<std::pair<Vec, Vec>> extra_anchors;
};

// Per-axis node count a coefficient grid of `dims` dimensions can afford
// within `budget` total points (halving from `requested`, floor 3).
int anchor_axis_count(int dims, int requested, long budget = 200000);

// F*(x*, x) = sup_{(y, y*)} <y, x*> + <y*, x> - F(y, y*).
ConjugateValue flipped_conjugate(const BivariateFunction& f, const Vec& xstar, const Vec& x,
                                 const GridSpec& spec, const FlippedConjugateOptions& opts = {});

struct InfConvValue {
    ExtReal value = ExtReal::pos_inf();
    std::optional<Vec> argmin;  // minimizing v* when finite
    std::string backend;        // "exact_reduction" | "grid"
};

// (F1 box_2 F2)(x, x*) = inf over v* of F1(x, x* - v*) + F2(x, v*).
// Uses the exact reduction <x, Ax> + sigma_C(x* - Ax) when F1 is a graph
// indicator of a single-valued relation and F2 a normal-cone function;
// otherwise minimizes over the inner grid with one Richardson refinement.
InfConvValue partial_inf_conv(const BivariateFunction& f1, const BivariateFunction& f2,
                              const Vec& x, const Vec& xstar, const GridSpec& inner_grid);

struct BcRecord {
    Vec x, xstar;
    ExtReal f_value;
    ExtReal conj_value;
    double pairing = 0.0;
    std::string backend;
};

struct BcReport {
    bool pass = true;
    double worst_conjugate_margin = std::numeric_limits<double>::infinity();  // min F* - F
    double worst_pairing_margin = std::numeric_limits<double>::infinity();    // min F - <x,x*>
    double worst_convexity_margin = std::numeric_limits<double>::infinity();  // midpoint probe
    std::optional<BcRecord> violator;
    std::vector<BcRecord> records;
};

// Verifies F*(x*, x) >= F(x, x*) - tol and F(x, x*) >= <x, x*> - tol over
// the sample, plus midpoint convexity across consecutive sample pairs
// (BC-functions are convex; a graph pairing over a non-monotone relation
// passes both inequalities yet fails here).
BcReport bc_check(const BivariateFunction& f, const std::vector<std::pair<Vec, Vec>>& sample,
                  const GridSpec& primal_grid, double tol = 1e-9);

// Grid pairs within tol of F = pairing.  Grids are tensor boxes in both
// slots; ambient dimension 1 keeps this affordable.
PosSet pos_extract(const BivariateFunction& f, const GridSpec& grid, double tol);

struct CrosscheckReport {
    ExtReal lhs;  // (F1 box_2 F2)*(x*, x) by brute-force flipped conjugation
    ExtReal rhs;  // min over u* of F1*(x* - u*, x) + F2*(u*, x)
    double gap = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// The partial-inf-convolution conjugate identity, checked numerically after
// gating on the transversality predicate and on (F1 box_2 F2) > -inf.
// Throws HypothesisFailed when a gate fails.
CrosscheckReport simons_zalinescu_crosscheck(const BivariateFunction& f1,
                                             const BivariateFunction& f2, const Vec& xstar,
                                             const Vec& x, const GridSpec& outer_grid,
                                             const GridSpec& inner_grid);

struct MSetReport {
    std::vector<std::pair<Vec, Vec>> m_points;  // (x, x* + y*)
    bool monotone = false;
    double worst_pair_value = 0.0;  // most negative <dx, du> over pairs
    // Grid points monotonically related to M but off it: maximality is
    // refuted when nonempty after extension; finite grids cannot certify it.
    std::vector<std::pair<Vec, Vec>> related_outside;
};

// Builds M = {(x, x* + y*) : (x, x*) in pos F1, (x, y*) in pos F2} on the
// grid and verifies its monotonicity.  Preconditions: both factors pass
// bc_check on the grid (HypothesisFailed otherwise).
MSetReport fact34_m_set(const BivariateFunction& f1, const BivariateFunction& f2,
                        const GridSpec& grid, double tol);

}  // namespace bcmono
