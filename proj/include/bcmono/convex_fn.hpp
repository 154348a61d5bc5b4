// Proper convex functions on R^d as a small composable algebra: indicator
// and support atoms, linear/quadratic/norm atoms, sums, separable sums,
// translations and sampled grids.  Conjugation has two backends -- exact
// rules where they exist and the discrete Legendre transform everywhere in
// d <= 2 -- and the grid backend is the oracle of record when they disagree.
#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "bcmono/grid_fn.hpp"
#include "bcmono/sets.hpp"

namespace bcmono {

class ConvexFunction {
public:
    struct Indicator {
        ConvexSet set;
    };
    struct Support {
        ConvexSet set;
    };
    struct Linear {
        Vec a;
        double b;
    };
    struct Quadratic {  // x -> 0.5 x'Qx + a'x + b, Q symmetric PSD
        Mat q;
        Vec a;
        double b;
    };
    struct Norm {  // x -> scale * |x|_2
        double scale;
    };
    struct Sum {
        std::shared_ptr<const ConvexFunction> f, g;
    };
    struct SeparableSum {  // (x, y) -> f(x) + g(y) on the product space
        std::shared_ptr<const ConvexFunction> f, g;
    };
    struct Shifted {  // x -> f(x - translation)
        std::shared_ptr<const ConvexFunction> f;
        Vec translation;
    };
    struct Grid {
        GridFunction grid;
    };

    static ConvexFunction indicator(ConvexSet c);
    static ConvexFunction support(ConvexSet c);
    static ConvexFunction linear(Vec a, double b = 0.0);
    static ConvexFunction quadratic(Mat q, Vec a, double b = 0.0);
    static ConvexFunction norm(int dim, double scale = 1.0);
    static ConvexFunction constant(int dim, double value);
    static ConvexFunction sum(ConvexFunction f, ConvexFunction g);
    static ConvexFunction separable_sum(ConvexFunction f, ConvexFunction g);
    static ConvexFunction shifted(ConvexFunction f, Vec translation);
    static ConvexFunction from_grid(GridFunction g);

    int dim() const { return dim_; }

    ExtReal eval(const Vec& x) const;

    // Exact conjugate when a rule applies; throws NoClosedForm otherwise
    // (callers fall back to conjugate_grid).
    ConvexFunction conjugate_closed_form() const;
    std::optional<ConvexFunction> try_conjugate_closed_form() const;

    using Variant = std::variant<Indicator, Support, Linear, Quadratic, Norm, Sum, SeparableSum,
                                 Shifted, Grid>;
    const Variant& variant() const { return *variant_; }

private:
    ConvexFunction(Variant v, int dim);
    std::shared_ptr<const Variant> variant_;
    int dim_;
};

// Discrete conjugate g(y) = max over grid nodes x of <x,y> - f(x), on the
// same box in the dual variable.  d must be 1 or 2; throws AllInfinite when
// f is +inf over the whole box.  use_fast selects the divide-and-conquer
// path for d == 1 (bit-identical to brute force).
GridFunction conjugate_grid(const ConvexFunction& f, const GridSpec& spec, bool use_fast = true);

struct BiconjugateReport {
    double sup_gap = 0.0;   // sup |f** - f| over the masked region
    double spacing = 0.0;   // grid h
    int points_checked = 0;
};

// Measures sup |f** - f| over the interior finite region: nodes in the
// inner half-box whose immediate neighbours are all finite.
BiconjugateReport biconjugate_check(const ConvexFunction& f, const GridSpec& spec);

}  // namespace bcmono
