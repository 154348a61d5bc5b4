// Closed convex sets with the three queries the rest of the library leans
// on: membership (indicator), support function, and normal cone.
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "bcmono/extreal.hpp"
#include "bcmono/numeric.hpp"
#include "bcmono/types.hpp"

namespace bcmono {

// Normal cone at a point: Empty off the set, otherwise a finitely generated
// cone span(lineality) + cone(generators).  Generators are unit vectors.
struct NormalConeResult {
    bool empty = true;
    std::vector<Vec> generators;
    Mat lineality;  // orthonormal columns; 0 columns for the pointed part

    bool is_zero_cone() const { return !empty && generators.empty() && lineality.cols() == 0; }
    // Distance from v to the cone (0 when empty is false and v lies in it).
    double distance(const Vec& v) const;
    // Whether v belongs to the cone within tol.
    bool contains(const Vec& v, double tol) const { return !empty && distance(v) <= tol; }
};

class ConvexSet {
public:
    struct Ball {
        Vec center;
        double radius;
    };
    struct Segment {
        Vec a, b;
    };
    struct Box {
        Vec lower, upper;  // entries may be +-inf
    };
    struct Subspace {
        Mat basis;  // orthonormal columns
    };
    struct Singleton {
        Vec point;
    };
    struct Polytope {
        std::vector<Vec> vertices;
    };

    static ConvexSet ball(Vec center, double radius);
    static ConvexSet segment(Vec a, Vec b);
    static ConvexSet box(Vec lower, Vec upper);
    static ConvexSet subspace(const Mat& basis);
    static ConvexSet whole_space(int dim);
    static ConvexSet singleton(Vec point);
    static ConvexSet polytope(std::vector<Vec> vertices);
    // Closed interval [lo, hi] in R^1.
    static ConvexSet interval(double lo, double hi) { return box(Vec::Constant(1, lo), Vec::Constant(1, hi)); }

    int dim() const { return dim_; }
    bool bounded() const { return bounded_; }

    // True iff distance(x, C) <= tol.
    bool contains(const Vec& x, double tol) const;

    // sigma_C(xstar) = sup over C of <c, xstar>; +inf on unbounded escape
    // directions.
    ExtReal support(const Vec& xstar) const;

    // Normal cone N_C(x); Empty iff x is not in C within tol.
    NormalConeResult normal_cone(const Vec& x, double tol) const;

    // Euclidean projection onto the set.
    Vec project(const Vec& x) const;

    double distance(const Vec& x) const { return (x - project(x)).norm(); }

    // Whether the set is exactly {0} (used as a suite hypothesis gate).
    bool is_zero_singleton(double tol = 1e-12) const;

    using Variant = std::variant<Ball, Segment, Box, Subspace, Singleton, Polytope>;
    const Variant& variant() const { return variant_; }

    // Extreme points / rays / lineality / radius decomposition used by the
    // transversality predicate.  pts columns are points of the set.
    struct Decomposition {
        Mat points;
        Mat rays;
        Mat lineality;
        double radius = 0.0;
    };
    Decomposition decompose() const;

private:
    ConvexSet(Variant v, int dim, bool bounded)
        : variant_(std::move(v)), dim_(dim), bounded_(bounded) {}
    Variant variant_;
    int dim_;
    bool bounded_;
};

// True iff the union over lambda > 0 of lambda * (d1 - d2) is a linear
// subspace of R^n.  Decided through the generator decomposition: when a
// ball term is present the test is "0 lies in the interior of the
// difference"; otherwise the generated cone must be symmetric.
bool minkowski_span_closed_subspace(const ConvexSet& d1, const ConvexSet& d2, double tol = 1e-9);

}  // namespace bcmono
