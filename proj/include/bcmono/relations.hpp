// Linear relations A: R^n =? R^n stored as orthonormal bases of their
// graphs in R^2n.  Multivalued and partial relations are first-class; the
// adjoint, monotonicity/skew/symmetry classification, maximality (graph
// dimension criterion) and single-valued application all work off the
// graph subspace directly.
#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bcmono/sets.hpp"
#include "bcmono/types.hpp"

namespace bcmono {

struct MonotonicityWitness {
    // A pair of graph points with <x - y, x* - y*> < 0, or (for a monotone
    // non-maximal relation) a monotonically related point off the graph.
    enum class Kind { MonotonicityViolation, RelatedPointOutsideGraph };
    Kind kind;
    Vec x, xstar;
    Vec y, ystar;   // second graph point; zero pair for the off-graph kind
    double value;   // violating inner product, or 0 for the off-graph kind
};

struct MonotonicityReport {
    bool monotone = false;
    bool skew = false;
    bool symmetric = false;
    bool maximal = false;
    std::optional<MonotonicityWitness> witness;
};

class LinearRelation {
public:
    // Graph {(x, Mx) : x in domain}; the default domain is all of R^n.
    static LinearRelation from_matrix(const Mat& m, const std::optional<Mat>& domain_basis = {});

    // Graph = column span of raw_columns (2n rows).
    static LinearRelation from_graph(const Mat& raw_columns);

    int ambient_dim() const { return n_; }
    int graph_dim() const { return static_cast<int>(basis_.cols()); }
    const Mat& graph_basis() const { return basis_; }
    Mat top_block() const { return basis_.topRows(n_); }
    Mat bottom_block() const { return basis_.bottomRows(n_); }
    const Mat& dom_basis() const { return dom_basis_; }
    const Mat& ran_basis() const { return ran_basis_; }

    ConvexSet domain_set() const { return ConvexSet::subspace(dom_basis_); }

    bool contains(const Vec& x, const Vec& xstar, double tol = 1e-9) const;

    // gra A* = {(x, x*) : (x*, -x) orthogonal to gra A}.
    LinearRelation adjoint() const;

    struct ApplyResult {
        enum class Kind { Empty, Point, Affine };
        Kind kind = Kind::Empty;
        Vec point;      // a particular value (least-squares selection)
        Mat lineality;  // directions of multivaluedness (orthonormal columns)
    };
    ApplyResult apply(const Vec& x, double tol = 1e-9) const;

    // Single-valued selection; throws NoSolution when x is off the domain.
    Vec selection(const Vec& x, double tol = 1e-9) const;

    bool at_most_single_valued(double tol = 1e-10) const;

    // Exact classification via eigen-analysis of the pairing form restricted
    // to the graph.  `samples` bounds the randomized search for an off-graph
    // monotonically related witness when the relation is monotone but not
    // maximal.
    MonotonicityReport classify(int samples = 64, double tol = 1e-10) const;

    // Exact test: is (x, xstar) monotonically related to the whole graph?
    bool monotonically_related(const Vec& x, const Vec& xstar, double tol = 1e-10) const;

    // Operator norm of the single-valued selection on its domain.
    double selection_norm() const;

private:
    LinearRelation(int n, Mat basis);
    int n_;
    Mat basis_;      // 2n x k, orthonormal columns
    Mat dom_basis_;  // cached projections
    Mat ran_basis_;
    // Fiber solves reuse one factorization of the top block.
    std::shared_ptr<const Eigen::CompleteOrthogonalDecomposition<Mat>> top_cod_;
    Mat fiber_lineality_;  // bottom block over ker(top), orthonormal columns
};

// Sampled variant of the monotonically-related test (spec-level signature;
// the exact subspace test above is the oracle of record for relations).
bool monotonically_related_sampled(const std::pair<Vec, Vec>& point,
                                   const std::vector<std::pair<Vec, Vec>>& graph_sample,
                                   double tol = 1e-10);

// Solves z in x + A_sel(x) + N_C(x) for x in C: the resolvent certificate
// behind maximality probes.  Exact one-dimensional parametrization for
// segments, projected fixed-point iteration otherwise.  Returns std::nullopt
// (after exhausting the budget) only when no solution emerges -- a
// maximality-violation candidate.
std::optional<Vec> resolvent_solve(const LinearRelation& a, const ConvexSet& c, const Vec& z,
                                   double tol = 1e-8, int max_iter = 200000);

}  // namespace bcmono
