// Small linear-algebra and conic-geometry kernels shared across the library:
// subspace utilities, nonnegative least squares, exact projection onto
// finitely generated convex sets, and polar cones via double description.
#pragma once

#include <optional>
#include <vector>

#include "bcmono/types.hpp"

namespace bcmono::numeric {

// Horizontal concatenation that tolerates zero-column operands.
inline Mat hcat(const Mat& a, const Mat& b) {
    Mat out(a.rows() ? a.rows() : b.rows(), a.cols() + b.cols());
    if (a.cols() > 0) out.leftCols(a.cols()) = a;
    if (b.cols() > 0) out.rightCols(b.cols()) = b;
    return out;
}

// Orthonormal basis of the column span (SVD, relative rank cut).
Mat orthonormal_basis(const Mat& a, double rel_tol = 1e-12);

// Orthonormal basis of the orthogonal complement of span(q) in R^ambient.
// q must have orthonormal columns (pass an empty 0-column matrix for the
// zero subspace).
Mat orthogonal_complement(const Mat& q, Eigen::Index ambient);

bool subspace_contains(const Mat& q, const Vec& v, double tol);

// Spectral norm of the difference of the orthogonal projectors.
double subspace_distance(const Mat& q1, const Mat& q2);

// Lawson-Hanson active-set NNLS: minimizes |A x - b| over x >= 0.
Vec nnls(const Mat& a, const Vec& b, double tol = 1e-12);

// Distance from v to cone(generators) + span(lineality).  Columns are the
// generators; either matrix may have zero columns.
double dist_to_cone(const Mat& generators, const Mat& lineality, const Vec& v);

// Exact nearest point of conv(points) + cone(rays) + span(lineality) to x,
// by enumeration of Caratheodory support sets.  Points/rays are columns.
// Intended for desk-scale generator counts.
Vec project_generated_set(const Mat& points, const Mat& rays, const Mat& lineality, const Vec& x);

struct ConeDescription {
    std::vector<Vec> generators;  // unit rays
    Mat lineality;                // orthonormal columns
};

// Generators of the polar cone {g : <d, g> <= 0 for every column d of dirs},
// computed by double description.  The output may carry redundant rays;
// every returned ray satisfies the defining inequalities.
ConeDescription polar_cone(const Mat& dirs, Eigen::Index ambient, double tol = 1e-10);

}  // namespace bcmono::numeric
