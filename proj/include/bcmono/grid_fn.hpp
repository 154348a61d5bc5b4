// Sampled extended-real functions on uniform grids over [-R, R]^d, d in {1,2}.
// The numerical surrogate for functions without a usable closed form.
#pragma once

#include <iosfwd>
#include <vector>

#include "bcmono/extreal.hpp"
#include "bcmono/types.hpp"

namespace bcmono {

class GridFunction {
public:
    // values: size N^dim, row-major for dim == 2 (index = i * N + j).
    GridFunction(int dim, GridSpec spec, std::vector<ExtReal> values);

    int dim() const { return dim_; }
    const GridSpec& spec() const { return spec_; }
    double spacing() const { return spec_.spacing(); }
    const std::vector<ExtReal>& values() const { return values_; }

    ExtReal at(int i) const { return values_[static_cast<size_t>(i)]; }
    ExtReal at(int i, int j) const { return values_[static_cast<size_t>(i) * spec_.points_per_axis + j]; }
    double node(int i) const { return spec_.node(i); }

    // Multilinear interpolation among the cell corners.  Any +inf corner
    // poisons the cell; points outside the box evaluate to +inf.
    ExtReal eval(const Vec& x) const;

    // CSV layout: "dim,R,N" header line, then one "index,value" row per
    // node with "inf"/"-inf" literals for the infinities.
    void save_csv(std::ostream& os) const;
    static GridFunction load_csv(std::istream& is);

private:
    int dim_;
    GridSpec spec_;
    std::vector<ExtReal> values_;
};

namespace legendre {

// Discrete Legendre transform of the samples f_i at nodes x_i = -R + i*h:
// g_j = max_i (x_i * y_j - f_i) over the finite entries, evaluated at the
// dual nodes y_j on the same box.  Throws AllInfinite when every entry is
// +inf; -inf entries are rejected (proper functions only).
std::vector<ExtReal> transform_1d_brute(const std::vector<ExtReal>& f, double box_radius);

// Same values, bit for bit, via divide-and-conquer on the monotone argmax
// property of the conjugate point.  O(N log N) instead of O(N^2).
std::vector<ExtReal> transform_1d_fast(const std::vector<ExtReal>& f, double box_radius);

// dim == 2 brute force, row-major N*N samples.
std::vector<ExtReal> transform_2d_brute(const std::vector<ExtReal>& f, int n_per_axis,
                                        double box_radius);

}  // namespace legendre

}  // namespace bcmono
