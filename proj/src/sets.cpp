#include "bcmono/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bcmono {

namespace {

bool finite_vec(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v(i))) return false;
    return true;
}

}  // namespace

double NormalConeResult::distance(const Vec& v) const {
    if (empty) return std::numeric_limits<double>::infinity();
    Mat gens(v.size(), static_cast<Eigen::Index>(generators.size()));
    for (size_t k = 0; k < generators.size(); ++k) gens.col(static_cast<Eigen::Index>(k)) = generators[k];
    return numeric::dist_to_cone(gens, lineality, v);
}

ConvexSet ConvexSet::ball(Vec center, double radius) {
    if (!(radius > 0)) throw ValidationError("Ball: radius must be > 0");
    if (!finite_vec(center)) throw ValidationError("Ball: center must be finite");
    int d = static_cast<int>(center.size());
    return ConvexSet(Ball{std::move(center), radius}, d, true);
}

ConvexSet ConvexSet::segment(Vec a, Vec b) {
    require_dim(b.size(), a.size(), "Segment");
    if (!finite_vec(a) || !finite_vec(b)) throw ValidationError("Segment: endpoints must be finite");
    int d = static_cast<int>(a.size());
    return ConvexSet(Segment{std::move(a), std::move(b)}, d, true);
}

ConvexSet ConvexSet::box(Vec lower, Vec upper) {
    require_dim(upper.size(), lower.size(), "Box");
    bool bounded = true;
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
        if (std::isnan(lower(i)) || std::isnan(upper(i))) throw ValidationError("Box: NaN bound");
        if (!(lower(i) <= upper(i))) throw ValidationError("Box: lower > upper");
        if (!std::isfinite(lower(i)) || !std::isfinite(upper(i))) bounded = false;
    }
    int d = static_cast<int>(lower.size());
    return ConvexSet(Box{std::move(lower), std::move(upper)}, d, bounded);
}

ConvexSet ConvexSet::subspace(const Mat& basis) {
    if (basis.rows() == 0) throw ValidationError("Subspace: empty ambient space");
    Mat on = numeric::orthonormal_basis(basis);
    if (on.cols() != basis.cols())
        throw RankDeficientBasis("Subspace: basis columns are linearly dependent");
    int d = static_cast<int>(basis.rows());
    return ConvexSet(Subspace{std::move(on)}, d, basis.cols() == 0);
}

ConvexSet ConvexSet::whole_space(int dim) {
    return ConvexSet(Subspace{Mat::Identity(dim, dim)}, dim, false);
}

ConvexSet ConvexSet::singleton(Vec point) {
    if (!finite_vec(point)) throw ValidationError("Singleton: point must be finite");
    int d = static_cast<int>(point.size());
    return ConvexSet(Singleton{std::move(point)}, d, true);
}

ConvexSet ConvexSet::polytope(std::vector<Vec> vertices) {
    if (vertices.empty()) throw ValidationError("Polytope: need at least one vertex");
    int d = static_cast<int>(vertices[0].size());
    for (const auto& v : vertices) {
        require_dim(v.size(), d, "Polytope vertex");
        if (!finite_vec(v)) throw ValidationError("Polytope: vertices must be finite");
    }
    return ConvexSet(Polytope{std::move(vertices)}, d, true);
}

bool ConvexSet::contains(const Vec& x, double tol) const {
    require_dim(x.size(), dim_, "ConvexSet::contains");
    return distance(x) <= tol;
}

Vec ConvexSet::project(const Vec& x) const {
    require_dim(x.size(), dim_, "ConvexSet::project");
    return std::visit(
        [&](const auto& s) -> Vec {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                Vec d = x - s.center;
                double n = d.norm();
                if (n <= s.radius) return x;
                return s.center + (s.radius / n) * d;
            } else if constexpr (std::is_same_v<T, Segment>) {
                Vec d = s.b - s.a;
                double dd = d.squaredNorm();
                if (dd == 0.0) return s.a;
                double t = std::clamp((x - s.a).dot(d) / dd, 0.0, 1.0);
                return s.a + t * d;
            } else if constexpr (std::is_same_v<T, Box>) {
                Vec p = x;
                for (Eigen::Index i = 0; i < p.size(); ++i)
                    p(i) = std::clamp(p(i), s.lower(i), s.upper(i));
                return p;
            } else if constexpr (std::is_same_v<T, Subspace>) {
                if (s.basis.cols() == 0) return Vec::Zero(x.size());
                return s.basis * (s.basis.transpose() * x);
            } else if constexpr (std::is_same_v<T, Singleton>) {
                return s.point;
            } else {
                Mat pts(dim_, static_cast<Eigen::Index>(s.vertices.size()));
                for (size_t k = 0; k < s.vertices.size(); ++k)
                    pts.col(static_cast<Eigen::Index>(k)) = s.vertices[k];
                return numeric::project_generated_set(pts, Mat(dim_, 0), Mat(dim_, 0), x);
            }
        },
        variant_);
}

ExtReal ConvexSet::support(const Vec& xstar) const {
    require_dim(xstar.size(), dim_, "ConvexSet::support");
    return std::visit(
        [&](const auto& s) -> ExtReal {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                return ExtReal(s.center.dot(xstar) + s.radius * xstar.norm());
            } else if constexpr (std::is_same_v<T, Segment>) {
                return ExtReal(std::max(s.a.dot(xstar), s.b.dot(xstar)));
            } else if constexpr (std::is_same_v<T, Box>) {
                double total = 0.0;
                for (Eigen::Index i = 0; i < xstar.size(); ++i) {
                    double t = xstar(i);
                    if (t > 0) {
                        if (!std::isfinite(s.upper(i))) return ExtReal::pos_inf();
                        total += t * s.upper(i);
                    } else if (t < 0) {
                        if (!std::isfinite(s.lower(i))) return ExtReal::pos_inf();
                        total += t * s.lower(i);
                    }
                }
                return ExtReal(total);
            } else if constexpr (std::is_same_v<T, Subspace>) {
                // 0 when xstar is orthogonal to the subspace, +inf otherwise.
                if (s.basis.cols() == 0) return ExtReal(0.0);
                double comp = (s.basis.transpose() * xstar).norm();
                if (comp > 1e-12 * std::max(1.0, xstar.norm())) return ExtReal::pos_inf();
                return ExtReal(0.0);
            } else if constexpr (std::is_same_v<T, Singleton>) {
                return ExtReal(s.point.dot(xstar));
            } else {
                double best = -std::numeric_limits<double>::infinity();
                for (const auto& v : s.vertices) best = std::max(best, v.dot(xstar));
                return ExtReal(best);
            }
        },
        variant_);
}

NormalConeResult ConvexSet::normal_cone(const Vec& x, double tol) const {
    require_dim(x.size(), dim_, "ConvexSet::normal_cone");
    NormalConeResult out;
    out.lineality = Mat(dim_, 0);
    if (!contains(x, tol)) return out;  // Empty
    out.empty = false;

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                Vec d = x - s.center;
                if (d.norm() >= s.radius - tol) out.generators.push_back(d.normalized());
                // otherwise the interior: the zero cone
            } else if constexpr (std::is_same_v<T, Segment>) {
                Vec d = s.b - s.a;
                double len = d.norm();
                if (len == 0.0) {
                    out.lineality = Mat::Identity(dim_, dim_);
                    return;
                }
                Vec dir = d / len;
                out.lineality = numeric::orthogonal_complement(dir, dim_);
                double t = (x - s.a).dot(dir) / len;
                double band = std::max(tol, 1e-12) / len;
                if (t <= band) out.generators.push_back(-dir);
                if (t >= 1.0 - band) out.generators.push_back(dir);
            } else if constexpr (std::is_same_v<T, Box>) {
                std::vector<Vec> lin_cols;
                for (Eigen::Index i = 0; i < x.size(); ++i) {
                    bool lo = std::isfinite(s.lower(i)) && x(i) <= s.lower(i) + tol;
                    bool hi = std::isfinite(s.upper(i)) && x(i) >= s.upper(i) - tol;
                    if (lo && hi) {
                        lin_cols.push_back(Vec::Unit(dim_, i));
                    } else if (lo) {
                        out.generators.push_back(-Vec::Unit(dim_, i));
                    } else if (hi) {
                        out.generators.push_back(Vec::Unit(dim_, i));
                    }
                }
                if (!lin_cols.empty()) {
                    Mat lin(dim_, static_cast<Eigen::Index>(lin_cols.size()));
                    for (size_t k = 0; k < lin_cols.size(); ++k)
                        lin.col(static_cast<Eigen::Index>(k)) = lin_cols[k];
                    out.lineality = lin;
                }
            } else if constexpr (std::is_same_v<T, Subspace>) {
                out.lineality = numeric::orthogonal_complement(s.basis, dim_);
            } else if constexpr (std::is_same_v<T, Singleton>) {
                out.lineality = Mat::Identity(dim_, dim_);
            } else {
                // Polar of the tangent cone generated by vertex differences.
                Mat dirs(dim_, static_cast<Eigen::Index>(s.vertices.size()));
                Eigen::Index w = 0;
                for (const auto& v : s.vertices) {
                    Vec d = v - x;
                    if (d.norm() > tol) dirs.col(w++) = d;
                }
                auto polar = numeric::polar_cone(dirs.leftCols(w), dim_);
                out.generators = std::move(polar.generators);
                out.lineality = std::move(polar.lineality);
            }
        },
        variant_);
    return out;
}

bool ConvexSet::is_zero_singleton(double tol) const {
    if (!bounded_) return false;
    for (int i = 0; i < dim_; ++i) {
        Vec e = Vec::Unit(dim_, i);
        if (std::abs(support(e).finite()) > tol) return false;
        if (std::abs(support(-e).finite()) > tol) return false;
    }
    return true;
}

ConvexSet::Decomposition ConvexSet::decompose() const {
    Decomposition dec;
    dec.points = Mat(dim_, 0);
    dec.rays = Mat(dim_, 0);
    dec.lineality = Mat(dim_, 0);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                dec.points = s.center;
                dec.radius = s.radius;
            } else if constexpr (std::is_same_v<T, Segment>) {
                dec.points = Mat(dim_, 2);
                dec.points.col(0) = s.a;
                dec.points.col(1) = s.b;
            } else if constexpr (std::is_same_v<T, Box>) {
                std::vector<Eigen::Index> free_lo, free_hi, both;
                std::vector<Eigen::Index> finite_coords;
                for (Eigen::Index i = 0; i < s.lower.size(); ++i) {
                    bool lo_fin = std::isfinite(s.lower(i)), hi_fin = std::isfinite(s.upper(i));
                    if (lo_fin && hi_fin)
                        finite_coords.push_back(i);
                    else if (!lo_fin && !hi_fin)
                        both.push_back(i);
                    else if (!hi_fin)
                        free_hi.push_back(i);
                    else
                        free_lo.push_back(i);
                }
                if (finite_coords.size() > 20)
                    throw ValidationError("Box decomposition: too many finite coordinates");
                Eigen::Index npts = Eigen::Index(1) << finite_coords.size();
                dec.points = Mat::Zero(dim_, npts);
                for (Eigen::Index m = 0; m < npts; ++m) {
                    Vec v = Vec::Zero(dim_);
                    for (size_t k = 0; k < finite_coords.size(); ++k) {
                        Eigen::Index i = finite_coords[k];
                        v(i) = (m >> k) & 1 ? s.upper(i) : s.lower(i);
                    }
                    for (Eigen::Index i : free_hi) v(i) = s.lower(i);  // anchored at the finite end
                    for (Eigen::Index i : free_lo) v(i) = s.upper(i);
                    dec.points.col(m) = v;
                }
                dec.rays = Mat(dim_, static_cast<Eigen::Index>(free_hi.size() + free_lo.size()));
                Eigen::Index w = 0;
                for (Eigen::Index i : free_hi) dec.rays.col(w++) = Vec::Unit(dim_, i);
                for (Eigen::Index i : free_lo) dec.rays.col(w++) = -Vec::Unit(dim_, i);
                if (!both.empty()) {
                    dec.lineality = Mat(dim_, static_cast<Eigen::Index>(both.size()));
                    for (size_t k = 0; k < both.size(); ++k)
                        dec.lineality.col(static_cast<Eigen::Index>(k)) = Vec::Unit(dim_, both[k]);
                }
            } else if constexpr (std::is_same_v<T, Subspace>) {
                dec.points = Vec::Zero(dim_);
                dec.lineality = s.basis;
            } else if constexpr (std::is_same_v<T, Singleton>) {
                dec.points = s.point;
            } else {
                dec.points = Mat(dim_, static_cast<Eigen::Index>(s.vertices.size()));
                for (size_t k = 0; k < s.vertices.size(); ++k)
                    dec.points.col(static_cast<Eigen::Index>(k)) = s.vertices[k];
            }
        },
        variant_);
    return dec;
}

bool minkowski_span_closed_subspace(const ConvexSet& d1, const ConvexSet& d2, double tol) {
    require_dim(d2.dim(), d1.dim(), "minkowski_span_closed_subspace");
    const Eigen::Index n = d1.dim();
    auto a = d1.decompose();
    auto b = d2.decompose();

    // Difference body parts: points are pairwise differences, rays and
    // lineality merge (rays of -d2 flip), ball radii add.
    Mat points(n, a.points.cols() * b.points.cols());
    Eigen::Index w = 0;
    for (Eigen::Index i = 0; i < a.points.cols(); ++i)
        for (Eigen::Index j = 0; j < b.points.cols(); ++j)
            points.col(w++) = a.points.col(i) - b.points.col(j);
    Mat rays = numeric::hcat(a.rays, -b.rays);
    Mat lin = numeric::orthonormal_basis(numeric::hcat(a.lineality, b.lineality));
    double rho = a.radius + b.radius;

    if (rho > 0) {
        // With a ball term the union of dilates is a subspace iff it is the
        // whole space, i.e. 0 is interior to the difference body.
        Vec proj = numeric::project_generated_set(points, rays, lin, Vec::Zero(n));
        return proj.norm() < rho - tol;
    }

    // Polyhedral case: the generated cone must be symmetric.
    std::vector<Vec> gens;
    for (Eigen::Index i = 0; i < points.cols(); ++i)
        if (points.col(i).norm() > tol) gens.push_back(points.col(i));
    for (Eigen::Index i = 0; i < rays.cols(); ++i)
        if (rays.col(i).norm() > tol) gens.push_back(rays.col(i));
    if (gens.empty()) return true;  // the difference cone is {0} or span(lin)

    Mat gmat(n, static_cast<Eigen::Index>(gens.size()));
    for (size_t k = 0; k < gens.size(); ++k) gmat.col(static_cast<Eigen::Index>(k)) = gens[k];
    for (const auto& g : gens) {
        Vec target = -g;
        Vec reduced = target;
        Mat gred = gmat;
        if (lin.cols() > 0) {
            reduced -= lin * (lin.transpose() * reduced);
            gred -= lin * (lin.transpose() * gred);
        }
        if (gred.cols() == 0) {
            if (reduced.norm() > tol * std::max(1.0, g.norm())) return false;
            continue;
        }
        Vec mu = numeric::nnls(gred, reduced);
        if ((gred * mu - reduced).norm() > tol * std::max(1.0, g.norm())) return false;
    }
    return true;
}

}  // namespace bcmono
