#include "bcmono/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace bcmono::numeric {

Mat orthonormal_basis(const Mat& a, double rel_tol) {
    if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0) return Mat(a.rows(), 0);
    double cut = sv(0) * rel_tol * std::max(a.rows(), a.cols());
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cut) ++rank;
    return svd.matrixU().leftCols(rank);
}

Mat orthogonal_complement(const Mat& q, Eigen::Index ambient) {
    if (q.cols() == 0) return Mat::Identity(ambient, ambient);
    // Full SVD of q: trailing left singular vectors span the complement.
    Eigen::JacobiSVD<Mat> svd(q, Eigen::ComputeFullU);
    return svd.matrixU().rightCols(ambient - q.cols());
}

bool subspace_contains(const Mat& q, const Vec& v, double tol) {
    Vec residual = v;
    if (q.cols() > 0) residual -= q * (q.transpose() * v);
    return residual.norm() <= tol * std::max(1.0, v.norm());
}

double subspace_distance(const Mat& q1, const Mat& q2) {
    Eigen::Index n = std::max(q1.rows(), q2.rows());
    Mat p1 = q1.cols() ? Mat(q1 * q1.transpose()) : Mat::Zero(n, n);
    Mat p2 = q2.cols() ? Mat(q2 * q2.transpose()) : Mat::Zero(n, n);
    Eigen::JacobiSVD<Mat> svd(p1 - p2);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

Vec nnls(const Mat& a, const Vec& b, double tol) {
    const Eigen::Index m = a.cols();
    Vec x = Vec::Zero(m);
    if (m == 0) return x;
    std::vector<bool> active(m, false);  // true = in the positive set
    const double wtol = tol * std::max(1.0, b.norm()) * std::max(1.0, a.norm());
    for (int outer = 0; outer < 3 * static_cast<int>(m) + 30; ++outer) {
        Vec w = a.transpose() * (b - a * x);
        int best = -1;
        double best_w = wtol;
        for (Eigen::Index i = 0; i < m; ++i)
            if (!active[i] && w(i) > best_w) {
                best_w = w(i);
                best = static_cast<int>(i);
            }
        if (best < 0) break;
        active[best] = true;
        for (int inner = 0; inner < 3 * static_cast<int>(m) + 30; ++inner) {
            std::vector<int> idx;
            for (Eigen::Index i = 0; i < m; ++i)
                if (active[i]) idx.push_back(static_cast<int>(i));
            Mat ap(a.rows(), idx.size());
            for (size_t k = 0; k < idx.size(); ++k) ap.col(k) = a.col(idx[k]);
            Vec z = ap.completeOrthogonalDecomposition().solve(b);
            bool feasible = true;
            for (Eigen::Index k = 0; k < z.size(); ++k)
                if (z(k) <= 0) feasible = false;
            if (feasible) {
                x.setZero();
                for (size_t k = 0; k < idx.size(); ++k) x(idx[k]) = z(k);
                break;
            }
            // Step toward z until the first coordinate hits zero.
            double alpha = 1.0;
            for (size_t k = 0; k < idx.size(); ++k) {
                double xi = x(idx[k]);
                if (z(k) <= 0 && xi - z(k) > 0) alpha = std::min(alpha, xi / (xi - z(k)));
            }
            for (size_t k = 0; k < idx.size(); ++k) {
                double nx = x(idx[k]) + alpha * (z(k) - x(idx[k]));
                x(idx[k]) = std::max(nx, 0.0);
                if (x(idx[k]) <= 0) active[idx[k]] = false;
            }
        }
    }
    return x;
}

double dist_to_cone(const Mat& generators, const Mat& lineality, const Vec& v) {
    Vec target = v;
    Mat g = generators;
    if (lineality.cols() > 0) {
        // Quotient out the lineality space.
        target -= lineality * (lineality.transpose() * target);
        if (g.cols() > 0) g -= lineality * (lineality.transpose() * g);
    }
    if (g.cols() == 0) return target.norm();
    Vec mu = nnls(g, target);
    return (g * mu - target).norm();
}

namespace {

// Enumerate index subsets of size <= kmax.
void subsets_up_to(int n, int kmax, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (!cur.empty()) fn(cur);
        if (static_cast<int>(cur.size()) == kmax) return;
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

}  // namespace

Vec project_generated_set(const Mat& points, const Mat& rays, const Mat& lineality, const Vec& x) {
    if (points.cols() == 0) throw BcmonoError("project_generated_set: need at least one point");
    const Eigen::Index d = points.rows();
    Vec target = x;
    Mat p = points, r = rays;
    Mat lin = lineality.cols() ? orthonormal_basis(lineality) : Mat(d, 0);
    if (lin.cols() > 0) {
        auto reduce = [&](Mat& m) {
            if (m.cols() > 0) m -= lin * (lin.transpose() * m);
        };
        Vec shift = lin * (lin.transpose() * target);
        target -= shift;
        reduce(p);
        reduce(r);
        Vec best_reduced = project_generated_set(p, r, Mat(d, 0), target);
        return best_reduced + shift;
    }

    const int np = static_cast<int>(p.cols());
    const int nr = static_cast<int>(r.cols());
    const int kp = std::min<int>(np, static_cast<int>(d) + 1);
    const int kr = std::min<int>(nr, static_cast<int>(d));

    double best_dist = std::numeric_limits<double>::infinity();
    Vec best = p.col(0);

    std::vector<std::vector<int>> point_subsets, ray_subsets;
    subsets_up_to(np, kp, [&](const std::vector<int>& s) { point_subsets.push_back(s); });
    ray_subsets.push_back({});  // no rays active
    subsets_up_to(nr, kr, [&](const std::vector<int>& s) { ray_subsets.push_back(s); });

    for (const auto& ps : point_subsets) {
        for (const auto& rs : ray_subsets) {
            const Eigen::Index cols = static_cast<Eigen::Index>(ps.size() + rs.size());
            // min |M w - target|^2 subject to the point weights summing to 1
            // (rays free nonnegative), solved through the KKT system.
            Mat m(d, cols);
            Vec a = Vec::Zero(cols);
            for (size_t k = 0; k < ps.size(); ++k) {
                m.col(static_cast<Eigen::Index>(k)) = p.col(ps[k]);
                a(static_cast<Eigen::Index>(k)) = 1.0;
            }
            for (size_t k = 0; k < rs.size(); ++k)
                m.col(static_cast<Eigen::Index>(ps.size() + k)) = r.col(rs[k]);
            Mat kkt = Mat::Zero(cols + 1, cols + 1);
            kkt.topLeftCorner(cols, cols) = m.transpose() * m;
            kkt.topRightCorner(cols, 1) = a;
            kkt.bottomLeftCorner(1, cols) = a.transpose();
            Vec rhs(cols + 1);
            rhs.head(cols) = m.transpose() * target;
            rhs(cols) = 1.0;
            Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
            Vec w = sol.head(cols);
            if (std::abs(a.dot(w) - 1.0) > 1e-9) continue;  // degenerate subset
            bool ok = true;
            for (Eigen::Index k = 0; k < cols; ++k)
                if (w(k) < -1e-10) ok = false;
            if (!ok) continue;
            Vec cand = m * w;
            double dist = (cand - target).norm();
            if (dist < best_dist) {
                best_dist = dist;
                best = cand;
            }
        }
    }
    return best;
}

ConeDescription polar_cone(const Mat& dirs, Eigen::Index ambient, double tol) {
    ConeDescription cone;
    cone.lineality = Mat::Identity(ambient, ambient);
    std::vector<Vec> rays;

    auto nearly_zero = [&](const Vec& v) { return v.norm() <= tol; };

    for (Eigen::Index c = 0; c < dirs.cols(); ++c) {
        Vec a = dirs.col(c);
        if (nearly_zero(a)) continue;
        a.normalize();

        Mat& lin = cone.lineality;
        Vec lin_dots = lin.cols() ? Vec(lin.transpose() * a) : Vec(0);
        Eigen::Index pivot = -1;
        double pivot_val = tol;
        for (Eigen::Index k = 0; k < lin_dots.size(); ++k)
            if (std::abs(lin_dots(k)) > pivot_val) {
                pivot_val = std::abs(lin_dots(k));
                pivot = k;
            }

        if (pivot >= 0) {
            // Reduce the lineality against the halfspace; the pivot direction
            // survives only as a ray on the feasible side.
            Vec l0 = lin.col(pivot);
            double d0 = lin_dots(pivot);
            Mat new_lin(ambient, lin.cols() - 1);
            Eigen::Index w = 0;
            for (Eigen::Index k = 0; k < lin.cols(); ++k) {
                if (k == pivot) continue;
                new_lin.col(w++) = lin.col(k) - (lin_dots(k) / d0) * l0;
            }
            for (auto& ray : rays) {
                double dr = ray.dot(a);
                ray -= (dr / d0) * l0;
            }
            rays.push_back(d0 > 0 ? Vec(-l0) : l0);
            cone.lineality = orthonormal_basis(new_lin);
            continue;
        }

        std::vector<Vec> keep, minus, plus;
        for (auto& ray : rays) {
            double dr = ray.dot(a);
            if (dr < -tol)
                minus.push_back(ray);
            else if (dr > tol)
                plus.push_back(ray);
            else
                keep.push_back(ray);
        }
        std::vector<Vec> next = keep;
        next.insert(next.end(), minus.begin(), minus.end());
        for (const auto& rp : plus)
            for (const auto& rm : minus) {
                Vec w = rp.dot(a) * rm - rm.dot(a) * rp;
                if (!nearly_zero(w)) next.push_back(w.normalized());
            }
        rays = std::move(next);

        // Dedupe rays (the DD step without adjacency filtering over-generates).
        std::vector<Vec> unique;
        for (const auto& ray : rays) {
            Vec u = ray.normalized();
            bool dup = false;
            for (const auto& v : unique)
                if ((u - v).norm() <= 1e-9) dup = true;
            if (!dup) unique.push_back(u);
        }
        rays = std::move(unique);
    }

    // Drop ray components inside the lineality space.
    for (auto& ray : rays) {
        if (cone.lineality.cols() > 0)
            ray -= cone.lineality * (cone.lineality.transpose() * ray);
        if (ray.norm() > tol) cone.generators.push_back(ray.normalized());
    }
    return cone;
}

}  // namespace bcmono::numeric
