#include "bcmono/relations.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "bcmono/numeric.hpp"

namespace bcmono {

LinearRelation::LinearRelation(int n, Mat basis) : n_(n), basis_(std::move(basis)) {
    dom_basis_ = numeric::orthonormal_basis(basis_.topRows(n_));
    ran_basis_ = numeric::orthonormal_basis(basis_.bottomRows(n_));
    fiber_lineality_ = Mat(n_, 0);
    if (basis_.cols() == 0) return;  // the zero relation {(0, 0)}
    Mat top = basis_.topRows(n_);
    top_cod_ = std::make_shared<const Eigen::CompleteOrthogonalDecomposition<Mat>>(top);
    // Coefficient directions killed by the top block carry the multivalued
    // part of every fiber.
    Eigen::JacobiSVD<Mat> svd(top, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cut = (sv.size() ? sv(0) : 0.0) * 1e-12 * std::max<Eigen::Index>(top.rows(), top.cols());
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cut) ++rank;
    Mat null_coeffs = svd.matrixV().rightCols(top.cols() - rank);
    fiber_lineality_ = numeric::orthonormal_basis(basis_.bottomRows(n_) * null_coeffs);
}

LinearRelation LinearRelation::from_matrix(const Mat& m, const std::optional<Mat>& domain_basis) {
    if (m.rows() != m.cols()) throw ValidationError("from_matrix: matrix must be square");
    const int n = static_cast<int>(m.rows());
    Mat dom;
    if (domain_basis) {
        require_dim(domain_basis->rows(), n, "from_matrix domain");
        dom = numeric::orthonormal_basis(*domain_basis);
        if (dom.cols() != domain_basis->cols())
            throw RankDeficientBasis("from_matrix: degenerate domain basis");
    } else {
        dom = Mat::Identity(n, n);
    }
    Mat raw(2 * n, dom.cols());
    raw.topRows(n) = dom;
    raw.bottomRows(n) = m * dom;
    return LinearRelation(n, numeric::orthonormal_basis(raw));
}

LinearRelation LinearRelation::from_graph(const Mat& raw_columns) {
    if (raw_columns.rows() % 2 != 0) throw ValidationError("from_graph: need 2n rows");
    const int n = static_cast<int>(raw_columns.rows() / 2);
    return LinearRelation(n, numeric::orthonormal_basis(raw_columns));
}

bool LinearRelation::contains(const Vec& x, const Vec& xstar, double tol) const {
    require_dim(x.size(), n_, "LinearRelation::contains");
    require_dim(xstar.size(), n_, "LinearRelation::contains");
    Vec z(2 * n_);
    z << x, xstar;
    return numeric::subspace_contains(basis_, z, tol);
}

LinearRelation LinearRelation::adjoint() const {
    // (u, v) runs over the orthogonal complement of the graph; the adjoint
    // graph collects (-v, u).
    Mat comp = numeric::orthogonal_complement(basis_, 2 * n_);
    Mat adj(2 * n_, comp.cols());
    adj.topRows(n_) = -comp.bottomRows(n_);
    adj.bottomRows(n_) = comp.topRows(n_);
    return LinearRelation(n_, numeric::orthonormal_basis(adj));
}

LinearRelation::ApplyResult LinearRelation::apply(const Vec& x, double tol) const {
    require_dim(x.size(), n_, "LinearRelation::apply");
    ApplyResult out;
    if (!top_cod_) {  // the zero relation: fiber {0} over x = 0 only
        if (x.norm() > tol) return out;
        out.point = Vec::Zero(n_);
        out.kind = ApplyResult::Kind::Point;
        return out;
    }
    Vec c0 = top_cod_->solve(x);
    if ((basis_.topRows(n_) * c0 - x).norm() > tol * std::max(1.0, x.norm())) return out;  // Empty
    out.point = basis_.bottomRows(n_) * c0;
    out.lineality = fiber_lineality_;
    out.kind = fiber_lineality_.cols() > 0 ? ApplyResult::Kind::Affine : ApplyResult::Kind::Point;
    return out;
}

Vec LinearRelation::selection(const Vec& x, double tol) const {
    auto r = apply(x, tol);
    if (r.kind == ApplyResult::Kind::Empty)
        throw NoSolution("LinearRelation::selection: point off the domain");
    return r.point;
}

bool LinearRelation::at_most_single_valued(double tol) const {
    // Single-valued everywhere iff the fiber over 0 is {0}: no graph
    // direction may vanish in the first block.
    Mat top = top_block();
    Eigen::JacobiSVD<Mat> svd(top);
    const auto& sv = svd.singularValues();
    if (basis_.cols() == 0) return true;
    return sv.size() == basis_.cols() && sv(sv.size() - 1) > tol;
}

namespace {

// Pairing form z = (x, x*) -> <x, x*> restricted to the graph basis.
Mat restricted_pairing_form(const Mat& basis, int n) {
    Mat top = basis.topRows(n), bot = basis.bottomRows(n);
    Mat cross = top.transpose() * bot;
    return 0.5 * (cross + cross.transpose());
}

}  // namespace

bool LinearRelation::monotonically_related(const Vec& x, const Vec& xstar, double tol) const {
    // q(w - g) >= 0 for every graph point g, where q is the pairing form.
    // Expanding over the graph subspace: q(w) - 2 B(w, g) + q(g).  The
    // minimum over g is computable exactly through the eigen-decomposition
    // of the restricted form.
    const Mat q = restricted_pairing_form(basis_, n_);
    Vec bw(basis_.cols());
    // B(w, g_i) = 0.5 (<x, bot_i> + <xstar, top_i>)
    bw = 0.5 * (basis_.bottomRows(n_).transpose() * x + basis_.topRows(n_).transpose() * xstar);
    double qw = x.dot(xstar);
    if (basis_.cols() == 0) return qw >= -tol;

    Eigen::SelfAdjointEigenSolver<Mat> es(q);
    const Vec& ev = es.eigenvalues();
    const Mat& evec = es.eigenvectors();
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    if (ev.minCoeff() < -tol * scale) return false;  // graph itself non-monotone
    Vec b = evec.transpose() * bw;
    double min_val = qw;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > tol * scale) {
            min_val -= b(i) * b(i) / ev(i);
        } else if (std::abs(b(i)) > tol * std::max(1.0, bw.norm())) {
            return false;  // flat direction with nonzero slope: unbounded below
        }
    }
    return min_val >= -tol * std::max({1.0, std::abs(qw), bw.squaredNorm()});
}

MonotonicityReport LinearRelation::classify(int samples, double tol) const {
    MonotonicityReport rep;
    const Mat q = restricted_pairing_form(basis_, n_);
    Eigen::SelfAdjointEigenSolver<Mat> es(q);
    const Vec& ev = es.eigenvalues();
    double scale = std::max(1.0, basis_.cols() ? ev.cwiseAbs().maxCoeff() : 0.0);

    rep.monotone = basis_.cols() == 0 || ev.minCoeff() >= -tol * scale;
    rep.skew = basis_.cols() == 0 || ev.cwiseAbs().maxCoeff() <= tol * scale;

    LinearRelation adj = adjoint();
    rep.symmetric = true;
    for (Eigen::Index c = 0; c < basis_.cols(); ++c)
        if (!numeric::subspace_contains(adj.basis_, basis_.col(c), 1e-9)) rep.symmetric = false;

    rep.maximal = rep.monotone && graph_dim() == n_;

    if (!rep.monotone) {
        Eigen::Index worst;
        ev.minCoeff(&worst);
        Vec z = basis_ * es.eigenvectors().col(worst);
        MonotonicityWitness w;
        w.kind = MonotonicityWitness::Kind::MonotonicityViolation;
        w.x = z.head(n_);
        w.xstar = z.tail(n_);
        w.y = Vec::Zero(n_);
        w.ystar = Vec::Zero(n_);
        w.value = w.x.dot(w.xstar);
        rep.witness = w;
        return rep;
    }

    if (!rep.maximal) {
        // Candidate extension directions live in gra(-A*): test basis
        // columns, their negatives, then random combinations.
        Mat neg_adj = adj.basis_;
        neg_adj.bottomRows(n_) *= -1.0;
        std::vector<Vec> candidates;
        for (Eigen::Index c = 0; c < neg_adj.cols(); ++c) {
            candidates.push_back(neg_adj.col(c));
            candidates.push_back(-neg_adj.col(c));
        }
        std::mt19937_64 rng(0x5eed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int s = 0; s < samples; ++s) {
            Vec coeff(neg_adj.cols());
            for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) = gauss(rng);
            candidates.push_back(neg_adj * coeff);
        }
        for (const auto& z : candidates) {
            if (z.norm() < 1e-12) continue;
            if (numeric::subspace_contains(basis_, z, 1e-9)) continue;
            Vec x = z.head(n_), xstar = z.tail(n_);
            if (monotonically_related(x, xstar, tol)) {
                MonotonicityWitness w;
                w.kind = MonotonicityWitness::Kind::RelatedPointOutsideGraph;
                w.x = x;
                w.xstar = xstar;
                w.y = Vec::Zero(n_);
                w.ystar = Vec::Zero(n_);
                w.value = 0.0;
                rep.witness = w;
                break;
            }
        }
    }
    return rep;
}

double LinearRelation::selection_norm() const {
    // Largest gain |A_sel x| / |x| over the domain.
    if (dom_basis_.cols() == 0) return 0.0;
    Mat gains(n_, dom_basis_.cols());
    for (Eigen::Index c = 0; c < dom_basis_.cols(); ++c)
        gains.col(c) = selection(dom_basis_.col(c));
    Eigen::JacobiSVD<Mat> svd(gains);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

bool monotonically_related_sampled(const std::pair<Vec, Vec>& point,
                                   const std::vector<std::pair<Vec, Vec>>& graph_sample,
                                   double tol) {
    if (graph_sample.empty()) throw ValidationError("monotonically_related_sampled: empty sample");
    for (const auto& [y, ystar] : graph_sample)
        if ((point.first - y).dot(point.second - ystar) < -tol) return false;
    return true;
}

std::optional<Vec> resolvent_solve(const LinearRelation& a, const ConvexSet& c, const Vec& z,
                                   double tol, int max_iter) {
    require_dim(z.size(), a.ambient_dim(), "resolvent_solve");
    require_dim(c.dim(), a.ambient_dim(), "resolvent_solve");

    auto residual_ok = [&](const Vec& x) {
        Vec r = z - x - a.selection(x);
        return c.normal_cone(x, 1e-9).distance(r) <= tol;
    };

    if (const auto* seg = std::get_if<ConvexSet::Segment>(&c.variant())) {
        // One-dimensional inclusion along the segment: phi(t) =
        // <z - x(t) - A x(t), d> is strictly decreasing for monotone A.
        Vec d = seg->b - seg->a;
        double dd = d.squaredNorm();
        if (dd == 0.0) return residual_ok(seg->a) ? std::optional<Vec>(seg->a) : std::nullopt;
        Vec a0 = a.selection(seg->a);
        Vec a1 = a.selection(seg->a + d);
        double phi0 = (z - seg->a - a0).dot(d);
        double slope = -(dd + (a1 - a0).dot(d));
        if (!(slope < 0)) throw NoSolution("resolvent_solve: segment direction not monotone");
        double t = std::clamp(phi0 / (-slope), 0.0, 1.0);
        Vec x = seg->a + t * d;
        if (residual_ok(x)) return x;
        return std::nullopt;
    }

    if (!c.bounded()) throw ValidationError("resolvent_solve: C must be bounded");

    // Projected fixed-point iteration on F(x) = x + A_sel(x) - z.  F is
    // 1-strongly monotone with Lipschitz constant L = 1 + |A|, so the step
    // 1/L^2 contracts.  (The first-power step fails to contract once
    // |A| >= 1, hence the square.)
    double l = 1.0 + a.selection_norm();
    double step = 1.0 / (l * l);
    Vec x = c.project(Vec::Zero(z.size()));
    for (int it = 0; it < max_iter; ++it) {
        Vec grad = x + a.selection(x) - z;
        Vec xn = c.project(x - step * grad);
        double delta = (xn - x).norm();
        x = xn;
        if (delta <= 0.05 * step * tol && residual_ok(x)) return x;
    }
    if (residual_ok(x)) return x;
    return std::nullopt;
}

}  // namespace bcmono
