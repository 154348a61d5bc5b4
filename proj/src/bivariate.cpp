#include "bcmono/bivariate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "bcmono/numeric.hpp"

namespace bcmono {

namespace {

// sup over the graph of <t, c> - c'Qc in coefficient space: the exact
// Fitzpatrick value of a closed linear relation.  Q is the pairing form
// restricted to the graph; F = +inf off ran(Q) (and everywhere when the
// relation is not monotone).
BivariateFunction::FitzLinearClosed make_quad_cache(const LinearRelation& rel) {
    BivariateFunction::FitzLinearClosed c{rel, {}, {}, {}, {}, 1.0};
    c.top = rel.top_block();
    c.bot = rel.bottom_block();
    Mat cross = c.top.transpose() * c.bot;
    Mat q = 0.5 * (cross + cross.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(q);
    c.eig_vectors = es.eigenvectors();
    c.eig_values = es.eigenvalues();
    c.form_scale = std::max(1.0, c.eig_values.size() ? c.eig_values.cwiseAbs().maxCoeff() : 0.0);
    return c;
}

ExtReal quad_fitz_eval(const BivariateFunction::FitzLinearClosed& c, const Vec& x,
                       const Vec& xstar) {
    Vec t = c.bot.transpose() * x + c.top.transpose() * xstar;
    if (t.size() == 0) return ExtReal(0.0);
    Vec b = c.eig_vectors.transpose() * t;
    const double cut = 1e-12 * c.form_scale;
    const double zero_tol = 1e-9 * std::max(1.0, t.norm());
    double value = 0.0;
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        if (c.eig_values(i) > cut) {
            value += 0.25 * b(i) * b(i) / c.eig_values(i);
        } else if (c.eig_values(i) < -cut) {
            return ExtReal::pos_inf();  // non-monotone direction: sup diverges
        } else if (std::abs(b(i)) > zero_tol) {
            return ExtReal::pos_inf();  // component off ran(Q)
        }
    }
    return ExtReal(value);
}

std::vector<double> axis_nodes(const GridSpec& spec, int max_points) {
    int n = std::min(spec.points_per_axis, max_points);
    if (n < 3) n = 3;
    std::vector<double> nodes(n);
    double h = 2.0 * spec.box_radius / (n - 1);
    for (int i = 0; i < n; ++i) nodes[i] = -spec.box_radius + i * h;
    return nodes;
}

// Coefficient-grid sample of a subspace given by an orthonormal basis.
std::vector<Vec> subspace_grid(const Mat& basis, const GridSpec& spec, long max_total) {
    std::vector<Vec> out;
    const Eigen::Index m = basis.cols();
    if (m == 0) {
        out.push_back(Vec::Zero(basis.rows()));
        return out;
    }
    int per_axis = anchor_axis_count(static_cast<int>(m), spec.points_per_axis, max_total);
    auto nodes = axis_nodes(GridSpec{spec.box_radius, per_axis}, per_axis);
    std::vector<Eigen::Index> counter(m, 0);
    while (true) {
        Vec coeff(m);
        for (Eigen::Index i = 0; i < m; ++i) coeff(i) = nodes[counter[i]];
        out.push_back(basis * coeff);
        Eigen::Index d = 0;
        while (d < m) {
            if (++counter[d] < static_cast<Eigen::Index>(nodes.size())) break;
            counter[d++] = 0;
        }
        if (d == m) break;
    }
    return out;
}

}  // namespace

int anchor_axis_count(int dims, int requested, long budget) {
    int per_axis = std::max(requested, 3);
    while (std::pow(double(per_axis), double(dims)) > double(budget) && per_axis > 3)
        per_axis /= 2;
    return std::max(per_axis, 3);
}

BivariateFunction::BivariateFunction(Variant v, int n)
    : variant_(std::make_shared<const Variant>(std::move(v))), n_(n) {}

BivariateFunction BivariateFunction::fitz_from_sample(std::vector<std::pair<Vec, Vec>> sample) {
    if (sample.empty()) throw ValidationError("fitz_from_sample: empty graph sample");
    int n = static_cast<int>(sample[0].first.size());
    for (const auto& [a, astar] : sample) {
        require_dim(a.size(), n, "fitz_from_sample");
        require_dim(astar.size(), n, "fitz_from_sample");
    }
    return BivariateFunction(FitzFromSample{std::move(sample)}, n);
}

BivariateFunction BivariateFunction::fitz_normal_cone(ConvexSet c) {
    int n = c.dim();
    return BivariateFunction(FitzNormalCone{std::move(c)}, n);
}

BivariateFunction BivariateFunction::fitz_linear(LinearRelation rel) {
    int n = rel.ambient_dim();
    return BivariateFunction(make_quad_cache(rel), n);
}

BivariateFunction BivariateFunction::graph_indicator_plus_pairing(LinearRelation rel,
                                                                  double member_tol) {
    int n = rel.ambient_dim();
    return BivariateFunction(GraphIndicatorPlusPairing{std::move(rel), member_tol}, n);
}

BivariateFunction BivariateFunction::partial_inf_conv_fn(BivariateFunction f1, BivariateFunction f2,
                                                         GridSpec inner_grid) {
    require_dim(f2.ambient_dim(), f1.ambient_dim(), "partial_inf_conv_fn");
    int n = f1.ambient_dim();
    return BivariateFunction(
        PartialInfConv{std::make_shared<const BivariateFunction>(std::move(f1)),
                       std::make_shared<const BivariateFunction>(std::move(f2)), inner_grid},
        n);
}

BivariateFunction BivariateFunction::explicit_support(
    std::vector<std::tuple<Vec, Vec, double>> points, double match_tol) {
    if (points.empty()) throw ValidationError("explicit_support: empty support");
    int n = static_cast<int>(std::get<0>(points[0]).size());
    return BivariateFunction(ExplicitSupport{std::move(points), match_tol}, n);
}

ExtReal BivariateFunction::eval(const Vec& x, const Vec& xstar) const {
    require_dim(x.size(), n_, "BivariateFunction::eval");
    require_dim(xstar.size(), n_, "BivariateFunction::eval");
    return std::visit(
        [&](const auto& node) -> ExtReal {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, FitzFromSample>) {
                double best = -std::numeric_limits<double>::infinity();
                for (const auto& [a, astar] : node.sample)
                    best = std::max(best, x.dot(astar) + a.dot(xstar) - a.dot(astar));
                return ExtReal(best);
            } else if constexpr (std::is_same_v<T, FitzNormalCone>) {
                if (!node.set.contains(x, 1e-9)) return ExtReal::pos_inf();
                return node.set.support(xstar);
            } else if constexpr (std::is_same_v<T, FitzLinearClosed>) {
                return quad_fitz_eval(node, x, xstar);
            } else if constexpr (std::is_same_v<T, GraphIndicatorPlusPairing>) {
                if (!node.rel.contains(x, xstar, node.member_tol)) return ExtReal::pos_inf();
                return ExtReal(x.dot(xstar));
            } else if constexpr (std::is_same_v<T, PartialInfConv>) {
                return partial_inf_conv(*node.f1, *node.f2, x, xstar, node.inner_grid).value;
            } else {
                for (const auto& [px, pxs, v] : node.points)
                    if ((px - x).norm() <= node.match_tol && (pxs - xstar).norm() <= node.match_tol)
                        return ExtReal(v);
                return ExtReal::pos_inf();
            }
        },
        *variant_);
}

ConvexSet BivariateFunction::domain_projection() const {
    return std::visit(
        [&](const auto& node) -> ConvexSet {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, FitzFromSample>) {
                return ConvexSet::whole_space(n_);  // finite sup of affine functions
            } else if constexpr (std::is_same_v<T, FitzNormalCone>) {
                return node.set;
            } else if constexpr (std::is_same_v<T, FitzLinearClosed>) {
                // {x : exists x* with t(x, x*) orthogonal to ker Q}.
                std::vector<Eigen::Index> kernel;
                for (Eigen::Index i = 0; i < node.eig_values.size(); ++i)
                    if (std::abs(node.eig_values(i)) <= 1e-12 * node.form_scale) kernel.push_back(i);
                if (kernel.empty()) return ConvexSet::whole_space(n_);
                Mat k(node.eig_vectors.rows(), static_cast<Eigen::Index>(kernel.size()));
                for (size_t j = 0; j < kernel.size(); ++j) k.col(j) = node.eig_vectors.col(kernel[j]);
                Mat m1 = k.transpose() * node.bot.transpose();  // x coefficient
                Mat m2 = k.transpose() * node.top.transpose();  // x* coefficient
                Mat ran2 = numeric::orthonormal_basis(m2);
                Mat excess = numeric::orthogonal_complement(ran2, m1.rows());
                if (excess.cols() == 0) return ConvexSet::whole_space(n_);
                Mat constraints = excess.transpose() * m1;  // rows annihilate x
                Mat null_basis = numeric::orthogonal_complement(
                    numeric::orthonormal_basis(constraints.transpose()), n_);
                return ConvexSet::subspace(null_basis);
            } else if constexpr (std::is_same_v<T, GraphIndicatorPlusPairing>) {
                return node.rel.domain_set();
            } else if constexpr (std::is_same_v<T, PartialInfConv>) {
                throw ValidationError(
                    "domain_projection: not available for partial inf-convolutions");
            } else {
                std::vector<Vec> xs;
                for (const auto& [px, pxs, v] : node.points) xs.push_back(px);
                return ConvexSet::polytope(std::move(xs));
            }
        },
        *variant_);
}

std::vector<std::pair<Vec, Vec>> BivariateFunction::conjugation_anchors(const GridSpec& spec,
                                                                        int axis_cap) const {
    std::vector<std::pair<Vec, Vec>> anchors;
    const int n = n_;
    const int product_cap =
        axis_cap > 0 ? axis_cap : (n == 1 ? spec.points_per_axis : 33);
    const GridSpec coeff_spec{spec.box_radius,
                              axis_cap > 0 ? std::min(spec.points_per_axis, axis_cap)
                                           : spec.points_per_axis};

    auto tensor_points = [&](const GridSpec& s) {
        std::vector<Vec> pts;
        auto nodes = axis_nodes(s, product_cap);
        if (n == 1) {
            for (double v : nodes) pts.push_back(Vec::Constant(1, v));
        } else if (n == 2) {
            for (double a : nodes)
                for (double b : nodes) {
                    Vec v(2);
                    v << a, b;
                    pts.push_back(v);
                }
        } else {
            // Higher ambient dimensions: axis points only (the suites keep
            // full tensor work in n <= 2).
            pts.push_back(Vec::Zero(n));
            for (int i = 0; i < n; ++i)
                for (double v : nodes) pts.push_back(v * Vec::Unit(n, i));
        }
        return pts;
    };

    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, FitzFromSample>) {
                anchors = node.sample;
                for (const auto& y : tensor_points(spec))
                    for (const auto& ys : tensor_points(spec)) anchors.emplace_back(y, ys);
            } else if constexpr (std::is_same_v<T, FitzNormalCone>) {
                std::vector<Vec> xs;
                for (const auto& y : tensor_points(spec)) {
                    if (node.set.contains(y, 1e-9)) xs.push_back(y);
                    Vec p = node.set.project(y);
                    xs.push_back(p);
                }
                for (const auto& y : xs)
                    for (const auto& ys : tensor_points(spec)) anchors.emplace_back(y, ys);
            } else if constexpr (std::is_same_v<T, FitzLinearClosed> ||
                                 std::is_same_v<T, GraphIndicatorPlusPairing>) {
                Mat basis;
                if constexpr (std::is_same_v<T, FitzLinearClosed>) {
                    // Sample the finiteness subspace {(x,x*) : t orthogonal
                    // to ker Q}, which contains the graph.
                    std::vector<Eigen::Index> kernel;
                    for (Eigen::Index i = 0; i < node.eig_values.size(); ++i)
                        if (std::abs(node.eig_values(i)) <= 1e-12 * node.form_scale)
                            kernel.push_back(i);
                    Mat k(node.eig_vectors.rows(), static_cast<Eigen::Index>(kernel.size()));
                    for (size_t j = 0; j < kernel.size(); ++j)
                        k.col(j) = node.eig_vectors.col(kernel[j]);
                    Mat constraints = numeric::hcat(Mat(k.transpose() * node.bot.transpose()),
                                                    Mat(k.transpose() * node.top.transpose()));
                    basis = numeric::orthogonal_complement(
                        numeric::orthonormal_basis(constraints.transpose()), 2 * n);
                } else {
                    basis = node.rel.graph_basis();
                }
                for (const auto& z : subspace_grid(basis, coeff_spec, 200000))
                    anchors.emplace_back(z.head(n), z.tail(n));
            } else if constexpr (std::is_same_v<T, PartialInfConv>) {
                const auto* gi =
                    std::get_if<GraphIndicatorPlusPairing>(&node.f1->variant());
                const auto* nc = std::get_if<FitzNormalCone>(&node.f2->variant());
                if (gi && nc) {
                    std::vector<Vec> xs;
                    for (const auto& z : subspace_grid(gi->rel.dom_basis(), coeff_spec, 4000))
                        if (nc->set.contains(z, 1e-9)) xs.push_back(z);
                    for (const auto& y : tensor_points(spec)) {
                        Vec p = nc->set.project(y);
                        if (gi->rel.apply(p).kind != LinearRelation::ApplyResult::Kind::Empty)
                            xs.push_back(p);
                    }
                    for (const auto& y : xs) {
                        auto fiber = gi->rel.apply(y);
                        if (fiber.kind == LinearRelation::ApplyResult::Kind::Point)
                            anchors.emplace_back(y, fiber.point);  // sigma term vanishes here
                        for (const auto& ys : tensor_points(spec)) anchors.emplace_back(y, ys);
                    }
                } else {
                    for (const auto& y : tensor_points(spec))
                        for (const auto& ys : tensor_points(spec)) anchors.emplace_back(y, ys);
                }
            } else {
                for (const auto& [px, pxs, v] : node.points) anchors.emplace_back(px, pxs);
            }
        },
        *variant_);
    return anchors;
}

int BivariateFunction::finiteness_dim() const {
    return std::visit(
        [&](const auto& node) -> int {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, FitzLinearClosed>) {
                std::vector<Eigen::Index> kernel;
                for (Eigen::Index i = 0; i < node.eig_values.size(); ++i)
                    if (std::abs(node.eig_values(i)) <= 1e-12 * node.form_scale)
                        kernel.push_back(i);
                if (kernel.empty()) return 2 * n_;
                Mat k(node.eig_vectors.rows(), static_cast<Eigen::Index>(kernel.size()));
                for (size_t j = 0; j < kernel.size(); ++j) k.col(j) = node.eig_vectors.col(kernel[j]);
                Mat constraints = numeric::hcat(Mat(k.transpose() * node.bot.transpose()),
                                                Mat(k.transpose() * node.top.transpose()));
                return 2 * n_ -
                       static_cast<int>(numeric::orthonormal_basis(constraints.transpose()).cols());
            } else if constexpr (std::is_same_v<T, GraphIndicatorPlusPairing>) {
                return node.rel.graph_dim();
            } else {
                return 2 * n_;
            }
        },
        *variant_);
}

namespace {

ExtReal grid_sup(const BivariateFunction& f, const Vec& p, const Vec& q,
                 const std::vector<std::pair<Vec, Vec>>& anchors) {
    ExtReal best = ExtReal::neg_inf();
    for (const auto& [y, ystar] : anchors) {
        ExtReal fv = f.eval(y, ystar);
        if (!fv.is_finite()) continue;
        ExtReal term(y.dot(p) + ystar.dot(q) - fv.finite());
        if (term > best) best = term;
    }
    if (best.is_neg_inf()) throw AllInfinite("flipped_conjugate: no finite anchor");
    return best;
}

}  // namespace

ConjugateValue flipped_conjugate(const BivariateFunction& f, const Vec& xstar, const Vec& x,
                                 const GridSpec& spec, const FlippedConjugateOptions& opts) {
    require_dim(xstar.size(), f.ambient_dim(), "flipped_conjugate");
    require_dim(x.size(), f.ambient_dim(), "flipped_conjugate");
    ConjugateValue out;

    const bool want_closed = opts.backend != ConjugateBackend::Grid;
    if (const auto* fl = std::get_if<BivariateFunction::FitzLinearClosed>(&f.variant());
        fl && want_closed) {
        // F_A*(x*, x) = iota_{gra A}(x, x*) + <x, x*>.
        out.backend = "closed_form";
        out.value = fl->rel.contains(x, xstar, 1e-9) ? ExtReal(x.dot(xstar)) : ExtReal::pos_inf();
        return out;
    }
    if (const auto* gi = std::get_if<BivariateFunction::GraphIndicatorPlusPairing>(&f.variant());
        gi && want_closed) {
        // The conjugate of the graph indicator plus pairing is the exact
        // Fitzpatrick function of the relation.
        out.backend = "closed_form";
        out.value = quad_fitz_eval(make_quad_cache(gi->rel), x, xstar);
        return out;
    }
    if (const auto* nc = std::get_if<BivariateFunction::FitzNormalCone>(&f.variant());
        nc && want_closed) {
        // (iota_C (+) sigma_C)*(x*, x) = sigma_C(x*) + iota_C(x).
        out.backend = "closed_form";
        out.value = nc->set.contains(x, 1e-9) ? nc->set.support(xstar) : ExtReal::pos_inf();
        return out;
    }
    if (opts.backend == ConjugateBackend::ClosedForm)
        throw NoClosedForm("flipped_conjugate: no closed form for this variant");

    auto sup_at = [&](const GridSpec& s) {
        auto anchors = f.conjugation_anchors(s, opts.axis_cap);
        anchors.insert(anchors.end(), opts.extra_anchors.begin(), opts.extra_anchors.end());
        return grid_sup(f, xstar, x, anchors);
    };

    ExtReal base = sup_at(spec);
    out.value = base;
    out.backend = "grid";
    if (!opts.escalate || !base.is_finite()) return out;

    // Escalation protocol: a sup that keeps growing linearly across two
    // 32x radius boosts is reported as +inf.
    int coarse_n = std::min(spec.points_per_axis, opts.axis_cap > 0 ? opts.axis_cap : 33);
    GridSpec coarse{spec.box_radius, coarse_n};
    double s0 = sup_at(coarse).raw();
    double s1 = sup_at(GridSpec{32.0 * spec.box_radius, coarse.points_per_axis}).raw();
    double s2 = sup_at(GridSpec{1024.0 * spec.box_radius, coarse.points_per_axis}).raw();
    out.escalation = {{spec.box_radius, s0},
                      {32.0 * spec.box_radius, s1},
                      {1024.0 * spec.box_radius, s2}};
    double g1 = s1 - s0, g2 = s2 - s1;
    double floor = 1e-6 * std::max(1.0, std::abs(s0));
    if (g1 > floor && g2 > 8.0 * g1) {
        out.value = ExtReal::pos_inf();
        out.backend = "grid_escalated";
    }
    return out;
}

InfConvValue partial_inf_conv(const BivariateFunction& f1, const BivariateFunction& f2,
                              const Vec& x, const Vec& xstar, const GridSpec& inner_grid) {
    require_dim(f2.ambient_dim(), f1.ambient_dim(), "partial_inf_conv");
    const int n = f1.ambient_dim();
    require_dim(x.size(), n, "partial_inf_conv");
    require_dim(xstar.size(), n, "partial_inf_conv");

    InfConvValue out;
    const auto* gi = std::get_if<BivariateFunction::GraphIndicatorPlusPairing>(&f1.variant());
    const auto* nc = std::get_if<BivariateFunction::FitzNormalCone>(&f2.variant());
    if (gi && nc && gi->rel.at_most_single_valued()) {
        out.backend = "exact_reduction";
        if (!nc->set.contains(x, 1e-9)) return out;  // +inf
        auto fiber = gi->rel.apply(x);
        if (fiber.kind != LinearRelation::ApplyResult::Kind::Point) return out;  // off dom A
        Vec ax = fiber.point;
        out.value = ExtReal(x.dot(ax)) + nc->set.support(xstar - ax);
        if (out.value.is_finite()) out.argmin = xstar - ax;
        return out;
    }

    auto minimize = [&](const GridSpec& s) -> InfConvValue {
        InfConvValue v;
        v.backend = "grid";
        double total = std::pow(double(s.points_per_axis), double(n));
        if (total > 2e6)
            throw ValidationError("partial_inf_conv: inner grid too large for this dimension");
        std::vector<double> nodes = axis_nodes(s, s.points_per_axis);
        std::vector<int> counter(n, 0);
        Vec vstar(n);
        while (true) {
            for (int i = 0; i < n; ++i) vstar(i) = nodes[counter[i]];
            ExtReal term = f1.eval(x, xstar - vstar) + f2.eval(x, vstar);
            if (term < v.value) {
                v.value = term;
                v.argmin = vstar;
            }
            int d = 0;
            while (d < n) {
                if (++counter[d] < static_cast<int>(nodes.size())) break;
                counter[d++] = 0;
            }
            if (d == n) break;
        }
        return v;
    };

    InfConvValue coarse = minimize(inner_grid);
    GridSpec refined{inner_grid.box_radius, 2 * inner_grid.points_per_axis - 1};
    InfConvValue fine = minimize(refined);
    if (coarse.value.is_finite() && fine.value.is_finite() &&
        std::abs(coarse.value.finite() - fine.value.finite()) >
            1e-6 * std::max(1.0, std::abs(fine.value.finite()))) {
        GridSpec finest{inner_grid.box_radius, 4 * inner_grid.points_per_axis - 3};
        fine = minimize(finest);
        fine.backend = "grid_refined";
    }
    return fine;
}

BcReport bc_check(const BivariateFunction& f, const std::vector<std::pair<Vec, Vec>>& sample,
                  const GridSpec& primal_grid, double tol) {
    if (sample.empty()) throw ValidationError("bc_check: empty sample");
    BcReport rep;
    for (const auto& [x, xstar] : sample) {
        BcRecord rec;
        rec.x = x;
        rec.xstar = xstar;
        rec.f_value = f.eval(x, xstar);
        rec.pairing = x.dot(xstar);
        auto conj = flipped_conjugate(f, xstar, x, primal_grid);
        rec.conj_value = conj.value;
        rec.backend = conj.backend;

        bool violation = false;
        if (rec.f_value.is_finite()) {
            if (rec.conj_value.is_finite()) {
                double margin = rec.conj_value.finite() - rec.f_value.finite();
                rep.worst_conjugate_margin = std::min(rep.worst_conjugate_margin, margin);
                if (margin < -tol) violation = true;
            }
            double pairing_margin = rec.f_value.finite() - rec.pairing;
            rep.worst_pairing_margin = std::min(rep.worst_pairing_margin, pairing_margin);
            if (pairing_margin < -tol) violation = true;
        } else if (rec.conj_value.is_finite()) {
            violation = true;  // F = +inf demands an (escalated) infinite conjugate
        }
        if (violation && !rep.violator) {
            rep.violator = rec;
            rep.pass = false;
        }
        rep.records.push_back(std::move(rec));
    }

    // Midpoint convexity across sample pairs: BC-functions are convex, and
    // the pairing restricted to a non-monotone graph is not.
    for (size_t i = 0; i + 1 < sample.size(); ++i) {
        for (size_t k : {i + 1, sample.size() - 1 - i}) {
            if (k <= i || k >= sample.size()) continue;
            const auto& [x1, s1] = sample[i];
            const auto& [x2, s2] = sample[k];
            ExtReal f1 = f.eval(x1, s1), f2 = f.eval(x2, s2);
            if (!f1.is_finite() || !f2.is_finite()) continue;
            ExtReal fm = f.eval(0.5 * (x1 + x2), 0.5 * (s1 + s2));
            if (!fm.is_finite()) continue;  // probe finite triples only
            double margin = 0.5 * (f1.finite() + f2.finite()) - fm.finite();
            rep.worst_convexity_margin = std::min(rep.worst_convexity_margin, margin);
            if (margin < -tol && !rep.violator) {
                BcRecord rec;
                rec.x = 0.5 * (x1 + x2);
                rec.xstar = 0.5 * (s1 + s2);
                rec.f_value = fm;
                rec.conj_value = ExtReal(0.5 * (f1.finite() + f2.finite()));
                rec.pairing = rec.x.dot(rec.xstar);
                rec.backend = "midpoint_convexity";
                rep.violator = rec;
                rep.pass = false;
            }
        }
    }
    return rep;
}

PosSet pos_extract(const BivariateFunction& f, const GridSpec& grid, double tol) {
    const int n = f.ambient_dim();
    PosSet pos;
    pos.tol = tol;
    if (n > 2) throw ValidationError("pos_extract: ambient dimension capped at 2");
    const int cap = n == 1 ? grid.points_per_axis : 33;
    auto nodes = axis_nodes(grid, cap);

    std::vector<Vec> pts;
    if (n == 1) {
        for (double v : nodes) pts.push_back(Vec::Constant(1, v));
    } else {
        for (double a : nodes)
            for (double b : nodes) {
                Vec v(2);
                v << a, b;
                pts.push_back(v);
            }
    }
    for (const auto& x : pts)
        for (const auto& xstar : pts) {
            ExtReal v = f.eval(x, xstar);
            if (!v.is_finite()) continue;
            if (std::abs(v.finite() - x.dot(xstar)) <= tol) pos.points.emplace_back(x, xstar);
        }
    return pos;
}

CrosscheckReport simons_zalinescu_crosscheck(const BivariateFunction& f1,
                                             const BivariateFunction& f2, const Vec& xstar,
                                             const Vec& x, const GridSpec& outer_grid,
                                             const GridSpec& inner_grid) {
    if (!minkowski_span_closed_subspace(f1.domain_projection(), f2.domain_projection()))
        throw HypothesisFailed("transversality: union of dilated domain differences is not a subspace");

    const int n = f1.ambient_dim();
    // (F1 box_2 F2) > -inf, sampled.
    {
        GridSpec coarse{outer_grid.box_radius, 5};
        auto nodes = axis_nodes(coarse, 5);
        for (double a : nodes)
            for (double b : nodes) {
                Vec px = Vec::Constant(n, a), ps = Vec::Constant(n, b);
                if (partial_inf_conv(f1, f2, px, ps, inner_grid).value.is_neg_inf())
                    throw HypothesisFailed("partial inf-convolution reaches -inf");
            }
    }

    BivariateFunction conv = BivariateFunction::partial_inf_conv_fn(f1, f2, inner_grid);
    FlippedConjugateOptions gopts;
    gopts.backend = ConjugateBackend::Grid;
    CrosscheckReport rep{ExtReal::pos_inf(), ExtReal::pos_inf(), 0.0, 0.0, false};
    rep.lhs = flipped_conjugate(conv, xstar, x, outer_grid, gopts).value;

    // min over u* of F1*(x* - u*, x) + F2*(u*, x).
    std::vector<Vec> candidates;
    auto nodes = axis_nodes(inner_grid, n == 1 ? inner_grid.points_per_axis : 33);
    if (n == 1) {
        for (double v : nodes) candidates.push_back(Vec::Constant(1, v));
    } else if (n == 2) {
        for (double a : nodes)
            for (double b : nodes) {
                Vec v(2);
                v << a, b;
                candidates.push_back(v);
            }
    } else {
        throw ValidationError("simons_zalinescu_crosscheck: ambient dimension capped at 2");
    }
    candidates.push_back(Vec::Zero(n));
    candidates.push_back(xstar);
    if (const auto* gi = std::get_if<BivariateFunction::GraphIndicatorPlusPairing>(&f1.variant())) {
        auto fiber = gi->rel.apply(x);
        if (fiber.kind == LinearRelation::ApplyResult::Kind::Point)
            candidates.push_back(xstar - fiber.point);  // the attained minimizer
    }
    if (const auto* fl = std::get_if<BivariateFunction::FitzLinearClosed>(&f1.variant())) {
        auto fiber = fl->rel.apply(x);
        if (fiber.kind == LinearRelation::ApplyResult::Kind::Point)
            candidates.push_back(xstar - fiber.point);
    }

    ExtReal best = ExtReal::pos_inf();
    for (const auto& ustar : candidates) {
        ExtReal term = flipped_conjugate(f1, xstar - ustar, x, outer_grid).value +
                       flipped_conjugate(f2, ustar, x, outer_grid).value;
        if (term < best) best = term;
    }
    rep.rhs = best;

    rep.tolerance = 2.0 * outer_grid.spacing() + 1e-7;
    if (rep.lhs.is_finite() && rep.rhs.is_finite())
        rep.gap = std::abs(rep.lhs.finite() - rep.rhs.finite());
    else if (rep.lhs == rep.rhs)
        rep.gap = 0.0;
    else
        rep.gap = std::numeric_limits<double>::infinity();
    rep.pass = rep.gap <= rep.tolerance;
    return rep;
}

MSetReport fact34_m_set(const BivariateFunction& f1, const BivariateFunction& f2,
                        const GridSpec& grid, double tol) {
    // Gate: both factors must be BC on a grid sample.
    auto gate_sample = [&](const BivariateFunction& f) {
        std::vector<std::pair<Vec, Vec>> pts;
        auto nodes = axis_nodes(grid, 9);
        const int n = f.ambient_dim();
        for (double a : nodes)
            for (double b : nodes)
                pts.emplace_back(Vec::Constant(n, a), Vec::Constant(n, b));
        return pts;
    };
    if (!bc_check(f1, gate_sample(f1), grid, 1e-7).pass)
        throw HypothesisFailed("fact34: F1 is not a BC-function on the grid");
    if (!bc_check(f2, gate_sample(f2), grid, 1e-7).pass)
        throw HypothesisFailed("fact34: F2 is not a BC-function on the grid");

    PosSet pos1 = pos_extract(f1, grid, tol);
    PosSet pos2 = pos_extract(f2, grid, tol);

    MSetReport rep;
    const double match = 0.5 * grid.spacing();
    for (const auto& [x, xstar] : pos1.points)
        for (const auto& [y, ystar] : pos2.points)
            if ((x - y).norm() <= match) rep.m_points.emplace_back(x, xstar + ystar);

    rep.monotone = true;
    for (size_t i = 0; i < rep.m_points.size(); ++i)
        for (size_t j = i + 1; j < rep.m_points.size(); ++j) {
            double v = (rep.m_points[i].first - rep.m_points[j].first)
                           .dot(rep.m_points[i].second - rep.m_points[j].second);
            rep.worst_pair_value = std::min(rep.worst_pair_value, v);
            if (v < -tol) rep.monotone = false;
        }

    // Refutation-only maximality probe over the grid.
    const int n = f1.ambient_dim();
    auto nodes = axis_nodes(grid, n == 1 ? std::min(grid.points_per_axis, 65) : 17);
    std::vector<Vec> pts;
    if (n == 1)
        for (double v : nodes) pts.push_back(Vec::Constant(1, v));
    else
        for (double a : nodes)
            for (double b : nodes) {
                Vec v(2);
                v << a, b;
                pts.push_back(v);
            }
    for (const auto& w : pts) {
        for (const auto& wstar : pts) {
            bool on_m = false;
            for (const auto& [mx, mu] : rep.m_points)
                if ((mx - w).norm() <= match && (mu - wstar).norm() <= match) on_m = true;
            if (on_m) continue;
            bool related = true;
            for (const auto& [mx, mu] : rep.m_points)
                if ((w - mx).dot(wstar - mu) < -tol) {
                    related = false;
                    break;
                }
            if (related && !rep.m_points.empty()) {
                rep.related_outside.emplace_back(w, wstar);
                if (rep.related_outside.size() >= 64) return rep;
            }
        }
    }
    return rep;
}

}  // namespace bcmono
