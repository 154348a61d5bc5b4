#include "bcmono/convex_fn.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace bcmono {

ConvexFunction::ConvexFunction(Variant v, int dim)
    : variant_(std::make_shared<const Variant>(std::move(v))), dim_(dim) {}

ConvexFunction ConvexFunction::indicator(ConvexSet c) {
    int d = c.dim();
    return ConvexFunction(Indicator{std::move(c)}, d);
}

ConvexFunction ConvexFunction::support(ConvexSet c) {
    int d = c.dim();
    return ConvexFunction(Support{std::move(c)}, d);
}

ConvexFunction ConvexFunction::linear(Vec a, double b) {
    int d = static_cast<int>(a.size());
    return ConvexFunction(Linear{std::move(a), b}, d);
}

ConvexFunction ConvexFunction::quadratic(Mat q, Vec a, double b) {
    require_dim(q.rows(), a.size(), "quadratic");
    require_dim(q.cols(), a.size(), "quadratic");
    if ((q - q.transpose()).norm() > 1e-10 * std::max(1.0, q.norm()))
        throw ValidationError("quadratic: Q must be symmetric");
    int d = static_cast<int>(a.size());
    return ConvexFunction(Quadratic{std::move(q), std::move(a), b}, d);
}

ConvexFunction ConvexFunction::norm(int dim, double scale) {
    if (!(scale > 0)) throw ValidationError("norm: scale must be > 0");
    return ConvexFunction(Norm{scale}, dim);
}

ConvexFunction ConvexFunction::constant(int dim, double value) {
    return linear(Vec::Zero(dim), value);
}

ConvexFunction ConvexFunction::sum(ConvexFunction f, ConvexFunction g) {
    require_dim(g.dim(), f.dim(), "sum");
    int d = f.dim();
    return ConvexFunction(
        Sum{std::make_shared<const ConvexFunction>(std::move(f)),
            std::make_shared<const ConvexFunction>(std::move(g))},
        d);
}

ConvexFunction ConvexFunction::separable_sum(ConvexFunction f, ConvexFunction g) {
    int d = f.dim() + g.dim();
    return ConvexFunction(
        SeparableSum{std::make_shared<const ConvexFunction>(std::move(f)),
                     std::make_shared<const ConvexFunction>(std::move(g))},
        d);
}

ConvexFunction ConvexFunction::shifted(ConvexFunction f, Vec translation) {
    require_dim(translation.size(), f.dim(), "shifted");
    int d = f.dim();
    return ConvexFunction(
        Shifted{std::make_shared<const ConvexFunction>(std::move(f)), std::move(translation)}, d);
}

ConvexFunction ConvexFunction::from_grid(GridFunction g) {
    int d = g.dim();
    return ConvexFunction(Grid{std::move(g)}, d);
}

ExtReal ConvexFunction::eval(const Vec& x) const {
    require_dim(x.size(), dim_, "ConvexFunction::eval");
    return std::visit(
        [&](const auto& node) -> ExtReal {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Indicator>) {
                return node.set.contains(x, 1e-12) ? ExtReal(0.0) : ExtReal::pos_inf();
            } else if constexpr (std::is_same_v<T, Support>) {
                return node.set.support(x);
            } else if constexpr (std::is_same_v<T, Linear>) {
                return ExtReal(node.a.dot(x) + node.b);
            } else if constexpr (std::is_same_v<T, Quadratic>) {
                return ExtReal(0.5 * x.dot(node.q * x) + node.a.dot(x) + node.b);
            } else if constexpr (std::is_same_v<T, Norm>) {
                return ExtReal(node.scale * x.norm());
            } else if constexpr (std::is_same_v<T, Sum>) {
                return node.f->eval(x) + node.g->eval(x);
            } else if constexpr (std::is_same_v<T, SeparableSum>) {
                return node.f->eval(x.head(node.f->dim())) + node.g->eval(x.tail(node.g->dim()));
            } else if constexpr (std::is_same_v<T, Shifted>) {
                return node.f->eval(x - node.translation);
            } else {
                return node.grid.eval(x);
            }
        },
        *variant_);
}

std::optional<ConvexFunction> ConvexFunction::try_conjugate_closed_form() const {
    return std::visit(
        [&](const auto& node) -> std::optional<ConvexFunction> {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Indicator>) {
                return support(node.set);
            } else if constexpr (std::is_same_v<T, Support>) {
                // sigma_C^* = iota_C for closed convex C (every variant is).
                return indicator(node.set);
            } else if constexpr (std::is_same_v<T, Linear>) {
                ConvexFunction point = indicator(ConvexSet::singleton(node.a));
                if (node.b == 0.0) return point;
                return sum(std::move(point), constant(dim_, -node.b));
            } else if constexpr (std::is_same_v<T, Quadratic>) {
                Eigen::SelfAdjointEigenSolver<Mat> es(node.q);
                if (es.eigenvalues().minCoeff() <=
                    1e-10 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))
                    return std::nullopt;  // PSD but not PD: no rule
                Mat qinv = node.q.llt().solve(Mat::Identity(dim_, dim_));
                Vec qa = qinv * node.a;
                return quadratic(qinv, -qa, 0.5 * node.a.dot(qa) - node.b);
            } else if constexpr (std::is_same_v<T, Norm>) {
                return indicator(ConvexSet::ball(Vec::Zero(dim_), node.scale));
            } else if constexpr (std::is_same_v<T, SeparableSum>) {
                auto fc = node.f->try_conjugate_closed_form();
                auto gc = node.g->try_conjugate_closed_form();
                if (!fc || !gc) return std::nullopt;
                return separable_sum(std::move(*fc), std::move(*gc));
            } else if constexpr (std::is_same_v<T, Shifted>) {
                auto fc = node.f->try_conjugate_closed_form();
                if (!fc) return std::nullopt;
                return sum(std::move(*fc), linear(node.translation, 0.0));
            } else {
                return std::nullopt;  // Sum, Grid: grid backend territory
            }
        },
        *variant_);
}

ConvexFunction ConvexFunction::conjugate_closed_form() const {
    auto c = try_conjugate_closed_form();
    if (!c) throw NoClosedForm("no conjugation rule for this variant");
    return std::move(*c);
}

GridFunction conjugate_grid(const ConvexFunction& f, const GridSpec& spec, bool use_fast) {
    const int d = f.dim();
    if (d != 1 && d != 2) throw ValidationError("conjugate_grid: dim must be 1 or 2");
    const int n = spec.points_per_axis;
    std::vector<ExtReal> samples;
    samples.reserve(d == 1 ? n : n * n);
    if (d == 1) {
        Vec x(1);
        for (int i = 0; i < n; ++i) {
            x(0) = spec.node(i);
            samples.push_back(f.eval(x));
        }
        auto g = use_fast ? legendre::transform_1d_fast(samples, spec.box_radius)
                          : legendre::transform_1d_brute(samples, spec.box_radius);
        return GridFunction(1, spec, std::move(g));
    }
    Vec x(2);
    for (int i = 0; i < n; ++i) {
        x(0) = spec.node(i);
        for (int j = 0; j < n; ++j) {
            x(1) = spec.node(j);
            samples.push_back(f.eval(x));
        }
    }
    auto g = legendre::transform_2d_brute(samples, n, spec.box_radius);
    return GridFunction(2, spec, std::move(g));
}

BiconjugateReport biconjugate_check(const ConvexFunction& f, const GridSpec& spec) {
    const int d = f.dim();
    GridFunction fstar = conjugate_grid(f, spec);
    GridFunction fss = conjugate_grid(ConvexFunction::from_grid(fstar), spec);

    BiconjugateReport rep;
    rep.spacing = spec.spacing();
    const int n = spec.points_per_axis;
    const int lo = n / 4, hi = n - 1 - n / 4;  // inner half-box

    if (d == 1) {
        std::vector<ExtReal> fv(n, ExtReal::pos_inf());
        Vec x(1);
        for (int i = 0; i < n; ++i) {
            x(0) = spec.node(i);
            fv[i] = f.eval(x);
        }
        for (int i = std::max(lo, 1); i <= std::min(hi, n - 2); ++i) {
            if (!fv[i].is_finite() || !fv[i - 1].is_finite() || !fv[i + 1].is_finite()) continue;
            double gap = std::abs(fss.at(i).raw() - fv[i].finite());
            rep.sup_gap = std::max(rep.sup_gap, gap);
            ++rep.points_checked;
        }
        return rep;
    }

    std::vector<ExtReal> fv(static_cast<size_t>(n) * n, ExtReal::pos_inf());
    Vec x(2);
    for (int i = 0; i < n; ++i) {
        x(0) = spec.node(i);
        for (int j = 0; j < n; ++j) {
            x(1) = spec.node(j);
            fv[static_cast<size_t>(i) * n + j] = f.eval(x);
        }
    }
    auto at = [&](int i, int j) { return fv[static_cast<size_t>(i) * n + j]; };
    for (int i = std::max(lo, 1); i <= std::min(hi, n - 2); ++i)
        for (int j = std::max(lo, 1); j <= std::min(hi, n - 2); ++j) {
            bool ok = at(i, j).is_finite() && at(i - 1, j).is_finite() && at(i + 1, j).is_finite() &&
                      at(i, j - 1).is_finite() && at(i, j + 1).is_finite();
            if (!ok) continue;
            double gap = std::abs(fss.at(i, j).raw() - at(i, j).finite());
            rep.sup_gap = std::max(rep.sup_gap, gap);
            ++rep.points_checked;
        }
    return rep;
}

}  // namespace bcmono
