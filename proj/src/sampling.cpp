#include "bcmono/sampling.hpp"

#include <cmath>

namespace bcmono {

Vec Rng::vec_in_box(int dim, double radius) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = uniform(-radius, radius);
    return v;
}

Vec Rng::vec_in_ball(int dim, double radius) {
    Vec v = unit_vec(dim);
    double r = radius * std::pow(uniform(0.0, 1.0), 1.0 / dim);
    return r * v;
}

Vec Rng::unit_vec(int dim) {
    Vec v(dim);
    double n = 0.0;
    do {
        for (int i = 0; i < dim; ++i) v(i) = gauss();
        n = v.norm();
    } while (n < 1e-12);
    return v / n;
}

Vec sample_set(const ConvexSet& c, Rng& rng) {
    const int d = c.dim();
    return std::visit(
        [&](const auto& s) -> Vec {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConvexSet::Ball>) {
                return s.center + rng.vec_in_ball(d, s.radius);
            } else if constexpr (std::is_same_v<T, ConvexSet::Segment>) {
                double t = rng.uniform(0.0, 1.0);
                // Bias toward the endpoints so extremes are represented.
                if (rng.uniform(0.0, 1.0) < 0.1) t = rng.uniform(0.0, 1.0) < 0.5 ? 0.0 : 1.0;
                return s.a + t * (s.b - s.a);
            } else if constexpr (std::is_same_v<T, ConvexSet::Box>) {
                Vec v(d);
                for (int i = 0; i < d; ++i) {
                    double lo = std::isfinite(s.lower(i)) ? s.lower(i) : -1e3;
                    double hi = std::isfinite(s.upper(i)) ? s.upper(i) : 1e3;
                    double u = rng.uniform(0.0, 1.0);
                    if (u < 0.05)
                        v(i) = lo;
                    else if (u > 0.95)
                        v(i) = hi;
                    else
                        v(i) = lo + (hi - lo) * rng.uniform(0.0, 1.0);
                }
                return v;
            } else if constexpr (std::is_same_v<T, ConvexSet::Subspace>) {
                if (s.basis.cols() == 0) return Vec::Zero(d);
                Vec coeff(s.basis.cols());
                for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) = 3.0 * rng.gauss();
                return s.basis * coeff;
            } else if constexpr (std::is_same_v<T, ConvexSet::Singleton>) {
                return s.point;
            } else {
                // Vertex-biased convex combinations.
                if (rng.uniform(0.0, 1.0) < 0.2) {
                    size_t k = static_cast<size_t>(rng.uniform(0.0, double(s.vertices.size())));
                    if (k >= s.vertices.size()) k = s.vertices.size() - 1;
                    return s.vertices[k];
                }
                Vec w(static_cast<Eigen::Index>(s.vertices.size()));
                double total = 0.0;
                for (Eigen::Index i = 0; i < w.size(); ++i) {
                    w(i) = -std::log(rng.uniform(1e-12, 1.0));
                    total += w(i);
                }
                Vec v = Vec::Zero(d);
                for (size_t i = 0; i < s.vertices.size(); ++i)
                    v += (w(static_cast<Eigen::Index>(i)) / total) * s.vertices[i];
                return v;
            }
        },
        c.variant());
}

std::vector<std::pair<Vec, Vec>> sample_normal_cone_graph(const ConvexSet& c, int count,
                                                          double ray_scale, Rng& rng) {
    std::vector<std::pair<Vec, Vec>> out;
    out.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        Vec x = sample_set(c, rng);
        auto cone = c.normal_cone(x, 1e-9);
        Vec xstar = Vec::Zero(c.dim());
        for (const auto& g : cone.generators)
            xstar += rng.uniform(0.0, ray_scale) * g;
        for (Eigen::Index i = 0; i < cone.lineality.cols(); ++i)
            xstar += rng.uniform(-ray_scale, ray_scale) * cone.lineality.col(i);
        out.emplace_back(std::move(x), std::move(xstar));
    }
    return out;
}

std::vector<std::pair<Vec, Vec>> interval_normal_cone_graph(double lo, double hi,
                                                            int interior_count, int ray_count,
                                                            double ray_scale) {
    if (!(hi > lo)) throw ValidationError("interval_normal_cone_graph: need lo < hi");
    std::vector<std::pair<Vec, Vec>> out;
    out.reserve(static_cast<size_t>(interior_count + 2 * ray_count));
    const double h = (hi - lo) / interior_count;
    for (int i = 0; i < interior_count; ++i) {
        Vec x = Vec::Constant(1, lo + (i + 0.5) * h);  // cell centers, endpoints excluded
        out.emplace_back(x, Vec::Zero(1));
    }
    for (int j = 0; j < ray_count; ++j) {
        // Geometric ladder from just above 1 up to ray_scale; never exactly
        // zero, so endpoint suprema stay attained only in the limit.
        double gamma = std::pow(ray_scale, double(j + 1) / ray_count);
        out.emplace_back(Vec::Constant(1, hi), Vec::Constant(1, gamma));
        out.emplace_back(Vec::Constant(1, lo), Vec::Constant(1, -gamma));
    }
    return out;
}

}  // namespace bcmono
