#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bcmono/sampling.hpp"
#include "bcmono/sets.hpp"

using namespace bcmono;

namespace {

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec v3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

}  // namespace

TEST_CASE("membership") {
    auto ball = ConvexSet::ball(Vec::Zero(2), 1.0);
    CHECK(ball.contains(v2(1.0, 0.0), 0.0));  // boundary point, zero tolerance
    CHECK_FALSE(ball.contains(v2(1.0 + 1e-6, 0.0), 1e-9));

    auto seg = ConvexSet::segment(Vec::Zero(3), Vec::Unit(3, 0));
    CHECK(seg.contains(v3(0.5, 0.0, 0.0), 0.0));
    CHECK_FALSE(seg.contains(v3(0.5, 0.1, 0.0), 1e-9));

    CHECK_THROWS_AS(ball.contains(v3(0, 0, 0), 0.0), DimensionMismatch);
}

TEST_CASE("support functions") {
    auto ball = ConvexSet::ball(Vec::Zero(2), 1.0);
    CHECK(ball.support(v2(3.0, 4.0)).finite() == doctest::Approx(5.0));

    // sigma_[0,e1](A* e1) = 1/2 with A* e1 = e1/2.
    int n = 6;
    auto seg = ConvexSet::segment(Vec::Zero(n), Vec::Unit(n, 0));
    Vec xstar = 0.5 * Vec::Unit(n, 0);
    CHECK(seg.support(xstar).finite() == doctest::Approx(0.5));

    for (const auto& set : {ball, ConvexSet::box(v2(-1, 0), v2(2, 3)), ConvexSet::singleton(v2(1, 2))})
        CHECK(set.support(Vec::Zero(set.dim())).finite() == 0.0);
    CHECK(seg.support(Vec::Zero(n)).finite() == 0.0);

    auto sub = ConvexSet::subspace(Vec::Unit(3, 0));
    CHECK(sub.support(v3(0, 1, 0)).finite() == 0.0);
    CHECK(sub.support(v3(1, 0, 0)).is_pos_inf());

    auto box = ConvexSet::box(v2(-1, -std::numeric_limits<double>::infinity()),
                              v2(1, std::numeric_limits<double>::infinity()));
    CHECK_FALSE(box.bounded());
    CHECK(box.support(v2(1, 0)).finite() == 1.0);
    CHECK(box.support(v2(0, 1)).is_pos_inf());
}

TEST_CASE("normal cone of the unit ball") {
    auto ball = ConvexSet::ball(Vec::Zero(2), 1.0);
    auto inside = ball.normal_cone(v2(0.5, 0.0), 1e-9);
    CHECK(inside.is_zero_cone());

    auto boundary = ball.normal_cone(v2(0.0, 1.0), 1e-9);
    REQUIRE(boundary.generators.size() == 1);
    CHECK((boundary.generators[0] - v2(0.0, 1.0)).norm() <= 1e-12);
    CHECK(boundary.lineality.cols() == 0);

    CHECK(ball.normal_cone(v2(2.0, 0.0), 1e-9).empty);
}

TEST_CASE("normal cone of a segment") {
    auto seg = ConvexSet::segment(Vec::Zero(2), Vec::Unit(2, 0));
    auto interior = seg.normal_cone(v2(0.5, 0.0), 1e-9);
    CHECK(interior.generators.empty());
    CHECK(interior.lineality.cols() == 1);

    auto left = seg.normal_cone(v2(0.0, 0.0), 1e-9);
    REQUIRE(left.generators.size() == 1);
    CHECK(left.generators[0](0) == doctest::Approx(-1.0));

    auto right = seg.normal_cone(v2(1.0, 0.0), 1e-9);
    REQUIRE(right.generators.size() == 1);
    CHECK(right.generators[0](0) == doctest::Approx(1.0));
}

TEST_CASE("normal cone variational inequality") {
    Rng rng(42);
    std::vector<ConvexSet> sets = {
        ConvexSet::ball(v2(0.5, -0.5), 2.0),
        ConvexSet::segment(v2(-1, 0), v2(1, 1)),
        ConvexSet::box(v2(-1, -2), v2(2, 1)),
        ConvexSet::polytope({v2(0, 0), v2(1, 0), v2(0, 1), v2(1, 1.5)}),
        ConvexSet::singleton(v2(0.3, 0.7)),
    };
    for (const auto& set : sets) {
        for (int trial = 0; trial < 20; ++trial) {
            Vec x = set.project(rng.vec_in_box(2, 2.5));
            auto cone = set.normal_cone(x, 1e-9);
            REQUIRE_FALSE(cone.empty);
            std::vector<Vec> dirs = cone.generators;
            for (Eigen::Index c = 0; c < cone.lineality.cols(); ++c) {
                dirs.push_back(cone.lineality.col(c));
                dirs.push_back(-cone.lineality.col(c));
            }
            for (const auto& g : dirs)
                for (int s = 0; s < 500; ++s) {
                    Vec c = sample_set(set, rng);
                    CHECK((c - x).dot(g) <= 1e-10);
                }
        }
    }
}

TEST_CASE("support is positively homogeneous") {
    Rng rng(7);
    auto sets = {ConvexSet::ball(v2(1, 2), 0.5), ConvexSet::segment(v2(0, 0), v2(1, 3)),
                 ConvexSet::polytope({v2(0, 0), v2(2, 1), v2(-1, 1)})};
    for (const auto& set : sets)
        for (int trial = 0; trial < 200; ++trial) {
            Vec xstar = rng.vec_in_box(2, 3.0);
            double lam = rng.uniform(0.0, 5.0);
            double lhs = set.support(lam * xstar).finite();
            double rhs = lam * set.support(xstar).finite();
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
}

TEST_CASE("support matches a brute-force maximum") {
    Rng rng(13);
    // Polyhedral sets: the vertex-biased sampler attains the maximum exactly.
    auto seg = ConvexSet::segment(v2(-1, 0), v2(1, 1));
    auto box = ConvexSet::box(v2(-1, -2), v2(2, 1));
    auto poly = ConvexSet::polytope({v2(0, 0), v2(1, 0), v2(0, 1)});
    for (const auto& set : {seg, box, poly}) {
        for (int trial = 0; trial < 20; ++trial) {
            Vec xstar = rng.vec_in_box(2, 2.0);
            double best = -1e300;
            for (int s = 0; s < 100000; ++s) best = std::max(best, sample_set(set, rng).dot(xstar));
            CHECK(std::abs(best - set.support(xstar).finite()) <= 1e-6);
        }
    }
    // Ball in the plane: dense deterministic boundary enumeration.
    auto ball = ConvexSet::ball(v2(0.5, 0.0), 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        Vec xstar = rng.vec_in_box(2, 2.0);
        double best = -1e300;
        for (int k = 0; k < 100000; ++k) {
            double th = 2.0 * M_PI * k / 100000;
            best = std::max(best, v2(0.5 + 1.5 * std::cos(th), 1.5 * std::sin(th)).dot(xstar));
        }
        CHECK(std::abs(best - ball.support(xstar).finite()) <= 1e-6);
    }
}

TEST_CASE("projection is the nearest point") {
    Rng rng(21);
    auto sets = {ConvexSet::ball(v2(0, 0), 1.0), ConvexSet::segment(v2(0, 0), v2(1, 0)),
                 ConvexSet::box(v2(-1, -1), v2(1, 1)),
                 ConvexSet::polytope({v2(0, 0), v2(1, 0), v2(0, 1)})};
    for (const auto& set : sets)
        for (int trial = 0; trial < 50; ++trial) {
            Vec x = rng.vec_in_box(2, 3.0);
            Vec p = set.project(x);
            CHECK(set.contains(p, 1e-8));
            for (int s = 0; s < 200; ++s) {
                Vec c = sample_set(set, rng);
                CHECK((x - p).dot(c - p) <= 1e-8);
            }
        }
}

TEST_CASE("transversality predicate") {
    // Whole space minus the unit ball spans everything.
    CHECK(minkowski_span_closed_subspace(ConvexSet::whole_space(2),
                                         ConvexSet::ball(Vec::Zero(2), 1.0)));
    // Segment minus itself spans the e1 line: a subspace.
    auto seg = ConvexSet::segment(Vec::Zero(2), Vec::Unit(2, 0));
    CHECK(minkowski_span_closed_subspace(seg, seg));
    // {0} minus the segment is only a ray.
    CHECK_FALSE(minkowski_span_closed_subspace(ConvexSet::singleton(Vec::Zero(2)), seg));
    // Hyperplane minus a transversal segment dilates to a halfspace only.
    Mat hyper(2, 1);
    hyper << 1, -1;  // the line x1 + x2 = 0... basis (1,-1)
    CHECK_FALSE(minkowski_span_closed_subspace(ConvexSet::subspace(hyper),
                                               ConvexSet::segment(Vec::Zero(2), Vec::Ones(2))));
    // Ball minus ball with 0 interior to the difference.
    CHECK(minkowski_span_closed_subspace(ConvexSet::ball(v2(0.2, 0.0), 1.0),
                                         ConvexSet::ball(Vec::Zero(2), 0.5)));
    // Far-apart balls: the dilates miss the origin.
    CHECK_FALSE(minkowski_span_closed_subspace(ConvexSet::ball(v2(5.0, 0.0), 1.0),
                                               ConvexSet::ball(Vec::Zero(2), 0.5)));
    CHECK(minkowski_span_closed_subspace(ConvexSet::singleton(Vec::Zero(2)),
                                         ConvexSet::singleton(Vec::Zero(2))));
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(ConvexSet::ball(Vec::Zero(2), 0.0), ValidationError);
    CHECK_THROWS_AS(ConvexSet::box(v2(1, 0), v2(0, 1)), ValidationError);
    CHECK_THROWS_AS(ConvexSet::polytope({}), ValidationError);
    Mat dep(2, 2);
    dep << 1, 2, 1, 2;
    CHECK_THROWS_AS(ConvexSet::subspace(dep), RankDeficientBasis);
    CHECK(ConvexSet::singleton(Vec::Zero(3)).is_zero_singleton());
    CHECK_FALSE(ConvexSet::ball(Vec::Zero(3), 1.0).is_zero_singleton());
}
