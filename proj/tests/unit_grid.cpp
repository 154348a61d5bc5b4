#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bcmono/convex_fn.hpp"
#include "bcmono/grid_fn.hpp"

using namespace bcmono;

namespace {

// Random proper convex samples: sorted slope increments, optional +inf tails.
std::vector<ExtReal> random_convex_samples(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> slope(-5.0, 5.0);
    std::uniform_int_distribution<int> cut(0, n / 4);
    std::vector<double> slopes(n - 1);
    for (auto& s : slopes) s = slope(rng);
    std::sort(slopes.begin(), slopes.end());
    std::vector<ExtReal> f(n, ExtReal(0.0));
    double v = slope(rng);
    f[0] = ExtReal(v);
    const double h = 8.0 / (n - 1);
    for (int i = 1; i < n; ++i) {
        v += slopes[i - 1] * h;
        f[i] = ExtReal(v);
    }
    int lo = cut(rng), hi = cut(rng);
    for (int i = 0; i < lo; ++i) f[i] = ExtReal::pos_inf();
    for (int i = 0; i < hi; ++i) f[n - 1 - i] = ExtReal::pos_inf();
    if (lo + hi >= n) f[n / 2] = ExtReal(0.0);
    return f;
}

}  // namespace

TEST_CASE("grid evaluation and poisoning") {
    GridSpec spec{2.0, 5};  // nodes -2,-1,0,1,2
    std::vector<ExtReal> vals = {ExtReal(4.0), ExtReal(1.0), ExtReal(0.0), ExtReal(1.0),
                                 ExtReal::pos_inf()};
    GridFunction g(1, spec, vals);
    CHECK(g.eval(Vec::Constant(1, 0.0)).finite() == 0.0);
    CHECK(g.eval(Vec::Constant(1, -0.5)).finite() == doctest::Approx(0.5));
    CHECK(g.eval(Vec::Constant(1, 1.0)).finite() == 1.0);   // exact node before the poisoned cell
    CHECK(g.eval(Vec::Constant(1, 1.5)).is_pos_inf());      // poisoned cell
    CHECK(g.eval(Vec::Constant(1, 3.0)).is_pos_inf());      // outside the box
}

TEST_CASE("csv round trip") {
    GridSpec spec{1.0, 4};
    std::vector<ExtReal> vals = {ExtReal(0.25), ExtReal::pos_inf(), ExtReal(-3.5), ExtReal(1e-9)};
    GridFunction g(1, spec, vals);
    std::stringstream ss;
    g.save_csv(ss);
    GridFunction h = GridFunction::load_csv(ss);
    REQUIRE(h.values().size() == vals.size());
    for (size_t i = 0; i < vals.size(); ++i) CHECK(h.values()[i] == vals[i]);
    CHECK(h.spec().box_radius == 1.0);

    // Random two-dimensional round trip.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    GridSpec spec2{2.0, 5};
    std::vector<ExtReal> vals2;
    for (int i = 0; i < 25; ++i)
        vals2.push_back(i % 7 == 3 ? ExtReal::pos_inf() : ExtReal(dist(rng)));
    GridFunction g2(2, spec2, vals2);
    std::stringstream ss2;
    g2.save_csv(ss2);
    GridFunction h2 = GridFunction::load_csv(ss2);
    REQUIRE(h2.dim() == 2);
    for (size_t i = 0; i < vals2.size(); ++i) CHECK(h2.values()[i] == vals2[i]);

    CHECK_THROWS_AS(
        [] {
            std::stringstream bad("1,4.0,5\n0,1.0\n");
            return GridFunction::load_csv(bad);
        }(),
        ParseError);
}

TEST_CASE("conjugate of the half square is itself") {
    // f = x^2/2 is self-conjugate; the analytic formula is the oracle.
    GridSpec spec{4.0, 257};
    auto f = ConvexFunction::quadratic(Mat::Identity(1, 1), Vec::Zero(1));
    GridFunction g = conjugate_grid(f, spec);
    const double h = spec.spacing();
    for (int j = 0; j < spec.points_per_axis; ++j) {
        double y = spec.node(j);
        if (std::abs(y) > 2.0) continue;
        CHECK(std::abs(g.at(j).finite() - 0.5 * y * y) <= h * h);
    }
}

TEST_CASE("conjugate of the interval indicator is the absolute value") {
    GridSpec spec{4.0, 257};
    auto f = ConvexFunction::indicator(ConvexSet::interval(-1.0, 1.0));
    GridFunction g = conjugate_grid(f, spec);
    const double h = spec.spacing();
    for (int j = 0; j < spec.points_per_axis; ++j) {
        double y = spec.node(j);
        if (std::abs(y) > 2.0) continue;
        CHECK(std::abs(g.at(j).finite() - std::abs(y)) <= h);
    }
}

TEST_CASE("all-infinite input raises") {
    std::vector<ExtReal> vals(9, ExtReal::pos_inf());
    CHECK_THROWS_AS(legendre::transform_1d_brute(vals, 1.0), AllInfinite);
    CHECK_THROWS_AS(legendre::transform_1d_fast(vals, 1.0), AllInfinite);
}

TEST_CASE("fast path equals brute force bit for bit") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_convex_samples(rng, 257);
        auto brute = legendre::transform_1d_brute(f, 4.0);
        auto fast = legendre::transform_1d_fast(f, 4.0);
        REQUIRE(brute.size() == fast.size());
        for (size_t i = 0; i < brute.size(); ++i) CHECK(brute[i].raw() == fast[i].raw());
    }
}

TEST_CASE("conjugation reverses the pointwise order") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> bump(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_convex_samples(rng, 65);
        auto g = f;
        for (auto& v : g)
            if (v.is_finite()) v = v + ExtReal(bump(rng));  // g >= f pointwise
        auto fstar = legendre::transform_1d_brute(f, 4.0);
        auto gstar = legendre::transform_1d_brute(g, 4.0);
        for (size_t i = 0; i < fstar.size(); ++i) CHECK(fstar[i].raw() >= gstar[i].raw());
    }
}

TEST_CASE("two-dimensional conjugate matches the separable closed form") {
    // f(x) = |x|^2/2 on R^2 is self-conjugate.
    GridSpec spec{4.0, 33};
    auto f = ConvexFunction::quadratic(Mat::Identity(2, 2), Vec::Zero(2));
    GridFunction g = conjugate_grid(f, spec);
    const double h = spec.spacing();
    for (int i = 0; i < spec.points_per_axis; ++i)
        for (int j = 0; j < spec.points_per_axis; ++j) {
            Vec y(2);
            y << spec.node(i), spec.node(j);
            if (y.lpNorm<Eigen::Infinity>() > 2.0) continue;
            CHECK(std::abs(g.at(i, j).finite() - 0.5 * y.squaredNorm()) <= 2.0 * h * h);
        }
}

TEST_CASE("biconjugate fixtures") {
    GridSpec spec{4.0, 257};
    const double h = spec.spacing();
    auto abs_fn = ConvexFunction::norm(1, 1.0);
    auto sq_fn = ConvexFunction::quadratic(Mat::Identity(1, 1), Vec::Zero(1));
    auto ind_fn = ConvexFunction::indicator(ConvexSet::interval(0.0, 1.0));
    CHECK(biconjugate_check(abs_fn, spec).sup_gap <= 2.0 * h);
    CHECK(biconjugate_check(sq_fn, spec).sup_gap <= 2.0 * h);
    CHECK(biconjugate_check(ind_fn, spec).sup_gap <= 2.0 * h);
}

TEST_CASE("fenchel-young on the grid") {
    GridSpec spec{4.0, 65};
    auto f = ConvexFunction::norm(1, 1.0);
    GridFunction fstar = conjugate_grid(f, spec);
    for (int i = 0; i < spec.points_per_axis; ++i)
        for (int j = 0; j < spec.points_per_axis; ++j) {
            double x = spec.node(i), y = spec.node(j);
            ExtReal lhs = f.eval(Vec::Constant(1, x)) + fstar.at(j);
            CHECK(lhs.raw() >= x * y - 1e-9);
        }
}
