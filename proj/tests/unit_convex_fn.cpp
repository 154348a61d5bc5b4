#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bcmono/convex_fn.hpp"
#include "bcmono/sampling.hpp"

using namespace bcmono;

namespace {

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("pointwise evaluation") {
    auto ball = ConvexSet::ball(Vec::Zero(2), 1.0);
    auto ind = ConvexFunction::indicator(ball);
    CHECK(ind.eval(v2(0.3, 0.4)).finite() == 0.0);
    CHECK(ind.eval(v2(2.0, 0.0)).is_pos_inf());

    auto sup = ConvexFunction::support(ball);
    CHECK(sup.eval(v2(3.0, 4.0)).finite() == doctest::Approx(5.0));

    auto lin = ConvexFunction::linear(v2(1.0, -2.0), 0.5);
    CHECK(lin.eval(v2(2.0, 1.0)).finite() == doctest::Approx(0.5));

    auto nrm = ConvexFunction::norm(2, 2.0);
    CHECK(nrm.eval(v2(3.0, 4.0)).finite() == doctest::Approx(10.0));
}

TEST_CASE("indicator and support conjugate to each other") {
    auto c = ConvexSet::segment(v2(-1, 0), v2(1, 1));
    auto ind = ConvexFunction::indicator(c);
    auto conj = ind.conjugate_closed_form();
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        Vec xstar = rng.vec_in_box(2, 3.0);
        CHECK(conj.eval(xstar).raw() == c.support(xstar).raw());
    }
    // And back: the biconjugate is the indicator again.
    auto back = conj.conjugate_closed_form();
    CHECK(back.eval(v2(0.0, 0.5)).finite() == 0.0);
    CHECK(back.eval(v2(2.0, 2.0)).is_pos_inf());
}

TEST_CASE("linear conjugates to a singleton indicator") {
    auto lin = ConvexFunction::linear(v2(1.0, 2.0), 0.0);
    auto conj = lin.conjugate_closed_form();
    CHECK(conj.eval(v2(1.0, 2.0)).finite() == 0.0);
    CHECK(conj.eval(v2(1.0, 2.1)).is_pos_inf());

    auto affine = ConvexFunction::linear(v2(1.0, 2.0), 3.0);
    auto conj2 = affine.conjugate_closed_form();
    CHECK(conj2.eval(v2(1.0, 2.0)).finite() == doctest::Approx(-3.0));
}

TEST_CASE("norm conjugates to the ball indicator") {
    auto nrm = ConvexFunction::norm(2, 1.5);
    auto conj = nrm.conjugate_closed_form();
    CHECK(conj.eval(v2(1.5, 0.0)).finite() == 0.0);
    CHECK(conj.eval(v2(1.6, 0.0)).is_pos_inf());
}

TEST_CASE("positive definite quadratic conjugation") {
    Mat q(2, 2);
    q << 2.0, 0.5, 0.5, 1.0;
    Vec a = v2(0.3, -0.7);
    auto f = ConvexFunction::quadratic(q, a, 0.25);
    auto fstar = f.conjugate_closed_form();
    auto fss = fstar.conjugate_closed_form();
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        Vec x = rng.vec_in_box(2, 2.0);
        // Double conjugation is the identity for closed convex functions.
        CHECK(fss.eval(x).finite() == doctest::Approx(f.eval(x).finite()).epsilon(1e-10));
        // Fenchel-Young with equality at x* = grad f(x).
        Vec xstar = q * x + a;
        double fy = f.eval(x).finite() + fstar.eval(xstar).finite() - x.dot(xstar);
        CHECK(std::abs(fy) <= 1e-9);
    }
    // PSD but singular: no rule.
    Mat psd = Mat::Zero(2, 2);
    psd(0, 0) = 1.0;
    CHECK_THROWS_AS(ConvexFunction::quadratic(psd, Vec::Zero(2)).conjugate_closed_form(),
                    NoClosedForm);
}

TEST_CASE("separable sum of indicator and support") {
    // conj(iota_C (+) sigma_C) = sigma_C (+) iota_C, cross-checked against
    // the two-dimensional grid transform.
    auto c = ConvexSet::interval(-1.0, 1.0);
    auto f = ConvexFunction::separable_sum(ConvexFunction::indicator(c),
                                           ConvexFunction::support(c));
    auto conj = f.conjugate_closed_form();
    GridSpec spec{4.0, 65};
    const double h = spec.spacing();
    GridFunction grid_conj = conjugate_grid(f, spec);
    for (int i = 0; i < spec.points_per_axis; ++i)
        for (int j = 0; j < spec.points_per_axis; ++j) {
            Vec y = v2(spec.node(i), spec.node(j));
            ExtReal closed = conj.eval(y);
            ExtReal gridv = grid_conj.at(i, j);
            if (!closed.is_finite()) continue;  // grid sup stays finite but huge
            if (std::abs(y(0)) > 2.0 || std::abs(y(1)) > 2.0) continue;
            CHECK(std::abs(closed.finite() - gridv.finite()) <= 2.0 * h);
        }
}

TEST_CASE("shifted conjugation rule") {
    auto base = ConvexFunction::quadratic(Mat::Identity(2, 2), Vec::Zero(2));
    Vec t = v2(1.0, -0.5);
    auto f = ConvexFunction::shifted(base, t);
    auto fstar = f.conjugate_closed_form();
    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        Vec y = rng.vec_in_box(2, 2.0);
        double expected = 0.5 * y.squaredNorm() + t.dot(y);
        CHECK(fstar.eval(y).finite() == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("no closed form falls back to the grid") {
    auto a = ConvexFunction::norm(1, 1.0);
    auto b = ConvexFunction::quadratic(Mat::Identity(1, 1), Vec::Zero(1));
    auto s = ConvexFunction::sum(a, b);
    CHECK_FALSE(s.try_conjugate_closed_form().has_value());
    GridSpec spec{4.0, 129};
    GridFunction g = conjugate_grid(s, spec);
    // Oracle: (|x| + x^2/2)* (y) = (|y| - 1)_+^2 / 2.
    for (int j = 0; j < spec.points_per_axis; ++j) {
        double y = spec.node(j);
        if (std::abs(y) > 2.0) continue;
        double expected = 0.5 * std::pow(std::max(std::abs(y) - 1.0, 0.0), 2.0);
        CHECK(std::abs(g.at(j).finite() - expected) <= 2.0 * spec.spacing());
    }
}

TEST_CASE("grid conjugation rejects the everywhere-infinite function") {
    auto f = ConvexFunction::indicator(ConvexSet::singleton(Vec::Constant(1, 10.0)));
    CHECK_THROWS_AS(conjugate_grid(f, GridSpec{4.0, 33}), AllInfinite);
}

TEST_CASE("fenchel-young across backends") {
    auto c = ConvexSet::ball(Vec::Zero(2), 1.0);
    auto f = ConvexFunction::indicator(c);
    auto fstar = f.conjugate_closed_form();
    Rng rng(23);
    for (int k = 0; k < 500; ++k) {
        Vec x = rng.vec_in_ball(2, 1.0);
        Vec y = rng.vec_in_box(2, 3.0);
        ExtReal lhs = f.eval(x) + fstar.eval(y);
        CHECK(lhs.raw() >= x.dot(y) - 1e-9);
    }
}

TEST_CASE("dimension checks") {
    auto f = ConvexFunction::norm(2, 1.0);
    CHECK_THROWS_AS(f.eval(Vec::Zero(3)), DimensionMismatch);
    CHECK_THROWS_AS(
        ConvexFunction::sum(ConvexFunction::norm(2, 1.0), ConvexFunction::norm(3, 1.0)),
        DimensionMismatch);
    auto sep = ConvexFunction::separable_sum(ConvexFunction::norm(2, 1.0),
                                             ConvexFunction::norm(1, 1.0));
    CHECK(sep.dim() == 3);
    CHECK(sep.eval(Vec::Ones(3)).finite() == doctest::Approx(std::sqrt(2.0) + 1.0));
}
