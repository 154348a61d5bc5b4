#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bcmono/numeric.hpp"

using namespace bcmono;
using namespace bcmono::numeric;

TEST_CASE("orthonormal basis and complement") {
    Mat a(3, 2);
    a << 1, 1, 0, 1, 0, 0;
    Mat q = orthonormal_basis(a);
    CHECK(q.cols() == 2);
    CHECK((q.transpose() * q - Mat::Identity(2, 2)).norm() <= 1e-12);
    Mat c = orthogonal_complement(q, 3);
    CHECK(c.cols() == 1);
    CHECK((q.transpose() * c).norm() <= 1e-12);
    CHECK(std::abs(std::abs(c(2, 0)) - 1.0) <= 1e-12);
}

TEST_CASE("subspace distance") {
    Mat q1 = Mat::Identity(3, 2);
    Mat q2(3, 2);
    q2 << 0, 1, 1, 0, 0, 0;  // same span, permuted basis
    CHECK(subspace_distance(q1, q2) <= 1e-12);
    Mat q3(3, 1);
    q3 << 0, 0, 1;
    CHECK(subspace_distance(q1, q3) == doctest::Approx(1.0));
}

TEST_CASE("nnls solves small systems") {
    Mat a(2, 2);
    a << 1, 0, 0, 1;
    Vec b(2);
    b << 3.0, -2.0;
    Vec x = nnls(a, b);
    CHECK(x(0) == doctest::Approx(3.0));
    CHECK(x(1) == doctest::Approx(0.0));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        Mat g = Mat::Random(4, 6);
        Vec mu(6);
        for (int i = 0; i < 6; ++i) mu(i) = dist(rng);
        Vec target = g * mu;  // representable: residual must vanish
        Vec sol = nnls(g, target);
        CHECK((g * sol - target).norm() <= 1e-8 * std::max(1.0, target.norm()));
        for (int i = 0; i < 6; ++i) CHECK(sol(i) >= -1e-12);
    }
}

TEST_CASE("cone distance") {
    Mat gens(2, 2);
    gens << 1, 0, 0, 1;  // the nonnegative quadrant
    Mat lin(2, 0);
    CHECK(dist_to_cone(gens, lin, Vec::Constant(2, 1.0)) <= 1e-12);
    Vec v(2);
    v << -1.0, 0.0;
    CHECK(dist_to_cone(gens, lin, v) == doctest::Approx(1.0));
}

TEST_CASE("projection onto a triangle") {
    Mat pts(2, 3);
    pts << 0, 1, 0, 0, 0, 1;
    Vec inside(2);
    inside << 0.2, 0.2;
    CHECK((project_generated_set(pts, Mat(2, 0), Mat(2, 0), inside) - inside).norm() <= 1e-10);
    Vec outside(2);
    outside << 2.0, 2.0;
    Vec proj = project_generated_set(pts, Mat(2, 0), Mat(2, 0), outside);
    Vec expected(2);
    expected << 0.5, 0.5;  // midpoint of the far edge
    CHECK((proj - expected).norm() <= 1e-9);
}

TEST_CASE("projection with rays and lineality") {
    Mat pts = Vec::Zero(2);
    Mat rays(2, 1);
    rays << 1, 0;
    Vec v(2);
    v << 3.0, 2.0;
    Vec proj = project_generated_set(pts, rays, Mat(2, 0), v);
    CHECK(proj(0) == doctest::Approx(3.0));
    CHECK(proj(1) == doctest::Approx(0.0));

    Mat lin(2, 1);
    lin << 0, 1;
    Vec proj2 = project_generated_set(pts, Mat(2, 0), lin, v);
    CHECK(proj2(0) == doctest::Approx(0.0));
    CHECK(proj2(1) == doctest::Approx(2.0));
}

TEST_CASE("polar cone of the positive quadrant") {
    Mat dirs(2, 2);
    dirs << 1, 0, 0, 1;
    auto polar = polar_cone(dirs, 2);
    CHECK(polar.lineality.cols() == 0);
    REQUIRE(polar.generators.size() >= 2);
    // Every generator obeys the inequalities; -e1 - e2 lies inside.
    for (const auto& g : polar.generators) {
        CHECK(g(0) <= 1e-10);
        CHECK(g(1) <= 1e-10);
    }
    Mat gens(2, static_cast<Eigen::Index>(polar.generators.size()));
    for (size_t k = 0; k < polar.generators.size(); ++k)
        gens.col(static_cast<Eigen::Index>(k)) = polar.generators[k];
    CHECK(dist_to_cone(gens, polar.lineality, -Vec::Ones(2)) <= 1e-9);
}

TEST_CASE("polar cone of a half line keeps a lineality part") {
    Mat dirs(2, 1);
    dirs << 1, 0;
    auto polar = polar_cone(dirs, 2);  // {g : g_1 <= 0}
    CHECK(polar.lineality.cols() == 1);
    CHECK(std::abs(std::abs(polar.lineality(1, 0)) - 1.0) <= 1e-12);
    REQUIRE(polar.generators.size() == 1);
    CHECK(polar.generators[0](0) == doctest::Approx(-1.0));
}
