#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bcmono/numeric.hpp"
#include "bcmono/relations.hpp"
#include "bcmono/sampling.hpp"
#include "bcmono/shift.hpp"

using namespace bcmono;

namespace {

Mat rotation90() {
    Mat r(2, 2);
    r << 0, -1, 1, 0;
    return r;
}

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("graph construction") {
    auto rot = LinearRelation::from_matrix(rotation90());
    CHECK(rot.ambient_dim() == 2);
    CHECK(rot.graph_dim() == 2);

    auto zero = LinearRelation::from_matrix(Mat::Zero(3, 3));
    CHECK(zero.graph_dim() == 3);
    CHECK(zero.contains(Vec::Ones(3), Vec::Zero(3)));

    auto ts = TruncatedShift::build(8);
    auto t = ts.relation_t();
    CHECK(t.graph_dim() == 7);  // one dimension lost to the hyperplane

    Mat dep(3, 2);
    dep << 1, 2, 1, 2, 1, 2;
    CHECK_THROWS_AS(LinearRelation::from_matrix(Mat::Zero(3, 3), dep), RankDeficientBasis);
}

TEST_CASE("adjoint of classical operators") {
    auto rot = LinearRelation::from_matrix(rotation90());
    auto adj = rot.adjoint();
    auto neg = LinearRelation::from_matrix(Mat(-rotation90()));
    CHECK(numeric::subspace_distance(adj.graph_basis(), neg.graph_basis()) <= 1e-12);

    Mat q(2, 2);
    q << 2, 1, 1, 3;
    auto sym = LinearRelation::from_matrix(q);
    CHECK(numeric::subspace_distance(sym.adjoint().graph_basis(), sym.graph_basis()) <= 1e-12);
}

TEST_CASE("adjoint of the truncated shift satisfies the orthogonality relations") {
    // Independent oracle: every (y, Sy + alpha*ones) must satisfy
    // <y*, x> - <y, Tx> = 0 against a spanning set of the graph.
    for (int n : {2, 4, 8}) {
        auto ts = TruncatedShift::build(n);
        auto adj = ts.relation_t().adjoint();
        CHECK(adj.graph_dim() == n + 1);
        Rng rng(19);
        for (int trial = 0; trial < 50; ++trial) {
            Vec y = rng.vec_in_box(n, 2.0);
            double alpha = rng.uniform(-2.0, 2.0);
            Vec ystar = ts.s() * y + alpha * Vec::Ones(n);
            CHECK(adj.contains(y, ystar, 1e-9));
            // The orthogonality identity itself, on random domain points.
            Vec x = rng.vec_in_box(n, 2.0);
            x.array() -= x.mean();
            CHECK(std::abs(ystar.dot(x) - y.dot(ts.t() * x)) <= 1e-10);
        }
    }
}

TEST_CASE("adjoint is an involution and dimensions are complementary") {
    Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 4;
        Mat raw = Mat::Random(2 * n, 1 + trial % (2 * n));
        auto rel = LinearRelation::from_graph(raw);
        auto adj = rel.adjoint();
        CHECK(rel.graph_dim() + adj.graph_dim() == 2 * n);
        CHECK(numeric::subspace_distance(adj.adjoint().graph_basis(), rel.graph_basis()) <= 1e-10);
    }
}

TEST_CASE("classification") {
    auto rot = LinearRelation::from_matrix(rotation90());
    auto rep = rot.classify();
    CHECK(rep.monotone);
    CHECK(rep.skew);
    CHECK(rep.maximal);
    CHECK_FALSE(rep.symmetric);

    auto ts = TruncatedShift::build(8);
    auto rep_t = ts.relation_t().classify();
    CHECK(rep_t.monotone);
    CHECK(rep_t.skew);
    CHECK_FALSE(rep_t.maximal);
    // A monotone non-maximal relation admits a related point off the graph.
    REQUIRE(rep_t.witness.has_value());
    CHECK(rep_t.witness->kind == MonotonicityWitness::Kind::RelatedPointOutsideGraph);
    CHECK(ts.relation_t().monotonically_related(rep_t.witness->x, rep_t.witness->xstar));
    CHECK_FALSE(ts.relation_t().contains(rep_t.witness->x, rep_t.witness->xstar, 1e-7));

    auto rep_s = ts.relation_s().classify();
    CHECK(rep_s.monotone);
    CHECK(rep_s.maximal);
    CHECK_FALSE(rep_s.skew);

    // The full truncated adjoint picks up the ones-line and loses
    // monotonicity: a documented truncation artifact.
    auto rep_adj = ts.relation_adjoint_full().classify();
    CHECK_FALSE(rep_adj.monotone);
    REQUIRE(rep_adj.witness.has_value());
    double viol = (rep_adj.witness->x - rep_adj.witness->y)
                      .dot(rep_adj.witness->xstar - rep_adj.witness->ystar);
    CHECK(viol < 0.0);

    auto id = LinearRelation::from_matrix(Mat::Identity(2, 2));
    auto rep_id = id.classify();
    CHECK(rep_id.monotone);
    CHECK(rep_id.symmetric);
    CHECK(rep_id.maximal);
    CHECK_FALSE(rep_id.skew);

    auto neg = LinearRelation::from_matrix(Mat(-Mat::Identity(2, 2)));
    auto rep_neg = neg.classify();
    CHECK_FALSE(rep_neg.monotone);
    REQUIRE(rep_neg.witness.has_value());
    CHECK(rep_neg.witness->value < 0.0);
}

TEST_CASE("random skew relations classify as monotone and skew") {
    Rng rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + trial % 4;
        Mat m = Mat::Random(n, n);
        Mat skew = 0.5 * (m - m.transpose());
        auto rep = LinearRelation::from_matrix(skew).classify();
        CHECK(rep.monotone);
        CHECK(rep.skew);
        CHECK(rep.maximal);
    }
}

TEST_CASE("application and fibers") {
    auto rot = LinearRelation::from_matrix(rotation90());
    auto r = rot.apply(v2(1.0, 0.0));
    REQUIRE(r.kind == LinearRelation::ApplyResult::Kind::Point);
    CHECK((r.point - v2(0.0, 1.0)).norm() <= 1e-12);

    auto ts = TruncatedShift::build(6);
    auto t = ts.relation_t();
    CHECK(t.apply(Vec::Ones(6)).kind == LinearRelation::ApplyResult::Kind::Empty);

    auto adj = ts.relation_adjoint_full();
    auto fiber = adj.apply(Vec::Unit(6, 0));
    REQUIRE(fiber.kind == LinearRelation::ApplyResult::Kind::Affine);
    CHECK(fiber.lineality.cols() == 1);
    Vec ones_dir = Vec::Ones(6).normalized();
    CHECK(std::abs(std::abs(fiber.lineality.col(0).dot(ones_dir)) - 1.0) <= 1e-10);
    // The particular value sits on the alpha-line through S e1.
    Vec resid = fiber.point - ts.s() * Vec::Unit(6, 0);
    CHECK((resid - resid.dot(ones_dir) * ones_dir).norm() <= 1e-9);

    // The canonical alpha = 0 selection.
    auto srel = ts.relation_s();
    Vec se1 = srel.selection(Vec::Unit(6, 0));
    CHECK((se1 - 0.5 * Vec::Unit(6, 0)).norm() <= 1e-12);

    CHECK(rot.at_most_single_valued());
    CHECK(t.at_most_single_valued());
    CHECK_FALSE(adj.at_most_single_valued());
}

TEST_CASE("monotonically related points") {
    // The zero map restricted to the origin: graph {(0, 0)}.  The point
    // (0, 1) is monotonically related yet off the graph, witnessing that
    // the restriction is not maximal.
    auto restricted = LinearRelation::from_matrix(Mat::Zero(1, 1), Mat(1, 0));
    CHECK(restricted.monotonically_related(Vec::Zero(1), Vec::Ones(1)));
    CHECK_FALSE(restricted.contains(Vec::Zero(1), Vec::Ones(1), 1e-9));
    // Unrestricted, the far side of the domain refutes relatedness.
    auto zero1 = LinearRelation::from_matrix(Mat::Zero(1, 1));
    CHECK_FALSE(zero1.monotonically_related(Vec::Zero(1), Vec::Ones(1)));

    auto id1 = LinearRelation::from_matrix(Mat::Identity(1, 1));
    CHECK_FALSE(id1.monotonically_related(Vec::Zero(1), Vec::Ones(1)));
    CHECK(id1.monotonically_related(Vec::Ones(1), Vec::Ones(1)));  // on the graph

    // Sampled variant, spec-level signature.
    std::vector<std::pair<Vec, Vec>> sample;
    for (int k = -10; k <= 10; ++k)
        sample.emplace_back(Vec::Constant(1, 0.1 * k), Vec::Constant(1, 0.1 * k));
    CHECK_FALSE(monotonically_related_sampled({Vec::Zero(1), Vec::Ones(1)}, sample));
    CHECK(monotonically_related_sampled({Vec::Ones(1), Vec::Ones(1)}, sample));
    CHECK_THROWS_AS(monotonically_related_sampled({Vec::Zero(1), Vec::Zero(1)}, {}),
                    ValidationError);
}

TEST_CASE("resolvent on the segment has the hand-solved answers") {
    const int n = 5;
    auto ts = TruncatedShift::build(n);
    auto srel = ts.relation_s();
    auto c = ConvexSet::segment(Vec::Zero(n), Vec::Unit(n, 0));

    // z = e1: the scalar inclusion t + t/2 + N_[0,1](t) ∋ 1 gives t = 2/3,
    // confirmed by a brute-force scan of the inclusion residual.
    auto x = resolvent_solve(srel, c, Vec::Unit(n, 0));
    REQUIRE(x.has_value());
    CHECK((*x - (2.0 / 3.0) * Vec::Unit(n, 0)).norm() <= 1e-9);
    double best_scan = 1e300;
    double best_t = -1;
    for (int k = 0; k <= 100000; ++k) {
        double t = k / 100000.0;
        Vec xt = t * Vec::Unit(n, 0);
        Vec r = Vec::Unit(n, 0) - xt - ts.s() * xt;
        double d = c.normal_cone(xt, 1e-9).distance(r);
        if (d < best_scan) {
            best_scan = d;
            best_t = t;
        }
    }
    CHECK(std::abs(best_t - 2.0 / 3.0) <= 1e-4);

    auto x2 = resolvent_solve(srel, c, Vec(-Vec::Unit(n, 0)));
    REQUIRE(x2.has_value());
    CHECK(x2->norm() <= 1e-10);

    auto x3 = resolvent_solve(srel, c, Vec::Zero(n));
    REQUIRE(x3.has_value());
    CHECK(x3->norm() <= 1e-10);
}

TEST_CASE("resolvent on the ball via projected iteration") {
    auto rot = LinearRelation::from_matrix(rotation90());
    auto ball = ConvexSet::ball(Vec::Zero(2), 1.0);
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        Vec z = rng.vec_in_ball(2, 5.0);
        auto x = resolvent_solve(rot, ball, z, 1e-8);
        REQUIRE(x.has_value());
        Vec r = z - *x - rot.selection(*x);
        CHECK(ball.normal_cone(*x, 1e-9).distance(r) <= 1e-8);
    }
}
