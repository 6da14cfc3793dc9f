#include <cmath>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "rigidkit/catalog.hpp"
#include "rigidkit/errors.hpp"
#include "rigidkit/frameworks.hpp"

using namespace rigidkit;

namespace {

Placement pts(std::vector<std::vector<double>> xs) {
    Placement p{Eigen::MatrixXd(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(xs[0].size()))};
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs[i].size(); ++j) p.points(i, j) = xs[i][j];
    return p;
}

// Edge function of one edge: sum_i |x_v,i - x_w,i|^q.
double edge_fn(const Eigen::MatrixXd& x, int v, int w, double q) {
    double s = 0.0;
    for (int i = 0; i < x.cols(); ++i) s += std::pow(std::fabs(x(v, i) - x(w, i)), q);
    return s;
}

Eigen::MatrixXd shifted(const Placement& p, const Velocity& u, double h) {
    Eigen::MatrixXd x = p.points;
    for (int v = 0; v < x.rows(); ++v)
        for (int i = 0; i < x.cols(); ++i) x(v, i) += h * u(v * x.cols() + i);
    return x;
}

const double kS3 = std::sqrt(3.0);

}  // namespace

TEST_SUITE("frameworks") {

TEST_CASE("three-vertex rigidity matrix at q = 3") {
    SimpleGraph g = SimpleGraph::dense(3, {{0, 1}, {0, 2}, {1, 2}});
    Placement p = pts({{-kS3, 1}, {kS3, 1}, {0, 0}});
    Eigen::MatrixXd r = rigidity_matrix(g, p, NormSpec(2, 3));
    Eigen::MatrixXd want(3, 6);
    want << -12, 0, 12, 0, 0, 0, -3, 1, 0, 0, 3, -1, 0, 0, 3, 1, -3, -1;
    CHECK((r - want).cwiseAbs().maxCoeff() < 1e-12);

    FlexReport rep = flex_report(g, p, NormSpec(2, 3));
    CHECK(rep.rank == 3);
    CHECK(rep.nullity == 3);
    CHECK(rep.trivialDim == 2);
    CHECK(rep.flexDim == 1);
    CHECK(rep.classification == Classification::Flexible);
    Velocity u(6);
    u << -1.0 / 3, -1, -1.0 / 3, 1, 0, 0;
    Eigen::MatrixXd span(6, 3);
    span << rep.nontrivialFlexBasis, trivial_motion_basis(g, p, NormSpec(2, 3)).vectors;
    CHECK(relative_distance_from_span(u, orthonormal_span(span)) < 1e-10);
}

TEST_CASE("single-bar rows") {
    SimpleGraph k2 = complete_graph(2);
    Eigen::MatrixXd r2 = rigidity_matrix(k2, pts({{0, 0}, {1, 0}}), NormSpec(2, 2));
    CHECK(r2.row(0).isApprox(Eigen::RowVector4d(-1, 0, 1, 0)));
    Eigen::MatrixXd r3 = rigidity_matrix(k2, pts({{0, 0}, {1, 1}}), NormSpec(2, 3));
    CHECK(r3.row(0).isApprox(Eigen::RowVector4d(-1, -1, 1, 1)));
}

TEST_CASE("coincident endpoints are rejected") {
    CHECK_THROWS_AS(rigidity_matrix(complete_graph(2), pts({{1, 1}, {1, 1}}), NormSpec(2, 2)), InputError);
    CHECK_THROWS_AS(flex_report(complete_graph(2), pts({{0, 0}, {1, 0}}), NormSpec(2, 2), 0.0), InputError);
}

TEST_CASE("trivial motion dimensions") {
    SimpleGraph k3 = complete_graph(3);
    Placement tri = pts({{0, 0}, {1, 0.2}, {0.3, 1}});
    CHECK(trivial_motion_basis(k3, tri, NormSpec(2, 2)).dim() == 3);
    CHECK(trivial_motion_basis(k3, tri, NormSpec(2, 3)).dim() == 2);
    CHECK(trivial_motion_basis(complete_graph(2), pts({{0, 0}, {1, 0}}), NormSpec(2, 2)).dim() == 3);
    // Two points in 3-space: the rotation about their line is invisible.
    CHECK(trivial_motion_basis(complete_graph(2), pts({{0, 0, 0}, {1, 0, 0}}), NormSpec(3, 2)).dim() == 5);
}

TEST_CASE("K2: minimally rigid for q = 2, one rotation-like flex otherwise") {
    FlexReport e = flex_report(complete_graph(2), pts({{0, 0}, {1, 0.5}}), NormSpec(2, 2));
    CHECK(e.flexDim == 0);
    CHECK(e.classification == Classification::MinimallyRigid);
    // Away from q = 2 only translations are trivial, and the bar can still turn.
    for (int q : {3, 4}) {
        FlexReport r = flex_report(complete_graph(2), pts({{0, 0}, {1, 0.5}}), NormSpec(2, q));
        CHECK(r.trivialDim == 2);
        CHECK(r.flexDim == 1);
        CHECK(r.classification == Classification::Flexible);
    }
}

TEST_CASE("generic ranks of complete graphs") {
    for (int d : {2, 3}) {
        SimpleGraph k = complete_graph(d + 1);
        CHECK(generic_rank(k, NormSpec(d, 2), 3, 1) == k.num_edges());
        CHECK(is_rigid_generic(k, NormSpec(d, 2)).report.classification == Classification::MinimallyRigid);
        SimpleGraph k2d = complete_graph(2 * d);
        CHECK(generic_rank(k2d, NormSpec(d, 3), 3, 1) == 2 * d * d - d);
        CHECK(k2d.num_edges() == 2 * d * d - d);
        CHECK(is_rigid_generic(k2d, NormSpec(d, 3)).report.classification == Classification::MinimallyRigid);
    }
    CHECK(generic_rank(complete_graph(3), NormSpec(2, 3), 3, 1) == 3);
    CHECK(is_rigid_generic(complete_graph(3), NormSpec(2, 3)).report.flexDim == 1);
}

TEST_CASE("is_rigid_generic small examples") {
    GenericVerdict k4 = is_rigid_generic(complete_graph(4), NormSpec(2, 2));
    CHECK(k4.rigid);
    CHECK(k4.report.classification == Classification::Rigid);
    REQUIRE(k4.combinatorialRigid);
    CHECK(*k4.combinatorialRigid);

    GenericVerdict k4q = is_rigid_generic(complete_graph(4), NormSpec(2, 3), 3, 0, true);
    CHECK(k4q.report.classification == Classification::MinimallyRigid);
    REQUIRE(k4q.exactRank);
    CHECK(*k4q.exactRank == 6);

    GenericVerdict c4 = is_rigid_generic(cycle_graph(4), NormSpec(2, 2));
    CHECK_FALSE(c4.rigid);
    CHECK(c4.report.flexDim == 1);

    GenericVerdict frac = is_rigid_generic(complete_graph(4), NormSpec(2, Rational(5, 2)));
    CHECK(frac.probabilistic);
    CHECK(frac.rigid);
}

TEST_CASE("double banana has one flex, exact rank 17") {
    GenericVerdict v = is_rigid_generic(double_banana().graph, NormSpec(3, 2), 3, 0, true);
    CHECK(v.genericRank == 17);
    CHECK(v.report.flexDim == 1);
    CHECK(v.report.classification == Classification::Flexible);
    REQUIRE(v.exactRank);
    CHECK(*v.exactRank == 17);
}

TEST_CASE("random placements") {
    SimpleGraph k3 = complete_graph(3);
    CHECK(random_placement(k3, 2, 1).points == random_placement(k3, 2, 1).points);
    CHECK(random_placement(k3, 2, 1).points != random_placement(k3, 2, 2).points);
    SimpleGraph k4 = complete_graph(4);
    int bad = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        Placement p = random_placement(k4, 2, s);
        for (auto [a, b] : k4.edges())
            for (int i = 0; i < 2; ++i) bad += p.points(a, i) == p.points(b, i);
        bad += (p.points.cwiseAbs().maxCoeff() > 1.0);
    }
    CHECK(bad == 0);
}

TEST_CASE("kernel vectors satisfy the flex equations edge by edge") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<int> nd(2, 8);
        SimpleGraph g = testgen::random_graph(nd(rng), 0.5, rng);
        int d = 2 + t % 2;
        double qs[] = {2.0, 3.0, 2.5, 1.5};
        Rational qr[] = {2, 3, Rational(5, 2), Rational(3, 2)};
        NormSpec n(d, qr[t % 4]);
        double q = qs[t % 4];
        Placement p = random_placement(g, d, mix_seed(32, t));
        NumericRank nr = numeric_rank(rigidity_matrix(g, p, n));
        for (int k = 0; k < nr.kernel.cols(); ++k) {
            const Velocity u = nr.kernel.col(k);
            for (auto [a, b] : g.edges()) {
                double s = 0.0;
                for (int i = 0; i < d; ++i) {
                    double diff = p.points(a, i) - p.points(b, i);
                    s += std::copysign(std::pow(std::fabs(diff), q - 1), diff) * (u(a * d + i) - u(b * d + i));
                }
                CHECK(std::fabs(s) < 1e-10);
            }
        }
    }
}

TEST_CASE("rank is stable in the number of trials") {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 40; ++t) {
        SimpleGraph g = testgen::random_graph(4 + t % 6, 0.5, rng);
        NormSpec n(2 + t % 2, t % 3 == 0 ? 3 : 2);
        CHECK(generic_rank(g, n, 5, 34) == generic_rank(g, n, 20, 35));
    }
}

TEST_CASE("flex dimension is the same at random placements") {
    std::mt19937_64 rng(36);
    for (int t = 0; t < 25; ++t) {
        SimpleGraph g = testgen::random_graph(4 + t % 5, 0.55, rng);
        NormSpec n(2 + t % 2, t % 2 ? 3 : 2);
        int first = flex_report(g, random_placement(g, n.d(), 0), n).flexDim;
        for (std::uint64_t s = 1; s < 10; ++s) CHECK(flex_report(g, random_placement(g, n.d(), s), n).flexDim == first);
    }
}

TEST_CASE("the rigidity matrix is the Jacobian of the edge function") {
    std::mt19937_64 rng(37);
    const double h = 1e-6;
    for (int t = 0; t < 40; ++t) {
        SimpleGraph g = testgen::random_graph(3 + t % 5, 0.6, rng);
        NormSpec n(2 + t % 2, t % 2 ? 3 : 2);
        const double q = n.q();
        Placement p = random_placement(g, n.d(), mix_seed(38, t));
        Eigen::MatrixXd r = rigidity_matrix(g, p, n);
        Velocity u = Velocity::Random(g.num_vertices() * n.d());
        Eigen::MatrixXd plus = shifted(p, u, h), minus = shifted(p, u, -h);
        for (int e = 0; e < g.num_edges(); ++e) {
            auto [a, b] = g.edges()[e];
            double fd = (edge_fn(plus, a, b, q) - edge_fn(minus, a, b, q)) / (2 * h);
            CHECK(fd == doctest::Approx(q * r.row(e).dot(u)).epsilon(1e-6));
        }
        // Along a kernel vector the derivative vanishes.
        NumericRank nr = numeric_rank(r);
        for (int k = 0; k < nr.kernel.cols(); ++k) {
            Eigen::MatrixXd kp = shifted(p, nr.kernel.col(k), h), km = shifted(p, nr.kernel.col(k), -h);
            for (auto [a, b] : g.edges()) CHECK(std::fabs(edge_fn(kp, a, b, q) - edge_fn(km, a, b, q)) / (2 * h) < 1e-6);
        }
    }
}

TEST_CASE("flex extension") {
    NormSpec e2(2, 2);
    SimpleGraph c4 = cycle_graph(4);
    SimpleGraph braced = SimpleGraph::dense(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
    Placement p = random_placement(braced, 2, 3);

    Velocity shift(8);
    shift << 1, 0, 1, 0, 1, 0, 1, 0;
    CHECK(flex_extends(c4, braced, p, shift, e2).extends);

    FlexReport r = flex_report(c4, p, e2);
    REQUIRE(r.flexDim == 1);
    FlexExtension ext = flex_extends(c4, braced, p, r.nontrivialFlexBasis.col(0), e2);
    CHECK_FALSE(ext.extends);
    CHECK(ext.residual > 1e-3);

    Velocity junk = Velocity::Ones(8);
    junk(0) = 5;
    CHECK_THROWS_AS(flex_extends(c4, braced, p, junk, e2), InputError);
}

TEST_CASE("flex extension onto new vertices") {
    // A triangle's rotation extends over a pendant triangle hung on it.
    NormSpec e2(2, 2);
    SimpleGraph k3 = complete_graph(3);
    SimpleGraph big = SimpleGraph::dense(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    Placement p = random_placement(big, 2, 4);
    Placement p3 = restrict_placement(big, p, k3);
    Eigen::MatrixXd t = trivial_motion_generators(3, p3, e2);
    FlexExtension ext = flex_extends(k3, big, p, t.col(2), e2);
    REQUIRE(ext.extends);
    CHECK((rigidity_matrix(big, p, e2) * ext.witness).norm() < 1e-10);
    CHECK((restrict_velocity(big, ext.witness, k3, 2) - t.col(2)).norm() < 1e-12);
}

TEST_CASE("the hinge flex of the double banana is cancelled by the next banana") {
    NormSpec e3(3, 2);
    CatalogEntry bt = banana_tower(2);
    const Tower& t = *bt.tower;
    Placement p = random_placement(t.stages[1], 3, 5);
    Placement p1 = restrict_placement(t.stages[1], p, t.stages[0]);
    FlexReport r = flex_report(t.stages[0], p1, e3);
    REQUIRE(r.flexDim == 1);
    CHECK_FALSE(flex_extends(t.stages[0], t.stages[1], p, r.nontrivialFlexBasis.col(0), e3).extends);
}

}
