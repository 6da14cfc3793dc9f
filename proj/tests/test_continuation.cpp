#include <cmath>

#include "doctest.h"
#include "rigidkit/catalog.hpp"
#include "rigidkit/errors.hpp"
#include "rigidkit/frameworks.hpp"

using namespace rigidkit;

namespace {

double worst_drift(const SimpleGraph& g, const Placement& p0, const std::vector<Placement>& path, double q) {
    double m = 0.0;
    for (const auto& x : path)
        for (auto [a, b] : g.edges()) {
            double l0 = qnorm((p0.points.row(a) - p0.points.row(b)).transpose(), q);
            double l1 = qnorm((x.points.row(a) - x.points.row(b)).transpose(), q);
            m = std::max(m, std::fabs(l0 - l1));
        }
    return m;
}

// Oracle for one extension step: least squares for a flex w of stage 2 with
// w = u on stage 1, by column-pivoted QR on the stacked system.
double extension_residual(const CatalogEntry& s, const NormSpec& n) {
    const SimpleGraph& g1 = s.tower->stages[0];
    const SimpleGraph& g2 = s.tower->stages[1];
    const Placement& p = *s.placement;
    FlexReport r1 = flex_report(g1, restrict_placement(s.graph, p, g1), n);
    REQUIRE(r1.flexDim == 1);
    Eigen::MatrixXd r = rigidity_matrix(g2, restrict_placement(s.graph, p, g2), n);
    const int n1 = 2 * g1.num_vertices(), n2 = 2 * g2.num_vertices();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r.rows() + n1, n2);
    a.topRows(r.rows()) = r;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(r.rows() + n1);
    for (int v = 0; v < g1.num_vertices(); ++v) {
        const int w = g2.index_of(g1.label(v));
        for (int i = 0; i < 2; ++i) a(r.rows() + 2 * v + i, 2 * w + i) = 1.0;
    }
    b.tail(n1) = r1.nontrivialFlexBasis.col(0);
    Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    return (a * x - b).norm();
}

}  // namespace

TEST_SUITE("continuation") {

TEST_CASE("norm helpers") {
    Eigen::Vector2d x(3, -4);
    CHECK(qnorm(x, 2.0) == doctest::Approx(5.0));
    CHECK(qnorm_pow(x, 3.0) == doctest::Approx(91.0));
    CHECK(qnorm(x, 1.5) == doctest::Approx(std::pow(std::pow(3.0, 1.5) + std::pow(4.0, 1.5), 1 / 1.5)));
}

TEST_CASE("four-cycle mechanism conserves lengths") {
    NormSpec e2(2, 2);
    SimpleGraph c4 = cycle_graph(4);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Placement p = random_placement(c4, 2, seed);
        FlexReport r = flex_report(c4, p, e2);
        auto path = continuation_track(c4, p, e2, r.nontrivialFlexBasis.col(0), 50, 0.01);
        CHECK(path.size() == 50);
        CHECK(worst_drift(c4, p, path, 2.0) <= 1e-8);
        // Pinned coordinates stay put: vertex 0 and the x of vertex 1.
        for (const auto& x : path) {
            CHECK(x.points(0, 0) == p.points(0, 0));
            CHECK(x.points(0, 1) == p.points(0, 1));
            CHECK(x.points(1, 0) == p.points(1, 0));
        }
        CHECK((path.back().points - p.points).norm() > 0.1);
    }
}

TEST_CASE("a Euclidean triangle does not move") {
    NormSpec e2(2, 2);
    SimpleGraph k3 = complete_graph(3);
    Placement p = random_placement(k3, 2, 4);
    NumericRank nr = numeric_rank(rigidity_matrix(k3, p, e2));
    REQUIRE(nr.kernel.cols() == 3);
    for (int k = 0; k < 3; ++k) {
        auto path = continuation_track(k3, p, e2, nr.kernel.col(k), 10, 0.05);
        for (const auto& x : path) CHECK(x.points == p.points);
    }
}

TEST_CASE("the q = 3 triangle flexes") {
    NormSpec l3(2, 3);
    SimpleGraph g = SimpleGraph::dense(3, {{0, 1}, {0, 2}, {1, 2}});
    const double s3 = std::sqrt(3.0);
    Placement p{Eigen::MatrixXd(3, 2)};
    p.points << -s3, 1, s3, 1, 0, 0;
    Velocity u(6);
    u << -1.0 / 3, -1, -1.0 / 3, 1, 0, 0;
    auto path = continuation_track(g, p, l3, u, 40, 0.01);
    CHECK(path.size() == 40);
    CHECK(worst_drift(g, p, path, 3.0) <= 1e-8);
    // Translations are the only trivial motions, so any change of shape
    // shows as a change of an edge vector.
    Eigen::RowVector2d e0 = p.points.row(0) - p.points.row(2);
    Eigen::RowVector2d e1 = path.back().points.row(0) - path.back().points.row(2);
    CHECK((e0 - e1).norm() > 1e-2);
}

TEST_CASE("continuation input checks") {
    NormSpec e2(2, 2);
    SimpleGraph c4 = cycle_graph(4);
    Placement p = random_placement(c4, 2, 5);
    CHECK_THROWS_AS(continuation_track(c4, p, e2, Velocity::Ones(8) + Velocity::Unit(8, 0), 5, 0.01), InputError);
    CHECK_THROWS_AS(continuation_track(c4, p, e2, Velocity::Zero(6), 5, 0.01), InputError);
    CHECK_THROWS_AS(continuation_track(c4, p, e2, Velocity::Zero(8), 5, 0.0), InputError);
    CHECK(continuation_track(c4, p, e2, Velocity::Zero(8), 0, 0.01).empty());
}

TEST_CASE("whirlpool speeds grow by sqrt(45/32) per layer") {
    CatalogEntry w = whirlpool(3);
    Velocity a(8);
    a << 1, 1, 1, -1, -1, -1, -1, 1;
    GrowthProfile prof = flex_growth_profile(*w.tower, *w.placement, NormSpec(2, 2), a);
    REQUIRE(prof.speeds.size() == 4);
    for (std::size_t k = 0; k < prof.speeds.size(); ++k)
        CHECK(prof.speeds[k] == doctest::Approx(std::pow(45.0 / 32.0, k / 2.0)).epsilon(1e-10));
    CHECK(prof.trend == "increasing");
    CHECK_FALSE(prof.cancellationStage);
}

TEST_CASE("whirlpool default flex is the outer square mechanism") {
    // Stage 1 is a bare square; its first nontrivial flex also extends.
    CatalogEntry w = whirlpool(2);
    GrowthProfile prof = flex_growth_profile(*w.tower, *w.placement, NormSpec(2, 2));
    CHECK(prof.speeds.size() == 3);
    CHECK_FALSE(prof.cancellationStage);
}

TEST_CASE("nested rigid graphs give an empty profile") {
    Tower t = validate_tower({complete_graph(4), complete_graph(5), complete_graph(6)});
    Placement p = random_placement(complete_graph(6), 2, 6);
    GrowthProfile prof = flex_growth_profile(t, p, NormSpec(2, 2));
    CHECK(prof.trend == "empty");
    CHECK(prof.speeds.empty());
}

TEST_CASE("banana tower flexes are cancelled at stage 2") {
    CatalogEntry bt = banana_tower(3);
    Placement p = random_placement(bt.graph, 3, 7);
    GrowthProfile prof = flex_growth_profile(*bt.tower, p, NormSpec(3, 2));
    REQUIRE(prof.cancellationStage);
    CHECK(*prof.cancellationStage == 2);
}

TEST_CASE("strip profiles stop at stage 2") {
    NormSpec e2(2, 2);
    for (StripPlacement pl : {StripPlacement::Radial, StripPlacement::Periodic}) {
        CatalogEntry s = strip(4, StripOptions{pl});
        GrowthProfile prof = flex_growth_profile(*s.tower, *s.placement, e2);
        REQUIRE(prof.cancellationStage);
        CHECK(*prof.cancellationStage == 2);
        CHECK(prof.speeds.size() == 1);
        CHECK(prof.trend == "bounded");
        CHECK(extension_residual(s, e2) > 1e-3);
    }
    // Control: the whirlpool's outer square flex does extend.
    CHECK(extension_residual(whirlpool(2), e2) < 1e-9);
}

}
