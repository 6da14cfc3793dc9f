#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "rigidkit/errors.hpp"
#include "rigidkit/exact.hpp"
#include "rigidkit/frameworks.hpp"
#include "rigidkit/norm.hpp"

using namespace rigidkit;

TEST_SUITE("exact") {

TEST_CASE("Bareiss rank on small matrices") {
    CHECK(exact_rank(IntMatrix{}) == 0);
    CHECK(exact_rank(IntMatrix{{0, 0}, {0, 0}}) == 0);
    CHECK(exact_rank(IntMatrix{{1, 2}, {2, 4}}) == 1);
    CHECK(exact_rank(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 2);
    CHECK(exact_rank(IntMatrix{{0, 1}, {1, 0}, {1, 1}}) == 2);
    CHECK(exact_rank(RationalMatrix{{Rational(1, 2), Rational(1, 3)}, {Rational(3, 2), 1}}) == 1);
}

TEST_CASE("Bareiss sees what doubles cannot") {
    // Rows differ by 1 in 10^30: rank 2 exactly, rank 1 in floating point.
    BigInt big = BigInt(1) * BigInt("1000000000000000000000000000000");
    CHECK(exact_rank(IntMatrix{{big, big + 1}, {big, big}}) == 2);
}

TEST_CASE("exact rank matches a pivoted LU on well-scaled integer matrices") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> val(-3, 3), dim(1, 7);
    for (int t = 0; t < 300; ++t) {
        int r = dim(rng), c = dim(rng), k = std::uniform_int_distribution<int>(1, std::min(r, c))(rng);
        // A product of r x k and k x c factors has rank at most k.
        Eigen::MatrixXd a(r, k), b(k, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < k; ++j) a(i, j) = val(rng);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < c; ++j) b(i, j) = val(rng);
        Eigen::MatrixXd m = a * b;
        IntMatrix im(r, std::vector<BigInt>(c));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) im[i][j] = static_cast<long long>(m(i, j));
        int want = static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(m).rank());
        CHECK(exact_rank(im) == want);
        CHECK(want <= k);
    }
}

TEST_CASE("exact_solve") {
    RationalMatrix a{{1, 1}, {1, -1}};
    auto s = exact_solve(a, {3, 1});
    REQUIRE(s);
    CHECK(s->x == RationalVector{2, 1});
    CHECK(s->nullity == 0);

    auto u = exact_solve(RationalMatrix{{1, 1}}, {Rational(1, 2)});
    REQUIRE(u);
    CHECK(u->nullity == 1);
    CHECK(u->x[0] + u->x[1] == Rational(1, 2));

    CHECK_FALSE(exact_solve(RationalMatrix{{1, 1}, {2, 2}}, {1, 3}));
    CHECK_THROWS_AS(exact_solve(a, {1}), InputError);
}

TEST_CASE("exact_solve solutions satisfy the system") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<int> val(-5, 5);
    for (int t = 0; t < 100; ++t) {
        int r = 1 + t % 5, c = 1 + (t / 5) % 5;
        RationalMatrix a(r, RationalVector(c));
        RationalVector x(c);
        for (auto& row : a)
            for (auto& e : row) e = Rational(val(rng), 1 + std::abs(val(rng)));
        for (auto& e : x) e = val(rng);
        RationalVector b(r, 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) b[i] += a[i][j] * x[j];
        auto s = exact_solve(a, b);
        REQUIRE(s);
        for (int i = 0; i < r; ++i) {
            Rational lhs = 0;
            for (int j = 0; j < c; ++j) lhs += a[i][j] * s->x[j];
            CHECK(lhs == b[i]);
        }
        CHECK(s->nullity == c - exact_rank(a));
    }
}

TEST_CASE("signed powers") {
    CHECK(signed_power(BigInt(-3), 2) == -9);
    CHECK(signed_power(BigInt(3), 2) == 9);
    CHECK(signed_power(BigInt(-2), 3) == -8);
    CHECK(signed_power(BigInt(0), 2) == 0);
    CHECK(signed_power(Rational(-1, 2), 1) == Rational(-1, 2));
    CHECK(signed_power(Rational(-2, 3), 2) == Rational(-4, 9));
}

TEST_CASE("rational text") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("17") == 17);
    CHECK(to_string(Rational(-3, 4)) == "-3/4");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("x"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("norm parsing") {
    NormSpec a = NormSpec::parse("d=3,q=2");
    CHECK(a.d() == 3);
    CHECK(a.euclidean());
    CHECK(a.trivial_dim_generic() == 6);
    NormSpec b = NormSpec::parse("q=5/2,d=2");
    CHECK(b.q_exact() == Rational(5, 2));
    CHECK_FALSE(b.integer_q());
    CHECK(b.trivial_dim_generic() == 2);
    CHECK(NormSpec::parse("d=2,q=2.5").q_exact() == Rational(5, 2));
    CHECK(NormSpec::parse("d=2,q=3").laman_l() == 2);
    CHECK(a.str() == "d=3,q=2");
    CHECK_THROWS_AS(NormSpec::parse("d=1,q=2"), InputError);
    CHECK_THROWS_AS(NormSpec::parse("d=2,q=1"), InputError);
    CHECK_THROWS_AS(NormSpec::parse("d=2,p=3"), InputError);
    CHECK_THROWS_AS(NormSpec::parse("d=2"), InputError);
}

TEST_CASE("numeric rank equals exact rank at integer placements") {
    std::mt19937_64 rng(23);
    int graphs = 0;
    for (int t = 0; t < 60; ++t) {
        std::uniform_int_distribution<int> nd(2, 10);
        SimpleGraph g = testgen::random_graph(nd(rng), 0.3 + 0.1 * (t % 6), rng);
        for (int q : {2, 3}) {
            for (int d : {2, 3}) {
                NormSpec n(d, q);
                auto ip = random_integer_placement(g, d, mix_seed(24, t));
                Placement p{Eigen::MatrixXd(g.num_vertices(), d)};
                for (int v = 0; v < g.num_vertices(); ++v)
                    for (int i = 0; i < d; ++i) p.points(v, i) = ip[v][i].convert_to<double>();
                int num = numeric_rank(rigidity_matrix(g, p, n), kRankEps, false).rank;
                int ex = exact_rank(exact_rigidity_matrix(g, ip, n));
                CHECK(num == ex);
            }
        }
        ++graphs;
    }
    CHECK(graphs == 60);
}

TEST_CASE("exact rigidity matrix matches the floating one") {
    SimpleGraph g = complete_graph(4);
    std::vector<std::vector<BigInt>> ip = {{0, 0}, {3, 1}, {-2, 5}, {1, -4}};
    Placement p{Eigen::MatrixXd(4, 2)};
    for (int v = 0; v < 4; ++v)
        for (int i = 0; i < 2; ++i) p.points(v, i) = ip[v][i].convert_to<double>();
    for (int q : {2, 3, 4}) {
        IntMatrix ex = exact_rigidity_matrix(g, ip, NormSpec(2, q));
        Eigen::MatrixXd fl = rigidity_matrix(g, p, NormSpec(2, q));
        for (int r = 0; r < fl.rows(); ++r)
            for (int c = 0; c < fl.cols(); ++c) CHECK(ex[r][c].convert_to<double>() == fl(r, c));
    }
}

}
