#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "rigidkit/errors.hpp"
#include "rigidkit/json_io.hpp"
#include "rigidkit/moves.hpp"

using namespace rigidkit;

TEST_SUITE("json_io") {

TEST_CASE("syntax errors carry a byte offset") {
    try {
        parse_json_text("{\"vertices\": [0, 1], \"edges\": [[0 1]]}");
        FAIL("no error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("at byte 35") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_json_text(""), InputError);
    CHECK_NOTHROW(parse_json_text("{}"));
}

TEST_CASE("strict readers reject unknown fields") {
    CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices":[0,1],"edges":[[0,1]],"colour":1})")), InputError);
    CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices":[0,1]})")), InputError);
    CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices":[0,-1],"edges":[]})")), InputError);
    CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices":["0x"],"edges":[]})")), InputError);
    CHECK_THROWS_AS(framework_from_json(parse_json_text(R"({"vertices":[0],"edges":[],"norm":{"d":2,"q":2,"p":1}})")),
                    InputError);
    CHECK_THROWS_AS(tower_from_json(parse_json_text(R"({"stages":[],"extra":0})")), InputError);
    CHECK_THROWS_AS(move_from_json(parse_json_text(R"({"kind":"VertexExt","why":0})")), InputError);
    CHECK_THROWS_AS(chain_from_json(parse_json_text(R"({"moves":[]})")), InputError);
}

TEST_CASE("string labels and exact coordinates") {
    Framework f = framework_from_json(parse_json_text(
        R"({"vertices":["7",3],"edges":[[3,"7"]],"placement":{"3":["1/2",0],"7":[2,"-3/4"]},"norm":{"d":2,"q":"5/2"}})"));
    CHECK(f.graph.num_edges() == 1);
    CHECK(f.graph.label(0).value == 3);
    REQUIRE(f.exactPlacement);
    CHECK((*f.exactPlacement)[0] == RationalVector{Rational(1, 2), 0});
    CHECK((*f.exactPlacement)[1] == RationalVector{2, Rational(-3, 4)});
    CHECK(f.norm->q_exact() == Rational(5, 2));
    CHECK(f.placement->points(1, 1) == -0.75);

    Framework g = framework_from_json(parse_json_text(R"({"vertices":[0,1],"edges":[],"placement":{"0":[0.1,0],"1":[1,1]}})"));
    CHECK_FALSE(g.exactPlacement);
    CHECK(g.placement->points(0, 0) == 0.1);

    CHECK_THROWS_AS(framework_from_json(parse_json_text(R"({"vertices":[0,1],"edges":[],"placement":{"0":[0,0]}})")),
                    InputError);
    CHECK_THROWS_AS(framework_from_json(parse_json_text(R"({"vertices":[0,1],"edges":[],"placement":{"0":[0,0],"1":[1]}})")),
                    InputError);
    CHECK_THROWS_AS(
        framework_from_json(parse_json_text(R"({"vertices":[0],"edges":[],"placement":{"0":[0,0,0]},"norm":{"d":2,"q":2}})")),
        InputError);
    CHECK_THROWS_AS(framework_from_json(parse_json_text(R"({"vertices":[0],"edges":[],"placement":{"0":["x",0]}})")),
                    InputError);
}

TEST_CASE("number formatting") {
    CHECK(num(0.1) == "0.10000000000000001");
    CHECK(num(1.0) == "1");
    CHECK(num(-2.5) == "-2.5");
    CHECK(std::stod(num(1.0 / 3)) == 1.0 / 3);
    CHECK(to_string(Rational(-6, 4)) == "-3/2");
    CHECK(to_string(Rational(4)) == "4");
    CHECK(rational_from_json(Json(0.375)) == Rational(3, 8));
    CHECK(rational_from_json(Json("7/21")) == Rational(1, 3));
    CHECK_THROWS_AS(rational_from_json(Json::array()), InputError);
}

TEST_CASE("graph round trip") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        SimpleGraph g = testgen::random_graph(3 + t % 9, 0.4, rng);
        SimpleGraph h = graph_from_json(parse_json_text(to_json(g).dump()));
        CHECK(h.same_as(g));
        CHECK(to_json(h).dump() == to_json(g).dump());
    }
}

TEST_CASE("placement round trip is exact") {
    SimpleGraph g = complete_graph(5);
    Placement p = random_placement(g, 3, 17);
    Json j = to_json(g);
    j["placement"] = to_json(p, g);
    Framework f = framework_from_json(parse_json_text(j.dump()));
    CHECK(f.placement->points == p.points);
}

TEST_CASE("tower round trip") {
    Tower t = validate_tower({complete_graph(3), complete_graph(4)}, complete_graph(4));
    Tower u = tower_from_json(parse_json_text(to_json(t).dump()));
    REQUIRE(u.stages.size() == 2);
    CHECK(u.stages[1].same_as(t.stages[1]));
    REQUIRE(u.target);
    CHECK(u.target->same_as(complete_graph(4)));
    CHECK_THROWS_AS(tower_from_json(parse_json_text(R"({"stages":[{"vertices":[0,1],"edges":[[0,1]]},{"vertices":[0],"edges":[]}]})")),
                    NestingError);
}

TEST_CASE("chain and move round trip") {
    SimpleGraph target = SimpleGraph::dense(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {3, 4}});
    for (ChainMode mode : {ChainMode::Euclidean2D}) {
        ConstructionChain c = find_chain(SimpleGraph::dense(2, {{0, 1}}), target, mode);
        Json j = to_json(c);
        ConstructionChain d = chain_from_json(parse_json_text(j.dump()));
        CHECK(to_json(d).dump() == j.dump());
        CHECK(replay(d).back().same_as(target));
        for (const auto& m : c.moves) CHECK(to_json(move_from_json(to_json(m))).dump() == to_json(m).dump());
    }
    // Degree is implied by the neighbour list when omitted.
    MoveRecord m = move_from_json(parse_json_text(R"({"kind":"VertexExt","new":[9],"neighbors":[0,1]})"));
    CHECK(m.degree == 2);
    CHECK_THROWS(move_from_json(parse_json_text(R"({"kind":"teleport"})")));
}

TEST_CASE("multibody round trip") {
    NormSpec e2(2, 2);
    SimpleGraph g = SimpleGraph::dense(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
    MultiBodyGraph m = validate_multibody(g, {{VertexId{3}, VertexId{4}, VertexId{5}}, {VertexId{0}, VertexId{1}, VertexId{2}}}, e2);
    CHECK(m.bodies[0][0].value == 0);
    Json j = to_json(m);
    MultiBodyGraph back = multibody_from_json(parse_json_text(j.dump()), e2);
    CHECK(to_json(back).dump() == j.dump());

    j["interbody_edges"] = Json::array({Json::array({0, 3})});
    CHECK_THROWS_AS(multibody_from_json(j, e2), InputError);
}

}
