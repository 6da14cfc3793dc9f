#include <optional>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "rigidkit/catalog.hpp"
#include "rigidkit/errors.hpp"
#include "rigidkit/frameworks.hpp"
#include "rigidkit/moves.hpp"

using namespace rigidkit;

namespace {

VertexId V(std::uint64_t x) { return VertexId{x}; }

std::vector<VertexId> neighbour_labels(const SimpleGraph& g, int v) {
    std::vector<VertexId> out;
    for (int w : g.neighbors(v)) out.push_back(g.label(w));
    return out;
}

// A random forward move of the given kind on g, with fresh label(s) from next.
std::optional<MoveRecord> random_move(const SimpleGraph& g, MoveKind kind, std::uint64_t next, std::mt19937_64& rng) {
    const int n = g.num_vertices();
    std::uniform_int_distribution<int> pickV(0, n - 1);
    switch (kind) {
        case MoveKind::VertexExt: {
            if (n < 2) return std::nullopt;
            int a = pickV(rng), b = pickV(rng);
            if (a == b) return std::nullopt;
            return MoveRecord::vertex_ext(V(next), {g.label(a), g.label(b)});
        }
        case MoveKind::EdgeMove: {
            if (g.num_edges() == 0 || n < 3) return std::nullopt;
            auto e = g.edges()[std::uniform_int_distribution<int>(0, g.num_edges() - 1)(rng)];
            int c = pickV(rng);
            if (c == e.first || c == e.second) return std::nullopt;
            return MoveRecord::edge_move(V(next), g.label_edge(e), {g.label(e.first), g.label(e.second), g.label(c)});
        }
        case MoveKind::VertexToK4: {
            int w0 = pickV(rng);
            std::vector<std::pair<VertexId, int>> re;
            std::uniform_int_distribution<int> j(0, 3);
            for (int x : g.neighbors(w0)) {
                int k = j(rng);
                if (k > 0) re.push_back({g.label(x), k});
            }
            return MoveRecord::to_k4(g.label(w0), {V(next), V(next + 1), V(next + 2)}, re);
        }
        case MoveKind::VertexTo4Cycle: {
            int v = pickV(rng);
            auto nb = neighbour_labels(g, v);
            if (nb.size() < 2) return std::nullopt;
            std::shuffle(nb.begin(), nb.end(), rng);
            std::vector<VertexId> moved;
            std::bernoulli_distribution coin(0.5);
            for (std::size_t i = 2; i < nb.size(); ++i)
                if (coin(rng)) moved.push_back(nb[i]);
            return MoveRecord::to_4cycle(g.label(v), nb[0], nb[1], V(next), moved);
        }
        case MoveKind::VertexSplit3D: {
            int v = pickV(rng);
            auto nb = neighbour_labels(g, v);
            if (nb.size() < 2) return std::nullopt;
            std::shuffle(nb.begin(), nb.end(), rng);
            std::vector<VertexId> moved;
            std::bernoulli_distribution coin(0.5);
            for (std::size_t i = 2; i < nb.size(); ++i)
                if (coin(rng)) moved.push_back(nb[i]);
            return MoveRecord::split3d(g.label(v), nb[0], nb[1], V(next), moved);
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_SUITE("moves") {

TEST_CASE("basic moves") {
    CHECK(apply_move(complete_graph(2), MoveRecord::vertex_ext(V(2), {V(0), V(1)})).same_as(complete_graph(3)));
    CHECK(apply_move(complete_graph(1), MoveRecord::to_k4(V(0), {V(1), V(2), V(3)}, {})).same_as(complete_graph(4)));
    SimpleGraph em = apply_move(complete_graph(3), MoveRecord::edge_move(V(3), {V(0), V(1)}, {V(0), V(1), V(2)}));
    CHECK(em.num_vertices() == 4);
    CHECK(em.num_edges() == 5);
    CHECK_FALSE(em.has_label_edge(V(0), V(1)));
    CHECK(is_sparse(em, {2, 3}).tight);
}

TEST_CASE("4-cycle and vertex splitting shapes") {
    // K4, base 0, named neighbours 1 and 2, vertex 3 moved to the new vertex 4.
    SimpleGraph c = apply_move(complete_graph(4), MoveRecord::to_4cycle(V(0), V(1), V(2), V(4), {V(3)}));
    CHECK(c.num_vertices() == 5);
    CHECK(c.num_edges() == 8);
    CHECK(c.has_label_edge(V(4), V(1)));
    CHECK(c.has_label_edge(V(4), V(2)));
    CHECK(c.has_label_edge(V(4), V(3)));
    CHECK_FALSE(c.has_label_edge(V(0), V(3)));
    CHECK_FALSE(c.has_label_edge(V(0), V(4)));
    CHECK(is_sparse(c, {2, 2}).tight);

    SimpleGraph s = apply_move(complete_graph(4), MoveRecord::split3d(V(0), V(1), V(2), V(4), {V(3)}));
    CHECK(s.num_edges() == 9);
    CHECK(s.has_label_edge(V(4), V(0)));
    CHECK(s.has_label_edge(V(4), V(3)));
    CHECK_FALSE(s.has_label_edge(V(0), V(3)));
}

TEST_CASE("malformed moves name the problem") {
    CHECK_THROWS_AS(apply_move(complete_graph(2), MoveRecord::vertex_ext(V(2), {V(0), V(0)})), MoveError);
    CHECK_THROWS_AS(apply_move(complete_graph(2), MoveRecord::vertex_ext(V(1), {V(0), V(1)})), MoveError);
    CHECK_THROWS_AS(apply_move(complete_graph(3), MoveRecord::edge_move(V(3), {V(0), V(1)}, {V(0), V(2), V(2)})), MoveError);
    CHECK_THROWS_AS(apply_move(cycle_graph(4), MoveRecord::edge_move(V(4), {V(0), V(2)}, {V(0), V(2), V(1)})), MoveError);
    CHECK_THROWS_AS(apply_move(complete_graph(4), MoveRecord::to_k4(V(0), {V(5), V(6)}, {})), MoveError);
    CHECK_THROWS_AS(apply_move(cycle_graph(4), MoveRecord::to_4cycle(V(0), V(1), V(2), V(9), {})), MoveError);
    ConstructionChain bad{complete_graph(2), {MoveRecord::vertex_ext(V(2), {V(1), V(1)})}};
    CHECK_THROWS_AS(verify_chain(bad, ChainMode::Euclidean2D), ChainError);
}

TEST_CASE("move kind names round trip") {
    for (auto k : {MoveKind::VertexExt, MoveKind::EdgeMove, MoveKind::VertexToK4, MoveKind::VertexTo4Cycle, MoveKind::VertexSplit3D})
        CHECK(move_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(move_kind_from_string("Flip"), InputError);
    CHECK(chain_mode_from_string(to_string(ChainMode::QNorm2D)) == ChainMode::QNorm2D);
}

TEST_CASE("inverse candidates") {
    SimpleGraph k3 = complete_graph(3);
    auto one = inverse_candidates(k3, {2, 3}, V(2));
    REQUIRE(one.size() == 1);
    CHECK(one[0].kind == MoveKind::VertexExt);
    CHECK(apply_move(undo_move(k3, one[0]), one[0]).same_as(k3));

    SimpleGraph em = apply_move(k3, MoveRecord::edge_move(V(3), {V(0), V(1)}, {V(0), V(1), V(2)}));
    auto cands = inverse_candidates(em, {2, 3}, V(3));
    bool restoresK3 = false;
    for (const auto& m : cands)
        if (m.kind == MoveKind::EdgeMove && undo_move(em, m).same_as(k3)) restoresK3 = true;
    CHECK(restoresK3);

    CHECK_THROWS_AS(inverse_candidates(complete_graph(2), {2, 3}, V(0)), InputError);
}

TEST_CASE("a degree-3 vertex with a complete link cannot occur in a (2,3)-sparse graph") {
    // The only degree-3 configuration with all neighbour pairs adjacent is K4.
    SimpleGraph k4 = complete_graph(4);
    CHECK_FALSE(is_sparse(k4, {2, 3}).sparse);
    std::mt19937_64 rng(41);
    for (int t = 0; t < 100; ++t) {
        SimpleGraph g = testgen::random_tight(4 + t % 7, {2, 3}, rng);
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (g.degree(v) != 3) continue;
            auto cands = inverse_candidates(g, {2, 3}, g.label(v));
            CHECK_FALSE(cands.empty());
        }
    }
}

TEST_CASE("inverse candidates round trip") {
    std::mt19937_64 rng(42);
    int trips = 0;
    for (int t = 0; t < 80; ++t) {
        SparsityCount c = t % 2 ? SparsityCount{2, 3} : SparsityCount{2, 2};
        SimpleGraph g = testgen::random_tight(4 + t % 6, c, rng);
        for (int v = 0; v < g.num_vertices(); ++v) {
            int dg = g.degree(v);
            if (dg < c.k || dg > c.k + 1) continue;
            std::vector<MoveRecord> cands;
            try {
                cands = inverse_candidates(g, c, g.label(v));
            } catch (const InputError&) {
                continue;
            }
            for (const auto& m : cands) {
                SimpleGraph smaller = undo_move(g, m);
                CHECK(is_sparse(smaller, c).tight);
                CHECK(apply_move(smaller, m).same_as(g));
                ++trips;
            }
        }
    }
    CHECK(trips > 100);
}

TEST_CASE("moves preserve tightness") {
    std::mt19937_64 rng(43);
    struct Case {
        MoveKind kind;
        SparsityCount c;
    };
    std::vector<Case> cases = {{MoveKind::VertexExt, {2, 3}},  {MoveKind::EdgeMove, {2, 3}},
                               {MoveKind::VertexExt, {2, 2}},  {MoveKind::EdgeMove, {2, 2}},
                               {MoveKind::VertexToK4, {2, 2}}, {MoveKind::VertexTo4Cycle, {2, 2}}};
    for (const auto& cs : cases) {
        int applied = 0;
        for (int t = 0; t < 60; ++t) {
            SimpleGraph g = testgen::random_tight(cs.c.l == 3 ? 2 + t % 8 : 4 + t % 6, cs.c, rng);
            auto m = random_move(g, cs.kind, g.max_label() + 1, rng);
            if (!m) continue;
            SimpleGraph h = apply_move(g, *m);
            CHECK(is_sparse(h, cs.c).tight);
            ++applied;
        }
        CHECK(applied > 20);
    }
}

TEST_CASE("vertex splitting keeps the flex dimension in 3D") {
    std::mt19937_64 rng(44);
    std::vector<std::vector<int>> holes = {{}, {4}, {5}, {4, 4}};
    int done = 0;
    for (int t = 0; t < 20; ++t) {
        SimplicialMeta meta;
        meta.holeCycles = holes[t % holes.size()];
        meta.kappa = static_cast<int>(meta.holeCycles.size());
        SimpleGraph g = simplicial_holes(meta, 10 + t % 4).graph;
        std::optional<MoveRecord> m;
        while (!m) m = random_move(g, MoveKind::VertexSplit3D, g.max_label() + 1, rng);
        SimpleGraph h = apply_move(g, *m);
        for (int q : {2, 3}) {
            NormSpec n(3, q);
            CHECK(is_rigid_generic(h, n, 3, 45).report.flexDim == is_rigid_generic(g, n, 3, 46).report.flexDim);
        }
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("find_chain small cases") {
    ConstructionChain a = find_chain(complete_graph(2), complete_graph(3), ChainMode::Euclidean2D);
    REQUIRE(a.moves.size() == 1);
    CHECK(a.moves[0].kind == MoveKind::VertexExt);
    CHECK(a.moves[0].degree == 2);

    ConstructionChain b = find_chain(complete_graph(1), complete_graph(4), ChainMode::QNorm2D);
    REQUIRE(b.moves.size() == 1);
    CHECK(b.moves[0].kind == MoveKind::VertexToK4);

    CHECK_THROWS_AS(find_chain(complete_graph(3), complete_graph(4), ChainMode::Euclidean2D), InputError);
    CHECK_THROWS_AS(find_chain(cycle_graph(3), complete_graph(2), ChainMode::Euclidean2D), InputError);
}

TEST_CASE("chains from a triangle replay exactly") {
    std::mt19937_64 rng(47);
    int found = 0;
    for (int t = 0; found < 50 && t < 500; ++t) {
        SimpleGraph g = testgen::random_tight(3 + t % 8, {2, 3}, rng);
        // Use any triangle of g as the start.
        std::optional<SimpleGraph> tri;
        for (auto [a, b] : g.edges()) {
            for (int c : g.neighbors(a))
                if (c != b && g.has_edge(b, c)) tri = induced_subgraph_dense(g, {a, b, c});
            if (tri) break;
        }
        if (!tri) continue;
        ConstructionChain ch = find_chain(*tri, g, ChainMode::Euclidean2D);
        auto stages = replay(ch);
        for (const auto& s : stages) CHECK(is_sparse(s, {2, 3}).tight);
        CHECK(stages.back().same_as(g));
        int added = 0;
        for (const auto& m : ch.moves) added += static_cast<int>(m.newVertices.size());
        CHECK(added == g.num_vertices() - 3);
        ++found;
    }
    CHECK(found == 50);
}

TEST_CASE("q-norm chains add every vertex once") {
    std::mt19937_64 rng(48);
    for (int t = 0; t < 40; ++t) {
        SimpleGraph g = testgen::random_tight(4 + t % 7, {2, 2}, rng);
        SimpleGraph start = SimpleGraph::from_labels({g.label(0)}, {});
        ConstructionChain ch = find_chain(start, g, ChainMode::QNorm2D);
        ChainVerification v = verify_chain(ch, ChainMode::QNorm2D);
        CHECK(v.finalGraph.same_as(g));
        int added = 0;
        for (const auto& m : ch.moves) added += static_cast<int>(m.newVertices.size());
        CHECK(added == g.num_vertices() - 1);
    }
}

TEST_CASE("concatenated chains are valid") {
    std::mt19937_64 rng(49);
    int tried = 0;
    for (int t = 0; t < 20; ++t) {
        SimpleGraph g2 = testgen::random_tight(9, {2, 3}, rng);
        // G1 is the graph after the first few moves of a chain to G2.
        auto [a, b] = g2.label_edge(g2.edges().front());
        SimpleGraph k2 = SimpleGraph::from_labels({a, b}, {{a, b}});
        ConstructionChain full = find_chain(k2, g2, ChainMode::Euclidean2D);
        // Edge moves drop edges, so G1 is the latest intermediate stage that
        // G2 still contains.
        auto stages = replay(full);
        std::optional<SimpleGraph> pick;
        for (std::size_t k = 1; k + 1 < stages.size(); ++k)
            if (stages[k].is_subgraph_of(g2)) pick = stages[k];
        if (!pick) continue;
        ++tried;
        const SimpleGraph& g1 = *pick;
        ConstructionChain first = find_chain(k2, g1, ChainMode::Euclidean2D);
        ConstructionChain second = find_chain(g1, g2, ChainMode::Euclidean2D);
        ConstructionChain joined{k2, first.moves};
        joined.moves.insert(joined.moves.end(), second.moves.begin(), second.moves.end());
        ChainVerification v = verify_chain(joined, ChainMode::Euclidean2D);
        CHECK(v.finalGraph.same_as(g2));
        CHECK(v.stages == static_cast<int>(joined.moves.size()) + 1);
    }
    CHECK(tried >= 10);
}

}
