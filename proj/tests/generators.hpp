#pragma once

// Seeded random instances shared by the unit and acceptance tests.

#include <algorithm>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "rigidkit/bodybar.hpp"
#include "rigidkit/graph.hpp"
#include "rigidkit/sparsity.hpp"

namespace testgen {

using namespace rigidkit;

inline SimpleGraph random_graph(int n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) es.push_back({i, j});
    std::shuffle(es.begin(), es.end(), rng);
    return SimpleGraph::dense(n, es);
}

// Random (2,l)-tight graph: shuffled pairs inserted while independent.
// Needs n >= 2 for l = 3 and n >= 4 (or n = 1) for l = 2.
inline SimpleGraph random_tight(int n, SparsityCount c, std::mt19937_64& rng) {
    std::vector<Edge> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    std::shuffle(pairs.begin(), pairs.end(), rng);
    PebbleGame game(n, c);
    std::vector<Edge> es;
    for (const auto& e : pairs)
        if (game.try_insert(e.first, e.second)) es.push_back(e);
    return SimpleGraph::dense(n, es);
}

// Random brute-force-sized multigraph with parallel edges.
inline MultiGraph random_multigraph(int n, int m, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<Edge> es;
    while (static_cast<int>(es.size()) < m) {
        int a = pick(rng), b = pick(rng);
        if (a != b) es.push_back(make_edge(a, b));
    }
    return MultiGraph::dense(n, es);
}

// Bodies are complete graphs of the given size; bars join random body pairs
// on unused vertices. Bodies are labelled consecutively.
inline MultiBodyGraph random_multibody(int bodies, int size, int bars, const NormSpec& n, std::mt19937_64& rng) {
    std::vector<VertexId> vs;
    std::vector<LabelEdge> es;
    std::vector<std::vector<VertexId>> parts(bodies);
    for (int b = 0; b < bodies; ++b)
        for (int i = 0; i < size; ++i) {
            VertexId v{static_cast<std::uint64_t>(b * size + i)};
            vs.push_back(v);
            parts[b].push_back(v);
            for (int j = 0; j < i; ++j) es.push_back({VertexId{static_cast<std::uint64_t>(b * size + j)}, v});
        }
    std::vector<int> next(bodies, 0);
    std::uniform_int_distribution<int> pick(0, bodies - 1);
    int placed = 0, guard = 0;
    while (placed < bars && guard++ < 10000) {
        int a = pick(rng), b = pick(rng);
        if (a == b || next[a] >= size || next[b] >= size) continue;
        es.push_back({parts[a][next[a]++], parts[b][next[b]++]});
        ++placed;
    }
    return validate_multibody(SimpleGraph::from_labels(vs, es), parts, n);
}

// Random (k,k)-tight body-bar multigraph: random pairs, each offered until the
// pebble game rejects it, until k(n-1) bars are in.
inline MultiGraph random_tight_multigraph(int n, int k, std::mt19937_64& rng) {
    PebbleGame game(n, {k, k});
    std::vector<Edge> es;
    std::uniform_int_distribution<int> pick(0, n - 1);
    int guard = 0;
    while (static_cast<int>(es.size()) < k * (n - 1) && guard++ < 100000) {
        int a = pick(rng), b = pick(rng);
        if (a != b && game.try_insert(a, b)) es.push_back(make_edge(a, b));
    }
    return MultiGraph::dense(n, es);
}

// Nullity by column-pivoted QR after scaling rows to unit length; an oracle
// for kernels of matrices with very short bars.
inline int balanced_qr_nullity(Eigen::MatrixXd r) {
    for (Eigen::Index i = 0; i < r.rows(); ++i) r.row(i).normalize();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(r);
    qr.setThreshold(1e-9);
    return static_cast<int>(r.cols() - qr.rank());
}

// Multi-body graph whose body-bar graph is gb: body i is a complete graph on
// at least minSize vertices, large enough to give every bar its own ends.
inline MultiBodyGraph multibody_from_bodybar(const MultiGraph& gb, int minSize, const NormSpec& n) {
    const int nb = gb.num_vertices();
    std::vector<int> deg(nb, 0);
    for (auto [a, b] : gb.edges()) ++deg[a], ++deg[b];
    std::vector<int> first(nb + 1, 0);
    for (int i = 0; i < nb; ++i) first[i + 1] = first[i] + std::max(minSize, deg[i]);
    std::vector<VertexId> vs;
    std::vector<LabelEdge> es;
    std::vector<std::vector<VertexId>> parts(nb);
    auto id = [](int x) { return VertexId{static_cast<std::uint64_t>(x)}; };
    for (int b = 0; b < nb; ++b)
        for (int i = first[b]; i < first[b + 1]; ++i) {
            vs.push_back(id(i));
            parts[b].push_back(id(i));
            for (int j = first[b]; j < i; ++j) es.push_back({id(j), id(i)});
        }
    std::vector<int> next(first.begin(), first.end() - 1);
    for (auto [a, b] : gb.edges()) es.push_back({id(next[a]++), id(next[b]++)});
    return validate_multibody(SimpleGraph::from_labels(vs, es), parts, n);
}

}  // namespace testgen
