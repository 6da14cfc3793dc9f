#include "rigidkit/sparsity.hpp"

#include <algorithm>
#include <string>

#include "rigidkit/errors.hpp"

namespace rigidkit {

void check_count(SparsityCount c) {
    if (c.k < 1 || c.l < 0) throw InputError("sparsity count needs k >= 1 and l >= 0");
    if (c.l >= 2 * c.k)
        throw InputError("unsupported count (" + std::to_string(c.k) + "," + std::to_string(c.l) +
                         "): the pebble game needs l < 2k");
}

long long count_slack(int numVertices, int numEdges, SparsityCount c) {
    return static_cast<long long>(c.k) * numVertices - c.l - numEdges;
}

PebbleGame::PebbleGame(int n, SparsityCount c) : c_(c), pebbles_(n, c.k), out_(n) { check_count(c); }

bool PebbleGame::find_pebble(int root, int other) {
    // Depth-first search along directed edges, lowest label first, for a free
    // pebble away from the edge being inserted. The path found is reversed.
    const int n = num_vertices();
    std::vector<int> parent(n, -1);
    std::vector<char> seen(n, 0);
    seen[root] = seen[other] = 1;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    int found = -1;
    while (!stack.empty() && found < 0) {
        auto& [x, pos] = stack.back();
        if (pos >= out_[x].size()) {
            stack.pop_back();
            continue;
        }
        int y = out_[x][pos++];
        if (seen[y]) continue;
        seen[y] = 1;
        parent[y] = x;
        if (pebbles_[y] > 0) {
            found = y;
            break;
        }
        stack.push_back({y, 0});
    }
    if (found < 0) return false;
    for (int y = found; y != root; y = parent[y]) {
        int x = parent[y];
        auto& ox = out_[x];
        ox.erase(std::lower_bound(ox.begin(), ox.end(), y));
        auto& oy = out_[y];
        oy.insert(std::upper_bound(oy.begin(), oy.end(), x), x);
    }
    --pebbles_[found];
    ++pebbles_[root];
    return true;
}

bool PebbleGame::gather(int u, int v) {
    while (pebbles_[u] + pebbles_[v] < c_.l + 1) {
        if (pebbles_[u] < c_.k && find_pebble(u, v)) continue;
        if (pebbles_[v] < c_.k && find_pebble(v, u)) continue;
        return false;
    }
    return true;
}

bool PebbleGame::independent(int u, int v) {
    if (u == v) throw InputError("loop edge in pebble game");
    return gather(u, v);
}

bool PebbleGame::try_insert(int u, int v) {
    if (!independent(u, v)) return false;
    int tail = pebbles_[u] > 0 ? u : v;
    int head = tail == u ? v : u;
    --pebbles_[tail];
    auto& o = out_[tail];
    o.insert(std::upper_bound(o.begin(), o.end(), head), head);
    ++accepted_;
    return true;
}

std::vector<int> PebbleGame::closure(int u, int v) const {
    std::vector<char> seen(num_vertices(), 0);
    std::vector<int> stack{u, v};
    seen[u] = seen[v] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : out_[x])
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
    }
    std::vector<int> out;
    for (int i = 0; i < num_vertices(); ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

namespace {

SparsityReport pebble_report(int n, const std::vector<Edge>& edges, SparsityCount c) {
    check_count(c);
    PebbleGame game(n, c);
    SparsityReport r;
    for (const auto& [u, v] : edges) {
        if (!game.try_insert(u, v)) {
            r.sparse = false;
            r.witness = game.closure(u, v);
            return r;
        }
    }
    r.tight = count_slack(n, static_cast<int>(edges.size()), c) == 0;
    return r;
}

SparsityReport brute_report(int n, const std::vector<Edge>& edges, SparsityCount c) {
    check_count(c);
    if (n > 12) throw InputError("brute-force sparsity is limited to 12 vertices");
    SparsityReport r;
    // Smallest violating subset first, ties broken by bitmask order.
    std::vector<unsigned> masks;
    for (unsigned m = 1; m < (1u << n); ++m)
        if (__builtin_popcount(m) >= 2) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    for (unsigned m : masks) {
        int ecount = 0;
        for (const auto& [u, v] : edges)
            if ((m >> u & 1u) && (m >> v & 1u)) ++ecount;
        if (count_slack(__builtin_popcount(m), ecount, c) < 0) {
            r.sparse = false;
            std::vector<int> w;
            for (int i = 0; i < n; ++i)
                if (m >> i & 1u) w.push_back(i);
            r.witness = std::move(w);
            return r;
        }
    }
    r.tight = count_slack(n, static_cast<int>(edges.size()), c) == 0;
    return r;
}

}  // namespace

SparsityReport is_sparse(const SimpleGraph& g, SparsityCount c) { return pebble_report(g.num_vertices(), g.edges(), c); }
SparsityReport is_sparse(const MultiGraph& g, SparsityCount c) { return pebble_report(g.num_vertices(), g.edges(), c); }
SparsityReport brute_force_sparse(const SimpleGraph& g, SparsityCount c) {
    return brute_report(g.num_vertices(), g.edges(), c);
}
SparsityReport brute_force_sparse(const MultiGraph& g, SparsityCount c) {
    return brute_report(g.num_vertices(), g.edges(), c);
}

std::vector<int> independent_edges(int n, const std::vector<Edge>& edges, SparsityCount c) {
    PebbleGame game(n, c);
    std::vector<int> keep;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (game.try_insert(edges[i].first, edges[i].second)) keep.push_back(static_cast<int>(i));
    return keep;
}

std::optional<SimpleGraph> tight_spanning_subgraph(const SimpleGraph& g, SparsityCount c) {
    auto keep = independent_edges(g.num_vertices(), g.edges(), c);
    if (count_slack(g.num_vertices(), static_cast<int>(keep.size()), c) != 0) return std::nullopt;
    std::vector<LabelEdge> es;
    for (int i : keep) es.push_back(g.label_edge(g.edges()[i]));
    return SimpleGraph::from_labels(g.labels(), es);
}

std::optional<MultiGraph> tight_spanning_subgraph(const MultiGraph& g, SparsityCount c) {
    auto keep = independent_edges(g.num_vertices(), g.edges(), c);
    if (count_slack(g.num_vertices(), static_cast<int>(keep.size()), c) != 0) return std::nullopt;
    std::vector<LabelEdge> es;
    for (int i : keep) es.push_back({g.label(g.edges()[i].first), g.label(g.edges()[i].second)});
    return MultiGraph::from_labels(g.labels(), es);
}

namespace {

void check_augment_pre(int n, const std::vector<Edge>& edges, SparsityCount c) {
    check_count(c);
    if (c.l > c.k && n < 2) throw InputError("augment_to_tight needs at least 2 vertices");
    if (c.l == c.k && n < 2 * c.k)
        throw InputError("augment_to_tight on a (k,k) count needs at least 2k vertices");
    if (c.l != c.k && !(c.k == 2 && c.l == 3)) throw InputError("augment_to_tight supports (2,3) and (k,k) counts");
    if (!pebble_report(n, edges, c).sparse) throw InputError("augment_to_tight needs a sparse input");
}

// Lexicographic scan over pairs, restarting after each insertion. A pair that
// was rejected stays rejected (blocks only grow), so the restart amounts to
// retrying the current pair before moving on.
std::vector<Edge> augment_edges(int n, const std::vector<Edge>& edges, SparsityCount c, bool parallel) {
    PebbleGame game(n, c);
    for (const auto& [u, v] : edges) game.try_insert(u, v);
    std::vector<Edge> added;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& [u, v] : edges) adj[u][v] = adj[v][u] = 1;
    for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w) {
            while ((parallel || !adj[v][w]) && game.try_insert(v, w)) {
                added.push_back({v, w});
                adj[v][w] = adj[w][v] = 1;
            }
        }
    return added;
}

}  // namespace

SimpleGraph augment_to_tight(const SimpleGraph& g, SparsityCount c) {
    check_augment_pre(g.num_vertices(), g.edges(), c);
    auto es = g.label_edges();
    for (auto e : augment_edges(g.num_vertices(), g.edges(), c, false)) es.push_back(g.label_edge(e));
    SimpleGraph out = SimpleGraph::from_labels(g.labels(), es);
    if (count_slack(out.num_vertices(), out.num_edges(), c) != 0)
        throw AlgorithmError("augmentation stopped short of a tight graph");
    return out;
}

MultiGraph augment_to_tight(const MultiGraph& g, SparsityCount c) {
    check_augment_pre(g.num_vertices(), g.edges(), c);
    std::vector<LabelEdge> es;
    for (auto e : g.edges()) es.push_back({g.label(e.first), g.label(e.second)});
    for (auto e : augment_edges(g.num_vertices(), g.edges(), c, true)) es.push_back({g.label(e.first), g.label(e.second)});
    MultiGraph out = MultiGraph::from_labels(g.labels(), es);
    if (count_slack(out.num_vertices(), out.num_edges(), c) != 0)
        throw AlgorithmError("augmentation stopped short of a tight graph");
    return out;
}

namespace {

BlockingResult blocking(int n, const std::vector<Edge>& edges, SparsityCount c, int v, int w) {
    check_count(c);
    if (v < 0 || w < 0 || v >= n || w >= n || v == w) throw InputError("blocking query needs two distinct vertices");
    PebbleGame game(n, c);
    for (const auto& [a, b] : edges) {
        if (make_edge(a, b) == make_edge(v, w)) throw InputError("queried pair is already an edge");
        if (!game.try_insert(a, b)) throw InputError("blocking query needs a sparse graph");
    }
    if (game.independent(v, w)) return AddKeepsSparse{};
    return Blocked{game.closure(v, w)};
}

}  // namespace

BlockingResult blocking_tight_subgraph(const SimpleGraph& g, SparsityCount c, int v, int w) {
    return blocking(g.num_vertices(), g.edges(), c, v, w);
}

BlockingResult blocking_tight_subgraph(const MultiGraph& g, SparsityCount c, int v, int w) {
    return blocking(g.num_vertices(), g.edges(), c, v, w);
}

}  // namespace rigidkit
