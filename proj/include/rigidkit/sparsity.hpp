#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "rigidkit/graph.hpp"

namespace rigidkit {

struct SparsityCount {
    int k = 2;
    int l = 3;
    bool operator==(const SparsityCount&) const = default;
};

// Throws InputError unless k >= 1 and 0 <= l < 2k.
void check_count(SparsityCount c);

// Witness is the vertex set of a subgraph with more than k|V| - l edges.
struct SparsityReport {
    bool sparse = true;
    bool tight = false;
    std::optional<std::vector<int>> witness;  // dense indices, sorted
};

// (k,l) pebble game on a multigraph with n vertices. Edges are inserted one at
// a time; a rejected edge leaves the accepted set unchanged.
class PebbleGame {
public:
    PebbleGame(int n, SparsityCount c);

    // Gathers l+1 pebbles on {u,v}; inserts the edge on success.
    bool try_insert(int u, int v);
    // Same test without inserting. Pebbles may be rearranged.
    bool independent(int u, int v);
    // Vertices reachable from u or v after a failed gather (a tight block holding both).
    std::vector<int> closure(int u, int v) const;

    int accepted() const { return accepted_; }
    int num_vertices() const { return static_cast<int>(pebbles_.size()); }

private:
    bool gather(int u, int v);
    bool find_pebble(int root, int other);

    SparsityCount c_;
    std::vector<int> pebbles_;
    std::vector<std::vector<int>> out_;  // sorted heads of edges directed out of each vertex
    int accepted_ = 0;
};

SparsityReport is_sparse(const SimpleGraph& g, SparsityCount c);
SparsityReport is_sparse(const MultiGraph& g, SparsityCount c);

// Exhaustive check over all vertex subsets; |V| <= 12.
SparsityReport brute_force_sparse(const SimpleGraph& g, SparsityCount c);
SparsityReport brute_force_sparse(const MultiGraph& g, SparsityCount c);

// Greedy maximal independent edge set in input order (positions into g.edges()).
std::vector<int> independent_edges(int n, const std::vector<Edge>& edges, SparsityCount c);

std::optional<SimpleGraph> tight_spanning_subgraph(const SimpleGraph& g, SparsityCount c);
std::optional<MultiGraph> tight_spanning_subgraph(const MultiGraph& g, SparsityCount c);

SimpleGraph augment_to_tight(const SimpleGraph& g, SparsityCount c);
MultiGraph augment_to_tight(const MultiGraph& g, SparsityCount c);

struct AddKeepsSparse {};
struct Blocked {
    std::vector<int> vertices;  // dense indices of a tight subgraph containing v and w
};
using BlockingResult = std::variant<AddKeepsSparse, Blocked>;

BlockingResult blocking_tight_subgraph(const SimpleGraph& g, SparsityCount c, int v, int w);
BlockingResult blocking_tight_subgraph(const MultiGraph& g, SparsityCount c, int v, int w);

// |E(H)| <= k|V(H)| - l for the induced subgraph on s (s with at least 2 vertices).
long long count_slack(int numVertices, int numEdges, SparsityCount c);

}  // namespace rigidkit
