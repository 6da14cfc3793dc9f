#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rigidkit {

struct VertexId {
    std::uint64_t value = 0;
    auto operator<=>(const VertexId&) const = default;
};

using LabelEdge = std::pair<VertexId, VertexId>;

// Dense-index edge, always stored with first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Vertices are kept sorted by label, so dense index order equals label order.
// Edges keep their input order (it drives pebble-game tie breaking).
class SimpleGraph {
public:
    SimpleGraph() = default;

    // Vertices 0..n-1 labelled by their index.
    static SimpleGraph dense(int n, const std::vector<Edge>& edges);
    static SimpleGraph from_labels(std::vector<VertexId> vertices, const std::vector<LabelEdge>& edges);

    int num_vertices() const { return static_cast<int>(labels_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<VertexId>& labels() const { return labels_; }
    VertexId label(int i) const { return labels_[i]; }
    std::optional<int> find(VertexId id) const;
    int index_of(VertexId id) const;  // throws InputError for unknown labels
    bool has_vertex(VertexId id) const { return find(id).has_value(); }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;
    bool has_label_edge(VertexId a, VertexId b) const;
    LabelEdge label_edge(const Edge& e) const { return {labels_[e.first], labels_[e.second]}; }
    std::vector<LabelEdge> label_edges() const;

    // Label-wise inclusion of vertex and edge sets.
    bool is_subgraph_of(const SimpleGraph& other) const;

    // Same labels and the same edge set, ignoring edge order.
    bool same_as(const SimpleGraph& other) const;

    std::uint64_t max_label() const;

private:
    std::vector<VertexId> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// Parallel edges allowed, loops forbidden. Edge identity is positional.
class MultiGraph {
public:
    MultiGraph() = default;
    static MultiGraph dense(int n, const std::vector<Edge>& edges);
    static MultiGraph from_labels(std::vector<VertexId> vertices, const std::vector<LabelEdge>& edges);
    static MultiGraph from_simple(const SimpleGraph& g);

    int num_vertices() const { return static_cast<int>(labels_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<VertexId>& labels() const { return labels_; }
    VertexId label(int i) const { return labels_[i]; }
    std::optional<int> find(VertexId id) const;
    int index_of(VertexId id) const;
    const std::vector<Edge>& edges() const { return edges_; }
    int multiplicity(int u, int v) const;

private:
    std::vector<VertexId> labels_;
    std::vector<Edge> edges_;
};

SimpleGraph induced_subgraph(const SimpleGraph& g, const std::vector<VertexId>& s);
SimpleGraph induced_subgraph_dense(const SimpleGraph& g, const std::vector<int>& s);
MultiGraph induced_subgraph_dense(const MultiGraph& g, const std::vector<int>& s);

// Union by labels. Edge order: those of a, then new ones of b.
SimpleGraph graph_union(const SimpleGraph& a, const SimpleGraph& b);

// g with every pair of the given (dense) vertices joined.
SimpleGraph with_complete_on(const SimpleGraph& g, const std::vector<int>& s);

SimpleGraph complete_graph(int n);
SimpleGraph cycle_graph(int n);

struct Tower {
    std::vector<SimpleGraph> stages;
    std::optional<SimpleGraph> target;
    bool vertexComplete = false;
    bool edgeComplete = false;

    // The declared target, or the union of stages when none was given.
    const SimpleGraph& effective_target() const { return target ? *target : stages.back(); }
};

// Throws NestingError with the index of the first stage that fails to contain its predecessor.
Tower validate_tower(std::vector<SimpleGraph> stages, std::optional<SimpleGraph> target = std::nullopt);

std::string describe(const SimpleGraph& g);

}  // namespace rigidkit
