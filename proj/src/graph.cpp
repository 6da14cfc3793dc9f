#include "rigidkit/graph.hpp"

#include <algorithm>
#include <set>

#include "rigidkit/errors.hpp"

namespace rigidkit {

namespace {

std::string lbl(VertexId v) { return std::to_string(v.value); }

std::vector<VertexId> sorted_unique_labels(std::vector<VertexId> vs) {
    std::sort(vs.begin(), vs.end());
    auto dup = std::adjacent_find(vs.begin(), vs.end());
    if (dup != vs.end()) throw InputError("duplicate vertex " + lbl(*dup));
    return vs;
}

std::optional<int> find_label(const std::vector<VertexId>& labels, VertexId id) {
    auto it = std::lower_bound(labels.begin(), labels.end(), id);
    if (it == labels.end() || *it != id) return std::nullopt;
    return static_cast<int>(it - labels.begin());
}

}  // namespace

SimpleGraph SimpleGraph::dense(int n, const std::vector<Edge>& edges) {
    std::vector<VertexId> vs(n);
    for (int i = 0; i < n; ++i) vs[i] = VertexId{static_cast<std::uint64_t>(i)};
    std::vector<LabelEdge> es;
    es.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
        es.push_back({vs[u], vs[v]});
    }
    return from_labels(std::move(vs), es);
}

SimpleGraph SimpleGraph::from_labels(std::vector<VertexId> vertices, const std::vector<LabelEdge>& edges) {
    SimpleGraph g;
    g.labels_ = sorted_unique_labels(std::move(vertices));
    g.adj_.assign(g.labels_.size(), {});
    std::set<Edge> seen;
    for (auto [a, b] : edges) {
        auto u = find_label(g.labels_, a);
        auto v = find_label(g.labels_, b);
        if (!u || !v) throw InputError("edge " + lbl(a) + "-" + lbl(b) + " has an endpoint outside the vertex set");
        if (*u == *v) throw InputError("loop at vertex " + lbl(a));
        Edge e = make_edge(*u, *v);
        if (!seen.insert(e).second) throw InputError("duplicate edge " + lbl(a) + "-" + lbl(b));
        g.edges_.push_back(e);
        g.adj_[e.first].push_back(e.second);
        g.adj_[e.second].push_back(e.first);
    }
    for (auto& a : g.adj_) std::sort(a.begin(), a.end());
    return g;
}

std::optional<int> SimpleGraph::find(VertexId id) const { return find_label(labels_, id); }

int SimpleGraph::index_of(VertexId id) const {
    auto i = find(id);
    if (!i) throw InputError("unknown vertex " + lbl(id));
    return *i;
}

bool SimpleGraph::has_edge(int u, int v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

bool SimpleGraph::has_label_edge(VertexId a, VertexId b) const {
    auto u = find(a);
    auto v = find(b);
    return u && v && has_edge(*u, *v);
}

std::vector<LabelEdge> SimpleGraph::label_edges() const {
    std::vector<LabelEdge> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back(label_edge(e));
    return out;
}

bool SimpleGraph::is_subgraph_of(const SimpleGraph& other) const {
    for (auto v : labels_)
        if (!other.has_vertex(v)) return false;
    for (const auto& e : edges_) {
        auto [a, b] = label_edge(e);
        if (!other.has_label_edge(a, b)) return false;
    }
    return true;
}

bool SimpleGraph::same_as(const SimpleGraph& other) const {
    return labels_ == other.labels_ && num_edges() == other.num_edges() && is_subgraph_of(other);
}

std::uint64_t SimpleGraph::max_label() const { return labels_.empty() ? 0 : labels_.back().value; }

MultiGraph MultiGraph::dense(int n, const std::vector<Edge>& edges) {
    std::vector<VertexId> vs(n);
    for (int i = 0; i < n; ++i) vs[i] = VertexId{static_cast<std::uint64_t>(i)};
    std::vector<LabelEdge> es;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
        es.push_back({vs[u], vs[v]});
    }
    return from_labels(std::move(vs), es);
}

MultiGraph MultiGraph::from_labels(std::vector<VertexId> vertices, const std::vector<LabelEdge>& edges) {
    MultiGraph g;
    g.labels_ = sorted_unique_labels(std::move(vertices));
    for (auto [a, b] : edges) {
        auto u = find_label(g.labels_, a);
        auto v = find_label(g.labels_, b);
        if (!u || !v) throw InputError("edge " + lbl(a) + "-" + lbl(b) + " has an endpoint outside the vertex set");
        if (*u == *v) throw InputError("loop at vertex " + lbl(a));
        g.edges_.push_back(make_edge(*u, *v));
    }
    return g;
}

MultiGraph MultiGraph::from_simple(const SimpleGraph& g) {
    MultiGraph m;
    m.labels_ = g.labels();
    m.edges_ = g.edges();
    return m;
}

std::optional<int> MultiGraph::find(VertexId id) const { return find_label(labels_, id); }

int MultiGraph::index_of(VertexId id) const {
    auto i = find(id);
    if (!i) throw InputError("unknown vertex " + lbl(id));
    return *i;
}

int MultiGraph::multiplicity(int u, int v) const {
    Edge e = make_edge(u, v);
    return static_cast<int>(std::count(edges_.begin(), edges_.end(), e));
}

SimpleGraph induced_subgraph(const SimpleGraph& g, const std::vector<VertexId>& s) {
    std::vector<int> idx;
    idx.reserve(s.size());
    for (auto v : s) idx.push_back(g.index_of(v));
    return induced_subgraph_dense(g, idx);
}

SimpleGraph induced_subgraph_dense(const SimpleGraph& g, const std::vector<int>& s) {
    std::vector<char> in(g.num_vertices(), 0);
    std::vector<VertexId> vs;
    for (int v : s) {
        if (v < 0 || v >= g.num_vertices()) throw InputError("vertex index out of range");
        if (!in[v]) vs.push_back(g.label(v));
        in[v] = 1;
    }
    std::vector<LabelEdge> es;
    for (const auto& e : g.edges())
        if (in[e.first] && in[e.second]) es.push_back(g.label_edge(e));
    return SimpleGraph::from_labels(std::move(vs), es);
}

MultiGraph induced_subgraph_dense(const MultiGraph& g, const std::vector<int>& s) {
    std::vector<char> in(g.num_vertices(), 0);
    std::vector<VertexId> vs;
    for (int v : s) {
        if (!in[v]) vs.push_back(g.label(v));
        in[v] = 1;
    }
    std::vector<LabelEdge> es;
    for (const auto& e : g.edges())
        if (in[e.first] && in[e.second]) es.push_back({g.label(e.first), g.label(e.second)});
    return MultiGraph::from_labels(std::move(vs), es);
}

SimpleGraph graph_union(const SimpleGraph& a, const SimpleGraph& b) {
    std::vector<VertexId> vs = a.labels();
    for (auto v : b.labels())
        if (!a.has_vertex(v)) vs.push_back(v);
    std::vector<LabelEdge> es = a.label_edges();
    for (const auto& e : b.edges()) {
        auto le = b.label_edge(e);
        if (!a.has_label_edge(le.first, le.second)) es.push_back(le);
    }
    return SimpleGraph::from_labels(std::move(vs), es);
}

SimpleGraph with_complete_on(const SimpleGraph& g, const std::vector<int>& s) {
    std::vector<LabelEdge> es = g.label_edges();
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!g.has_edge(s[i], s[j])) es.push_back({g.label(s[i]), g.label(s[j])});
    return SimpleGraph::from_labels(g.labels(), es);
}

SimpleGraph complete_graph(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.push_back({i, j});
    return SimpleGraph::dense(n, es);
}

SimpleGraph cycle_graph(int n) {
    if (n < 3) throw InputError("cycle needs at least 3 vertices");
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
    return SimpleGraph::dense(n, es);
}

Tower validate_tower(std::vector<SimpleGraph> stages, std::optional<SimpleGraph> target) {
    if (stages.empty()) throw InputError("tower needs at least one stage");
    for (std::size_t k = 0; k + 1 < stages.size(); ++k) {
        const auto& a = stages[k];
        const auto& b = stages[k + 1];
        for (auto v : a.labels())
            if (!b.has_vertex(v))
                throw NestingError(static_cast<int>(k + 1), "stage " + std::to_string(k + 1) + " is missing vertex " +
                                                                lbl(v) + " of stage " + std::to_string(k));
        for (const auto& e : a.edges()) {
            auto [x, y] = a.label_edge(e);
            if (!b.has_label_edge(x, y))
                throw NestingError(static_cast<int>(k + 1), "stage " + std::to_string(k + 1) + " is missing edge " +
                                                                lbl(x) + "-" + lbl(y) + " of stage " + std::to_string(k));
        }
    }
    Tower t;
    t.stages = std::move(stages);
    const SimpleGraph& last = t.stages.back();
    if (target) {
        if (!last.is_subgraph_of(*target)) throw InputError("tower stages are not contained in the target graph");
        t.vertexComplete = last.num_vertices() == target->num_vertices();
        t.edgeComplete = last.num_edges() == target->num_edges();
        t.target = std::move(target);
    } else {
        t.vertexComplete = true;
        t.edgeComplete = true;
    }
    return t;
}

std::string describe(const SimpleGraph& g) {
    return std::to_string(g.num_vertices()) + " vertices, " + std::to_string(g.num_edges()) + " edges";
}

}  // namespace rigidkit
