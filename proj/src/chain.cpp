#include "rigidkit/chain.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rigidkit/errors.hpp"

namespace rigidkit {

std::string to_string(MoveKind k) {
    switch (k) {
        case MoveKind::VertexExt: return "VertexExt";
        case MoveKind::EdgeMove: return "EdgeMove";
        case MoveKind::VertexToK4: return "VertexToK4";
        case MoveKind::VertexTo4Cycle: return "VertexTo4Cycle";
        case MoveKind::VertexSplit3D: return "VertexSplit3D";
    }
    return "?";
}

MoveKind move_kind_from_string(const std::string& s) {
    for (auto k : {MoveKind::VertexExt, MoveKind::EdgeMove, MoveKind::VertexToK4, MoveKind::VertexTo4Cycle,
                   MoveKind::VertexSplit3D})
        if (to_string(k) == s) return k;
    throw InputError("unknown move kind '" + s + "'");
}

MoveRecord MoveRecord::vertex_ext(VertexId v, std::vector<VertexId> nbrs) {
    MoveRecord m;
    m.kind = MoveKind::VertexExt;
    m.degree = static_cast<int>(nbrs.size());
    m.newVertices = {v};
    m.neighbors = std::move(nbrs);
    return m;
}

MoveRecord MoveRecord::edge_move(VertexId v, LabelEdge removed, std::vector<VertexId> nbrs) {
    MoveRecord m;
    m.kind = MoveKind::EdgeMove;
    m.degree = static_cast<int>(nbrs.size()) - 1;
    m.newVertices = {v};
    m.removedEdge = removed;
    m.neighbors = std::move(nbrs);
    return m;
}

MoveRecord MoveRecord::to_k4(VertexId w0, std::vector<VertexId> fresh, std::vector<std::pair<VertexId, int>> reassign) {
    MoveRecord m;
    m.kind = MoveKind::VertexToK4;
    m.base = w0;
    m.newVertices = std::move(fresh);
    m.reassign = std::move(reassign);
    return m;
}

MoveRecord MoveRecord::to_4cycle(VertexId v, VertexId v1, VertexId v2, VertexId v0, std::vector<VertexId> moved) {
    MoveRecord m;
    m.kind = MoveKind::VertexTo4Cycle;
    m.base = v;
    m.neighbors = {v1, v2};
    m.newVertices = {v0};
    m.moved = std::move(moved);
    return m;
}

MoveRecord MoveRecord::split3d(VertexId v1, VertexId v2, VertexId v3, VertexId v0, std::vector<VertexId> moved) {
    MoveRecord m;
    m.kind = MoveKind::VertexSplit3D;
    m.base = v1;
    m.neighbors = {v2, v3};
    m.newVertices = {v0};
    m.moved = std::move(moved);
    return m;
}

namespace {

std::string s(VertexId v) { return std::to_string(v.value); }

// Mutable label-level edge set used while applying a move.
struct Work {
    std::vector<VertexId> vertices;
    std::set<std::pair<VertexId, VertexId>> edges;
    std::vector<LabelEdge> order;

    static std::pair<VertexId, VertexId> key(VertexId a, VertexId b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

    explicit Work(const SimpleGraph& g) : vertices(g.labels()) {
        for (const auto& e : g.label_edges()) {
            edges.insert(key(e.first, e.second));
            order.push_back(e);
        }
    }
    bool has(VertexId a, VertexId b) const { return edges.count(key(a, b)) > 0; }
    void add(VertexId a, VertexId b) {
        if (a == b) throw MoveError("move would create a loop at " + s(a));
        if (!edges.insert(key(a, b)).second) throw MoveError("move would duplicate edge " + s(a) + "-" + s(b));
        order.push_back({a, b});
    }
    void remove(VertexId a, VertexId b) {
        if (!edges.erase(key(a, b))) throw MoveError("edge " + s(a) + "-" + s(b) + " is not present");
        auto k = key(a, b);
        order.erase(std::find_if(order.begin(), order.end(), [&](const LabelEdge& e) { return key(e.first, e.second) == k; }));
    }
    SimpleGraph build() const { return SimpleGraph::from_labels(vertices, order); }
};

void require_fresh(const SimpleGraph& g, const std::vector<VertexId>& fresh) {
    std::set<VertexId> seen;
    for (auto v : fresh) {
        if (g.has_vertex(v)) throw MoveError("new vertex " + s(v) + " is not fresh");
        if (!seen.insert(v).second) throw MoveError("new vertex " + s(v) + " listed twice");
    }
}

void require_existing_distinct(const SimpleGraph& g, const std::vector<VertexId>& vs, const std::string& what) {
    std::set<VertexId> seen;
    for (auto v : vs) {
        if (!g.has_vertex(v)) throw MoveError(what + " " + s(v) + " does not exist");
        if (!seen.insert(v).second) throw MoveError(what + " " + s(v) + " listed twice");
    }
}

}  // namespace

SimpleGraph apply_move(const SimpleGraph& g, const MoveRecord& m) {
    Work w(g);
    switch (m.kind) {
        case MoveKind::VertexExt: {
            if (m.newVertices.size() != 1) throw MoveError("vertex extension adds exactly one vertex");
            if (m.degree < 1 || static_cast<int>(m.neighbors.size()) != m.degree)
                throw MoveError("vertex extension of degree " + std::to_string(m.degree) + " needs that many neighbours");
            require_fresh(g, m.newVertices);
            require_existing_distinct(g, m.neighbors, "neighbour");
            VertexId v = m.newVertices[0];
            w.vertices.push_back(v);
            for (auto x : m.neighbors) w.add(v, x);
            break;
        }
        case MoveKind::EdgeMove: {
            if (m.newVertices.size() != 1) throw MoveError("edge move adds exactly one vertex");
            if (!m.removedEdge) throw MoveError("edge move needs a removed edge");
            if (m.degree < 1 || static_cast<int>(m.neighbors.size()) != m.degree + 1)
                throw MoveError("edge move of degree " + std::to_string(m.degree) + " needs degree+1 neighbours");
            require_fresh(g, m.newVertices);
            require_existing_distinct(g, m.neighbors, "neighbour");
            auto [a, b] = *m.removedEdge;
            auto inN = [&](VertexId x) { return std::find(m.neighbors.begin(), m.neighbors.end(), x) != m.neighbors.end(); };
            if (!inN(a) || !inN(b)) throw MoveError("removed edge endpoints must be among the new neighbours");
            if (!w.has(a, b)) throw MoveError("removed edge " + s(a) + "-" + s(b) + " is not present");
            w.remove(a, b);
            VertexId v = m.newVertices[0];
            w.vertices.push_back(v);
            for (auto x : m.neighbors) w.add(v, x);
            break;
        }
        case MoveKind::VertexToK4: {
            if (m.newVertices.size() != 3) throw MoveError("vertex-to-K4 adds exactly three vertices");
            require_fresh(g, m.newVertices);
            if (!g.has_vertex(m.base)) throw MoveError("base vertex " + s(m.base) + " does not exist");
            std::set<VertexId> seen;
            for (auto [x, j] : m.reassign) {
                if (j < 1 || j > 3) throw MoveError("reassignment target index must be 1, 2 or 3");
                if (!w.has(m.base, x)) throw MoveError("reassigned vertex " + s(x) + " is not a neighbour of the base");
                if (!seen.insert(x).second) throw MoveError("vertex " + s(x) + " reassigned twice");
            }
            for (auto v : m.newVertices) w.vertices.push_back(v);
            for (auto [x, j] : m.reassign) {
                w.remove(m.base, x);
                w.add(m.newVertices[j - 1], x);
            }
            std::vector<VertexId> k4{m.base, m.newVertices[0], m.newVertices[1], m.newVertices[2]};
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) w.add(k4[i], k4[j]);
            break;
        }
        case MoveKind::VertexTo4Cycle: {
            if (m.newVertices.size() != 1 || m.neighbors.size() != 2)
                throw MoveError("vertex-to-4-cycle needs one new vertex and two named neighbours");
            require_fresh(g, m.newVertices);
            if (!g.has_vertex(m.base)) throw MoveError("base vertex " + s(m.base) + " does not exist");
            VertexId v1 = m.neighbors[0], v2 = m.neighbors[1];
            if (v1 == v2) throw MoveError("the two named neighbours must differ");
            if (!w.has(m.base, v1) || !w.has(m.base, v2)) throw MoveError("named vertices must be neighbours of the base");
            std::set<VertexId> seen;
            for (auto x : m.moved) {
                if (x == v1 || x == v2) throw MoveError("edges to the named neighbours are not moved");
                if (!w.has(m.base, x)) throw MoveError("moved vertex " + s(x) + " is not a neighbour of the base");
                if (!seen.insert(x).second) throw MoveError("vertex " + s(x) + " moved twice");
            }
            VertexId v0 = m.newVertices[0];
            w.vertices.push_back(v0);
            w.add(v0, v1);
            w.add(v0, v2);
            for (auto x : m.moved) {
                w.remove(m.base, x);
                w.add(v0, x);
            }
            break;
        }
        case MoveKind::VertexSplit3D: {
            if (m.newVertices.size() != 1 || m.neighbors.size() != 2)
                throw MoveError("vertex splitting needs one new vertex and two named neighbours");
            require_fresh(g, m.newVertices);
            VertexId v1 = m.base, v2 = m.neighbors[0], v3 = m.neighbors[1];
            if (!g.has_vertex(v1)) throw MoveError("split vertex " + s(v1) + " does not exist");
            if (v2 == v3) throw MoveError("the two named neighbours must differ");
            if (!w.has(v1, v2) || !w.has(v1, v3)) throw MoveError("v1v2 and v1v3 must be edges");
            std::set<VertexId> seen;
            for (auto x : m.moved) {
                if (x == v2 || x == v3) throw MoveError("edges to v2, v3 are shared, not moved");
                if (!w.has(v1, x)) throw MoveError("moved vertex " + s(x) + " is not a neighbour of v1");
                if (!seen.insert(x).second) throw MoveError("vertex " + s(x) + " moved twice");
            }
            VertexId v0 = m.newVertices[0];
            w.vertices.push_back(v0);
            w.add(v0, v1);
            w.add(v0, v2);
            w.add(v0, v3);
            for (auto x : m.moved) {
                w.remove(v1, x);
                w.add(v0, x);
            }
            break;
        }
    }
    return w.build();
}

std::vector<SimpleGraph> replay(const ConstructionChain& c) {
    std::vector<SimpleGraph> stages{c.start};
    for (std::size_t i = 0; i < c.moves.size(); ++i) {
        try {
            stages.push_back(apply_move(stages.back(), c.moves[i]));
        } catch (const MoveError& e) {
            throw ChainError(static_cast<int>(i), "move " + std::to_string(i) + ": " + e.what());
        }
    }
    return stages;
}

SimpleGraph chain_limit(const ConstructionChain& c) {
    // Moves never delete vertices, so the vertex union is the last vertex set.
    // An edge survives into the limit iff it is present from some stage on;
    // with finitely many stages that is membership in the last stage.
    auto stages = replay(c);
    std::map<std::pair<VertexId, VertexId>, std::size_t> since;
    for (std::size_t k = 0; k < stages.size(); ++k) {
        std::set<std::pair<VertexId, VertexId>> now;
        for (const auto& e : stages[k].label_edges()) now.insert(Work::key(e.first, e.second));
        for (auto it = since.begin(); it != since.end();)
            it = now.count(it->first) ? std::next(it) : since.erase(it);
        for (const auto& e : now) since.emplace(e, k);
    }
    std::vector<LabelEdge> es;
    for (const auto& e : stages.back().label_edges())
        if (since.count(Work::key(e.first, e.second))) es.push_back(e);
    return SimpleGraph::from_labels(stages.back().labels(), es);
}

}  // namespace rigidkit
