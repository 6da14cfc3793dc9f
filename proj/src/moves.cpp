#include "rigidkit/moves.hpp"

#include <algorithm>
#include <set>

#include "rigidkit/errors.hpp"

namespace rigidkit {

SparsityCount mode_count(ChainMode m) { return m == ChainMode::Euclidean2D ? SparsityCount{2, 3} : SparsityCount{2, 2}; }

std::string to_string(ChainMode m) { return m == ChainMode::Euclidean2D ? "euclidean" : "qnorm"; }

ChainMode chain_mode_from_string(const std::string& s) {
    if (s == "euclidean") return ChainMode::Euclidean2D;
    if (s == "qnorm") return ChainMode::QNorm2D;
    throw InputError("unknown chain mode '" + s + "' (euclidean|qnorm)");
}

namespace {

std::vector<VertexId> neighbor_labels(const SimpleGraph& g, int v) {
    std::vector<VertexId> out;
    for (int x : g.neighbors(v)) out.push_back(g.label(x));
    return out;
}

SimpleGraph without_vertices(const SimpleGraph& g, const std::set<VertexId>& drop, const std::vector<LabelEdge>& extra) {
    std::vector<VertexId> vs;
    for (auto v : g.labels())
        if (!drop.count(v)) vs.push_back(v);
    std::vector<LabelEdge> es;
    for (const auto& e : g.label_edges())
        if (!drop.count(e.first) && !drop.count(e.second)) es.push_back(e);
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : es) seen.insert(std::minmax(e.first, e.second));
    for (const auto& e : extra) {
        if (e.first == e.second) throw MoveError("inverse move would create a loop");
        if (!seen.insert(std::minmax(e.first, e.second)).second) throw MoveError("inverse move would duplicate an edge");
        es.push_back(e);
    }
    return SimpleGraph::from_labels(std::move(vs), es);
}

}  // namespace

SimpleGraph undo_move(const SimpleGraph& g, const MoveRecord& m) {
    for (auto v : m.newVertices)
        if (!g.has_vertex(v)) throw MoveError("vertex " + std::to_string(v.value) + " is absent");
    std::set<VertexId> drop(m.newVertices.begin(), m.newVertices.end());
    std::vector<LabelEdge> extra;
    switch (m.kind) {
        case MoveKind::VertexExt:
            break;
        case MoveKind::EdgeMove:
            if (!m.removedEdge) throw MoveError("edge move without removed edge");
            extra.push_back(*m.removedEdge);
            break;
        case MoveKind::VertexToK4:
            for (auto [x, j] : m.reassign) extra.push_back({m.base, x});
            break;
        case MoveKind::VertexTo4Cycle:
        case MoveKind::VertexSplit3D:
            for (auto x : m.moved) extra.push_back({m.base, x});
            break;
    }
    return without_vertices(g, drop, extra);
}

std::vector<MoveRecord> inverse_candidates(const SimpleGraph& g, SparsityCount c, VertexId vid) {
    int v = g.index_of(vid);
    if (!is_sparse(g, c).sparse) throw InputError("inverse_candidates needs a sparse graph");
    const int deg = g.degree(v);
    auto nbrs = neighbor_labels(g, v);
    if (deg == c.k) return {MoveRecord::vertex_ext(vid, nbrs)};
    if (deg != c.k + 1) throw InputError("vertex " + std::to_string(vid.value) + " has degree " + std::to_string(deg) +
                                         ", expected " + std::to_string(c.k) + " or " + std::to_string(c.k + 1));
    SimpleGraph rest = without_vertices(g, {vid}, {});
    std::vector<MoveRecord> out;
    bool anyNonadjacent = false;
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
            int a = rest.index_of(nbrs[i]);
            int b = rest.index_of(nbrs[j]);
            if (rest.has_edge(a, b)) continue;
            anyNonadjacent = true;
            if (std::holds_alternative<AddKeepsSparse>(blocking_tight_subgraph(rest, c, a, b)))
                out.push_back(MoveRecord::edge_move(vid, {nbrs[i], nbrs[j]}, nbrs));
        }
    if (!anyNonadjacent) throw InputError("every neighbour pair of vertex " + std::to_string(vid.value) + " is adjacent");
    return out;
}

namespace {

struct Reduction {
    MoveRecord move;
    SimpleGraph reduced;
};

// Reductions for the non-Euclidean K4 case at a degree-3 vertex v whose
// neighbours v1, v2, v3 are pairwise adjacent. First case: no vertex outside
// H1 and K sees two of v1, v2, v3, and K contracts to one vertex. Second case:
// such a w0 exists and is contracted into v (an inverse 4-cycle move).
std::vector<MoveRecord> k4_case_moves(const SimpleGraph& h, const SimpleGraph& h1, int v, bool firstCaseOnly,
                                      bool secondCaseOnly) {
    std::vector<MoveRecord> out;
    std::vector<int> k{v};
    for (int x : h.neighbors(v)) k.push_back(x);
    std::sort(k.begin(), k.end());
    std::vector<int> tri = h.neighbors(v);

    std::vector<int> w0s;
    for (int w = 0; w < h.num_vertices(); ++w) {
        if (std::find(k.begin(), k.end(), w) != k.end() || h1.has_vertex(h.label(w))) continue;
        int hits = 0;
        for (int x : tri) hits += h.has_edge(w, x) ? 1 : 0;
        if (hits >= 2) w0s.push_back(w);
    }

    if (!secondCaseOnly && (w0s.empty() || firstCaseOnly)) {
        int target = -1;
        for (int x : k)
            if (h1.has_vertex(h.label(x))) target = x;
        std::vector<int> targets;
        if (target >= 0) targets = {target};
        else targets = k;  // smallest label first, others as fallbacks
        for (int t : targets) {
            std::vector<VertexId> fresh;
            std::vector<int> others;
            for (int x : k)
                if (x != t) {
                    others.push_back(x);
                    fresh.push_back(h.label(x));
                }
            std::vector<std::pair<VertexId, int>> reassign;
            for (std::size_t j = 0; j < others.size(); ++j)
                for (int x : h.neighbors(others[j]))
                    if (std::find(k.begin(), k.end(), x) == k.end())
                        reassign.push_back({h.label(x), static_cast<int>(j) + 1});
            out.push_back(MoveRecord::to_k4(h.label(t), fresh, reassign));
        }
    }
    if (!firstCaseOnly) {
        for (int w0 : w0s)
            for (std::size_t i = 0; i < tri.size(); ++i)
                for (std::size_t j = i + 1; j < tri.size(); ++j) {
                    if (!h.has_edge(w0, tri[i]) || !h.has_edge(w0, tri[j])) continue;
                    std::vector<VertexId> moved;
                    for (int x : h.neighbors(w0))
                        if (x != tri[i] && x != tri[j]) moved.push_back(h.label(x));
                    out.push_back(MoveRecord::to_4cycle(h.label(v), h.label(tri[i]), h.label(tri[j]), h.label(w0), moved));
                }
    }
    return out;
}

// General inverse 4-cycle moves at v: v0 = v has exactly two neighbours
// v1, v2 named, every other neighbour moved onto some base adjacent to v1, v2.
std::vector<MoveRecord> general_4cycle_moves(const SimpleGraph& h, int v) {
    std::vector<MoveRecord> out;
    const auto& nb = h.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            for (int base = 0; base < h.num_vertices(); ++base) {
                if (base == v || !h.has_edge(base, nb[i]) || !h.has_edge(base, nb[j]) || h.has_edge(base, v)) continue;
                std::vector<VertexId> moved;
                for (int x : nb)
                    if (x != nb[i] && x != nb[j]) moved.push_back(h.label(x));
                out.push_back(MoveRecord::to_4cycle(h.label(base), h.label(nb[i]), h.label(nb[j]), h.label(v), moved));
            }
    return out;
}

std::optional<Reduction> first_valid(const SimpleGraph& h, const SimpleGraph& h1, SparsityCount c,
                                     const std::vector<MoveRecord>& moves) {
    for (const auto& m : moves) {
        SimpleGraph r;
        try {
            r = undo_move(h, m);
        } catch (const MoveError&) {
            continue;
        }
        if (!h1.is_subgraph_of(r)) continue;
        if (!is_sparse(r, c).tight) continue;
        return Reduction{m, std::move(r)};
    }
    return std::nullopt;
}

std::optional<Reduction> reduce_once(const SimpleGraph& h, const SimpleGraph& h1, ChainMode mode, bool broad) {
    const SparsityCount c = mode_count(mode);
    for (int v = 0; v < h.num_vertices(); ++v) {
        if (h1.has_vertex(h.label(v))) continue;
        const int deg = h.degree(v);
        if (deg < c.k || deg > 2 * c.k - 1) continue;
        std::vector<MoveRecord> moves;
        if (deg == c.k) {
            moves = inverse_candidates(h, c, h.label(v));
        } else {
            const auto& nb = h.neighbors(v);
            bool triangle = true;
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!h.has_edge(nb[i], nb[j])) triangle = false;
            if (!triangle) {
                moves = inverse_candidates(h, c, h.label(v));
            } else if (mode == ChainMode::QNorm2D) {
                moves = k4_case_moves(h, h1, v, false, false);
                if (broad) {
                    auto extra1 = k4_case_moves(h, h1, v, true, false);
                    auto extra2 = k4_case_moves(h, h1, v, false, true);
                    moves.insert(moves.end(), extra1.begin(), extra1.end());
                    moves.insert(moves.end(), extra2.begin(), extra2.end());
                }
            }
        }
        if (broad && mode == ChainMode::QNorm2D) {
            auto g4 = general_4cycle_moves(h, v);
            moves.insert(moves.end(), g4.begin(), g4.end());
        }
        if (auto r = first_valid(h, h1, c, moves)) return r;
    }
    return std::nullopt;
}

}  // namespace

ConstructionChain find_chain(const SimpleGraph& gFrom, const SimpleGraph& gTo, ChainMode mode) {
    const SparsityCount c = mode_count(mode);
    if (!gFrom.is_subgraph_of(gTo)) throw InputError("find_chain needs gFrom to be a subgraph of gTo");
    if (!is_sparse(gFrom, c).tight) throw InputError("find_chain: gFrom is not tight for the mode's count");
    if (!is_sparse(gTo, c).tight) throw InputError("find_chain: gTo is not tight for the mode's count");

    std::vector<MoveRecord> backward;
    SimpleGraph h = gTo;
    while (h.num_vertices() > gFrom.num_vertices()) {
        // The case analysis first; wider candidate families only if it stalls.
        auto r = reduce_once(h, gFrom, mode, false);
        if (!r) r = reduce_once(h, gFrom, mode, true);
        if (!r) throw AlgorithmError("no reducible vertex outside the start graph (" + describe(h) + ")");
        backward.push_back(r->move);
        h = std::move(r->reduced);
    }
    if (!h.same_as(gFrom)) throw AlgorithmError("reduction ended on a graph different from the start graph");
    ConstructionChain chain;
    chain.start = gFrom;
    chain.moves.assign(backward.rbegin(), backward.rend());
    return chain;
}

ChainVerification verify_chain(const ConstructionChain& c, ChainMode mode) {
    const SparsityCount count = mode_count(mode);
    for (std::size_t i = 0; i < c.moves.size(); ++i) {
        const auto& m = c.moves[i];
        bool ok = false;
        switch (m.kind) {
            case MoveKind::VertexExt:
            case MoveKind::EdgeMove: ok = m.degree == 2; break;
            case MoveKind::VertexToK4:
            case MoveKind::VertexTo4Cycle: ok = mode == ChainMode::QNorm2D; break;
            case MoveKind::VertexSplit3D: ok = false; break;
        }
        if (!ok)
            throw ChainError(static_cast<int>(i), "move " + std::to_string(i) + " (" + to_string(m.kind) +
                                                      ") is not allowed in " + to_string(mode) + " mode");
    }
    auto stages = replay(c);
    for (std::size_t k = 0; k < stages.size(); ++k)
        if (!is_sparse(stages[k], count).tight)
            throw ChainError(static_cast<int>(k), "stage " + std::to_string(k) + " is not tight");
    ChainVerification out;
    out.finalGraph = stages.back();
    out.limit = chain_limit(c);
    out.stages = static_cast<int>(stages.size());
    return out;
}

}  // namespace rigidkit
