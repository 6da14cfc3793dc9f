#include "rigidkit/bodybar.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "rigidkit/errors.hpp"

namespace rigidkit {

namespace {

std::string lbl(VertexId v) { return std::to_string(v.value); }

}  // namespace

MultiBodyGraph validate_multibody(const SimpleGraph& g, std::vector<std::vector<VertexId>> bodies, const NormSpec& n,
                                  std::uint64_t seed) {
    MultiBodyGraph m;
    m.underlying = g;
    for (auto& b : bodies) {
        if (b.empty()) throw InputError("empty body");
        std::sort(b.begin(), b.end());
    }
    std::sort(bodies.begin(), bodies.end());
    m.bodyOf.assign(g.num_vertices(), -1);
    for (std::size_t i = 0; i < bodies.size(); ++i)
        for (auto v : bodies[i]) {
            auto idx = g.find(v);
            if (!idx) throw InputError("body " + std::to_string(i) + " names unknown vertex " + lbl(v));
            if (m.bodyOf[*idx] != -1)
                throw InputError("vertex " + lbl(v) + " lies in bodies " + std::to_string(m.bodyOf[*idx]) + " and " +
                                 std::to_string(i));
            m.bodyOf[*idx] = static_cast<int>(i);
        }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (m.bodyOf[v] == -1) throw InputError("vertex " + lbl(g.label(v)) + " lies in no body");
    m.bodies = std::move(bodies);

    for (std::size_t i = 0; i < m.bodies.size(); ++i) {
        if (m.bodies[i].size() < 2) continue;
        SimpleGraph sub = induced_subgraph(g, m.bodies[i]);
        if (!is_rigid_generic(sub, n, 2, mix_seed(seed, i)).rigid)
            throw InputError("body " + std::to_string(i) + " (first vertex " + lbl(m.bodies[i][0]) + ") is not rigid for " +
                             n.str());
    }
    std::vector<int> bars(g.num_vertices(), 0);
    for (const auto& e : g.edges()) {
        if (m.bodyOf[e.first] == m.bodyOf[e.second]) continue;
        for (int x : {e.first, e.second})
            if (++bars[x] > 1) throw InputError("vertex " + lbl(g.label(x)) + " meets more than one inter-body edge");
        m.interBodyEdges.push_back(g.label_edge(e));
    }
    return m;
}

MultiGraph body_bar_graph(const MultiBodyGraph& m) {
    std::vector<VertexId> labels;
    for (const auto& b : m.bodies) labels.push_back(b.front());
    std::vector<LabelEdge> es;
    for (const auto& [a, b] : m.interBodyEdges)
        es.push_back({labels[m.bodyOf[m.underlying.index_of(a)]], labels[m.bodyOf[m.underlying.index_of(b)]]});
    return MultiGraph::from_labels(labels, es);
}

int tay_count(const NormSpec& n) { return n.trivial_dim_generic(); }

TayVerdict tay_decide(const MultiBodyGraph& m, const NormSpec& n, std::uint64_t seed, int crossCheckLimit) {
    if (m.num_bodies() < 2) throw InputError("tay_decide needs at least two bodies");
    TayVerdict v;
    v.k = tay_count(n);
    v.witness = tight_spanning_subgraph(body_bar_graph(m), SparsityCount{v.k, v.k});
    v.rigid = v.witness.has_value();
    if (n.d() <= 3 && m.underlying.num_vertices() <= crossCheckLimit) {
        v.numericRigid = is_rigid_generic(m.underlying, n, 2, seed).rigid;
        if (*v.numericRigid != v.rigid)
            throw InconsistencyError("body-bar count and generic rank disagree on rigidity");
    }
    return v;
}

namespace {

// Edge indices on the forest path from u to v, or nullopt if disconnected.
std::optional<std::vector<int>> forest_path(const MultiGraph& g, const std::vector<int>& forestOf, int f, int u, int v) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e)
        if (forestOf[e] == f) {
            adj[g.edges()[e].first].push_back({g.edges()[e].second, e});
            adj[g.edges()[e].second].push_back({g.edges()[e].first, e});
        }
    std::vector<int> via(g.num_vertices(), -2);
    via[u] = -1;
    std::deque<int> q{u};
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        if (x == v) break;
        for (auto [y, e] : adj[x])
            if (via[y] == -2) {
                via[y] = e;
                q.push_back(y);
            }
    }
    if (via[v] == -2) return std::nullopt;
    std::vector<int> path;
    for (int x = v; x != u;) {
        int e = via[x];
        path.push_back(e);
        x = g.edges()[e].first == x ? g.edges()[e].second : g.edges()[e].first;
    }
    return path;
}

}  // namespace

std::vector<std::vector<int>> nash_williams_trees(const MultiGraph& gb, int d) {
    if (d < 1) throw InputError("tree count must be positive");
    if (!is_sparse(gb, SparsityCount{d, d}).tight)
        throw InputError("Nash-Williams decomposition needs a (" + std::to_string(d) + "," + std::to_string(d) + ")-tight graph");
    const int m = gb.num_edges();
    std::vector<int> forestOf(m, -1);
    for (int e = 0; e < m; ++e) {
        // Shortest augmenting path over edges (matroid partition).
        std::vector<int> parent(m, -1);
        std::vector<char> seen(m, 0);
        seen[e] = 1;
        std::deque<int> q{e};
        bool done = false;
        while (!q.empty() && !done) {
            int x = q.front();
            q.pop_front();
            for (int f = 0; f < d && !done; ++f) {
                if (forestOf[x] == f) continue;
                auto path = forest_path(gb, forestOf, f, gb.edges()[x].first, gb.edges()[x].second);
                if (!path) {
                    for (int cur = x, target = f;;) {
                        int old = forestOf[cur];
                        forestOf[cur] = target;
                        if (old == -1) break;
                        target = old;
                        cur = parent[cur];
                    }
                    done = true;
                    break;
                }
                for (int y : *path)
                    if (!seen[y]) {
                        seen[y] = 1;
                        parent[y] = x;
                        q.push_back(y);
                    }
            }
        }
        if (!done) throw AlgorithmError("no augmenting path for edge " + std::to_string(e) + " in a tight graph");
    }
    std::vector<std::vector<int>> trees(d);
    for (int e = 0; e < m; ++e) trees[forestOf[e]].push_back(e);
    for (int f = 0; f < d; ++f) {
        // A spanning tree has n-1 edges and no cycle; check acyclicity via union-find.
        std::vector<int> uf(gb.num_vertices());
        for (int i = 0; i < gb.num_vertices(); ++i) uf[i] = i;
        auto root = [&](int x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        for (int e : trees[f]) {
            int a = root(gb.edges()[e].first), b = root(gb.edges()[e].second);
            if (a == b) throw AlgorithmError("forest " + std::to_string(f) + " has a cycle");
            uf[a] = b;
        }
        if (static_cast<int>(trees[f].size()) != gb.num_vertices() - 1)
            throw AlgorithmError("forest " + std::to_string(f) + " does not span");
    }
    return trees;
}

Remodel remodel_bodies(const MultiBodyGraph& m, const NormSpec& n, std::optional<int> size, std::uint64_t seed) {
    MultiGraph bb = body_bar_graph(m);
    Remodel r;
    std::vector<std::set<int>> used(bb.num_vertices());
    int colours = 0;
    for (const auto& e : bb.edges()) {
        int c = 0;
        while (used[e.first].count(c) || used[e.second].count(c)) ++c;
        used[e.first].insert(c);
        used[e.second].insert(c);
        r.barColour.push_back(c);
        colours = std::max(colours, c + 1);
    }
    r.size = size ? *size : std::max(2 * n.d() + 1, colours);
    if (r.size < colours) throw InputError("body size " + std::to_string(r.size) + " cannot host " + std::to_string(colours) + " bar ends");
    const auto M = static_cast<std::uint64_t>(r.size);

    std::vector<VertexId> vs;
    std::vector<LabelEdge> es;
    std::vector<std::vector<VertexId>> bodies(bb.num_vertices());
    for (int b = 0; b < bb.num_vertices(); ++b) {
        for (std::uint64_t j = 0; j < M; ++j) {
            vs.push_back(VertexId{b * M + j});
            bodies[b].push_back(VertexId{b * M + j});
        }
        for (std::uint64_t i = 0; i < M; ++i)
            for (std::uint64_t j = i + 1; j < M; ++j) es.push_back({VertexId{b * M + i}, VertexId{b * M + j}});
    }
    for (int e = 0; e < bb.num_edges(); ++e) {
        auto c = static_cast<std::uint64_t>(r.barColour[e]);
        es.push_back({VertexId{bb.edges()[e].first * M + c}, VertexId{bb.edges()[e].second * M + c}});
    }
    r.graph = validate_multibody(SimpleGraph::from_labels(vs, es), bodies, n, seed);
    return r;
}

SpecialPlacement special_placement(const MultiBodyGraph& m, const NormSpec& n, double eps, std::uint64_t seed) {
    if (n.euclidean()) throw InputError("the special placement is built for non-Euclidean norms only");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw InputError("eps must be positive; eps = 0 puts both ends of every bar on the same point");
    const int d = n.d();
    MultiGraph bb = body_bar_graph(m);
    auto trees = nash_williams_trees(bb, d);
    std::vector<int> treeOf(bb.num_edges());
    for (int f = 0; f < d; ++f)
        for (int e : trees[f]) treeOf[e] = f;

    SpecialPlacement out;
    Remodel r = remodel_bodies(m, n, std::nullopt, seed);
    out.remodeled = r.graph;
    const SimpleGraph& g = r.graph.underlying;

    std::mt19937_64 rng(mix_seed(seed, 0x7E3Full));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd tmpl(r.size, d);
    for (int j = 0; j < r.size; ++j)
        for (int i = 0; i < d; ++i) tmpl(j, i) = dist(rng);

    for (int attempt = 0; attempt <= 6; ++attempt) {
        const double e = eps / std::pow(2.0, attempt);
        Placement p{Eigen::MatrixXd(g.num_vertices(), d)};
        for (int v = 0; v < g.num_vertices(); ++v) p.points.row(v) = tmpl.row(static_cast<int>(g.label(v).value % r.size));
        // Bar i of tree T_f: its first end moves by eps along axis f, so the bar
        // constrains only the f-th coordinate of the relative velocity.
        for (int b = 0; b < bb.num_edges(); ++b) p.points(g.index_of(r.graph.interBodyEdges[b].first), treeOf[b]) += e;
        check_placement(g, p, d);
        // Bar rows scale like eps^(q-1), far below the body rows.
        FlexReport rep = flex_report_balanced(g, p, n);
        if (rep.nullity == d) {
            out.placement = std::move(p);
            out.report = std::move(rep);
            out.eps = e;
            out.retries = attempt;
            return out;
        }
    }
    throw AlgorithmError("special placement did not reach nullity " + std::to_string(d) + " for eps down to " +
                         std::to_string(eps / 64.0) + "; retry with a smaller eps or another seed");
}

bool direct_sum_rank_test(const MultiBodyGraph& m, const NormSpec& n, std::uint64_t seed) {
    const SimpleGraph& g = m.underlying;
    Placement p = random_placement(g, n.d(), mix_seed(seed, 0xD5ull));
    int total = numeric_rank(rigidity_matrix(g, p, n), kRankEps, false).rank;
    int parts = static_cast<int>(m.interBodyEdges.size());
    for (const auto& b : m.bodies) {
        SimpleGraph sub = induced_subgraph(g, b);
        if (sub.num_edges() == 0) continue;
        parts += numeric_rank(rigidity_matrix(sub, restrict_placement(g, p, sub), n), kRankEps, false).rank;
    }
    return total == parts;
}

bool essentially_independent(const MultiBodyGraph& m, const NormSpec& n, std::uint64_t seed, int crossCheckLimit) {
    const int d = n.d();
    const int need = n.euclidean() ? d * (d + 1) : 2 * d;
    if (m.underlying.num_vertices() < need)
        throw InputError("essential independence needs at least " + std::to_string(need) + " vertices");
    const int k = tay_count(n);
    bool sparse = is_sparse(body_bar_graph(m), SparsityCount{k, k}).sparse;
    if (m.underlying.num_vertices() <= crossCheckLimit && direct_sum_rank_test(m, n, seed) != sparse)
        throw InconsistencyError("body-bar sparsity and the direct-sum rank test disagree");
    return sparse;
}

std::optional<BodyContainer> multibody_rigid_container(const MultiBodyGraph& m, const std::vector<int>& hBodies,
                                                       const NormSpec& n) {
    if (hBodies.empty()) throw InputError("container query needs at least one body");
    for (int b : hBodies)
        if (b < 0 || b >= m.num_bodies()) throw InputError("body index " + std::to_string(b) + " out of range");
    const int k = tay_count(n);
    MultiGraph bb = body_bar_graph(m);
    PebbleGame game(bb.num_vertices(), SparsityCount{k, k});
    for (const auto& e : bb.edges()) game.try_insert(e.first, e.second);
    std::set<int> s(hBodies.begin(), hBodies.end());
    std::vector<int> h(s.begin(), s.end());
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j) {
            if (game.independent(h[i], h[j])) return std::nullopt;
            for (int x : game.closure(h[i], h[j])) s.insert(x);
        }
    BodyContainer c;
    c.bodies.assign(s.begin(), s.end());
    std::vector<VertexId> vs;
    for (int b : c.bodies) vs.insert(vs.end(), m.bodies[b].begin(), m.bodies[b].end());
    c.graph = induced_subgraph(m.underlying, vs);
    return c;
}

std::string to_string(BodyBarTowerStatus s) {
    switch (s) {
        case BodyBarTowerStatus::Rigid: return "Rigid";
        case BodyBarTowerStatus::EssentiallyMinimallyRigid: return "EssentiallyMinimallyRigid";
        case BodyBarTowerStatus::NotCertified: return "NotCertified";
    }
    return "?";
}

BodyBarTowerVerdict bodybar_tower_decide(const std::vector<MultiBodyGraph>& stages, const NormSpec& n) {
    if (stages.empty()) throw InputError("a tower needs at least one stage");
    for (std::size_t i = 1; i < stages.size(); ++i) {
        const auto& a = stages[i - 1];
        const auto& b = stages[i];
        if (!a.underlying.is_subgraph_of(b.underlying))
            throw NestingError(static_cast<int>(i), "stage " + std::to_string(i) + " does not contain stage " + std::to_string(i - 1));
        for (const auto& body : a.bodies)
            if (std::find(b.bodies.begin(), b.bodies.end(), body) == b.bodies.end())
                throw NestingError(static_cast<int>(i), "body with first vertex " + lbl(body.front()) + " is not a body of stage " +
                                                            std::to_string(i));
    }
    const int k = tay_count(n);
    const SparsityCount c{k, k};
    MultiGraph top = body_bar_graph(stages.back());
    PebbleGame game(top.num_vertices(), c);
    std::vector<LabelEdge> accepted;
    std::set<std::pair<VertexId, VertexId>> seenBars;
    BodyBarTowerVerdict out;
    bool lastTight = false;
    int totalBars = 0;
    for (std::size_t s = 0; s < stages.size(); ++s) {
        MultiGraph bb = body_bar_graph(stages[s]);
        const auto& bars = stages[s].interBodyEdges;
        totalBars = static_cast<int>(bars.size());
        for (std::size_t e = 0; e < bars.size(); ++e) {
            auto key = std::minmax(bars[e].first, bars[e].second);
            if (!seenBars.insert(key).second) continue;
            VertexId a = bb.label(bb.edges()[e].first), b = bb.label(bb.edges()[e].second);
            if (game.try_insert(top.index_of(a), top.index_of(b))) accepted.push_back({a, b});
        }
        const int nb = bb.num_vertices();
        lastTight = count_slack(nb, static_cast<int>(accepted.size()), c) == 0;
        if (lastTight) {
            out.witness.push_back(MultiGraph::from_labels(bb.labels(), accepted));
            out.witnessStages.push_back(static_cast<int>(s));
        }
    }
    if (lastTight) {
        out.status = static_cast<int>(accepted.size()) == totalBars ? BodyBarTowerStatus::EssentiallyMinimallyRigid
                                                                     : BodyBarTowerStatus::Rigid;
        return out;
    }
    std::vector<bool> rel;
    for (std::size_t s = 0; s + 1 < stages.size(); ++s) {
        std::vector<int> idx;
        for (const auto& body : stages[s].bodies)
            idx.push_back(static_cast<int>(std::find(stages[s + 1].bodies.begin(), stages[s + 1].bodies.end(), body) -
                                           stages[s + 1].bodies.begin()));
        rel.push_back(multibody_rigid_container(stages[s + 1], idx, n).has_value());
    }
    out.relativelyRigidPairs = std::move(rel);
    return out;
}

}  // namespace rigidkit
