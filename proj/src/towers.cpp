#include "rigidkit/towers.hpp"

#include <algorithm>
#include <set>

#include "rigidkit/errors.hpp"
#include "rigidkit/sparsity.hpp"

namespace rigidkit {

void check_relative_precondition(const SimpleGraph& h, const NormSpec& n) {
    const int need = n.euclidean() ? 2 : 2 * n.d();
    if (h.num_vertices() < need)
        throw InputError("relative rigidity needs |V(h)| >= " + std::to_string(need) + " so that K_V(h) is rigid (got " +
                         std::to_string(h.num_vertices()) + ")");
}

namespace {

std::vector<int> indices_in(const SimpleGraph& g, const SimpleGraph& h) {
    std::vector<int> idx;
    for (auto v : h.labels()) idx.push_back(g.index_of(v));
    return idx;
}

}  // namespace

RelativeRigidityVerdict relative_rigidity(const SimpleGraph& g, const SimpleGraph& h, const NormSpec& n, std::uint64_t seed,
                                          bool exactCheck) {
    if (!h.is_subgraph_of(g)) throw InputError("relative rigidity needs h to be a subgraph of g");
    check_relative_precondition(h, n);
    const int d = n.d();
    std::vector<int> hIdx = indices_in(g, h);
    SimpleGraph gk = with_complete_on(g, hIdx);

    RelativeRigidityVerdict out;
    out.placement = random_placement(g, d, mix_seed(seed, 0x5E1Aull));
    NumericRank base = numeric_rank(rigidity_matrix(g, out.placement, n));
    NumericRank done = numeric_rank(rigidity_matrix(gk, out.placement, n));
    out.nullity = d * g.num_vertices() - base.rank;
    out.nullityCompleted = d * g.num_vertices() - done.rank;
    out.relativelyRigid = out.nullity == out.nullityCompleted;

    if (exactCheck && n.integer_q()) {
        auto ip = random_integer_placement(g, d, mix_seed(seed, 0x5E1Bull));
        int r1 = exact_rank(exact_rigidity_matrix(g, ip, n));
        int r2 = exact_rank(exact_rigidity_matrix(gk, ip, n));
        bool exactRel = r1 == r2;
        out.exactAgrees = exactRel == out.relativelyRigid;
        if (!*out.exactAgrees)
            throw InconsistencyError("relative rigidity: numeric and exact ranks disagree");
    }

    if (!out.relativelyRigid) {
        // ker R(g + K_h) is the part of ker R(g) that is trivial on h; take
        // the direction of ker R(g) farthest from it.
        Eigen::MatrixXd proj = base.kernel - done.kernel * (done.kernel.transpose() * base.kernel);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeThinU);
        out.witnessFlex = Velocity(svd.matrixU().col(0));
    } else if (d == 2) {
        out.container = rigid_container_2d(g, h, n, seed);
    }
    return out;
}

std::optional<SimpleGraph> rigid_container_2d(const SimpleGraph& g, const SimpleGraph& h, const NormSpec& n, std::uint64_t seed) {
    if (n.d() != 2) throw InputError("rigid containers are only characterised in the plane");
    if (!h.is_subgraph_of(g)) throw InputError("rigid_container_2d needs h to be a subgraph of g");
    const int need = n.euclidean() ? 2 : 4;
    if (h.num_vertices() < need)
        throw InputError("rigid_container_2d needs |V(h)| >= " + std::to_string(need));
    const SparsityCount c{2, n.laman_l()};

    // Drop rank-redundant edges, highest index first, keeping the kernel.
    Placement p = random_placement(g, 2, mix_seed(seed, 0xC0DEull));
    Eigen::MatrixXd r = rigidity_matrix(g, p, n);
    std::vector<int> keep(g.num_edges());
    for (int i = 0; i < g.num_edges(); ++i) keep[i] = i;
    int rank = numeric_rank(r, kRankEps, false).rank;
    for (int e = g.num_edges() - 1; e >= 0; --e) {
        std::vector<int> trial;
        for (int x : keep)
            if (x != e) trial.push_back(x);
        Eigen::MatrixXd sub(static_cast<Eigen::Index>(trial.size()), r.cols());
        for (std::size_t i = 0; i < trial.size(); ++i) sub.row(i) = r.row(trial[i]);
        if (numeric_rank(sub, kRankEps, false).rank == rank) keep = std::move(trial);
    }
    std::vector<LabelEdge> indep;
    for (int e : keep) indep.push_back(g.label_edge(g.edges()[e]));
    SimpleGraph gi = SimpleGraph::from_labels(g.labels(), indep);
    if (!is_sparse(gi, c).sparse)
        throw InconsistencyError("independent edge set at a random placement violates the sparsity count");

    std::set<int> verts;
    for (auto v : h.labels()) verts.insert(g.index_of(v));
    std::vector<int> hIdx(verts.begin(), verts.end());
    std::set<Edge> edges;
    for (std::size_t i = 0; i < hIdx.size(); ++i)
        for (std::size_t j = i + 1; j < hIdx.size(); ++j) {
            int a = hIdx[i], b = hIdx[j];
            if (gi.has_edge(a, b)) continue;
            auto res = blocking_tight_subgraph(gi, c, a, b);
            if (std::holds_alternative<AddKeepsSparse>(res)) return std::nullopt;
            const auto& block = std::get<Blocked>(res).vertices;
            std::vector<char> in(g.num_vertices(), 0);
            for (int x : block) {
                in[x] = 1;
                verts.insert(x);
            }
            for (const auto& e : gi.edges())
                if (in[e.first] && in[e.second]) edges.insert(e);
        }
    std::vector<VertexId> vs;
    for (int v : verts) vs.push_back(g.label(v));
    std::vector<LabelEdge> es = h.label_edges();
    for (const auto& e : edges) {
        auto le = g.label_edge(e);
        if (!h.has_label_edge(le.first, le.second)) es.push_back(le);
    }
    return SimpleGraph::from_labels(std::move(vs), es);
}

std::optional<SimpleGraph> exhaustive_rigid_container(const SimpleGraph& g, const SimpleGraph& h, const NormSpec& n,
                                                      std::uint64_t seed) {
    if (g.num_vertices() > 12) throw InputError("exhaustive container search is limited to 12 vertices");
    if (!h.is_subgraph_of(g)) throw InputError("exhaustive container search needs h to be a subgraph of g");
    std::vector<int> outside;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!h.has_vertex(g.label(v))) outside.push_back(v);
    // Rigidity is monotone in edges, so for each vertex superset the induced
    // subgraph is the only candidate that matters.
    std::vector<unsigned> masks(1u << outside.size());
    for (unsigned m = 0; m < masks.size(); ++m) masks[m] = m;
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    for (unsigned m : masks) {
        std::vector<int> s = indices_in(g, h);
        for (std::size_t i = 0; i < outside.size(); ++i)
            if (m >> i & 1u) s.push_back(outside[i]);
        SimpleGraph cand = induced_subgraph_dense(g, s);
        if (is_rigid_generic(cand, n, 2, seed).rigid) return cand;
    }
    return std::nullopt;
}

std::string to_string(TowerStatus s) {
    switch (s) {
        case TowerStatus::RigidCertified: return "RigidCertified";
        case TowerStatus::FlexibleCertified: return "FlexibleCertified";
        case TowerStatus::Undecided: return "Undecided";
    }
    return "?";
}

TowerVerdict tower_rigidity(const Tower& t, const NormSpec& n, std::uint64_t seed) {
    TowerVerdict v;
    const std::size_t ns = t.stages.size();
    bool allPairs = ns > 1;
    bool leading = true;
    v.relativelyRigidPrefix = 1;
    for (std::size_t k = 0; k + 1 < ns; ++k) {
        StagePairNote note;
        note.index = static_cast<int>(k);
        try {
            check_relative_precondition(t.stages[k], n);
        } catch (const InputError&) {
            note.preconditionMet = false;
        }
        if (note.preconditionMet)
            note.relativelyRigid =
                relative_rigidity(t.stages[k + 1], t.stages[k], n, mix_seed(seed, static_cast<std::uint64_t>(k))).relativelyRigid;
        if (!note.relativelyRigid) {
            allPairs = false;
            leading = false;
        } else if (leading) {
            ++v.relativelyRigidPrefix;
        }
        v.pairs.push_back(note);
    }
    const SimpleGraph& last = t.stages.back();
    v.finalStageRigid = is_rigid_generic(last, n, 3, seed).rigid;
    // A declared target equal to the final stage is a finite graph: its tower
    // continues with the constant pair (G_n, G_n), relatively rigid iff G_n is rigid.
    const bool finite = t.target && last.same_as(*t.target);

    if (finite && v.finalStageRigid) {
        v.status = TowerStatus::RigidCertified;
        v.scope = "finite: the final stage equals the target and is rigid";
    } else if (finite) {
        v.status = TowerStatus::FlexibleCertified;
        v.scope = "finite: the final stage equals the target and has a nontrivial flex";
    } else if (allPairs && t.vertexComplete) {
        v.status = TowerStatus::RigidCertified;
        v.scope = "prefix: every consecutive pair is relatively rigid; this certifies the limit of the presented tower";
        if (n.d() == 2) v.sequentialWitness = sequential_rigidity_2d(t, n, seed);
    } else {
        v.status = TowerStatus::Undecided;
        v.scope = "prefix depth " + std::to_string(v.relativelyRigidPrefix) + " reached";
    }
    return v;
}

std::optional<std::vector<SimpleGraph>> sequential_rigidity_2d(const Tower& t, const NormSpec& n, std::uint64_t seed) {
    if (n.d() != 2) throw InputError("sequential rigidity containers are only available in the plane");
    std::vector<SimpleGraph> out;
    if (t.stages.size() == 1) {
        if (!is_rigid_generic(t.stages[0], n, 3, seed).rigid) return std::nullopt;
        out.push_back(t.stages[0]);
        return out;
    }
    for (std::size_t k = 0; k + 1 < t.stages.size(); ++k) {
        const auto& gk = t.stages[k];
        const auto& gnext = t.stages[k + 1];
        std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(k));
        if (is_rigid_generic(gk, n, 3, s).rigid) {
            out.push_back(gk);
            continue;
        }
        auto c = rigid_container_2d(gnext, gk, n, s);
        if (!c) {
            if (relative_rigidity(gnext, gk, n, s).relativelyRigid)
                throw InconsistencyError("relatively rigid stage " + std::to_string(k) + " has no rigid container");
            return std::nullopt;
        }
        out.push_back(*c);
    }
    return out;
}

std::string to_string(LamanStatus s) {
    switch (s) {
        case LamanStatus::Rigid: return "Rigid";
        case LamanStatus::MinimallyRigid: return "MinimallyRigid";
        case LamanStatus::NotCertified: return "NotCertified";
    }
    return "?";
}

LamanTowerVerdict laman_tower_decide(const Tower& t, const NormSpec& n) {
    if (n.d() != 2) throw InputError("laman_tower_decide is for the plane");
    const SparsityCount c{2, n.laman_l()};
    const SimpleGraph& top = t.stages.back();
    PebbleGame game(top.num_vertices(), c);
    std::vector<LabelEdge> accepted;
    LamanTowerVerdict out;
    const SimpleGraph* prev = nullptr;
    bool lastTight = false;
    for (std::size_t k = 0; k < t.stages.size(); ++k) {
        const auto& g = t.stages[k];
        // Greedy extension of the previous independent set is a maximal
        // independent set of the new stage (matroid exchange).
        for (const auto& e : g.edges()) {
            auto le = g.label_edge(e);
            if (prev && prev->has_label_edge(le.first, le.second)) continue;
            if (game.try_insert(top.index_of(le.first), top.index_of(le.second))) accepted.push_back(le);
        }
        long long slack = count_slack(g.num_vertices(), static_cast<int>(accepted.size()), c);
        lastTight = slack == 0 || (g.num_vertices() == 1 && accepted.empty());
        if (lastTight) {
            out.witness.push_back(SimpleGraph::from_labels(g.labels(), accepted));
            out.witnessStages.push_back(static_cast<int>(k));
        }
        prev = &g;
    }
    if (!lastTight) {
        out.status = LamanStatus::NotCertified;
    } else {
        bool edgeComplete = static_cast<int>(accepted.size()) == top.num_edges();
        out.status = edgeComplete ? LamanStatus::MinimallyRigid : LamanStatus::Rigid;
    }
    return out;
}

}  // namespace rigidkit
