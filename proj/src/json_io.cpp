#include "rigidkit/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "rigidkit/errors.hpp"

namespace rigidkit {

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

namespace {

void only_fields(const Json& j, const std::string& what, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw InputError(what + " must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw InputError("unknown field '" + k + "' in " + what);
    }
}

const Json& field(const Json& j, const char* key, const std::string& what) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError(what + " lacks field '" + key + "'");
    return *it;
}

VertexId label_from_json(const Json& j) {
    if (j.is_number_unsigned()) return VertexId{j.get<std::uint64_t>()};
    if (j.is_number_integer()) throw InputError("vertex labels must be non-negative");
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("vertex label '" + s + "' is not a non-negative integer");
        try {
            return VertexId{std::stoull(s)};
        } catch (const std::exception&) {
            throw InputError("vertex label '" + s + "' out of range");
        }
    }
    throw InputError("vertex labels must be non-negative integers");
}

std::vector<VertexId> labels_from_json(const Json& j, const std::string& what) {
    if (!j.is_array()) throw InputError(what + " must be an array");
    std::vector<VertexId> out;
    for (const auto& x : j) out.push_back(label_from_json(x));
    return out;
}

LabelEdge edge_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("an edge is a pair [u, v]");
    return {label_from_json(j[0]), label_from_json(j[1])};
}

std::vector<LabelEdge> edges_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("edges must be an array");
    std::vector<LabelEdge> out;
    for (const auto& e : j) out.push_back(edge_from_json(e));
    return out;
}

// Value and, when the text or number is rational, its exact form.
std::pair<double, std::optional<Rational>> coordinate(const Json& j) {
    if (j.is_number_integer()) {
        Rational r = j.is_number_unsigned() ? Rational(j.get<std::uint64_t>()) : Rational(j.get<std::int64_t>());
        return {r.convert_to<double>(), r};
    }
    if (j.is_number_float()) return {j.get<double>(), std::nullopt};
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        try {
            Rational r = parse_rational(s);
            return {r.convert_to<double>(), r};
        } catch (const InputError&) {
        }
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos == s.size() && std::isfinite(v)) return {v, std::nullopt};
        } catch (const std::exception&) {
        }
        throw InputError("coordinate '" + s + "' is not a number");
    }
    throw InputError("coordinates must be numbers or numeric strings");
}

}  // namespace

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(j.get<std::uint64_t>()) : Rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_float()) {
        // Finite binary fractions are exact rationals.
        double v = j.get<double>();
        int e = 0;
        double m = std::frexp(v, &e);
        auto mant = static_cast<long long>(std::ldexp(m, 53));
        Rational r(mant);
        e -= 53;
        Rational two(2);
        for (; e > 0; --e) r *= two;
        for (; e < 0; ++e) r /= two;
        return r;
    }
    throw InputError("expected a rational number");
}

SimpleGraph graph_from_json(const Json& j) {
    only_fields(j, "graph", {"vertices", "edges"});
    return SimpleGraph::from_labels(labels_from_json(field(j, "vertices", "graph"), "vertices"),
                                    edges_from_json(field(j, "edges", "graph")));
}

Framework framework_from_json(const Json& j) {
    only_fields(j, "framework", {"vertices", "edges", "placement", "norm", "meta"});
    Framework f;
    Json gj = Json::object();
    gj["vertices"] = field(j, "vertices", "framework");
    gj["edges"] = field(j, "edges", "framework");
    f.graph = graph_from_json(gj);
    if (auto it = j.find("norm"); it != j.end()) {
        only_fields(*it, "norm", {"d", "q"});
        const Json& dj = field(*it, "d", "norm");
        if (!dj.is_number_integer()) throw InputError("norm d must be an integer");
        f.norm = NormSpec(dj.get<int>(), rational_from_json(field(*it, "q", "norm")));
    }
    if (auto it = j.find("placement"); it != j.end()) {
        if (!it->is_object()) throw InputError("placement must map vertex labels to points");
        const int n = f.graph.num_vertices();
        if (static_cast<int>(it->size()) != n) throw InputError("placement must give a point for every vertex");
        int d = -1;
        Placement p;
        std::vector<RationalVector> exact(n);
        bool allExact = true;
        std::vector<char> seen(n, 0);
        for (const auto& [key, pt] : it->items()) {
            int v = f.graph.index_of(label_from_json(Json(key)));
            if (seen[v]) throw InputError("vertex " + key + " placed twice");
            seen[v] = 1;
            if (!pt.is_array() || pt.empty()) throw InputError("point of vertex " + key + " must be a non-empty array");
            if (d == -1) {
                d = static_cast<int>(pt.size());
                p.points = Eigen::MatrixXd::Zero(n, d);
            } else if (static_cast<int>(pt.size()) != d) {
                throw InputError("point of vertex " + key + " has the wrong dimension");
            }
            for (int i = 0; i < d; ++i) {
                auto [x, r] = coordinate(pt[i]);
                p.points(v, i) = x;
                if (r) exact[v].push_back(*r);
                else allExact = false;
            }
        }
        if (f.norm && d != -1 && d != f.norm->d())
            throw InputError("placement dimension " + std::to_string(d) + " does not match norm d=" + std::to_string(f.norm->d()));
        if (n > 0) {
            f.placement = std::move(p);
            if (allExact) f.exactPlacement = std::move(exact);
        }
    }
    return f;
}

Tower tower_from_json(const Json& j) {
    only_fields(j, "tower", {"stages", "target"});
    const Json& s = field(j, "stages", "tower");
    if (!s.is_array() || s.empty()) throw InputError("tower stages must be a non-empty array");
    std::vector<SimpleGraph> stages;
    for (const auto& g : s) stages.push_back(graph_from_json(g));
    std::optional<SimpleGraph> target;
    if (auto it = j.find("target"); it != j.end()) target = graph_from_json(*it);
    return validate_tower(std::move(stages), std::move(target));
}

MultiBodyGraph multibody_from_json(const Json& j, const NormSpec& n, std::uint64_t seed) {
    only_fields(j, "multi-body graph", {"graph", "bodies", "interbody_edges"});
    SimpleGraph g = graph_from_json(field(j, "graph", "multi-body graph"));
    const Json& bj = field(j, "bodies", "multi-body graph");
    if (!bj.is_array()) throw InputError("bodies must be an array of vertex lists");
    std::vector<std::vector<VertexId>> bodies;
    for (const auto& b : bj) bodies.push_back(labels_from_json(b, "body"));
    MultiBodyGraph m = validate_multibody(g, std::move(bodies), n, seed);
    if (auto it = j.find("interbody_edges"); it != j.end()) {
        auto listed = edges_from_json(*it);
        std::set<std::pair<VertexId, VertexId>> a, b;
        for (auto [u, v] : listed) a.insert(std::minmax(u, v));
        for (auto [u, v] : m.interBodyEdges) b.insert(std::minmax(u, v));
        if (a != b || listed.size() != m.interBodyEdges.size())
            throw InputError("interbody_edges do not match the edges joining different bodies");
    }
    return m;
}

MoveRecord move_from_json(const Json& j) {
    only_fields(j, "move", {"kind", "degree", "base", "new", "neighbors", "removed", "reassign", "moved"});
    const Json& kj = field(j, "kind", "move");
    if (!kj.is_string()) throw InputError("move kind must be a string");
    MoveRecord m;
    m.kind = move_kind_from_string(kj.get<std::string>());
    if (auto it = j.find("degree"); it != j.end()) {
        if (!it->is_number_integer()) throw InputError("move degree must be an integer");
        m.degree = it->get<int>();
    }
    if (auto it = j.find("base"); it != j.end()) m.base = label_from_json(*it);
    if (auto it = j.find("new"); it != j.end()) m.newVertices = labels_from_json(*it, "new");
    if (auto it = j.find("neighbors"); it != j.end()) m.neighbors = labels_from_json(*it, "neighbors");
    if (auto it = j.find("removed"); it != j.end()) m.removedEdge = edge_from_json(*it);
    if (auto it = j.find("reassign"); it != j.end()) {
        if (!it->is_array()) throw InputError("reassign must be an array of [vertex, index]");
        for (const auto& r : *it) {
            if (!r.is_array() || r.size() != 2 || !r[1].is_number_integer())
                throw InputError("reassign entries are [vertex, index]");
            m.reassign.push_back({label_from_json(r[0]), r[1].get<int>()});
        }
    }
    if (auto it = j.find("moved"); it != j.end()) m.moved = labels_from_json(*it, "moved");
    if (m.kind == MoveKind::VertexExt && !j.contains("degree")) m.degree = static_cast<int>(m.neighbors.size());
    if (m.kind == MoveKind::EdgeMove && !j.contains("degree")) m.degree = static_cast<int>(m.neighbors.size()) - 1;
    return m;
}

ConstructionChain chain_from_json(const Json& j) {
    only_fields(j, "chain", {"start", "moves", "mode"});
    ConstructionChain c;
    c.start = graph_from_json(field(j, "start", "chain"));
    const Json& mj = field(j, "moves", "chain");
    if (!mj.is_array()) throw InputError("moves must be an array");
    for (const auto& m : mj) c.moves.push_back(move_from_json(m));
    return c;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

Json label_json(VertexId v) { return v.value; }

}  // namespace

Json to_json(const SimpleGraph& g) {
    Json j;
    j["vertices"] = Json::array();
    for (auto v : g.labels()) j["vertices"].push_back(label_json(v));
    j["edges"] = Json::array();
    for (const auto& [a, b] : g.label_edges()) j["edges"].push_back({label_json(a), label_json(b)});
    return j;
}

Json to_json(const MultiGraph& g) {
    Json j;
    j["vertices"] = Json::array();
    for (auto v : g.labels()) j["vertices"].push_back(label_json(v));
    j["edges"] = Json::array();
    for (const auto& e : g.edges()) j["edges"].push_back({label_json(g.label(e.first)), label_json(g.label(e.second))});
    return j;
}

Json to_json(const Placement& p, const SimpleGraph& g) {
    Json j = Json::object();
    for (int v = 0; v < g.num_vertices(); ++v) {
        Json pt = Json::array();
        for (int i = 0; i < p.dim(); ++i) pt.push_back(num(p.points(v, i)));
        j[std::to_string(g.label(v).value)] = pt;
    }
    return j;
}

Json to_json(const std::vector<RationalVector>& p, const SimpleGraph& g) {
    Json j = Json::object();
    for (int v = 0; v < g.num_vertices(); ++v) {
        Json pt = Json::array();
        for (const auto& x : p[v]) pt.push_back(to_string(x));
        j[std::to_string(g.label(v).value)] = pt;
    }
    return j;
}

Json to_json(const Eigen::MatrixXd& m) {
    Json j = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(num(m(r, c)));
        j.push_back(row);
    }
    return j;
}

Json to_json(const RationalMatrix& m) {
    Json j = Json::array();
    for (const auto& r : m) {
        Json row = Json::array();
        for (const auto& x : r) row.push_back(to_string(x));
        j.push_back(row);
    }
    return j;
}

Json velocity_to_json(const Velocity& u, const SimpleGraph& g, int d) {
    Json j = Json::object();
    for (int v = 0; v < g.num_vertices(); ++v) {
        Json pt = Json::array();
        for (int i = 0; i < d; ++i) pt.push_back(num(u(v * d + i)));
        j[std::to_string(g.label(v).value)] = pt;
    }
    return j;
}

Json to_json(const FlexReport& r, const SimpleGraph& g, int d) {
    Json j;
    j["rank"] = r.rank;
    j["nullity"] = r.nullity;
    j["trivialDim"] = r.trivialDim;
    j["flexDim"] = r.flexDim;
    j["classification"] = to_string(r.classification);
    j["nontrivialFlexBasis"] = Json::array();
    for (Eigen::Index c = 0; c < r.nontrivialFlexBasis.cols(); ++c)
        j["nontrivialFlexBasis"].push_back(velocity_to_json(r.nontrivialFlexBasis.col(c), g, d));
    return j;
}

Json to_json(const SparsityReport& r, const SimpleGraph& g) {
    Json j;
    j["sparse"] = r.sparse;
    j["tight"] = r.tight;
    if (r.witness) {
        Json w = Json::array();
        for (int v : *r.witness) w.push_back(label_json(g.label(v)));
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const MoveRecord& m) {
    Json j;
    j["kind"] = to_string(m.kind);
    auto labels = [](const std::vector<VertexId>& vs) {
        Json a = Json::array();
        for (auto v : vs) a.push_back(label_json(v));
        return a;
    };
    switch (m.kind) {
        case MoveKind::VertexExt:
            j["degree"] = m.degree;
            j["new"] = labels(m.newVertices);
            j["neighbors"] = labels(m.neighbors);
            break;
        case MoveKind::EdgeMove:
            j["degree"] = m.degree;
            j["new"] = labels(m.newVertices);
            j["removed"] = {label_json(m.removedEdge->first), label_json(m.removedEdge->second)};
            j["neighbors"] = labels(m.neighbors);
            break;
        case MoveKind::VertexToK4: {
            j["base"] = label_json(m.base);
            j["new"] = labels(m.newVertices);
            Json r = Json::array();
            for (auto [x, i] : m.reassign) r.push_back({label_json(x), i});
            j["reassign"] = r;
            break;
        }
        case MoveKind::VertexTo4Cycle:
        case MoveKind::VertexSplit3D:
            j["base"] = label_json(m.base);
            j["neighbors"] = labels(m.neighbors);
            j["new"] = labels(m.newVertices);
            j["moved"] = labels(m.moved);
            break;
    }
    return j;
}

Json to_json(const ConstructionChain& c) {
    Json j;
    j["start"] = to_json(c.start);
    j["moves"] = Json::array();
    for (const auto& m : c.moves) j["moves"].push_back(to_json(m));
    return j;
}

Json to_json(const Tower& t) {
    Json j;
    j["stages"] = Json::array();
    for (const auto& s : t.stages) j["stages"].push_back(to_json(s));
    if (t.target) j["target"] = to_json(*t.target);
    return j;
}

Json to_json(const MultiBodyGraph& m) {
    Json j;
    j["graph"] = to_json(m.underlying);
    j["bodies"] = Json::array();
    for (const auto& b : m.bodies) {
        Json a = Json::array();
        for (auto v : b) a.push_back(label_json(v));
        j["bodies"].push_back(a);
    }
    j["interbody_edges"] = Json::array();
    for (const auto& [a, b] : m.interBodyEdges) j["interbody_edges"].push_back({label_json(a), label_json(b)});
    return j;
}

Json to_json(const SimplicialMeta& m) {
    Json j;
    j["kappa"] = m.kappa;
    j["holeCycles"] = m.holeCycles;
    j["refinement"] = m.refinement;
    if (m.vertices) j["vertices"] = *m.vertices;
    return j;
}

Json to_json(const CatalogEntry& e, bool withMeta) {
    Json j = to_json(e.graph);
    if (e.exactPlacement) j["placement"] = to_json(*e.exactPlacement, e.graph);
    else if (e.placement) j["placement"] = to_json(*e.placement, e.graph);
    if (withMeta) {
        Json m;
        m["family"] = e.family;
        m["dim"] = e.dim;
        if (e.meta) m["simplicial"] = to_json(*e.meta);
        if (e.tower) {
            Json sizes = Json::array();
            for (const auto& s : e.tower->stages) sizes.push_back(s.num_vertices());
            m["stageSizes"] = sizes;
        }
        j["meta"] = m;
    }
    return j;
}

}  // namespace rigidkit
