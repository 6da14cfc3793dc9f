#include "rigidkit/catalog.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <random>
#include <set>

#include "rigidkit/errors.hpp"

namespace rigidkit {

namespace {

constexpr double kPi = std::numbers::pi;

Placement to_placement(const std::vector<std::vector<double>>& pts) {
    Placement p{Eigen::MatrixXd(static_cast<Eigen::Index>(pts.size()), pts.empty() ? 0 : static_cast<Eigen::Index>(pts[0].size()))};
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts[i].size(); ++j) p.points(i, j) = pts[i][j];
    return p;
}

Placement circle_placement(int n) {
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i) pts.push_back({std::cos(2 * kPi * i / n), std::sin(2 * kPi * i / n)});
    return to_placement(pts);
}

Tower prefix_tower(const SimpleGraph& g, const std::vector<int>& sizes) {
    std::vector<SimpleGraph> stages;
    for (int s : sizes) {
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        stages.push_back(induced_subgraph_dense(g, idx));
    }
    return validate_tower(std::move(stages));
}

CatalogEntry entry(std::string family, SimpleGraph g) {
    CatalogEntry e;
    e.family = std::move(family);
    e.graph = std::move(g);
    return e;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

// Joins ring a to ring b (same length) by verticals a_j b_j and diagonals a_j b_{j+1}.
void band(std::vector<Edge>& es, int a, int b, int n) {
    for (int j = 0; j < n; ++j) {
        es.push_back({a + j, b + j});
        es.push_back({a + j, b + (j + 1) % n});
    }
}

void ring(std::vector<Edge>& es, int a, int n) {
    for (int j = 0; j < n; ++j) es.push_back({a + j, a + (j + 1) % n});
}

}  // namespace

void check_meta(const SimplicialMeta& m) {
    require(m.kappa >= 0, "kappa must be non-negative");
    require(static_cast<int>(m.holeCycles.size()) == m.kappa, "one hole length per non-triangular face is needed");
    for (int g : m.holeCycles) require(g >= 4, "hole cycles have length at least 4");
    require(m.refinement >= 0, "refinement type must be non-negative");
    if (m.refinement > 0) require(m.kappa <= m.refinement, "kappa cannot exceed the refinement type");
}

CatalogEntry complete_family(int n) {
    require(n >= 1, "complete graph needs n >= 1");
    CatalogEntry e = entry("complete", complete_graph(n));
    e.placement = circle_placement(n);
    return e;
}

CatalogEntry cycle_family(int n) {
    require(n >= 3, "cycle needs n >= 3");
    CatalogEntry e = entry("cycle", cycle_graph(n));
    e.placement = circle_placement(n);
    return e;
}

namespace {

void add_banana(std::vector<Edge>& es, const std::vector<int>& five) {
    // K5 on the list minus the edge between its last two entries.
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (!(i == 3 && j == 4)) es.push_back({five[i], five[j]});
}

}  // namespace

CatalogEntry double_banana() {
    auto e = banana_tower(1);
    e.family = "double_banana";
    e.tower.reset();
    return e;
}

CatalogEntry banana_tower(int stages) {
    require(stages >= 1, "banana tower needs at least one stage");
    std::vector<Edge> es;
    add_banana(es, {0, 1, 2, 6, 7});
    add_banana(es, {3, 4, 5, 6, 7});
    std::vector<int> last{7};  // last vertex added by each stage
    std::vector<int> sizes{8};
    for (int j = 2; j <= stages; ++j) {
        int a = 8 + 3 * (j - 2);
        int x = j == 2 ? 2 : last[j - 3];
        int y = j == 2 ? 5 : last[j - 2];
        add_banana(es, {a, a + 1, a + 2, x, y});
        last.push_back(a + 2);
        sizes.push_back(a + 3);
    }
    CatalogEntry e = entry("banana_tower", SimpleGraph::dense(sizes.back(), es));
    e.dim = 3;
    e.tower = prefix_tower(e.graph, sizes);
    return e;
}

CatalogEntry strip(int cells, const StripOptions& opt) {
    require(cells >= 1, "strip needs at least one cell");
    // Labels per cell k (1-based), offset 6(k-1): r_{k-1}, c_k, below r, below c, t_k, m_k.
    auto R = [](int k) { return 6 * k; };  // r_k lives in cell k+1
    auto C = [](int k) { return 6 * (k - 1) + 1; };
    auto WR = [](int k) { return 6 * k + 2; };
    auto WC = [](int k) { return 6 * (k - 1) + 3; };
    auto T = [](int k) { return 6 * (k - 1) + 4; };
    auto M = [](int k) { return 6 * (k - 1) + 5; };
    std::vector<Edge> es;
    for (int k = 1; k <= cells; ++k) {
        if (k > 1) {
            es.push_back({C(k - 1), R(k - 1)});
            es.push_back({WC(k - 1), WR(k - 1)});
            es.push_back({R(k - 1), WC(k - 1)});
        }
        es.push_back({R(k - 1), C(k)});
        es.push_back({WR(k - 1), WC(k)});
        es.push_back({R(k - 1), WR(k - 1)});
        es.push_back({C(k), WC(k)});
        es.push_back({C(k), WR(k - 1)});
        es.push_back({T(k), R(k - 1)});
        es.push_back({T(k), M(k)});
        es.push_back({M(k), C(k)});
        if (k > 1) es.push_back({M(k - 1), T(k)});
    }
    const int n = 6 * cells;
    CatalogEntry e = entry("strip", SimpleGraph::dense(n, es));
    std::vector<std::vector<double>> pts(n, std::vector<double>(2, 0.0));
    if (opt.placement == StripPlacement::Periodic) {
        const double top = opt.top, mid = opt.middle;
        require(0 < mid && mid < top, "periodic strip needs 0 < middle < top");
        // With X = m_1, Q = c_1, R = r_1, B = t_2.
        const double xq = mid, qr = 1.0;
        const double qb = std::hypot(2.0, top), xb = std::hypot(2.0, top - mid), rb = std::hypot(1.0, top);
        require(xq < qr && qb > xb && xb > rb, "periodic strip parameters violate |XQ| < |QR| and |QB| > |XB| > |RB|");
        for (int k = 1; k <= cells; ++k) {
            pts[R(k - 1)] = {2.0 * k - 1, 0};
            pts[C(k)] = {2.0 * k, 0};
            pts[WR(k - 1)] = {2.0 * k - 0.5, -1};
            pts[WC(k)] = {2.0 * k + 0.5, -1};
            pts[T(k)] = {2.0 * k, top};
            pts[M(k)] = {2.0 * k, mid};
        }
    } else {
        auto xk = [](int k) { return -std::ldexp(1.0, -k); };
        for (int k = 1; k <= cells; ++k) {
            const double x = xk(k), xr = (xk(k - 1) + x) / 2;
            pts[R(k - 1)] = {xr, xr};
            pts[C(k)] = {x, x};
            pts[WR(k - 1)] = {xr, 2 * xr};
            pts[WC(k)] = {x, 2 * x};
            pts[T(k)] = {x, -x};
            pts[M(k)] = {x, 0};
        }
    }
    e.placement = to_placement(pts);
    std::vector<int> sizes;
    for (int k = 1; k <= cells; ++k) sizes.push_back(6 * k);
    e.tower = prefix_tower(e.graph, sizes);
    return e;
}

namespace {

std::vector<RationalVector> whirlpool_points(int layers, WhirlpoolMap map) {
    std::vector<RationalVector> p{{3, 3}, {-3, 3}, {-3, -3}, {3, -3}, {1, 2}, {-2, 1}, {-1, -2}, {2, -1}};
    // Similarity taking p1..p4 onto p5..p8. The symmetric option
    // (1/3)[[1,2],[2,1]] fixes p1, so its inner squares are not squares.
    const Rational a = map == WhirlpoolMap::Similarity ? Rational(1, 2) : Rational(1, 3);
    const Rational b = map == WhirlpoolMap::Similarity ? Rational(-1, 6) : Rational(2, 3);
    const Rational c = map == WhirlpoolMap::Similarity ? Rational(1, 6) : Rational(2, 3);
    const Rational d = map == WhirlpoolMap::Similarity ? Rational(1, 2) : Rational(1, 3);
    for (int k = 8; k < 4 * (layers + 1); ++k) {
        const RationalVector q = p[k - 4];
        p.push_back({a * q[0] + b * q[1], c * q[0] + d * q[1]});
    }
    return p;
}

}  // namespace

CatalogEntry whirlpool(int layers, WhirlpoolMap map) {
    require(layers >= 1, "whirlpool needs at least one layer");
    std::vector<Edge> es;
    ring(es, 0, 4);
    for (int j = 1; j <= layers; ++j) {
        ring(es, 4 * j, 4);
        for (int i = 0; i < 4; ++i) es.push_back({4 * (j - 1) + i, 4 * j + i});
    }
    const int n = 4 * (layers + 1);
    CatalogEntry e = entry("whirlpool", SimpleGraph::dense(n, es));
    e.exactPlacement = whirlpool_points(layers, map);
    std::vector<std::vector<double>> pts;
    for (const auto& q : *e.exactPlacement) pts.push_back({q[0].convert_to<double>(), q[1].convert_to<double>()});
    e.placement = to_placement(pts);
    std::vector<int> sizes;
    for (int j = 0; j <= layers; ++j) sizes.push_back(4 * (j + 1));
    e.tower = prefix_tower(e.graph, sizes);
    return e;
}

WhirlpoolBlocks whirlpool_blocks(int layers) {
    require(layers >= 1, "whirlpool needs at least one layer");
    CatalogEntry w = whirlpool(1);
    RationalMatrix r = exact_rigidity_matrix(w.graph, *w.exactPlacement, NormSpec(2, 2));
    auto block = [&](int row0, int col0) {
        RationalMatrix b(4, RationalVector(8));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 8; ++j) b[i][j] = r[row0 + i][col0 + j];
        return b;
    };
    WhirlpoolBlocks out{block(0, 0), block(4, 8), block(8, 0)};
    // The spoke rows carry -X on the inner square.
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 8; ++j)
            if (r[8 + i][8 + j] != -out.x[i][j]) throw InconsistencyError("whirlpool spoke rows are not of the form [X -X]");
    return out;
}

std::optional<RationalVector> whirlpool_flex_extension(const RationalVector& a) {
    require(a.size() == 8, "outer square velocity has 8 entries");
    auto blocks = whirlpool_blocks(1);
    for (const auto& row : blocks.r1) {
        Rational s = 0;
        for (int j = 0; j < 8; ++j) s += row[j] * a[j];
        if (s != 0) return std::nullopt;
    }
    // R2 b = 0 and X a - X b = 0.
    RationalMatrix m;
    RationalVector rhs;
    for (const auto& row : blocks.r2) {
        m.push_back(row);
        rhs.push_back(0);
    }
    for (const auto& row : blocks.x) {
        m.push_back(row);
        Rational s = 0;
        for (int j = 0; j < 8; ++j) s += row[j] * a[j];
        rhs.push_back(s);
    }
    auto sol = exact_solve(m, rhs);
    if (!sol) return std::nullopt;
    return sol->x;
}

CatalogEntry tetra_refined(int levels) {
    require(levels >= 1, "tetra_refined needs levels >= 1");
    std::vector<Edge> es;
    ring(es, 0, 3);
    for (int k = 1; k <= levels; ++k) {
        band(es, 3 * (k - 1), 3 * k, 3);
        ring(es, 3 * k, 3);
    }
    const int n = 3 * (levels + 1);
    CatalogEntry e = entry("tetra_refined", SimpleGraph::dense(n, es));
    e.dim = 3;
    std::vector<std::vector<double>> pts;
    for (int k = 0; k <= levels; ++k) {
        const double t = std::ldexp(1.0, -k);
        for (int j = 0; j < 3; ++j)
            pts.push_back({t * std::cos(2 * kPi * j / 3), t * std::sin(2 * kPi * j / 3), 1 - t});
    }
    e.placement = to_placement(pts);
    e.meta = SimplicialMeta{0, {}, 1, n};
    std::vector<int> sizes;
    for (int k = 1; k <= levels; ++k) sizes.push_back(3 * (k + 1));
    e.tower = prefix_tower(e.graph, sizes);
    return e;
}

CatalogEntry octa_pointed(int levels, int sides) {
    require(levels >= 0, "octa_pointed needs levels >= 0");
    require(sides >= 4, "octa_pointed needs sides >= 4");
    // Vertex 0 is the south pole; rings of `sides` vertices follow, the
    // equator first. The last ring bounds the face around the north pole.
    std::vector<Edge> es;
    for (int j = 0; j < sides; ++j) es.push_back({0, 1 + j});
    ring(es, 1, sides);
    for (int k = 1; k <= levels; ++k) {
        band(es, 1 + (k - 1) * sides, 1 + k * sides, sides);
        ring(es, 1 + k * sides, sides);
    }
    const int n = 1 + sides * (levels + 1);
    CatalogEntry e = entry("octa_pointed", SimpleGraph::dense(n, es));
    e.dim = 3;
    std::vector<std::vector<double>> pts{{0, 0, -1}};
    for (int k = 0; k <= levels; ++k) {
        const double t = std::ldexp(1.0, -k);
        for (int j = 0; j < sides; ++j)
            pts.push_back({t * std::cos(2 * kPi * j / sides), t * std::sin(2 * kPi * j / sides), 1 - t});
    }
    e.placement = to_placement(pts);
    e.meta = SimplicialMeta{1, {sides}, 1, n};
    std::vector<int> sizes;
    for (int k = 0; k <= levels; ++k) sizes.push_back(1 + sides * (k + 1));
    e.tower = prefix_tower(e.graph, sizes);
    return e;
}

CatalogEntry diamond(int levels, int base) {
    require(levels >= 0, "diamond needs levels >= 0");
    require(base >= 3, "diamond needs base >= 3");
    std::vector<Edge> es;
    std::vector<int> start{1};
    for (int j = 0; j < base; ++j) es.push_back({0, 1 + j});
    ring(es, 1, base);
    int m = base;
    for (int k = 1; k <= levels; ++k) {
        const int a = start.back(), b = a + m;
        // Each vertex of the lower ring sits under an even vertex of the upper one.
        for (int j = 0; j < m; ++j) {
            es.push_back({a + j, b + 2 * j});
            es.push_back({a + j, b + 2 * j + 1});
            es.push_back({a + (j + 1) % m, b + 2 * j + 1});
        }
        ring(es, b, 2 * m);
        start.push_back(b);
        m *= 2;
    }
    const int n = start.back() + m;
    CatalogEntry e = entry("diamond", SimpleGraph::dense(n, es));
    e.dim = 3;
    std::vector<std::vector<double>> pts{{0, 0, -1}};
    int ringSize = base;
    for (int k = 0; k <= levels; ++k, ringSize *= 2) {
        const double z = 1 - std::ldexp(1.0, -k), r = std::sqrt(1 - z * z);
        for (int j = 0; j < ringSize; ++j)
            pts.push_back({r * std::cos(2 * kPi * j / ringSize), r * std::sin(2 * kPi * j / ringSize), z});
    }
    e.placement = to_placement(pts);
    e.meta = m > 3 ? SimplicialMeta{1, {m}, 1, n} : SimplicialMeta{0, {}, 1, n};
    std::vector<int> sizes;
    for (std::size_t k = 0; k < start.size(); ++k) sizes.push_back(k + 1 < start.size() ? start[k + 1] : n);
    e.tower = prefix_tower(e.graph, sizes);
    return e;
}

CatalogEntry octahedron() {
    std::vector<Edge> es;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (!(i % 2 == 0 && j == i + 1)) es.push_back({i, j});
    CatalogEntry e = entry("octahedron", SimpleGraph::dense(6, es));
    e.dim = 3;
    e.placement = to_placement({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
    e.meta = SimplicialMeta{0, {}, 0, 6};
    return e;
}

CatalogEntry icosahedron() {
    const double phi = (1 + std::sqrt(5.0)) / 2;
    std::vector<std::vector<double>> pts;
    for (double s : {1.0, -1.0})
        for (double t : {phi, -phi}) {
            pts.push_back({0, s, t});
            pts.push_back({s, t, 0});
            pts.push_back({t, 0, s});
        }
    std::vector<Edge> es;
    for (int i = 0; i < 12; ++i)
        for (int j = i + 1; j < 12; ++j) {
            double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1], dz = pts[i][2] - pts[j][2];
            if (std::abs(dx * dx + dy * dy + dz * dz - 4.0) < 1e-9) es.push_back({i, j});
        }
    CatalogEntry e = entry("icosahedron", SimpleGraph::dense(12, es));
    if (e.graph.num_edges() != 30) throw AlgorithmError("icosahedron construction produced the wrong edge count");
    e.dim = 3;
    e.placement = to_placement(pts);
    e.meta = SimplicialMeta{0, {}, 0, 12};
    return e;
}

namespace {

using Face = std::array<int, 3>;

std::vector<Face> subdivided_octahedron(int vertices) {
    std::deque<Face> faces;
    for (int x : {0, 1})
        for (int y : {2, 3})
            for (int z : {4, 5}) faces.push_back({x, y, z});
    for (int v = 6; v < vertices; ++v) {
        Face f = faces.front();
        faces.pop_front();
        faces.push_back({f[0], f[1], v});
        faces.push_back({f[1], f[2], v});
        faces.push_back({f[2], f[0], v});
    }
    return {faces.begin(), faces.end()};
}

std::string join_ints(const std::vector<int>& xs) {
    std::string out;
    for (int x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
    return out;
}

// Random edge flips keeping a simple triangulation with minimum degree 3.
void random_flips(std::vector<Face>& faces, int flips, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pickFace(0, faces.size() - 1);
    std::uniform_int_distribution<int> pickSide(0, 2);
    for (int t = 0; t < flips; ++t) {
        std::size_t fi = pickFace(rng);
        int side = pickSide(rng);
        int a = faces[fi][side], b = faces[fi][(side + 1) % 3], c = faces[fi][(side + 2) % 3];
        std::size_t fj = faces.size();
        int dv = -1;
        std::map<int, int> deg;
        std::set<Edge> es;
        for (std::size_t k = 0; k < faces.size(); ++k)
            for (int i = 0; i < 3; ++i) es.insert(make_edge(faces[k][i], faces[k][(i + 1) % 3]));
        for (const auto& e : es) ++deg[e.first], ++deg[e.second];
        for (std::size_t k = 0; k < faces.size(); ++k) {
            if (k == fi) continue;
            const Face& f = faces[k];
            bool hasA = std::find(f.begin(), f.end(), a) != f.end();
            bool hasB = std::find(f.begin(), f.end(), b) != f.end();
            if (hasA && hasB) {
                fj = k;
                for (int x : f)
                    if (x != a && x != b) dv = x;
            }
        }
        if (fj == faces.size() || dv == c || es.count(make_edge(c, dv)) || deg[a] <= 3 || deg[b] <= 3) continue;
        faces[fi] = {a, dv, c};
        faces[fj] = {dv, b, c};
    }
}

bool share_edge(const Face& a, const Face& b, Edge& shared) {
    std::vector<int> common;
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) common.push_back(x);
    if (common.size() != 2) return false;
    shared = make_edge(common[0], common[1]);
    return true;
}

struct Hole {
    std::set<int> vertices;
    std::vector<Edge> interior;
};

}  // namespace

CatalogEntry simplicial_holes(const SimplicialMeta& metaIn, int vertices) {
    SimplicialMeta meta = metaIn;
    check_meta(meta);
    require(vertices >= 6, "simplicial_holes needs at least 6 vertices");
    const auto base = subdivided_octahedron(vertices);
    std::mt19937_64 rng(vertices);
    std::set<Edge> edges;
    std::set<Edge> removed;
    bool placed = false;
    // The plain subdivision first, then triangulations varied by edge flips.
    for (int attempt = 0; attempt < 400 && !placed; ++attempt) {
        auto faces = base;
        if (attempt > 0) random_flips(faces, 4 * vertices, rng);
        edges.clear();
        for (const auto& f : faces)
            for (int i = 0; i < 3; ++i) edges.insert(make_edge(f[i], f[(i + 1) % 3]));

        std::set<int> used;
        removed.clear();
        placed = true;
        for (int gamma : meta.holeCycles) {
            // A strip of gamma-2 faces, each adding one new vertex, so that every
            // vertex lies on the boundary cycle.
            std::optional<Hole> found;
            std::vector<int> path;
            std::function<bool(std::set<int>&, std::vector<Edge>&)> grow = [&](std::set<int>& vs, std::vector<Edge>& inner) -> bool {
                if (static_cast<int>(path.size()) == gamma - 2) {
                    std::set<Edge> innerSet(inner.begin(), inner.end());
                    // Only the boundary cycle may join hole vertices once the inner edges go.
                    std::map<int, int> deg;
                    for (const auto& e : edges) {
                        if (removed.count(e) || innerSet.count(e)) continue;
                        if (vs.count(e.first) && vs.count(e.second)) {
                            ++deg[e.first];
                            ++deg[e.second];
                        }
                    }
                    for (int v : vs)
                        if (deg[v] != 2) return false;
                    // Every hole vertex keeps degree >= 3.
                    for (int v : vs) {
                        int d = 0;
                        for (const auto& e : edges)
                            if (!removed.count(e) && !innerSet.count(e) && (e.first == v || e.second == v)) ++d;
                        if (d < 3) return false;
                    }
                    found = Hole{vs, inner};
                    return true;
                }
                const Face& last = faces[path.back()];
                for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
                    if (std::find(path.begin(), path.end(), fi) != path.end()) continue;
                    Edge shared;
                    if (!share_edge(last, faces[fi], shared)) continue;
                    if (removed.count(shared)) continue;
                    int fresh = -1;
                    for (int x : faces[fi])
                        if (!vs.count(x)) fresh = x;
                    if (fresh < 0 || used.count(fresh)) continue;
                    vs.insert(fresh);
                    inner.push_back(shared);
                    path.push_back(fi);
                    if (grow(vs, inner)) return true;
                    path.pop_back();
                    inner.pop_back();
                    vs.erase(fresh);
                }
                return false;
            };
            for (int f0 = 0; f0 < static_cast<int>(faces.size()) && !found; ++f0) {
                bool clash = false;
                for (int x : faces[f0]) clash = clash || used.count(x) > 0;
                if (clash) continue;
                std::set<int> vs(faces[f0].begin(), faces[f0].end());
                std::vector<Edge> inner;
                path = {f0};
                grow(vs, inner);
            }
            if (!found) {
                placed = false;
                break;
            }
            used.insert(found->vertices.begin(), found->vertices.end());
            removed.insert(found->interior.begin(), found->interior.end());
        }
    }
    if (!placed)
        throw InputError("no room for holes of lengths " + join_ints(meta.holeCycles) + " on " + std::to_string(vertices) +
                         " vertices; increase the vertex count");
    std::vector<Edge> es;
    for (const auto& e : edges)
        if (!removed.count(e)) es.push_back(e);
    meta.vertices = vertices;
    CatalogEntry e = entry("simplicial_holes", SimpleGraph::dense(vertices, es));
    e.dim = 3;
    e.meta = meta;
    return e;
}

int simplicial_flex_dim(const SimplicialMeta& meta, const NormSpec& n) {
    if (n.d() != 3) throw InputError("the simplicial flexibility formula is for d = 3");
    check_meta(meta);
    if (!n.euclidean() && meta.vertices && *meta.vertices < 6)
        throw InputError("the non-Euclidean simplicial formula needs at least 6 vertices");
    int s = 0;
    for (int g : meta.holeCycles) s += g;
    return s - 3 * meta.kappa + (n.euclidean() ? 0 : 3);
}

SimpleGraph add_shafts(const SimpleGraph& g, int count) {
    const int n = g.num_vertices();
    require(n >= 6, "shafts need a simplicial graph on at least 6 vertices");
    require(g.num_edges() == 3 * n - 6, "shafts are added to a triangulated sphere (3|V| - 6 edges)");
    require(count >= 1, "shaft count must be positive");
    std::vector<Edge> non;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j)) non.push_back({i, j});
    std::vector<Edge> pick;
    std::vector<char> busy(n, 0);
    std::function<bool(std::size_t)> search = [&](std::size_t from) {
        if (static_cast<int>(pick.size()) == count) return true;
        for (std::size_t i = from; i < non.size(); ++i) {
            auto [a, b] = non[i];
            if (busy[a] || busy[b]) continue;
            busy[a] = busy[b] = 1;
            pick.push_back(non[i]);
            if (search(i + 1)) return true;
            pick.pop_back();
            busy[a] = busy[b] = 0;
        }
        return false;
    };
    if (!search(0)) throw InputError("no " + std::to_string(count) + " pairwise non-incident non-edges exist");
    std::vector<LabelEdge> es = g.label_edges();
    for (const auto& e : pick) es.push_back(g.label_edge(e));
    return SimpleGraph::from_labels(g.labels(), es);
}

const std::vector<FamilyInfo>& catalog_families() {
    static const std::vector<FamilyInfo> fams{
        {"complete", "n=4", "complete graph K_n"},
        {"cycle", "n=4", "cycle C_n"},
        {"double_banana", "", "two K5 minus an edge sharing the missing edge's ends"},
        {"banana_tower", "stages=3", "double banana with flex-cancelling bananas added per stage"},
        {"strip", "cells=3,placement=periodic,top=2,middle=0.8", "strip graph over a rigid base; placement radial|periodic"},
        {"whirlpool", "layers=2,map=similarity", "nested squares joined by spokes; map similarity|symmetric"},
        {"tetra_refined", "levels=2", "triangular prism bands refining towards the apex of a pyramid"},
        {"octa_pointed", "levels=2,sides=4", "double cone refined towards the north pole"},
        {"diamond", "levels=1,base=4", "latitude rings doubling towards the north pole"},
        {"octahedron", "", "regular octahedron"},
        {"icosahedron", "", "regular icosahedron"},
        {"simplicial_holes", "holes=,vertices=14", "subdivided octahedron with holes of the listed lengths"},
    };
    return fams;
}

namespace {

struct Params {
    const std::map<std::string, std::string>& raw;
    std::set<std::string> allowed;

    int integer(const std::string& key, int def) {
        allowed.insert(key);
        auto it = raw.find(key);
        if (it == raw.end()) return def;
        try {
            std::size_t pos = 0;
            int v = std::stoi(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(key);
            return v;
        } catch (const std::exception&) {
            throw InputError("parameter " + key + " needs an integer, got '" + it->second + "'");
        }
    }
    double real(const std::string& key, double def) {
        allowed.insert(key);
        auto it = raw.find(key);
        if (it == raw.end()) return def;
        try {
            std::size_t pos = 0;
            double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(key);
            return v;
        } catch (const std::exception&) {
            throw InputError("parameter " + key + " needs a number, got '" + it->second + "'");
        }
    }
    std::string text(const std::string& key, const std::string& def) {
        allowed.insert(key);
        auto it = raw.find(key);
        return it == raw.end() ? def : it->second;
    }
    void done(const std::string& family) const {
        for (const auto& [k, v] : raw)
            if (!allowed.count(k)) throw InputError("unknown parameter '" + k + "' for family " + family);
    }
};

std::vector<int> int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        std::string tok = s.substr(i, j - i);
        try {
            std::size_t pos = 0;
            out.push_back(std::stoi(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InputError("bad hole length '" + tok + "'");
        }
        i = j + 1;
    }
    return out;
}

}  // namespace

CatalogEntry generate(const std::string& family, const std::map<std::string, std::string>& params) {
    Params p{params, {}};
    CatalogEntry e;
    if (family == "complete") {
        int n = p.integer("n", 4);
        p.done(family);
        e = complete_family(n);
    } else if (family == "cycle") {
        int n = p.integer("n", 4);
        p.done(family);
        e = cycle_family(n);
    } else if (family == "double_banana") {
        p.done(family);
        e = double_banana();
    } else if (family == "banana_tower") {
        int k = p.integer("stages", 3);
        p.done(family);
        e = banana_tower(k);
    } else if (family == "strip") {
        StripOptions o;
        int cells = p.integer("cells", 3);
        std::string kind = p.text("placement", "periodic");
        o.top = p.real("top", o.top);
        o.middle = p.real("middle", o.middle);
        p.done(family);
        if (kind == "radial") o.placement = StripPlacement::Radial;
        else if (kind != "periodic") throw InputError("strip placement is radial or periodic");
        e = strip(cells, o);
    } else if (family == "whirlpool") {
        int layers = p.integer("layers", 2);
        std::string map = p.text("map", "similarity");
        p.done(family);
        if (map != "similarity" && map != "symmetric") throw InputError("whirlpool map is similarity or symmetric");
        e = whirlpool(layers, map == "symmetric" ? WhirlpoolMap::Symmetric : WhirlpoolMap::Similarity);
    } else if (family == "tetra_refined") {
        int levels = p.integer("levels", 2);
        p.done(family);
        e = tetra_refined(levels);
    } else if (family == "octa_pointed") {
        int levels = p.integer("levels", 2);
        int sides = p.integer("sides", 4);
        p.done(family);
        e = octa_pointed(levels, sides);
    } else if (family == "diamond") {
        int levels = p.integer("levels", 1);
        int base = p.integer("base", 4);
        p.done(family);
        e = diamond(levels, base);
    } else if (family == "octahedron") {
        p.done(family);
        e = octahedron();
    } else if (family == "icosahedron") {
        p.done(family);
        e = icosahedron();
    } else if (family == "simplicial_holes") {
        SimplicialMeta m;
        m.holeCycles = int_list(p.text("holes", ""));
        m.kappa = static_cast<int>(m.holeCycles.size());
        int n = p.integer("vertices", 14);
        p.done(family);
        e = simplicial_holes(m, n);
    } else {
        throw InputError("unknown family '" + family + "'");
    }
    return e;
}

}  // namespace rigidkit
