#include "rigidkit/frameworks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rigidkit/errors.hpp"
#include "rigidkit/sparsity.hpp"

namespace rigidkit {

namespace {

double signed_pow(double x, double qm1) {
    if (qm1 == 1.0) return x;
    double a = std::pow(std::fabs(x), qm1);
    return x < 0 ? -a : a;
}

}  // namespace

void check_placement(const SimpleGraph& g, const Placement& p, int d) {
    if (p.num_vertices() != g.num_vertices() || p.dim() != d)
        throw InputError("placement shape does not match the graph (" + std::to_string(g.num_vertices()) + " x " +
                         std::to_string(d) + " expected)");
    if (!p.points.allFinite()) throw InputError("placement has non-finite coordinates");
    for (const auto& e : g.edges())
        if ((p.points.row(e.first) - p.points.row(e.second)).cwiseAbs().maxCoeff() == 0.0)
            throw InputError("edge " + std::to_string(g.label(e.first).value) + "-" +
                             std::to_string(g.label(e.second).value) + " has coincident endpoints");
}

Eigen::MatrixXd rigidity_matrix(const SimpleGraph& g, const Placement& p, const NormSpec& n) {
    const int d = n.d();
    check_placement(g, p, d);
    const double qm1 = n.q() - 1.0;
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(g.num_edges(), d * g.num_vertices());
    for (int row = 0; row < g.num_edges(); ++row) {
        auto [u, v] = g.edges()[row];
        for (int i = 0; i < d; ++i) {
            double x = signed_pow(p.points(u, i) - p.points(v, i), qm1);
            r(row, u * d + i) = x;
            r(row, v * d + i) = -x;
        }
    }
    return r;
}

IntMatrix exact_rigidity_matrix(const SimpleGraph& g, const std::vector<std::vector<BigInt>>& p, const NormSpec& n) {
    const int d = n.d();
    const int qm1 = n.q_int() - 1;
    IntMatrix r(g.num_edges(), std::vector<BigInt>(d * g.num_vertices(), BigInt(0)));
    for (int row = 0; row < g.num_edges(); ++row) {
        auto [u, v] = g.edges()[row];
        bool distinct = false;
        for (int i = 0; i < d; ++i) {
            BigInt x = signed_power(BigInt(p[u][i] - p[v][i]), qm1);
            if (x != 0) distinct = true;
            r[row][u * d + i] = x;
            r[row][v * d + i] = -x;
        }
        if (!distinct) throw InputError("edge with coincident endpoints in exact placement");
    }
    return r;
}

RationalMatrix exact_rigidity_matrix(const SimpleGraph& g, const std::vector<RationalVector>& p, const NormSpec& n) {
    const int d = n.d();
    const int qm1 = n.q_int() - 1;
    RationalMatrix r(g.num_edges(), RationalVector(d * g.num_vertices(), Rational(0)));
    for (int row = 0; row < g.num_edges(); ++row) {
        auto [u, v] = g.edges()[row];
        for (int i = 0; i < d; ++i) {
            Rational x = signed_power(Rational(p[u][i] - p[v][i]), qm1);
            r[row][u * d + i] = x;
            r[row][v * d + i] = -x;
        }
    }
    return r;
}

NumericRank numeric_rank(const Eigen::MatrixXd& m, double eps, bool wantKernel) {
    NumericRank out;
    const Eigen::Index cols = m.cols();
    if (m.rows() == 0 || cols == 0) {
        if (wantKernel) out.kernel = Eigen::MatrixXd::Identity(cols, cols);
        return out;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, wantKernel ? Eigen::ComputeFullV : 0);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    const double thresh = eps * smax * static_cast<double>(std::max(m.rows(), cols));
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > thresh && s(i) > 0.0) ++r;
    out.rank = r;
    if (wantKernel) out.kernel = svd.matrixV().rightCols(cols - r);
    return out;
}

Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& cols, double eps) {
    if (cols.cols() == 0 || cols.rows() == 0) return Eigen::MatrixXd(cols.rows(), 0);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    const double thresh = eps * smax * static_cast<double>(std::max(cols.rows(), cols.cols()));
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > thresh && s(i) > 0.0) ++r;
    return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd trivial_motion_generators(int numVertices, const Placement& p, const NormSpec& n) {
    const int d = n.d();
    const int rot = n.euclidean() ? d * (d - 1) / 2 : 0;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(d * numVertices, d + rot);
    for (int v = 0; v < numVertices; ++v)
        for (int i = 0; i < d; ++i) t(v * d + i, i) = 1.0;
    int col = d;
    for (int i = 0; i < d && rot; ++i)
        for (int j = i + 1; j < d; ++j, ++col)
            for (int v = 0; v < numVertices; ++v) {
                t(v * d + i, col) = p.points(v, j);
                t(v * d + j, col) = -p.points(v, i);
            }
    return t;
}

BasisSet trivial_motion_basis(const SimpleGraph& g, const Placement& p, const NormSpec& n) {
    check_placement(g, p, n.d());
    return BasisSet{orthonormal_span(trivial_motion_generators(g.num_vertices(), p, n))};
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Rigid: return "Rigid";
        case Classification::MinimallyRigid: return "MinimallyRigid";
        case Classification::Flexible: return "Flexible";
    }
    return "?";
}

namespace {

FlexReport report_from(const SimpleGraph& g, const Placement& p, const NormSpec& n, const Eigen::MatrixXd& r, double tol) {
    const int d = n.d();
    NumericRank nr = numeric_rank(r, tol, true);
    BasisSet t = trivial_motion_basis(g, p, n);
    FlexReport rep;
    rep.rank = nr.rank;
    rep.nullity = d * g.num_vertices() - nr.rank;
    rep.trivialDim = t.dim();
    rep.flexDim = rep.nullity - rep.trivialDim;
    if (rep.flexDim < 0)
        throw InconsistencyError("kernel is smaller than the trivial motion space; tolerance too loose");
    if (rep.flexDim > 0) {
        Eigen::MatrixXd proj = nr.kernel - t.vectors * (t.vectors.transpose() * nr.kernel);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeThinU);
        rep.nontrivialFlexBasis = svd.matrixU().leftCols(rep.flexDim);
    } else {
        rep.nontrivialFlexBasis = Eigen::MatrixXd(d * g.num_vertices(), 0);
    }
    if (rep.flexDim == 0)
        rep.classification = rep.rank == g.num_edges() ? Classification::MinimallyRigid : Classification::Rigid;
    else
        rep.classification = Classification::Flexible;
    return rep;
}

}  // namespace

FlexReport flex_report(const SimpleGraph& g, const Placement& p, const NormSpec& n, double tol) {
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    return report_from(g, p, n, rigidity_matrix(g, p, n), tol);
}

FlexReport flex_report_balanced(const SimpleGraph& g, const Placement& p, const NormSpec& n, double tol) {
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    Eigen::MatrixXd r = rigidity_matrix(g, p, n);
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        const double s = r.row(i).norm();
        if (s > 0.0) r.row(i) /= s;
    }
    return report_from(g, p, n, r, tol);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Placement random_placement(const SimpleGraph& g, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Placement p{Eigen::MatrixXd(g.num_vertices(), d)};
        for (int v = 0; v < g.num_vertices(); ++v)
            for (int i = 0; i < d; ++i) p.points(v, i) = dist(rng);
        bool ok = true;
        for (const auto& e : g.edges() ) {
            for (int i = 0; i < d && ok; ++i)
                if (p.points(e.first, i) == p.points(e.second, i)) ok = false;
            if (!ok) break;
        }
        if (ok) return p;
    }
    throw Error("random placement rejected 1000 times");
}

std::vector<std::vector<BigInt>> random_integer_placement(const SimpleGraph& g, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> dist(-1000000, 1000000);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::vector<BigInt>> p(g.num_vertices(), std::vector<BigInt>(d));
        for (auto& row : p)
            for (auto& x : row) x = dist(rng);
        bool ok = true;
        for (const auto& e : g.edges())
            for (int i = 0; i < d; ++i)
                if (p[e.first][i] == p[e.second][i]) ok = false;
        if (ok) return p;
    }
    throw Error("random integer placement rejected 1000 times");
}

int generic_rank(const SimpleGraph& g, const NormSpec& n, int trials, std::uint64_t seed) {
    if (trials < 1) throw InputError("trials must be at least 1");
    int best = 0;
    for (int t = 0; t < trials; ++t) {
        Placement p = random_placement(g, n.d(), mix_seed(seed, static_cast<std::uint64_t>(t)));
        best = std::max(best, numeric_rank(rigidity_matrix(g, p, n), kRankEps, false).rank);
    }
    return best;
}

std::optional<int> exact_generic_rank(const SimpleGraph& g, const NormSpec& n, std::uint64_t seed) {
    if (!n.integer_q()) return std::nullopt;
    auto p = random_integer_placement(g, n.d(), mix_seed(seed, 0xE4AC7ull));
    return exact_rank(exact_rigidity_matrix(g, p, n));
}

GenericVerdict is_rigid_generic(const SimpleGraph& g, const NormSpec& n, int trials, std::uint64_t seed, bool exactCheck) {
    if (trials < 1) throw InputError("trials must be at least 1");
    GenericVerdict v;
    int best = -1;
    for (int t = 0; t < trials; ++t) {
        Placement p = random_placement(g, n.d(), mix_seed(seed, static_cast<std::uint64_t>(t)));
        int r = numeric_rank(rigidity_matrix(g, p, n), kRankEps, false).rank;
        if (r > best) {
            best = r;
            v.witness = p;
        }
    }
    v.genericRank = best;
    v.report = flex_report(g, v.witness, n);
    v.rigid = v.report.flexDim == 0;
    v.probabilistic = !n.integer_q();
    if (exactCheck && n.integer_q()) {
        v.exactRank = exact_generic_rank(g, n, seed);
        if (*v.exactRank != v.genericRank)
            throw InconsistencyError("numeric generic rank " + std::to_string(v.genericRank) +
                                     " disagrees with exact rank " + std::to_string(*v.exactRank));
    }
    if (n.d() == 2) {
        bool comb = g.num_vertices() <= 1 ||
                    tight_spanning_subgraph(g, SparsityCount{2, n.laman_l()}).has_value();
        v.combinatorialRigid = comb;
        if (comb != v.rigid)
            throw InconsistencyError("numeric verdict (" + std::string(v.rigid ? "rigid" : "flexible") +
                                     ") disagrees with the (2," + std::to_string(n.laman_l()) + ") count");
    }
    return v;
}

double relative_distance_from_span(const Velocity& u, const Eigen::MatrixXd& b) {
    double nu = u.norm();
    if (nu == 0.0) return 0.0;
    if (b.cols() == 0) return 1.0;
    return (u - b * (b.transpose() * u)).norm() / nu;
}

Placement restrict_placement(const SimpleGraph& g, const Placement& p, const SimpleGraph& h) {
    Placement out{Eigen::MatrixXd(h.num_vertices(), p.dim())};
    for (int i = 0; i < h.num_vertices(); ++i) out.points.row(i) = p.points.row(g.index_of(h.label(i)));
    return out;
}

Velocity restrict_velocity(const SimpleGraph& g, const Velocity& u, const SimpleGraph& h, int d) {
    Velocity out(d * h.num_vertices());
    for (int i = 0; i < h.num_vertices(); ++i) out.segment(i * d, d) = u.segment(g.index_of(h.label(i)) * d, d);
    return out;
}

FlexExtension flex_extends(const SimpleGraph& gSmall, const SimpleGraph& gLarge, const Placement& pLarge,
                           const Velocity& u, const NormSpec& n, double tol) {
    const int d = n.d();
    if (!gSmall.is_subgraph_of(gLarge)) throw InputError("flex_extends needs gSmall to be a subgraph of gLarge");
    if (u.size() != d * gSmall.num_vertices()) throw InputError("flex has the wrong length");
    Placement pSmall = restrict_placement(gLarge, pLarge, gSmall);
    Eigen::MatrixXd rs = rigidity_matrix(gSmall, pSmall, n);
    double scale = 1.0 + rs.norm() * u.norm();
    if ((rs * u).norm() > 1e-8 * scale) throw InputError("the given velocity is not a flex of the smaller framework");

    Eigen::MatrixXd r = rigidity_matrix(gLarge, pLarge, n);
    std::vector<int> oldIdx(gSmall.num_vertices());
    std::vector<char> isOld(gLarge.num_vertices(), 0);
    for (int i = 0; i < gSmall.num_vertices(); ++i) {
        oldIdx[i] = gLarge.index_of(gSmall.label(i));
        isOld[oldIdx[i]] = 1;
    }
    std::vector<int> newIdx;
    for (int v = 0; v < gLarge.num_vertices(); ++v)
        if (!isOld[v]) newIdx.push_back(v);

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r.rows());
    for (int i = 0; i < gSmall.num_vertices(); ++i) rhs -= r.middleCols(oldIdx[i] * d, d) * u.segment(i * d, d);
    Eigen::MatrixXd an(r.rows(), d * static_cast<Eigen::Index>(newIdx.size()));
    for (std::size_t j = 0; j < newIdx.size(); ++j) an.middleCols(j * d, d) = r.middleCols(newIdx[j] * d, d);

    Eigen::VectorXd w = Eigen::VectorXd::Zero(an.cols());
    if (an.cols() > 0 && an.rows() > 0) w = an.completeOrthogonalDecomposition().solve(rhs);
    FlexExtension out;
    double denom = 1.0 + r.norm() * u.norm();
    out.residual = (an * w - rhs).norm() / denom;
    out.extends = out.residual <= tol;
    if (out.extends) {
        out.witness = Velocity::Zero(d * gLarge.num_vertices());
        for (int i = 0; i < gSmall.num_vertices(); ++i) out.witness.segment(oldIdx[i] * d, d) = u.segment(i * d, d);
        for (std::size_t j = 0; j < newIdx.size(); ++j) out.witness.segment(newIdx[j] * d, d) = w.segment(j * d, d);
    }
    return out;
}

double qnorm_pow(const Eigen::VectorXd& x, double q) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::fabs(x(i)), q);
    return s;
}

double qnorm(const Eigen::VectorXd& x, double q) { return std::pow(qnorm_pow(x, q), 1.0 / q); }

}  // namespace rigidkit
