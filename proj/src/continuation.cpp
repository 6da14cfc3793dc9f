#include <algorithm>
#include <cmath>

#include "rigidkit/errors.hpp"
#include "rigidkit/frameworks.hpp"

namespace rigidkit {

namespace {

// Euclidean: vertex j pins its first d - j coordinates for j < d, d(d+1)/2 in
// all, which in the plane is vertex 0 fully plus the x-coordinate of vertex 1.
// Otherwise vertex 0 only.
std::vector<char> pinned_mask(int numVertices, const NormSpec& n) {
    const int d = n.d();
    std::vector<char> pin(d * numVertices, 0);
    if (n.euclidean()) {
        for (int j = 0; j < d && j < numVertices; ++j)
            for (int i = 0; i < d - j; ++i) pin[j * d + i] = 1;
    } else if (numVertices > 0) {
        for (int i = 0; i < d; ++i) pin[i] = 1;
    }
    return pin;
}

Eigen::VectorXd edge_residual(const SimpleGraph& g, const Eigen::MatrixXd& x, const std::vector<double>& target, double q) {
    Eigen::VectorXd r(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.edges()[e];
        Eigen::VectorXd diff = (x.row(u) - x.row(v)).transpose();
        r(e) = qnorm_pow(diff, q) - target[e];
    }
    return r;
}

Eigen::MatrixXd take_columns(const Eigen::MatrixXd& m, const std::vector<int>& cols) {
    Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) out.col(j) = m.col(cols[j]);
    return out;
}

}  // namespace

std::vector<Placement> continuation_track(const SimpleGraph& g, const Placement& p, const NormSpec& n,
                                          const Velocity& direction, int steps, double stepLength) {
    const int d = n.d();
    const int nv = g.num_vertices();
    const double q = n.q();
    if (steps < 0) throw InputError("steps must be non-negative");
    if (!(stepLength > 0.0)) throw InputError("step length must be positive");
    if (direction.size() != d * nv) throw InputError("direction has the wrong length");
    Eigen::MatrixXd r0 = rigidity_matrix(g, p, n);
    if ((r0 * direction).norm() > 1e-8 * (1.0 + r0.norm() * direction.norm()))
        throw InputError("direction is not in the kernel of the rigidity matrix");

    std::vector<char> pin = pinned_mask(nv, n);
    std::vector<int> pinnedIdx, freeIdx;
    for (int c = 0; c < d * nv; ++c) (pin[c] ? pinnedIdx : freeIdx).push_back(c);

    // Remove the trivial part so that the pinned coordinates do not move.
    Eigen::MatrixXd tgen = trivial_motion_generators(nv, p, n);
    Eigen::MatrixXd tPinned(pinnedIdx.size(), tgen.cols());
    Eigen::VectorXd uPinned(pinnedIdx.size());
    for (std::size_t i = 0; i < pinnedIdx.size(); ++i) {
        tPinned.row(i) = tgen.row(pinnedIdx[i]);
        uPinned(i) = direction(pinnedIdx[i]);
    }
    Eigen::VectorXd coef = tPinned.rows() ? Eigen::VectorXd(tPinned.completeOrthogonalDecomposition().solve(uPinned))
                                          : Eigen::VectorXd::Zero(tgen.cols());
    Velocity u = direction - tgen * coef;

    std::vector<Placement> path;
    path.reserve(steps);
    if (u.norm() <= 1e-10 * std::max(1.0, direction.norm())) {
        for (int s = 0; s < steps; ++s) path.push_back(p);
        return path;
    }

    std::vector<double> target(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [a, b] = g.edges()[e];
        target[e] = qnorm_pow((p.points.row(a) - p.points.row(b)).transpose(), q);
    }

    Eigen::VectorXd tangent(freeIdx.size());
    for (std::size_t j = 0; j < freeIdx.size(); ++j) tangent(j) = u(freeIdx[j]);
    tangent.normalize();

    Eigen::MatrixXd x = p.points;
    auto set_free = [&](const Eigen::VectorXd& delta) {
        for (std::size_t j = 0; j < freeIdx.size(); ++j) x(freeIdx[j] / d, freeIdx[j] % d) += delta(j);
    };

    for (int s = 0; s < steps; ++s) {
        Placement cur{x};
        Eigen::MatrixXd jf = take_columns(rigidity_matrix(g, cur, n), freeIdx);
        NumericRank nr = numeric_rank(jf, kRankEps, true);
        if (nr.kernel.cols() == 0) throw ContinuationStall(s, "configuration space has no tangent direction at step " + std::to_string(s));
        Eigen::VectorXd t = nr.kernel * (nr.kernel.transpose() * tangent);
        if (t.norm() < 1e-12) throw ContinuationStall(s, "tangent direction vanished at step " + std::to_string(s));
        t.normalize();
        set_free(stepLength * t);

        bool converged = false;
        for (int it = 0; it <= 25; ++it) {
            Eigen::VectorXd res = edge_residual(g, x, target, q);
            if (res.size() == 0 || res.cwiseAbs().maxCoeff() < 1e-12) {
                converged = true;
                break;
            }
            if (it == 25) break;
            Eigen::MatrixXd jac = q * take_columns(rigidity_matrix(g, Placement{x}, n), freeIdx);
            Eigen::VectorXd delta = jac.completeOrthogonalDecomposition().solve(res);
            set_free(-delta);
        }
        if (!converged) throw ContinuationStall(s, "Newton corrector did not converge at step " + std::to_string(s));

        for (int e = 0; e < g.num_edges(); ++e) {
            auto [a, b] = g.edges()[e];
            double now = qnorm((x.row(a) - x.row(b)).transpose(), q);
            double was = std::pow(target[e], 1.0 / q);
            if (std::fabs(now - was) > 1e-8) throw ContinuationStall(s, "edge length drifted at step " + std::to_string(s));
        }
        path.push_back(Placement{x});
        tangent = t;
    }
    return path;
}

namespace {

double max_speed(const Velocity& u, int d) {
    double m = 0.0;
    for (Eigen::Index v = 0; v * d < u.size(); ++v) m = std::max(m, u.segment(v * d, d).norm());
    return m;
}

}  // namespace

GrowthProfile flex_growth_profile(const Tower& t, const Placement& p, const NormSpec& n, const std::optional<Velocity>& u1) {
    const int d = n.d();
    const SimpleGraph& top = t.stages.back();
    GrowthProfile prof;
    const SimpleGraph& g1 = t.stages.front();
    Placement p1 = restrict_placement(top, p, g1);
    Velocity u;
    if (u1) {
        u = *u1;
        BasisSet triv = trivial_motion_basis(g1, p1, n);
        if (relative_distance_from_span(u, triv.vectors) <= 1e-6) {
            prof.trend = "empty";
            return prof;
        }
    } else {
        FlexReport rep = flex_report(g1, p1, n);
        if (rep.flexDim == 0) {
            prof.trend = "empty";
            return prof;
        }
        u = rep.nontrivialFlexBasis.col(0);
    }
    const double s0 = max_speed(u, d);
    prof.speeds.push_back(1.0);
    for (std::size_t k = 1; k < t.stages.size(); ++k) {
        Placement pk = restrict_placement(top, p, t.stages[k]);
        FlexExtension ext = flex_extends(t.stages[k - 1], t.stages[k], pk, u, n);
        if (!ext.extends) {
            prof.cancellationStage = static_cast<int>(k) + 1;
            break;
        }
        u = ext.witness;
        prof.speeds.push_back(max_speed(u, d) / s0);
    }
    for (std::size_t k = 0; k + 1 < prof.speeds.size(); ++k) prof.ratios.push_back(prof.speeds[k + 1] / prof.speeds[k]);
    bool up = !prof.ratios.empty(), down = !prof.ratios.empty();
    for (double r : prof.ratios) {
        if (!(r > 1.0 + 1e-9)) up = false;
        if (!(r < 1.0 - 1e-9)) down = false;
    }
    prof.trend = up ? "increasing" : down ? "decreasing" : "bounded";
    prof.finalFlex = u;
    return prof;
}

}  // namespace rigidkit
