#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidkit/exact.hpp"
#include "rigidkit/graph.hpp"
#include "rigidkit/norm.hpp"

namespace rigidkit {

// Row i holds the point of the vertex with dense index i.
struct Placement {
    Eigen::MatrixXd points;
    int num_vertices() const { return static_cast<int>(points.rows()); }
    int dim() const { return static_cast<int>(points.cols()); }
};

// Velocity fields are flat vectors, coordinate i of vertex v at v*d + i.
using Velocity = Eigen::VectorXd;

inline constexpr double kRankEps = 1e-9;

// Throws InputError naming the first edge whose endpoints coincide.
void check_placement(const SimpleGraph& g, const Placement& p, int d);

Eigen::MatrixXd rigidity_matrix(const SimpleGraph& g, const Placement& p, const NormSpec& n);

// Integer placement and integer q only.
IntMatrix exact_rigidity_matrix(const SimpleGraph& g, const std::vector<std::vector<BigInt>>& p, const NormSpec& n);
RationalMatrix exact_rigidity_matrix(const SimpleGraph& g, const std::vector<RationalVector>& p, const NormSpec& n);

struct NumericRank {
    int rank = 0;
    Eigen::MatrixXd kernel;  // orthonormal columns spanning the numerical null space
};

// sigma counts iff sigma > eps * sigma_max * max(rows, cols).
NumericRank numeric_rank(const Eigen::MatrixXd& m, double eps = kRankEps, bool wantKernel = true);

// Orthonormal basis (columns) of the span of the given columns.
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& cols, double eps = kRankEps);

struct BasisSet {
    Eigen::MatrixXd vectors;  // orthonormal columns
    int dim() const { return static_cast<int>(vectors.cols()); }
};

// Raw generators: d translations, plus d(d-1)/2 rotations when Euclidean.
Eigen::MatrixXd trivial_motion_generators(int numVertices, const Placement& p, const NormSpec& n);
BasisSet trivial_motion_basis(const SimpleGraph& g, const Placement& p, const NormSpec& n);

enum class Classification { Rigid, MinimallyRigid, Flexible };
std::string to_string(Classification c);

struct FlexReport {
    int rank = 0;
    int nullity = 0;
    int trivialDim = 0;
    int flexDim = 0;
    Classification classification = Classification::Flexible;
    Eigen::MatrixXd nontrivialFlexBasis;  // orthonormal, orthogonal to the trivial motions
    bool rigid() const { return flexDim == 0; }
};

FlexReport flex_report(const SimpleGraph& g, const Placement& p, const NormSpec& n, double tol = kRankEps);
// Same, with every row of R scaled to unit length first. The kernel does not
// change; the rank threshold stops swallowing rows of very short bars.
FlexReport flex_report_balanced(const SimpleGraph& g, const Placement& p, const NormSpec& n, double tol = kRankEps);

// Uniform in [-1,1]^d, resampled while some edge has two equal coordinates.
Placement random_placement(const SimpleGraph& g, int d, std::uint64_t seed);

// Integer coordinates in [-10^6, 10^6], same rejection rule.
std::vector<std::vector<BigInt>> random_integer_placement(const SimpleGraph& g, int d, std::uint64_t seed);

int generic_rank(const SimpleGraph& g, const NormSpec& n, int trials, std::uint64_t seed);

// Exact rank at a random integer placement; nullopt for non-integer q.
std::optional<int> exact_generic_rank(const SimpleGraph& g, const NormSpec& n, std::uint64_t seed);

struct GenericVerdict {
    bool rigid = false;
    FlexReport report;             // at the witness placement
    int genericRank = 0;
    bool probabilistic = false;    // non-integer q: no exact route
    std::optional<int> exactRank;  // when an exact confirmation ran
    std::optional<bool> combinatorialRigid;  // d = 2 only
    Placement witness;
};

GenericVerdict is_rigid_generic(const SimpleGraph& g, const NormSpec& n, int trials = 3, std::uint64_t seed = 0,
                                bool exactCheck = false);

// Derives an independent 64-bit seed for trial t.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Distance of u from span(basis) relative to |u|.
double relative_distance_from_span(const Velocity& u, const Eigen::MatrixXd& orthonormalBasis);

struct FlexExtension {
    bool extends = false;
    Velocity witness;  // full velocity on gLarge when it extends
    double residual = 0.0;
};

// u is indexed by gSmall's dense order; p places gLarge.
FlexExtension flex_extends(const SimpleGraph& gSmall, const SimpleGraph& gLarge, const Placement& pLarge,
                           const Velocity& u, const NormSpec& n, double tol = 1e-9);

// Predictor-corrector tracking inside the configuration space. Returns one
// placement per step.
std::vector<Placement> continuation_track(const SimpleGraph& g, const Placement& p, const NormSpec& n,
                                          const Velocity& direction, int steps, double stepLength);

// Sum_i |x_i|^q, the q-th power of the norm.
double qnorm_pow(const Eigen::VectorXd& x, double q);
double qnorm(const Eigen::VectorXd& x, double q);

struct GrowthProfile {
    std::vector<double> speeds;              // max speed per stage, stage 1 normalised to 1
    std::vector<double> ratios;              // speeds[k+1] / speeds[k]
    std::optional<int> cancellationStage;    // first stage the flex fails to extend to
    std::string trend;                       // "increasing", "decreasing", "bounded", "empty"
    Velocity finalFlex;
};

// p places the union of the tower (its final stage). When u1 is absent the
// first nontrivial flex of stage 1 is used.
GrowthProfile flex_growth_profile(const Tower& t, const Placement& p, const NormSpec& n,
                                  const std::optional<Velocity>& u1 = std::nullopt);

// Restricts a placement of g to the vertices of a subgraph h (by label).
Placement restrict_placement(const SimpleGraph& g, const Placement& p, const SimpleGraph& h);
// Velocity restricted the same way.
Velocity restrict_velocity(const SimpleGraph& g, const Velocity& u, const SimpleGraph& h, int d);

}  // namespace rigidkit
