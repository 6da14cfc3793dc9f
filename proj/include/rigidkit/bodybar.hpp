#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidkit/frameworks.hpp"
#include "rigidkit/graph.hpp"
#include "rigidkit/sparsity.hpp"

namespace rigidkit {

struct MultiBodyGraph {
    SimpleGraph underlying;
    std::vector<std::vector<VertexId>> bodies;  // each sorted; bodies sorted by first label
    std::vector<LabelEdge> interBodyEdges;      // in underlying edge order
    std::vector<int> bodyOf;                    // dense vertex index -> body index

    int num_bodies() const { return static_cast<int>(bodies.size()); }
};

// Checks the partition, rigidity of every body and the one-bar-per-vertex rule.
MultiBodyGraph validate_multibody(const SimpleGraph& g, std::vector<std::vector<VertexId>> bodies, const NormSpec& n,
                                  std::uint64_t seed = 0);

// Body-bar multigraph. Body i is labelled by its smallest vertex label, so the
// labels survive when bodies are added. Edge i is interBodyEdges[i].
MultiGraph body_bar_graph(const MultiBodyGraph& m);

// d(d+1)/2 for the Euclidean norm, d otherwise.
int tay_count(const NormSpec& n);

struct TayVerdict {
    bool rigid = false;
    int k = 0;
    std::optional<MultiGraph> witness;  // (k,k)-tight spanning subgraph of the body-bar graph
    std::optional<bool> numericRigid;   // is_rigid_generic on the underlying graph, when run
};

// crossCheckLimit: largest underlying vertex count for the numerical cross-check.
TayVerdict tay_decide(const MultiBodyGraph& m, const NormSpec& n, std::uint64_t seed = 0, int crossCheckLimit = 80);

// Edge indices of d edge-disjoint spanning trees covering E(gb).
std::vector<std::vector<int>> nash_williams_trees(const MultiGraph& gb, int d);

// Every body replaced by K_size (default max(2d+1, bars on the busiest body)).
// Bars keep their bodies; bar ends on a body get distinct template indices by a
// greedy proper colouring of the body-bar graph, recorded in barColour.
struct Remodel {
    MultiBodyGraph graph;
    int size = 0;
    std::vector<int> barColour;
};
Remodel remodel_bodies(const MultiBodyGraph& m, const NormSpec& n, std::optional<int> size = std::nullopt,
                       std::uint64_t seed = 0);

struct SpecialPlacement {
    MultiBodyGraph remodeled;
    Placement placement;
    FlexReport report;
    double eps = 0.0;  // value that succeeded
    int retries = 0;
};

// Non-Euclidean only; the body-bar graph must be (d,d)-tight.
SpecialPlacement special_placement(const MultiBodyGraph& m, const NormSpec& n, double eps = 1e-2, std::uint64_t seed = 0);

// Rank of R(G) equals the sum of body ranks plus the number of bars, at one
// random placement.
bool direct_sum_rank_test(const MultiBodyGraph& m, const NormSpec& n, std::uint64_t seed = 0);

// (k,k)-sparsity of the body-bar graph; cross-checked by the rank test when
// the underlying graph has at most crossCheckLimit vertices.
bool essentially_independent(const MultiBodyGraph& m, const NormSpec& n, std::uint64_t seed = 0, int crossCheckLimit = 60);

struct BodyContainer {
    std::vector<int> bodies;  // indices into m.bodies, sorted
    SimpleGraph graph;        // underlying graph induced on those bodies
};

// Rigid union of bodies containing all of hBodies, or nullopt when the bodies
// of h can move relative to each other.
std::optional<BodyContainer> multibody_rigid_container(const MultiBodyGraph& m, const std::vector<int>& hBodies,
                                                       const NormSpec& n);

enum class BodyBarTowerStatus { Rigid, EssentiallyMinimallyRigid, NotCertified };
std::string to_string(BodyBarTowerStatus s);

struct BodyBarTowerVerdict {
    BodyBarTowerStatus status = BodyBarTowerStatus::NotCertified;
    std::vector<MultiGraph> witness;  // nested tight body-bar graphs
    std::vector<int> witnessStages;
    // When no tight witness spans the last stage: whether the bodies of each
    // stage sit in a rigid container of the next one.
    std::optional<std::vector<bool>> relativelyRigidPairs;
};

// Throws NestingError when a stage's bodies or bars are not carried into the next.
BodyBarTowerVerdict bodybar_tower_decide(const std::vector<MultiBodyGraph>& stages, const NormSpec& n);

}  // namespace rigidkit
