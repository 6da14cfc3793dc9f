#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidkit/frameworks.hpp"
#include "rigidkit/graph.hpp"

namespace rigidkit {

struct RelativeRigidityVerdict {
    bool relativelyRigid = false;
    std::optional<SimpleGraph> container;
    std::optional<Velocity> witnessFlex;  // on g, dense order; restriction to h is nontrivial
    int nullity = 0;                      // of R(g, p)
    int nullityCompleted = 0;             // of R(g + K_V(h), p)
    std::optional<bool> exactAgrees;      // integer q: exact ranks gave the same verdict
    Placement placement;
};

// Euclidean: |V(h)| >= 2. Otherwise |V(h)| >= 2d. Both make K_V(h) rigid.
void check_relative_precondition(const SimpleGraph& h, const NormSpec& n);

// exactCheck repeats the rank comparison exactly (integer q only); it is slow
// beyond a few dozen vertices.
RelativeRigidityVerdict relative_rigidity(const SimpleGraph& g, const SimpleGraph& h, const NormSpec& n,
                                          std::uint64_t seed = 0, bool exactCheck = true);

// d = 2 only. Some iff h is relatively rigid in g.
std::optional<SimpleGraph> rigid_container_2d(const SimpleGraph& g, const SimpleGraph& h, const NormSpec& n,
                                              std::uint64_t seed = 0);

// Rigid induced subgraph on a vertex superset of V(h), containing E(h). |V(g)| <= 12.
std::optional<SimpleGraph> exhaustive_rigid_container(const SimpleGraph& g, const SimpleGraph& h, const NormSpec& n,
                                                      std::uint64_t seed = 0);

enum class TowerStatus { RigidCertified, FlexibleCertified, Undecided };
std::string to_string(TowerStatus s);

struct StagePairNote {
    int index = 0;  // pair (stage index, stage index + 1)
    bool preconditionMet = true;
    bool relativelyRigid = false;
};

struct TowerVerdict {
    TowerStatus status = TowerStatus::Undecided;
    int relativelyRigidPrefix = 0;  // number of leading stages joined by relatively rigid pairs
    std::optional<std::vector<SimpleGraph>> sequentialWitness;
    std::vector<StagePairNote> pairs;
    bool finalStageRigid = false;
    std::string scope;
};

TowerVerdict tower_rigidity(const Tower& t, const NormSpec& n, std::uint64_t seed = 0);

// d = 2. Rigid H_k with G_k <= H_k <= G_{k+1}; nullopt when some pair is not
// relatively rigid.
std::optional<std::vector<SimpleGraph>> sequential_rigidity_2d(const Tower& t, const NormSpec& n, std::uint64_t seed = 0);

enum class LamanStatus { Rigid, MinimallyRigid, NotCertified };
std::string to_string(LamanStatus s);

struct LamanTowerVerdict {
    LamanStatus status = LamanStatus::NotCertified;
    std::vector<SimpleGraph> witness;  // nested tight graphs
    std::vector<int> witnessStages;    // stage index each witness graph spans
};

LamanTowerVerdict laman_tower_decide(const Tower& t, const NormSpec& n);

}  // namespace rigidkit
