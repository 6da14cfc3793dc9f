#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rigidkit/graph.hpp"

namespace rigidkit {

enum class MoveKind { VertexExt, EdgeMove, VertexToK4, VertexTo4Cycle, VertexSplit3D };

std::string to_string(MoveKind k);
MoveKind move_kind_from_string(const std::string& s);

// Field use per kind:
//   VertexExt(deg):  newVertices = {v}, neighbors = the deg neighbours of v.
//   EdgeMove(deg):   newVertices = {v}, removedEdge = v1v2, neighbors = deg+1 neighbours including v1, v2.
//   VertexToK4:      base = w0, newVertices = {w1,w2,w3}; reassign (x, j) replaces w0x by wjx.
//   VertexTo4Cycle:  base = v, neighbors = {v1,v2}, newVertices = {v0}; each w in moved has vw replaced by v0w.
//   VertexSplit3D:   base = v1, neighbors = {v2,v3}, newVertices = {v0}; each w in moved has wv1 replaced by wv0.
struct MoveRecord {
    MoveKind kind = MoveKind::VertexExt;
    int degree = 0;
    VertexId base{};
    std::vector<VertexId> newVertices;
    std::vector<VertexId> neighbors;
    std::optional<LabelEdge> removedEdge;
    std::vector<std::pair<VertexId, int>> reassign;
    std::vector<VertexId> moved;

    static MoveRecord vertex_ext(VertexId v, std::vector<VertexId> nbrs);
    static MoveRecord edge_move(VertexId v, LabelEdge removed, std::vector<VertexId> nbrs);
    static MoveRecord to_k4(VertexId w0, std::vector<VertexId> fresh, std::vector<std::pair<VertexId, int>> reassign);
    static MoveRecord to_4cycle(VertexId v, VertexId v1, VertexId v2, VertexId v0, std::vector<VertexId> moved);
    static MoveRecord split3d(VertexId v1, VertexId v2, VertexId v3, VertexId v0, std::vector<VertexId> moved);

    bool operator==(const MoveRecord&) const = default;
};

// Throws MoveError naming the violated constraint.
SimpleGraph apply_move(const SimpleGraph& g, const MoveRecord& m);

struct ConstructionChain {
    SimpleGraph start;
    std::vector<MoveRecord> moves;
};

// Every stage of the replay, start included. Throws ChainError with the move index.
std::vector<SimpleGraph> replay(const ConstructionChain& c);

SimpleGraph chain_limit(const ConstructionChain& c);

}  // namespace rigidkit
