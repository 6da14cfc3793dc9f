#pragma once

#include <vector>

#include "rigidkit/chain.hpp"
#include "rigidkit/sparsity.hpp"

namespace rigidkit {

enum class ChainMode { Euclidean2D, QNorm2D };

SparsityCount mode_count(ChainMode m);  // (2,3) or (2,2)
std::string to_string(ChainMode m);
ChainMode chain_mode_from_string(const std::string& s);

// Forward moves m with apply_move(undo_move(g, m), m) == g.
std::vector<MoveRecord> inverse_candidates(const SimpleGraph& g, SparsityCount c, VertexId v);

// The graph a recorded move was applied to. Throws MoveError when g does not
// have the shape the move produces.
SimpleGraph undo_move(const SimpleGraph& g, const MoveRecord& m);

ConstructionChain find_chain(const SimpleGraph& gFrom, const SimpleGraph& gTo, ChainMode mode);

struct ChainVerification {
    SimpleGraph finalGraph;
    SimpleGraph limit;
    int stages = 0;
};

// Throws ChainError with the first failing stage.
ChainVerification verify_chain(const ConstructionChain& c, ChainMode mode);

}  // namespace rigidkit
