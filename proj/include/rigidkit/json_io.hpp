#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rigidkit/bodybar.hpp"
#include "rigidkit/catalog.hpp"
#include "rigidkit/chain.hpp"
#include "rigidkit/frameworks.hpp"
#include "rigidkit/sparsity.hpp"
#include "rigidkit/towers.hpp"

namespace rigidkit {

using Json = nlohmann::ordered_json;

// Throws InputError with the byte offset of the first syntax error.
Json parse_json_text(const std::string& text);

struct Framework {
    SimpleGraph graph;
    std::optional<Placement> placement;
    std::optional<std::vector<RationalVector>> exactPlacement;  // when every coordinate is rational text or an integer
    std::optional<NormSpec> norm;
};

// Strict readers: unknown fields are rejected.
SimpleGraph graph_from_json(const Json& j);
Framework framework_from_json(const Json& j);
Tower tower_from_json(const Json& j);
MultiBodyGraph multibody_from_json(const Json& j, const NormSpec& n, std::uint64_t seed = 0);
ConstructionChain chain_from_json(const Json& j);
MoveRecord move_from_json(const Json& j);

// Decimal string with 17 significant digits.
std::string num(double x);
Rational rational_from_json(const Json& j);

Json to_json(const SimpleGraph& g);
Json to_json(const MultiGraph& g);
Json to_json(const Placement& p, const SimpleGraph& g);
Json to_json(const std::vector<RationalVector>& p, const SimpleGraph& g);
Json to_json(const Eigen::MatrixXd& m);
Json to_json(const RationalMatrix& m);
Json velocity_to_json(const Velocity& u, const SimpleGraph& g, int d);
Json to_json(const FlexReport& r, const SimpleGraph& g, int d);
Json to_json(const SparsityReport& r, const SimpleGraph& g);
Json to_json(const MoveRecord& m);
Json to_json(const ConstructionChain& c);
Json to_json(const Tower& t);
Json to_json(const MultiBodyGraph& m);
Json to_json(const SimplicialMeta& m);
Json to_json(const CatalogEntry& e, bool withMeta);

}  // namespace rigidkit
