#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rigidkit/exact.hpp"
#include "rigidkit/frameworks.hpp"
#include "rigidkit/graph.hpp"

namespace rigidkit {

struct SimplicialMeta {
    int kappa = 0;                  // number of non-triangular faces
    std::vector<int> holeCycles;    // their lengths, each >= 4
    int refinement = 0;             // accumulation points of the infinite family, 0 for a finite graph
    std::optional<int> vertices;    // vertex count, when known
};

void check_meta(const SimplicialMeta& m);

struct CatalogEntry {
    std::string family;
    SimpleGraph graph;
    int dim = 2;                                            // dimension the canonical placement lives in
    std::optional<Placement> placement;
    std::optional<std::vector<RationalVector>> exactPlacement;
    std::optional<SimplicialMeta> meta;
    std::optional<Tower> tower;                             // families that come with natural stages
};

struct FamilyInfo {
    std::string name;
    std::string params;  // "key=default,..." in the order generate() reads them
    std::string summary;
};

const std::vector<FamilyInfo>& catalog_families();

// params: string values keyed by name; unknown keys are an input error.
CatalogEntry generate(const std::string& family, const std::map<std::string, std::string>& params = {});

CatalogEntry complete_family(int n);
CatalogEntry cycle_family(int n);

// Two K5-minus-an-edge bananas sharing the two vertices of the missing edge.
CatalogEntry double_banana();

// Stages G_1..G_k, each adding a banana on three new vertices hung from two
// anchors of earlier stages. k = 1 is the double banana.
CatalogEntry banana_tower(int stages);

enum class StripPlacement { Radial, Periodic };

struct StripOptions {
    StripPlacement placement = StripPlacement::Periodic;
    double top = 2.0;     // periodic: height of the top row
    double middle = 0.8;  // periodic: height of the middle row
};

// Base row made rigid by a triangulated ladder below it; cell k adds a top
// vertex t_k and a middle vertex m_k joined t_k r_{k-1}, t_k m_k, m_k c_k and
// m_{k-1} t_k. Stages of the tower are the prefixes by cell.
CatalogEntry strip(int cells, const StripOptions& opt = {});

enum class WhirlpoolMap { Similarity, Symmetric };

// Nested squares joined by spokes; layers = number of spoke rings. Vertex
// 4j+i is corner i of square j. p_{k+4} = A p_k with A the similarity taking
// the outer square onto the inner one, or the matrix (1/3)[[1,2],[2,1]].
CatalogEntry whirlpool(int layers, WhirlpoolMap map = WhirlpoolMap::Similarity);

struct WhirlpoolBlocks {
    RationalMatrix r1, r2, x;  // 4 x 8 each
};
WhirlpoolBlocks whirlpool_blocks(int layers = 2);

// Velocity b of the inner square making (a, b) a flex of the 8-vertex
// framework; nullopt if no extension exists.
std::optional<RationalVector> whirlpool_flex_extension(const RationalVector& a);

CatalogEntry tetra_refined(int levels);
CatalogEntry octa_pointed(int levels, int sides = 4);
CatalogEntry diamond(int levels, int base = 4);
CatalogEntry octahedron();
CatalogEntry icosahedron();

// Triangulated sphere on the given number of vertices (octahedron plus face
// subdivisions) with meta.kappa vertex-disjoint holes of the given lengths.
CatalogEntry simplicial_holes(const SimplicialMeta& meta, int vertices);

// Flexibility dimension of a simplicial graph with holes, d = 3.
int simplicial_flex_dim(const SimplicialMeta& meta, const NormSpec& n);

// Adds three pairwise non-incident non-edges to a triangulated sphere.
SimpleGraph add_shafts(const SimpleGraph& g, int count = 3);

}  // namespace rigidkit
