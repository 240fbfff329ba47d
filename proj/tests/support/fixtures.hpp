#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hsync/hypergraph.hpp"

namespace fixtures {

using EdgeList = std::vector<std::pair<std::string, std::vector<std::string>>>;

hsync::RawHypergraph raw(std::vector<std::string> vertices, const EdgeList& edges,
                         std::optional<hsync::WeightPreset> preset = hsync::WeightPreset::Uniform);

hsync::Hypergraph make(std::vector<std::string> vertices, const EdgeList& edges,
                       std::optional<hsync::WeightPreset> preset = hsync::WeightPreset::Uniform);

/// V={1..5}, e1={1,2,3}, e2={3,4,5}
hsync::RawHypergraph h1_raw();
hsync::Hypergraph h1();
/// V={1..5}, e1={1,2,3}, e2={3,4}, e3={4,5}
hsync::Hypergraph h4();
/// V={1..6}, e1={1,2,5,6}, e2={3,4,5,6}
hsync::Hypergraph h5();
/// V={a,b,c}, e={a,b,c}
hsync::Hypergraph single_edge();

/// Same structure with delta_E = |e|^2/(|e|-1) and delta_V = |E_v|. Then
/// L(v,v) = -1 at every vertex, so I + eps L is row-stochastic for eps <= 1
/// and the logistic interval [0,1] is invariant under the discrete step.
hsync::Hypergraph averaging(const hsync::Hypergraph& h);

std::string h1_json();
std::string h5_json();

struct RandomOptions {
  std::size_t min_vertices = 2;
  std::size_t max_vertices = 12;
  std::size_t max_edges = 6;
  std::size_t max_edge_size = 5;
  bool random_weights = true;
};

/// Connected hypergraph: a chain of edges that covers every vertex, then
/// extra random edges, no duplicates, edge count <= max_edges.
hsync::Hypergraph random_connected(std::mt19937_64& rng, const RandomOptions& opts);

/// Random connected base hypergraph with every vertex replaced by a group of
/// 1..max_copies vertices. Uniform weights, so twins are sigma-preserving
/// whenever their edges have equal size.
hsync::Hypergraph unit_rich(std::mt19937_64& rng, std::size_t max_base = 6, std::size_t max_copies = 3);

/// Every vertex of a base hypergraph with pairwise distinct stars blown up
/// into exactly `copies` vertices. delta_V is random per unit and delta_E
/// random per edge; candidates whose twins are not sigma-preserving are
/// redrawn.
hsync::Hypergraph equal_cardinality(std::mt19937_64& rng, std::size_t copies, std::size_t max_base = 6);

}  // namespace fixtures
