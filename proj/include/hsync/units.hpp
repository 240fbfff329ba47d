#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hsync/hypergraph.hpp"

namespace hsync {

/// A unit is the set of all vertices sharing one star. Its generating set is
/// that star. Units partition V(H).
struct Unit {
  std::vector<std::size_t> members;         // vertex indices, ascending
  std::vector<std::size_t> generating_set;  // edge indices, ascending

  std::size_t size() const { return members.size(); }
  friend bool operator==(const Unit&, const Unit&) = default;
};

/// Two units whose generating sets can be matched edge by edge with equal
/// residues e \ W. `bijection` pairs each edge of first's generating set with
/// its match in second's.
struct TwinPair {
  std::size_t first_index = 0;   // position in the unit list
  std::size_t second_index = 0;
  Unit first;
  Unit second;
  std::vector<std::pair<std::size_t, std::size_t>> bijection;
  bool sigma_preserving = false;
};

/// Units sorted by smallest member.
std::vector<Unit> find_units(const Hypergraph& h);

/// unit index of every vertex
std::vector<std::size_t> unit_of_vertex(const Hypergraph& h, std::span<const Unit> units);

/// All twin pairs (i < j) among `units`, in lexicographic (i, j) order.
std::vector<TwinPair> find_twins(const Hypergraph& h, std::span<const Unit> units);

/// Partition of unit indices into maximal classes linked by sigma-preserving
/// twin bijections. Throws NonTransitiveTwinRelation when a class found by
/// chaining is not pairwise twin.
std::vector<std::vector<std::size_t>> twin_classes(const Hypergraph& h);
std::vector<std::vector<std::size_t>> twin_classes(std::span<const Unit> units,
                                                   std::span<const TwinPair> twins);

/// How a vertex set qualifies as a synchronization-preserving cluster.
enum class ClusterKind {
  UnitSubset,      // >= 2 vertices inside one unit
  TwinCollection,  // union of >= 2 whole units, pairwise sigma-preserving twins
};

struct ClusterClassification {
  ClusterKind kind;
  std::vector<std::size_t> units;  // unit indices involved
};

/// Structural check only; vertex weights are not inspected. Throws
/// ClusterTooSmall or HypothesisViolated.
ClusterClassification classify_cluster(const Hypergraph& h, std::span<const std::size_t> cluster);

/// Quotient hypergraph with one vertex per unit.
struct Contraction {
  Hypergraph quotient;
  std::vector<Unit> units;                 // units of the original, canonical order
  std::vector<std::size_t> vertex_map;     // vertex of H -> vertex of the quotient
  std::vector<std::size_t> edge_map;       // edge of H -> edge of the quotient
  std::vector<std::size_t> unit_of_quotient_vertex;
  std::vector<double> lifted_sigma;        // per quotient edge: sum of sigma_H over its preimage
  double c_v = 1.0;
  double c_e = 1.0;
};

/// Collapses every unit to one vertex. Quotient weights:
///   sigma(e^) = (1/c_e) * sum of sigma_H over the preimage of e^
///   delta_E(e^) = sigma(e^) * |e^|^2
///   delta_V(pi(v)) = delta_V(v) / c_v
/// Throws InconsistentVertexWeight when delta_V varies within a unit and
/// DegenerateContraction when H is a single unit.
Contraction contract(const Hypergraph& h, double c_v = 1.0, double c_e = 1.0);

/// y on V(quotient) -> y(pi(v)) / |unit of v| on V(H).
Eigen::VectorXd lift_to_original(const Contraction& contraction, const Eigen::VectorXd& y);

}  // namespace hsync
