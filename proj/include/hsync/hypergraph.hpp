#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hsync {

/// Relative tolerance used when comparing weights that come straight from
/// input data (one division away from the file).
inline constexpr double kWeightTolerance = 1e-12;

bool nearly_equal(double a, double b, double rel_tol = kWeightTolerance);

/// Named weight configurations. Explicit weights in the input always win
/// over the preset.
///
///   uniform                 delta_V = 1,        delta_E(e) = |e|^2
///   cardinality-normalized  delta_V = 1,        delta_E(e) = |e|^2 / (|e| - 1)
///   degree-vertex           delta_V(v) = |E_v|, delta_E(e) = |e|^2
enum class WeightPreset { Uniform, CardinalityNormalized, DegreeVertex };

std::string_view to_string(WeightPreset preset);
WeightPreset parse_weight_preset(std::string_view name);

struct RawEdge {
  std::string id;
  std::vector<std::string> members;
  std::optional<double> delta;
};

/// Unvalidated hypergraph as read from input. `validate` turns it into a
/// Hypergraph or throws.
struct RawHypergraph {
  std::vector<std::string> vertices;
  std::vector<RawEdge> edges;
  std::map<std::string, double> vertex_weights;
  std::optional<WeightPreset> preset;
};

struct Hyperedge {
  std::string id;
  std::vector<std::size_t> members;  // sorted vertex indices

  std::size_t size() const { return members.size(); }
  bool contains(std::size_t v) const;
};

/// Finite, loop-free, connected hypergraph with positive vertex and edge
/// weights. Vertices are indexed in lexicographic label order and edges in
/// lexicographic id order; every matrix and report downstream uses these
/// indices. Instances are immutable and only produced by `validate`.
class Hypergraph {
 public:
  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<std::string>& vertex_labels() const { return labels_; }
  const std::string& vertex_label(std::size_t v) const { return labels_.at(v); }
  std::optional<std::size_t> find_vertex(std::string_view label) const;
  std::size_t vertex_index(std::string_view label) const;

  const std::vector<Hyperedge>& edges() const { return edges_; }
  const Hyperedge& edge(std::size_t e) const { return edges_.at(e); }
  std::optional<std::size_t> find_edge(std::string_view id) const;
  std::size_t edge_index(std::string_view id) const;

  double vertex_weight(std::size_t v) const { return vertex_weights_.at(v); }
  double edge_weight(std::size_t e) const { return edge_weights_.at(e); }
  const std::vector<double>& vertex_weights() const { return vertex_weights_; }
  const std::vector<double>& edge_weights() const { return edge_weights_; }

  /// sigma_H(e) = delta_E(e) / |e|^2
  double sigma(std::size_t e) const;
  /// rho_H(e) = delta_E(e) / |e|
  double rho(std::size_t e) const;

  /// Edge indices of E_v(H), ascending.
  const std::vector<std::size_t>& star(std::size_t v) const { return stars_.at(v); }
  /// Edge ids of E_v(H) for a vertex given by label.
  std::vector<std::string> star(std::string_view label) const;

  /// (rk(H), cr(H)) = (max |e|, min |e|).
  std::pair<std::size_t, std::size_t> rank_corank() const;

  std::optional<WeightPreset> preset() const { return preset_; }

  /// Raw form with every weight spelled out explicitly.
  RawHypergraph to_raw() const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b);

 private:
  friend Hypergraph validate(const RawHypergraph& raw);
  Hypergraph() = default;

  std::vector<std::string> labels_;
  std::map<std::string, std::size_t, std::less<>> label_index_;
  std::vector<Hyperedge> edges_;
  std::map<std::string, std::size_t, std::less<>> edge_index_;
  std::vector<double> vertex_weights_;
  std::vector<double> edge_weights_;
  std::vector<std::vector<std::size_t>> stars_;
  std::optional<WeightPreset> preset_;
};

/// Checks, in order: nonempty vertex set, labels, edge membership, loops,
/// duplicate member sets, weights, isolated vertices, connectivity.
Hypergraph validate(const RawHypergraph& raw);

/// The common delta_V value over `vertices`, or nullopt when it varies
/// (relative tolerance kWeightTolerance).
std::optional<double> common_vertex_weight(const Hypergraph& h,
                                           std::span<const std::size_t> vertices);

/// Vertex indices for a list of labels, sorted and deduplicated.
std::vector<std::size_t> resolve_vertices(const Hypergraph& h,
                                          std::span<const std::string> labels);

}  // namespace hsync
