#include "hsync/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hsync/error.hpp"

namespace hsync {

bool nearly_equal(double a, double b, double rel_tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= rel_tol * scale;
}

std::string_view to_string(WeightPreset preset) {
  switch (preset) {
    case WeightPreset::Uniform: return "uniform";
    case WeightPreset::CardinalityNormalized: return "cardinality-normalized";
    case WeightPreset::DegreeVertex: return "degree-vertex";
  }
  return "uniform";
}

WeightPreset parse_weight_preset(std::string_view name) {
  if (name == "uniform") return WeightPreset::Uniform;
  if (name == "cardinality-normalized") return WeightPreset::CardinalityNormalized;
  if (name == "degree-vertex") return WeightPreset::DegreeVertex;
  throw Error(ErrorKind::UnknownPreset, "unknown weight preset '" + std::string(name) + "'");
}

bool Hyperedge::contains(std::size_t v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

std::optional<std::size_t> Hypergraph::find_vertex(std::string_view label) const {
  auto it = label_index_.find(label);
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Hypergraph::vertex_index(std::string_view label) const {
  if (auto v = find_vertex(label)) return *v;
  throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + std::string(label) + "'");
}

std::optional<std::size_t> Hypergraph::find_edge(std::string_view id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Hypergraph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw Error(ErrorKind::UnknownEdge, "unknown edge '" + std::string(id) + "'");
}

double Hypergraph::sigma(std::size_t e) const {
  const double n = static_cast<double>(edge(e).size());
  return edge_weights_.at(e) / (n * n);
}

double Hypergraph::rho(std::size_t e) const {
  return edge_weights_.at(e) / static_cast<double>(edge(e).size());
}

std::vector<std::string> Hypergraph::star(std::string_view label) const {
  std::vector<std::string> ids;
  for (std::size_t e : star(vertex_index(label))) ids.push_back(edges_[e].id);
  return ids;
}

std::pair<std::size_t, std::size_t> Hypergraph::rank_corank() const {
  std::size_t rank = 0;
  std::size_t corank = edges_.front().size();
  for (const auto& e : edges_) {
    rank = std::max(rank, e.size());
    corank = std::min(corank, e.size());
  }
  return {rank, corank};
}

RawHypergraph Hypergraph::to_raw() const {
  RawHypergraph raw;
  raw.vertices = labels_;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    RawEdge edge{edges_[e].id, {}, edge_weights_[e]};
    for (std::size_t v : edges_[e].members) edge.members.push_back(labels_[v]);
    raw.edges.push_back(std::move(edge));
  }
  for (std::size_t v = 0; v < labels_.size(); ++v) raw.vertex_weights[labels_[v]] = vertex_weights_[v];
  raw.preset = preset_;
  return raw;
}

bool operator==(const Hypergraph& a, const Hypergraph& b) {
  if (a.labels_ != b.labels_ || a.vertex_weights_ != b.vertex_weights_ ||
      a.edge_weights_ != b.edge_weights_ || a.edges_.size() != b.edges_.size()) {
    return false;
  }
  for (std::size_t e = 0; e < a.edges_.size(); ++e) {
    if (a.edges_[e].id != b.edges_[e].id || a.edges_[e].members != b.edges_[e].members) return false;
  }
  return true;
}

namespace {

double default_edge_weight(WeightPreset preset, std::size_t size) {
  const double n = static_cast<double>(size);
  if (preset == WeightPreset::CardinalityNormalized) return n * n / (n - 1.0);
  return n * n;
}

void require_positive(double w, const std::string& what) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw Error(ErrorKind::NonPositiveWeight, what + " must be a positive finite number");
  }
}

}  // namespace

Hypergraph validate(const RawHypergraph& raw) {
  if (raw.vertices.empty()) throw Error(ErrorKind::EmptyVertexSet, "hypergraph has no vertices");

  Hypergraph h;
  h.labels_ = raw.vertices;
  std::sort(h.labels_.begin(), h.labels_.end());
  for (std::size_t v = 0; v < h.labels_.size(); ++v) {
    if (h.labels_[v].empty()) throw Error(ErrorKind::EmptyLabel, "vertex label is empty");
    if (v > 0 && h.labels_[v] == h.labels_[v - 1]) {
      throw Error(ErrorKind::DuplicateVertex, "vertex '" + h.labels_[v] + "' listed twice");
    }
    h.label_index_.emplace(h.labels_[v], v);
  }

  std::vector<const RawEdge*> raw_edges;
  for (const auto& e : raw.edges) raw_edges.push_back(&e);
  std::sort(raw_edges.begin(), raw_edges.end(),
            [](const RawEdge* a, const RawEdge* b) { return a->id < b->id; });

  std::set<std::vector<std::size_t>> member_sets;
  for (const RawEdge* raw_edge : raw_edges) {
    if (raw_edge->id.empty()) throw Error(ErrorKind::EmptyLabel, "edge id is empty");
    if (!h.edge_index_.emplace(raw_edge->id, h.edges_.size()).second) {
      throw Error(ErrorKind::DuplicateEdgeId, "edge id '" + raw_edge->id + "' used twice");
    }
    Hyperedge edge{raw_edge->id, {}};
    for (const auto& label : raw_edge->members) {
      auto v = h.find_vertex(label);
      if (!v) {
        throw Error(ErrorKind::UnknownVertexInEdge,
                    "edge '" + raw_edge->id + "' references unknown vertex '" + label + "'");
      }
      edge.members.push_back(*v);
    }
    std::sort(edge.members.begin(), edge.members.end());
    if (std::adjacent_find(edge.members.begin(), edge.members.end()) != edge.members.end()) {
      throw Error(ErrorKind::DuplicateVertex, "edge '" + raw_edge->id + "' lists a vertex twice");
    }
    if (edge.members.size() < 2) {
      throw Error(ErrorKind::LoopEdge, "edge '" + raw_edge->id + "' has fewer than two members");
    }
    if (!member_sets.insert(edge.members).second) {
      throw Error(ErrorKind::DuplicateEdge,
                  "edge '" + raw_edge->id + "' repeats the member set of another edge");
    }
    h.edges_.push_back(std::move(edge));
  }

  h.stars_.assign(h.labels_.size(), {});
  for (std::size_t e = 0; e < h.edges_.size(); ++e) {
    for (std::size_t v : h.edges_[e].members) h.stars_[v].push_back(e);
  }

  const WeightPreset preset = raw.preset.value_or(WeightPreset::Uniform);
  h.preset_ = raw.preset;
  for (std::size_t e = 0; e < h.edges_.size(); ++e) {
    const double w = raw_edges[e]->delta.value_or(default_edge_weight(preset, h.edges_[e].size()));
    require_positive(w, "weight of edge '" + h.edges_[e].id + "'");
    h.edge_weights_.push_back(w);
  }
  for (const auto& [label, w] : raw.vertex_weights) {
    if (!h.find_vertex(label)) {
      throw Error(ErrorKind::UnknownVertex, "vertex weight given for unknown vertex '" + label + "'");
    }
  }
  for (std::size_t v = 0; v < h.labels_.size(); ++v) {
    double w = preset == WeightPreset::DegreeVertex ? static_cast<double>(h.stars_[v].size()) : 1.0;
    if (auto it = raw.vertex_weights.find(h.labels_[v]); it != raw.vertex_weights.end()) w = it->second;
    if (h.stars_[v].empty()) {
      throw Error(ErrorKind::IsolatedVertex, "vertex '" + h.labels_[v] + "' lies in no edge");
    }
    require_positive(w, "weight of vertex '" + h.labels_[v] + "'");
    h.vertex_weights_.push_back(w);
  }

  // Breadth-first search over the vertex-edge incidence structure.
  std::vector<bool> seen_vertex(h.labels_.size(), false);
  std::vector<bool> seen_edge(h.edges_.size(), false);
  std::vector<std::size_t> frontier{0};
  seen_vertex[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t v = frontier.back();
    frontier.pop_back();
    for (std::size_t e : h.stars_[v]) {
      if (seen_edge[e]) continue;
      seen_edge[e] = true;
      for (std::size_t u : h.edges_[e].members) {
        if (!seen_vertex[u]) {
          seen_vertex[u] = true;
          ++reached;
          frontier.push_back(u);
        }
      }
    }
  }
  if (reached != h.labels_.size()) {
    throw Error(ErrorKind::Disconnected, "hypergraph is not connected (" + std::to_string(reached) +
                                             " of " + std::to_string(h.labels_.size()) +
                                             " vertices reachable from '" + h.labels_[0] + "')");
  }
  return h;
}

std::optional<double> common_vertex_weight(const Hypergraph& h,
                                           std::span<const std::size_t> vertices) {
  if (vertices.empty()) return std::nullopt;
  const double c = h.vertex_weight(vertices.front());
  for (std::size_t v : vertices) {
    if (!nearly_equal(h.vertex_weight(v), c)) return std::nullopt;
  }
  return c;
}

std::vector<std::size_t> resolve_vertices(const Hypergraph& h,
                                          std::span<const std::string> labels) {
  std::vector<std::size_t> out;
  for (const auto& label : labels) out.push_back(h.vertex_index(label));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hsync
