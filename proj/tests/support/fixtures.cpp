#include "fixtures.hpp"

#include <algorithm>
#include <set>

#include "hsync/units.hpp"

namespace fixtures {

using hsync::Hypergraph;
using hsync::RawEdge;
using hsync::RawHypergraph;
using hsync::WeightPreset;

RawHypergraph raw(std::vector<std::string> vertices, const EdgeList& edges, std::optional<WeightPreset> preset) {
  RawHypergraph r;
  r.vertices = std::move(vertices);
  for (const auto& [id, members] : edges) r.edges.push_back({id, members, std::nullopt});
  r.preset = preset;
  return r;
}

Hypergraph make(std::vector<std::string> vertices, const EdgeList& edges, std::optional<WeightPreset> preset) {
  return hsync::validate(raw(std::move(vertices), edges, preset));
}

RawHypergraph h1_raw() { return raw({"1", "2", "3", "4", "5"}, {{"e1", {"1", "2", "3"}}, {"e2", {"3", "4", "5"}}}); }

Hypergraph h1() { return hsync::validate(h1_raw()); }

Hypergraph h4() {
  return make({"1", "2", "3", "4", "5"}, {{"e1", {"1", "2", "3"}}, {"e2", {"3", "4"}}, {"e3", {"4", "5"}}});
}

Hypergraph h5() {
  return make({"1", "2", "3", "4", "5", "6"}, {{"e1", {"1", "2", "5", "6"}}, {"e2", {"3", "4", "5", "6"}}});
}

Hypergraph single_edge() { return make({"a", "b", "c"}, {{"e", {"a", "b", "c"}}}); }

Hypergraph averaging(const Hypergraph& h) {
  RawHypergraph r;
  r.vertices = h.vertex_labels();
  for (const auto& e : h.edges()) {
    std::vector<std::string> members;
    for (std::size_t v : e.members) members.push_back(h.vertex_label(v));
    r.edges.push_back({e.id, members, std::nullopt});
  }
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    r.vertex_weights[h.vertex_label(v)] = static_cast<double>(h.star(v).size());
  }
  r.preset = WeightPreset::CardinalityNormalized;
  return hsync::validate(r);
}

std::string h1_json() {
  return R"({
  "vertices": ["1", "2", "3", "4", "5"],
  "edges": [
    {"id": "e1", "members": ["1", "2", "3"], "delta": 9.0},
    {"id": "e2", "members": ["3", "4", "5"], "delta": 9.0}
  ],
  "vertex_weights": {"1": 1.0, "2": 1.0, "3": 1.0, "4": 1.0, "5": 1.0},
  "weight_preset": "uniform"
}
)";
}

std::string h5_json() {
  return R"({
  "vertices": ["1", "2", "3", "4", "5", "6"],
  "edges": [
    {"id": "e1", "members": ["1", "2", "5", "6"]},
    {"id": "e2", "members": ["3", "4", "5", "6"]}
  ],
  "weight_preset": "uniform"
}
)";
}

namespace {

std::string label(std::size_t i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
}

std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Edge member sets (vertex indices) of a connected hypergraph on n vertices.
std::optional<std::vector<std::vector<std::size_t>>> connected_edges(std::mt19937_64& rng, std::size_t n,
                                                                    const RandomOptions& opts) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);

  std::set<std::vector<std::size_t>> edges;
  std::size_t next = 1;
  while (next < n) {
    if (edges.size() >= opts.max_edges) return std::nullopt;
    const std::size_t k = uniform_int(rng, 2, opts.max_edge_size);
    std::vector<std::size_t> e{order[uniform_int(rng, 0, next - 1)]};
    for (std::size_t j = 1; j < k && next < n; ++j) e.push_back(order[next++]);
    std::sort(e.begin(), e.end());
    edges.insert(e);
  }
  const std::size_t extra = uniform_int(rng, 0, opts.max_edges - edges.size());
  for (std::size_t t = 0; t < extra; ++t) {
    const std::size_t k = uniform_int(rng, 2, std::min(n, opts.max_edge_size));
    std::vector<std::size_t> pool(order);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    edges.insert(pool);
  }
  return std::vector<std::vector<std::size_t>>(edges.begin(), edges.end());
}

}  // namespace

Hypergraph random_connected(std::mt19937_64& rng, const RandomOptions& opts) {
  while (true) {
    const std::size_t n = uniform_int(rng, opts.min_vertices, opts.max_vertices);
    const auto edges = connected_edges(rng, n, opts);
    if (!edges) continue;
    RawHypergraph r;
    for (std::size_t i = 0; i < n; ++i) r.vertices.push_back(label(i));
    for (std::size_t k = 0; k < edges->size(); ++k) {
      RawEdge e;
      e.id = "e" + label(k);
      for (std::size_t v : (*edges)[k]) e.members.push_back(label(v));
      if (opts.random_weights) e.delta = uniform_real(rng, 0.5, 20.0);
      r.edges.push_back(std::move(e));
    }
    if (opts.random_weights) {
      for (const auto& v : r.vertices) r.vertex_weights[v] = uniform_real(rng, 0.5, 2.0);
    } else {
      r.preset = WeightPreset::Uniform;
    }
    return hsync::validate(r);
  }
}

namespace {

RawHypergraph blow_up(const Hypergraph& base, const std::vector<std::size_t>& copies) {
  RawHypergraph r;
  std::vector<std::vector<std::string>> groups(base.num_vertices());
  for (std::size_t v = 0; v < base.num_vertices(); ++v) {
    for (std::size_t j = 0; j < copies[v]; ++j) {
      groups[v].push_back(base.vertex_label(v) + "_" + std::to_string(j));
      r.vertices.push_back(groups[v].back());
    }
  }
  for (const auto& edge : base.edges()) {
    RawEdge e;
    e.id = edge.id;
    for (std::size_t v : edge.members) e.members.insert(e.members.end(), groups[v].begin(), groups[v].end());
    r.edges.push_back(std::move(e));
  }
  return r;
}

}  // namespace

Hypergraph unit_rich(std::mt19937_64& rng, std::size_t max_base, std::size_t max_copies) {
  RandomOptions opts{2, max_base, 5, 4, false};
  const Hypergraph base = random_connected(rng, opts);
  std::vector<std::size_t> copies(base.num_vertices());
  for (auto& c : copies) c = uniform_int(rng, 1, max_copies);
  RawHypergraph r = blow_up(base, copies);
  r.preset = WeightPreset::Uniform;
  return hsync::validate(r);
}

Hypergraph equal_cardinality(std::mt19937_64& rng, std::size_t copies, std::size_t max_base) {
  RandomOptions opts{3, max_base, 5, 4, false};
  while (true) {
    const Hypergraph base = random_connected(rng, opts);
    const auto base_units = hsync::find_units(base);
    if (base_units.size() != base.num_vertices()) continue;  // stars must be distinct

    RawHypergraph r = blow_up(base, std::vector<std::size_t>(base.num_vertices(), copies));
    const auto twins = hsync::find_twins(base, base_units);
    const auto classes = hsync::twin_classes(base_units, twins);

    // delta_V constant on twin classes keeps b_a and c_a constant per class.
    for (const auto& cls : classes) {
      const double w = uniform_real(rng, 0.5, 2.0);
      for (std::size_t u : cls) {
        for (std::size_t j = 0; j < copies; ++j) {
          r.vertex_weights[base.vertex_label(base_units[u].members.front()) + "_" + std::to_string(j)] = w;
        }
      }
    }
    // Twins need sigma-preserving bijections: use one sigma for all edges then.
    const double s = uniform_real(rng, 0.5, 3.0);
    for (auto& e : r.edges) {
      const double size = static_cast<double>(e.members.size());
      e.delta = twins.empty() ? uniform_real(rng, 1.0, 20.0) : s * size * size;
    }
    return hsync::validate(r);
  }
}

}  // namespace fixtures
