#include "hsync/units.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "hsync/error.hpp"

namespace hsync {

namespace {

using VertexSet = std::vector<std::size_t>;

VertexSet residue(const Hyperedge& edge, const Unit& unit) {
  VertexSet out;
  std::set_difference(edge.members.begin(), edge.members.end(), unit.members.begin(),
                      unit.members.end(), std::back_inserter(out));
  return out;
}

/// Residue -> edge, for one generating set. Residues of distinct edges in a
/// generating set differ because each such edge contains the whole unit.
std::map<VertexSet, std::size_t> residue_table(const Hypergraph& h, const Unit& unit) {
  std::map<VertexSet, std::size_t> table;
  for (std::size_t e : unit.generating_set) {
    if (!table.emplace(residue(h.edge(e), unit), e).second) {
      throw Error(ErrorKind::NoCanonicalBijection,
                  "two edges of one generating set share the residue of edge '" + h.edge(e).id + "'");
    }
  }
  return table;
}

std::string quotient_label(const Hypergraph& h, const Unit& unit, const std::string& sep) {
  std::string label = "u";
  for (std::size_t i = 0; i < unit.members.size(); ++i) {
    if (i > 0) label += sep;
    label += h.vertex_label(unit.members[i]);
  }
  return label;
}

}  // namespace

std::vector<Unit> find_units(const Hypergraph& h) {
  std::map<std::vector<std::size_t>, std::size_t> by_star;
  std::vector<Unit> units;
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    auto [it, inserted] = by_star.emplace(h.star(v), units.size());
    if (inserted) units.push_back(Unit{{}, h.star(v)});
    units[it->second].members.push_back(v);
  }
  return units;
}

std::vector<std::size_t> unit_of_vertex(const Hypergraph& h, std::span<const Unit> units) {
  std::vector<std::size_t> out(h.num_vertices(), 0);
  for (std::size_t u = 0; u < units.size(); ++u) {
    for (std::size_t v : units[u].members) out[v] = u;
  }
  return out;
}

std::vector<TwinPair> find_twins(const Hypergraph& h, std::span<const Unit> units) {
  std::vector<std::map<VertexSet, std::size_t>> tables;
  tables.reserve(units.size());
  for (const auto& unit : units) tables.push_back(residue_table(h, unit));

  std::vector<TwinPair> twins;
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      const auto& a = tables[i];
      const auto& b = tables[j];
      if (a.size() != b.size()) continue;
      if (!std::equal(a.begin(), a.end(), b.begin(),
                      [](const auto& x, const auto& y) { return x.first == y.first; })) {
        continue;
      }
      TwinPair pair{i, j, units[i], units[j], {}, true};
      for (std::size_t e : units[i].generating_set) {
        const std::size_t f = b.at(residue(h.edge(e), units[i]));
        pair.bijection.emplace_back(e, f);
        if (!nearly_equal(h.sigma(e), h.sigma(f))) pair.sigma_preserving = false;
      }
      twins.push_back(std::move(pair));
    }
  }
  return twins;
}

std::vector<std::vector<std::size_t>> twin_classes(std::span<const Unit> units,
                                                   std::span<const TwinPair> twins) {
  const std::size_t n = units.size();
  std::vector<std::vector<bool>> linked(n, std::vector<bool>(n, false));
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& pair : twins) {
    if (!pair.sigma_preserving) continue;
    linked[pair.first_index][pair.second_index] = linked[pair.second_index][pair.first_index] = true;
    const std::size_t a = find(pair.first_index);
    const std::size_t b = find(pair.second_index);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::map<std::size_t, std::vector<std::size_t>> grouped;
  for (std::size_t i = 0; i < n; ++i) grouped[find(i)].push_back(i);

  std::vector<std::vector<std::size_t>> classes;
  for (auto& [root, members] : grouped) {
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        if (!linked[members[x]][members[y]]) {
          throw Error(ErrorKind::NonTransitiveTwinRelation,
                      "units " + std::to_string(members[x]) + " and " + std::to_string(members[y]) +
                          " are joined by a chain of sigma-preserving twins but are not twins");
        }
      }
    }
    classes.push_back(std::move(members));
  }
  return classes;
}

std::vector<std::vector<std::size_t>> twin_classes(const Hypergraph& h) {
  const auto units = find_units(h);
  const auto twins = find_twins(h, units);
  return twin_classes(units, twins);
}

ClusterClassification classify_cluster(const Hypergraph& h, std::span<const std::size_t> cluster) {
  if (cluster.size() < 2) {
    throw Error(ErrorKind::ClusterTooSmall, "a cluster needs at least two vertices");
  }
  const auto units = find_units(h);
  const auto owner = unit_of_vertex(h, units);

  std::vector<std::size_t> touched;
  for (std::size_t v : cluster) touched.push_back(owner.at(v));
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  if (touched.size() == 1) return {ClusterKind::UnitSubset, touched};

  std::size_t covered = 0;
  for (std::size_t u : touched) covered += units[u].size();
  if (covered != cluster.size()) {
    throw Error(ErrorKind::HypothesisViolated,
                "cluster spans several units but does not contain each of them entirely");
  }
  const auto twins = find_twins(h, units);
  for (std::size_t x = 0; x < touched.size(); ++x) {
    for (std::size_t y = x + 1; y < touched.size(); ++y) {
      auto it = std::find_if(twins.begin(), twins.end(), [&](const TwinPair& p) {
        return p.first_index == touched[x] && p.second_index == touched[y];
      });
      if (it == twins.end()) {
        throw Error(ErrorKind::HypothesisViolated, "cluster contains units that are not twins");
      }
      if (!it->sigma_preserving) {
        throw Error(ErrorKind::HypothesisViolated,
                    "cluster contains twin units whose canonical bijection is not sigma-preserving");
      }
    }
  }
  return {ClusterKind::TwinCollection, touched};
}

Contraction contract(const Hypergraph& h, double c_v, double c_e) {
  if (!(c_v > 0.0) || !(c_e > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "contraction scalings c_V and c_E must be positive");
  }
  std::vector<Unit> units = find_units(h);
  if (units.size() < 2) {
    throw Error(ErrorKind::DegenerateContraction,
                "hypergraph consists of a single unit; its contraction has no edges");
  }

  // Unit labels: "u" + member labels; separated by '_' if plain concatenation collides.
  std::vector<std::string> labels;
  for (const std::string sep : {"", "_"}) {
    labels.clear();
    for (const auto& unit : units) labels.push_back(quotient_label(h, unit, sep));
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() == labels.size()) break;
  }

  RawHypergraph raw;
  raw.vertices = labels;
  for (std::size_t u = 0; u < units.size(); ++u) {
    const auto weight = common_vertex_weight(h, units[u].members);
    if (!weight) {
      throw Error(ErrorKind::InconsistentVertexWeight,
                  "vertex weight varies within unit " + labels[u]);
    }
    raw.vertex_weights[labels[u]] = *weight / c_v;
  }

  const auto owner = unit_of_vertex(h, units);
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> preimages;  // image -> edges of H
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    std::vector<std::size_t> image;
    for (std::size_t v : h.edge(e).members) image.push_back(owner[v]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (image.size() < 2) {
      throw Error(ErrorKind::LoopInContraction,
                  "edge '" + h.edge(e).id + "' collapses onto a single unit");
    }
    preimages[image].push_back(e);
  }

  for (const auto& [image, edges] : preimages) {
    RawEdge edge;
    double sigma_sum = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i > 0) edge.id += "+";
      edge.id += h.edge(edges[i]).id;
      sigma_sum += h.sigma(edges[i]);
    }
    for (std::size_t u : image) edge.members.push_back(labels[u]);
    const double size = static_cast<double>(image.size());
    edge.delta = sigma_sum / c_e * size * size;
    raw.edges.push_back(std::move(edge));
  }
  Contraction out{validate(raw), std::move(units), {}, {}, {}, {}, c_v, c_e};

  out.unit_of_quotient_vertex.assign(out.units.size(), 0);
  std::vector<std::size_t> quotient_vertex_of_unit(out.units.size());
  for (std::size_t u = 0; u < out.units.size(); ++u) {
    quotient_vertex_of_unit[u] = out.quotient.vertex_index(labels[u]);
    out.unit_of_quotient_vertex[quotient_vertex_of_unit[u]] = u;
  }
  out.vertex_map.resize(h.num_vertices());
  for (std::size_t v = 0; v < h.num_vertices(); ++v) out.vertex_map[v] = quotient_vertex_of_unit[owner[v]];

  out.edge_map.resize(h.num_edges());
  out.lifted_sigma.assign(out.quotient.num_edges(), 0.0);
  for (const auto& [image, edges] : preimages) {
    std::vector<std::string> members;
    for (std::size_t u : image) members.push_back(labels[u]);
    const auto qv = resolve_vertices(out.quotient, members);
    std::size_t target = 0;
    for (std::size_t qe = 0; qe < out.quotient.num_edges(); ++qe) {
      if (out.quotient.edge(qe).members == qv) target = qe;
    }
    for (std::size_t e : edges) {
      out.edge_map[e] = target;
      out.lifted_sigma[target] += h.sigma(e);
    }
  }
  return out;
}

Eigen::VectorXd lift_to_original(const Contraction& contraction, const Eigen::VectorXd& y) {
  if (static_cast<std::size_t>(y.size()) != contraction.quotient.num_vertices()) {
    throw Error(ErrorKind::DomainMismatch, "function is not defined on the quotient vertex set");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(contraction.vertex_map.size()));
  for (std::size_t v = 0; v < contraction.vertex_map.size(); ++v) {
    const std::size_t q = contraction.vertex_map[v];
    const double size = static_cast<double>(contraction.units[contraction.unit_of_quotient_vertex[q]].size());
    out[static_cast<Eigen::Index>(v)] = y[static_cast<Eigen::Index>(q)] / size;
  }
  return out;
}

}  // namespace hsync
