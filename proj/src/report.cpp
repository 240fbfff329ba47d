#include "hsync/report.hpp"

#include <cmath>
#include <cstdio>

#include "hsync/error.hpp"
#include "hsync/hypergraph_io.hpp"

namespace hsync::report {

namespace {

using Index = Eigen::Index;

double eigen_residual(const DiffusionOperator& op, const Eigen::VectorXd& z, double lambda) {
  return (op.apply(z) - lambda * z).cwiseAbs().maxCoeff();
}

Json vector_json(const Eigen::VectorXd& x) {
  Json out = Json::array();
  for (Index i = 0; i < x.size(); ++i) out.push_back(x[i]);
  return out;
}

}  // namespace

std::string format_value(double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  std::string s(buf);
  return s == "-0" ? "0" : s;
}

Json vertex_labels(const Hypergraph& h, std::span<const std::size_t> vertices) {
  Json out = Json::array();
  for (std::size_t v : vertices) out.push_back(h.vertex_label(v));
  return out;
}

Json edge_ids(const Hypergraph& h, std::span<const std::size_t> edges) {
  Json out = Json::array();
  for (std::size_t e : edges) out.push_back(h.edge(e).id);
  return out;
}

Json units(const Hypergraph& h, std::span<const Unit> list) {
  Json out = Json::array();
  for (std::size_t u = 0; u < list.size(); ++u) {
    out.push_back({{"id", "U" + std::to_string(u)},
                   {"members", vertex_labels(h, list[u].members)},
                   {"generating_set", edge_ids(h, list[u].generating_set)}});
  }
  return out;
}

Json twins(const Hypergraph& h, std::span<const Unit> list, std::span<const TwinPair> pairs,
           const std::vector<std::vector<std::size_t>>& classes) {
  Json out;
  out["pairs"] = Json::array();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& pair = pairs[p];
    Json bijection = Json::object();
    for (const auto& [a, b] : pair.bijection) bijection[h.edge(a).id] = h.edge(b).id;
    out["pairs"].push_back({{"id", "T" + std::to_string(p)},
                            {"first", vertex_labels(h, pair.first.members)},
                            {"second", vertex_labels(h, pair.second.members)},
                            {"bijection", bijection},
                            {"sigma_preserving", pair.sigma_preserving}});
  }
  out["classes"] = Json::array();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    Json members = Json::array();
    for (std::size_t u : classes[c]) members.push_back(vertex_labels(h, list[u].members));
    out["classes"].push_back({{"id", "C" + std::to_string(c)}, {"units", members}});
  }
  return out;
}

Json contraction(const Hypergraph& h, const Contraction& c) {
  Json out;
  out["quotient"] = to_json(c.quotient);
  Json vmap = Json::object();
  for (std::size_t v = 0; v < h.num_vertices(); ++v) vmap[h.vertex_label(v)] = c.quotient.vertex_label(c.vertex_map[v]);
  Json emap = Json::object();
  for (std::size_t e = 0; e < h.num_edges(); ++e) emap[h.edge(e).id] = c.quotient.edge(c.edge_map[e]).id;
  out["vertex_map"] = vmap;
  out["edge_map"] = emap;
  out["c_v"] = c.c_v;
  out["c_e"] = c.c_e;
  return out;
}

std::string spectrum_csv(const Spectrum& spec) {
  std::string out = "index,eigenvalue\n";
  // Rounding residue around the zero eigenvalue would make the file depend on
  // the eigensolver's last bits.
  const double floor = 1e-12 * std::max(1.0, spec.eigenvalues.cwiseAbs().maxCoeff());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double value = spec.eigenvalues[static_cast<Index>(i)];
    out += std::to_string(i) + "," + format_value(std::abs(value) < floor ? 0.0 : value) + "\n";
  }
  return out;
}

std::string eigenvectors_csv(const Hypergraph& h, const Spectrum& spec) {
  std::string out = "vertex";
  for (std::size_t i = 0; i < spec.size(); ++i) out += ",z" + std::to_string(i);
  out += "\n";
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    out += h.vertex_label(v);
    for (std::size_t i = 0; i < spec.size(); ++i) {
      out += "," + format_value(spec.eigenvectors(static_cast<Index>(v), static_cast<Index>(i)));
    }
    out += "\n";
  }
  return out;
}

Json analytic_eigenpairs(const Hypergraph& h) {
  const auto list = find_units(h);
  const auto pairs = find_twins(h, list);
  const auto op = build_operator(h);
  Json out = Json::array();
  for (std::size_t u = 0; u < list.size(); ++u) {
    if (list[u].size() < 2 || !common_vertex_weight(h, list[u].members)) continue;
    const auto pair = unit_eigenpair(h, list[u]);
    double residual = 0.0;
    for (Index k = 0; k < pair.basis.cols(); ++k) {
      residual = std::max(residual, eigen_residual(op, pair.basis.col(k), pair.eigenvalue));
    }
    out.push_back({{"cluster", "U" + std::to_string(u)},
                   {"kind", "unit"},
                   {"members", vertex_labels(h, list[u].members)},
                   {"eigenvalue", pair.eigenvalue},
                   {"magnitude", -pair.eigenvalue},
                   {"multiplicity", pair.basis.cols()},
                   {"residual", residual}});
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    std::vector<std::size_t> members = pairs[p].first.members;
    members.insert(members.end(), pairs[p].second.members.begin(), pairs[p].second.members.end());
    if (!pairs[p].sigma_preserving || !common_vertex_weight(h, members)) continue;
    const auto pair = twin_eigenpair(h, pairs[p]);
    out.push_back({{"cluster", "T" + std::to_string(p)},
                   {"kind", "twin"},
                   {"members", vertex_labels(h, members)},
                   {"eigenvalue", pair.eigenvalue},
                   {"magnitude", -pair.eigenvalue},
                   {"multiplicity", 1},
                   {"residual", eigen_residual(op, pair.vector, pair.eigenvalue)},
                   {"vector", vector_json(pair.vector)}});
  }
  return out;
}

std::string trajectory_csv(const Hypergraph& h, const Trajectory& traj) {
  std::string out = "t";
  for (const auto& label : h.vertex_labels()) out += "," + label;
  out += "\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out += format_value(traj.times[k]);
    const auto& x = traj.states[k];
    for (Index v = 0; v < x.size(); ++v) out += "," + format_value(x[v]);
    out += "\n";
  }
  return out;
}

Json sync(const Hypergraph& h, const SyncReport& r) {
  Json out;
  out["cluster"] = vertex_labels(h, r.cluster);
  out["tolerance"] = r.tolerance;
  out["synchronized"] = r.asymptotic;
  out["verdict"] = r.asymptotic ? "PASS" : "FAIL";
  out["final_spread"] = r.final_spread;
  out["max_spread"] = r.max_spread;
  std::size_t first_sync = r.times.size();
  for (std::size_t k = r.synchronized_at.size(); k-- > 0;) {
    if (!r.synchronized_at[k]) break;
    first_sync = k;
  }
  if (first_sync < r.times.size()) {
    out["synchronized_from"] = r.times[first_sync];
  } else {
    out["synchronized_from"] = nullptr;
  }
  return out;
}

Json check(const BoundCheck& c) {
  return {{"model", std::string(to_string(c.model))},
          {"lambda", c.lambda},
          {"magnitude", -c.lambda},
          {"lhs", c.lhs},
          {"rhs", c.rhs},
          {"pass", c.pass},
          {"degenerate", c.degenerate}};
}

Json eigenvalue(const EigenvalueEntry& e) {
  return {{"value", e.value},
          {"magnitude", e.magnitude()},
          {"provenance", std::string(to_string(e.provenance))},
          {"source", e.source}};
}

Json stability(const Hypergraph& h, const StabilityReport& r) {
  Json out;
  out["cluster"] = r.cluster;
  out["members"] = vertex_labels(h, r.members);
  out["eigenvalues"] = Json::array();
  for (const auto& e : r.eigenvalues) out["eigenvalues"].push_back(eigenvalue(e));
  out["checks"] = Json::array();
  for (const auto& c : r.checks) out["checks"].push_back(check(c));
  if (r.empirical) {
    Json emp;
    emp["directions"] = r.empirical->directions;
    Json rates = Json::array();
    for (double rate : r.empirical->rates) {
      if (std::isfinite(rate)) {
        rates.push_back(rate);
      } else {
        rates.push_back(nullptr);
      }
    }
    emp["rates"] = rates;
    emp["growth"] = r.empirical->growth;
    emp["verdict"] = std::string(to_string(r.empirical->verdict));
    out["empirical"] = emp;
  } else {
    out["empirical"] = nullptr;
  }
  out["verdict"] = std::string(to_string(r.verdict));
  return out;
}

Json certificate(const CertificateReport& r) {
  Json out;
  out["cluster"] = "V";
  out["unit_cardinality"] = r.unit_cardinality;
  out["scale"] = r.scale;
  out["eigenvalues"] = Json::array();
  for (const auto& e : r.assembled) out["eigenvalues"].push_back(eigenvalue(e));
  out["twin_class_values"] = Json::array();
  for (const auto& e : r.twin_class_values) out["twin_class_values"].push_back(eigenvalue(e));
  out["direct_spectrum"] = vector_json(r.direct);
  out["max_mismatch"] = r.max_mismatch;
  out["checks"] = Json::array();
  for (const auto& c : r.checks) out["checks"].push_back(check(c));
  out["verdict"] = std::string(to_string(r.verdict));
  return out;
}

}  // namespace hsync::report
