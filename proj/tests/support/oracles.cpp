#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace oracles {

using Index = Eigen::Index;

std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> brute_force_units(
    const hsync::Hypergraph& h) {
  const std::size_t m = h.num_edges();
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t e = 0; e < m; ++e) {
      if (mask & (std::size_t{1} << e)) subset.push_back(e);
    }
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < h.num_vertices(); ++v) {
      bool in_all = true;
      bool in_other = false;
      for (std::size_t e = 0; e < m; ++e) {
        const auto& mem = h.edge(e).members;
        const bool has = std::find(mem.begin(), mem.end(), v) != mem.end();
        const bool selected = (mask & (std::size_t{1} << e)) != 0;
        if (selected && !has) in_all = false;
        if (!selected && has) in_other = true;
      }
      if (in_all && !in_other) members.push_back(v);
    }
    if (!members.empty()) out.insert({members, subset});
  }
  return out;
}

Eigen::MatrixXd formula_matrix(const hsync::Hypergraph& h) {
  const auto n = static_cast<Index>(h.num_vertices());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Index col = 0; col < n; ++col) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    x[col] = 1.0;
    for (Index v = 0; v < n; ++v) {
      double total = 0.0;
      for (const auto& e : h.edges()) {
        const auto& mem = e.members;
        if (std::find(mem.begin(), mem.end(), static_cast<std::size_t>(v)) == mem.end()) continue;
        const double size = static_cast<double>(mem.size());
        double inner = 0.0;
        for (std::size_t u : mem) inner += x[static_cast<Index>(u)] - x[v];
        total += h.edge_weight(h.edge_index(e.id)) / (h.vertex_weight(static_cast<std::size_t>(v)) * size * size) *
                 inner;
      }
      l(v, col) = total;
    }
  }
  return l;
}

Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a, double tol, int max_sweeps) {
  const Index n = a.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= tol * std::max(1.0, a.norm())) break;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(values.begin(), values.end(), std::greater<>());
  return Eigen::Map<Eigen::VectorXd>(values.data(), n);
}

Eigen::VectorXd operator_eigenvalues(const hsync::Hypergraph& h) {
  const Eigen::MatrixXd l = formula_matrix(h);
  const auto n = static_cast<Index>(h.num_vertices());
  Eigen::MatrixXd s(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      s(i, j) = std::sqrt(h.vertex_weight(static_cast<std::size_t>(i))) * l(i, j) /
                std::sqrt(h.vertex_weight(static_cast<std::size_t>(j)));
    }
  }
  return jacobi_eigenvalues(0.5 * (s + s.transpose()));
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.5) ++squarings;
  const Eigen::MatrixXd scaled = a / std::pow(2.0, squarings);
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd term = result;
  for (int k = 1; k <= 20; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

}  // namespace oracles
