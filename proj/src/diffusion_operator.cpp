#include "hsync/diffusion_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hsync/error.hpp"

namespace hsync {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

void require_domain(std::size_t expected, Index actual, const char* what) {
  if (static_cast<std::size_t>(actual) != expected) {
    throw Error(ErrorKind::DomainMismatch, std::string(what) + " has " + std::to_string(actual) +
                                               " entries, expected " + std::to_string(expected));
  }
}

}  // namespace

DiffusionOperator build_operator(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  DiffusionOperator op{Eigen::MatrixXd::Zero(idx(n), idx(n)), Eigen::VectorXd(idx(n))};
  for (std::size_t v = 0; v < n; ++v) op.vertex_weights[idx(v)] = h.vertex_weight(v);

  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const auto& members = h.edge(e).members;
    const double s = h.sigma(e);
    const double degree = static_cast<double>(members.size()) - 1.0;
    for (std::size_t v : members) {
      const double scale = s / h.vertex_weight(v);
      op.matrix(idx(v), idx(v)) -= scale * degree;
      for (std::size_t u : members) {
        if (u != v) op.matrix(idx(v), idx(u)) += scale;
      }
    }
  }
  return op;
}

VertexFunction apply_diffusion(const Hypergraph& h, const VertexFunction& x) {
  require_domain(h.num_vertices(), x.size(), "vertex function");
  VertexFunction out(x.size());
  std::vector<double> inner;
  std::vector<double> outer;
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    const double xv = x[idx(v)];
    outer.clear();
    for (std::size_t e : h.star(v)) {
      inner.clear();
      for (std::size_t u : h.edge(e).members) inner.push_back(x[idx(u)] - xv);
      outer.push_back(h.sigma(e) * sorted_sum(inner));
    }
    out[idx(v)] = sorted_sum(outer) / h.vertex_weight(v);
  }
  return out;
}

double inner_product_v(const Eigen::VectorXd& weights, const VertexFunction& x, const VertexFunction& y) {
  require_domain(static_cast<std::size_t>(weights.size()), x.size(), "first argument");
  require_domain(static_cast<std::size_t>(weights.size()), y.size(), "second argument");
  return (weights.array() * x.array() * y.array()).sum();
}

double inner_product_v(const Hypergraph& h, const VertexFunction& x, const VertexFunction& y) {
  return inner_product_v(Eigen::Map<const Eigen::VectorXd>(h.vertex_weights().data(), idx(h.num_vertices())),
                         x, y);
}

double inner_product_e(const Hypergraph& h, const EdgeFunction& b, const EdgeFunction& g) {
  require_domain(h.num_edges(), b.size(), "first argument");
  require_domain(h.num_edges(), g.size(), "second argument");
  const Eigen::Map<const Eigen::VectorXd> w(h.edge_weights().data(), idx(h.num_edges()));
  return (w.array() * b.array() * g.array()).sum();
}

VertexFunction indicator(const Hypergraph& h, std::span<const std::size_t> vertices) {
  VertexFunction chi = VertexFunction::Zero(idx(h.num_vertices()));
  for (std::size_t v : vertices) chi[idx(v)] = 1.0;
  return chi;
}

Spectrum spectrum(const DiffusionOperator& op) {
  const Index n = op.matrix.rows();
  const Eigen::VectorXd root = op.vertex_weights.array().sqrt();
  Eigen::MatrixXd sym = root.asDiagonal() * op.matrix * root.cwiseInverse().asDiagonal();
  sym = 0.5 * (sym + sym.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "symmetric eigensolver did not converge");
  }

  Spectrum out;
  out.vertex_weights = op.vertex_weights;
  Eigen::VectorXd values = solver.eigenvalues().reverse();
  Eigen::MatrixXd vectors = root.cwiseInverse().asDiagonal() * solver.eigenvectors().rowwise().reverse();

  for (Index j = 0; j < n; ++j) {
    auto col = vectors.col(j);
    const double floor = 1e-12 * col.cwiseAbs().maxCoeff();
    for (Index i = 0; i < n; ++i) {
      if (std::abs(col[i]) > floor) {
        if (col[i] < 0.0) col = -col;
        break;
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const double scale = std::max(1.0, n > 0 ? values.cwiseAbs().maxCoeff() : 1.0);
  auto lex_less = [&](Index a, Index b) {
    for (Index i = 0; i < n; ++i) {
      if (vectors(i, a) != vectors(i, b)) return vectors(i, a) < vectors(i, b);
    }
    return false;
  };
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start + 1;
    while (end < order.size() && std::abs(values[order[end]] - values[order[start]]) <= 1e-9 * scale) ++end;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
              order.begin() + static_cast<std::ptrdiff_t>(end), lex_less);
    start = end;
  }

  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    out.eigenvalues[j] = values[order[static_cast<std::size_t>(j)]];
    out.eigenvectors.col(j) = vectors.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

UnitEigenpair unit_eigenpair(const Hypergraph& h, const Unit& unit) {
  if (unit.size() < 2) {
    throw Error(ErrorKind::SingletonUnit, "unit of one vertex has no difference directions");
  }
  const auto c = common_vertex_weight(h, unit.members);
  if (!c) throw Error(ErrorKind::NonConstantVertexWeight, "vertex weight varies within the unit");

  UnitEigenpair out;
  double sum = 0.0;
  for (std::size_t e : unit.generating_set) sum += h.edge_weight(e) / (*c * static_cast<double>(h.edge(e).size()));
  out.eigenvalue = -sum;
  out.basis = Eigen::MatrixXd::Zero(idx(h.num_vertices()), idx(unit.size() - 1));
  for (std::size_t j = 1; j < unit.size(); ++j) {
    out.basis(idx(unit.members[j]), idx(j - 1)) = 1.0;
    out.basis(idx(unit.members[0]), idx(j - 1)) = -1.0;
  }
  return out;
}

TwinEigenpair twin_eigenpair(const Hypergraph& h, const TwinPair& pair) {
  if (!pair.sigma_preserving) {
    throw Error(ErrorKind::NotSigmaPreserving, "canonical bijection of the twin pair is not sigma-preserving");
  }
  std::vector<std::size_t> both = pair.first.members;
  both.insert(both.end(), pair.second.members.begin(), pair.second.members.end());
  const auto c = common_vertex_weight(h, both);
  if (!c) throw Error(ErrorKind::NonConstantVertexWeight, "vertex weight varies across the twin units");

  double sum = 0.0;
  for (std::size_t e : pair.first.generating_set) {
    sum += h.sigma(e) * static_cast<double>(h.edge(e).size() - pair.first.size());
  }
  TwinEigenpair out;
  out.eigenvalue = -sum / *c;
  out.vector = static_cast<double>(pair.second.size()) * indicator(h, pair.first.members) -
               static_cast<double>(pair.first.size()) * indicator(h, pair.second.members);
  return out;
}

InvarianceCheck check_invariant_subspace(const DiffusionOperator& op, const Eigen::MatrixXd& basis,
                                         double tol) {
  require_domain(op.size(), basis.rows(), "basis");
  InvarianceCheck out{true, 0.0};
  if (basis.cols() == 0) return out;
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  for (Index j = 0; j < basis.cols(); ++j) {
    const Eigen::VectorXd image = op.matrix * basis.col(j);
    const Eigen::VectorXd coeffs = qr.solve(image);
    const double residual = (image - basis * coeffs).norm();
    out.max_residual = std::max(out.max_residual, residual);
    if (residual > tol * std::max(1.0, image.norm())) out.invariant = false;
  }
  return out;
}

}  // namespace hsync
