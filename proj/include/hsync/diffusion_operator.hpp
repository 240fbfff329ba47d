#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "hsync/hypergraph.hpp"
#include "hsync/units.hpp"

namespace hsync {

/// Real functions on V(H) (or E(H)) in canonical index order.
using VertexFunction = Eigen::VectorXd;
using EdgeFunction = Eigen::VectorXd;

/// Dense matrix of the general diffusion operator
///
///   (L x)(v) = sum_{e in E_v} delta_E(e) / (delta_V(v) |e|^2) * sum_{u in e} (x(u) - x(v))
///
/// Off-diagonal (v, u): sum over edges containing both of sigma(e) / delta_V(v).
/// Diagonal (v, v):    -sum_{e in E_v} sigma(e) (|e| - 1) / delta_V(v).
struct DiffusionOperator {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd vertex_weights;

  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
  VertexFunction apply(const VertexFunction& x) const { return matrix * x; }
};

DiffusionOperator build_operator(const Hypergraph& h);

/// Applies L edge by edge straight from the defining sum. Each inner sum and
/// the outer sum over the star are accumulated in sorted order, so the result
/// at v depends only on the multisets of terms: two vertices that see the
/// same terms get bit-identical values. The simulators rely on this to keep
/// synchronized clusters exactly synchronized.
VertexFunction apply_diffusion(const Hypergraph& h, const VertexFunction& x);

/// (x, y)_V = sum_v delta_V(v) x(v) y(v)
double inner_product_v(const Hypergraph& h, const VertexFunction& x, const VertexFunction& y);
double inner_product_v(const Eigen::VectorXd& weights, const VertexFunction& x, const VertexFunction& y);
/// (b, g)_E = sum_e delta_E(e) b(e) g(e)
double inner_product_e(const Hypergraph& h, const EdgeFunction& b, const EdgeFunction& g);

/// chi_U
VertexFunction indicator(const Hypergraph& h, std::span<const std::size_t> vertices);

/// Eigenpairs of L sorted by descending eigenvalue (0 first). Columns of
/// `eigenvectors` are orthonormal in the delta_V-weighted inner product.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  Eigen::VectorXd vertex_weights;

  std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
  VertexFunction eigenvector(std::size_t i) const {
    return eigenvectors.col(static_cast<Eigen::Index>(i));
  }
};

/// Symmetrizes with diag(delta_V)^{1/2}, runs a symmetric eigensolver and maps
/// the eigenvectors back. Within a cluster of equal eigenvalues (1e-9
/// relative) vectors are ordered lexicographically after making their first
/// nonzero entry positive.
Spectrum spectrum(const DiffusionOperator& op);

/// Eigenvalue -sum_{e in E_0} delta_E(e) / (c |e|) on T_W, with the basis
/// chi_{v_j} - chi_{v_0}, j = 1..|W|-1 (columns).
struct UnitEigenpair {
  double eigenvalue = 0.0;
  Eigen::MatrixXd basis;
};
UnitEigenpair unit_eigenpair(const Hypergraph& h, const Unit& unit);

/// Eigenvalue -(1/c) sum_{e in E_i} sigma(e) |e \ W_i| with eigenvector
/// |W_j| chi_{W_i} - |W_i| chi_{W_j}.
struct TwinEigenpair {
  double eigenvalue = 0.0;
  VertexFunction vector;
};
TwinEigenpair twin_eigenpair(const Hypergraph& h, const TwinPair& pair);

struct InvarianceCheck {
  bool invariant = false;
  double max_residual = 0.0;
};

/// Whether L maps span(basis columns) into itself. The residual for a column
/// b is the Euclidean distance from L b to the span; the subspace counts as
/// invariant when every residual is <= tol * max(1, |L b|).
InvarianceCheck check_invariant_subspace(const DiffusionOperator& op, const Eigen::MatrixXd& basis,
                                         double tol = 1e-9);

}  // namespace hsync
