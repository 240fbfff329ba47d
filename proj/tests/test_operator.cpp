#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hsync/diffusion_operator.hpp"
#include "hsync/error.hpp"
#include "hsync/units.hpp"
#include "oracles.hpp"

using namespace hsync;
using Eigen::VectorXd;

namespace {

VertexFunction chi(const Hypergraph& h, const std::vector<std::string>& ls) {
  return indicator(h, resolve_vertices(h, ls));
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an hsync::Error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("operator on H1") {
  const auto h = fixtures::h1();
  const auto op = build_operator(h);
  CHECK(op.apply(VectorXd::Ones(5)).cwiseAbs().maxCoeff() < 1e-12);

  const VectorXd y = chi(h, {"1"}) - chi(h, {"2"});
  CHECK((op.apply(y) + 3.0 * y).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(op.apply(chi(h, {"1"}))[h.vertex_index("3")] == doctest::Approx(1.0));
}

TEST_CASE("matrix agrees with the formula path and the test-side assembly") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = fixtures::random_connected(rng, {2, 15, 10, 5, true});
    const auto op = build_operator(h);
    CHECK((op.matrix - oracles::formula_matrix(h)).cwiseAbs().maxCoeff() < 1e-12);
    const VectorXd x = VectorXd::Random(static_cast<Eigen::Index>(h.num_vertices()));
    CHECK((op.apply(x) - apply_diffusion(h, x)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("inner products") {
  const auto h = fixtures::h1();
  CHECK(inner_product_v(h, VectorXd::Ones(5), VectorXd::Ones(5)) == 5.0);
  CHECK(inner_product_v(h, chi(h, {"1"}), chi(h, {"2"})) == 0.0);
  auto r = fixtures::h1_raw();
  r.vertex_weights["1"] = 2.0;
  const auto heavy = validate(r);
  CHECK(inner_product_v(heavy, chi(heavy, {"1"}), chi(heavy, {"1"})) == 2.0);
  CHECK(inner_product_e(h, VectorXd::Ones(2), VectorXd::Ones(2)) == 18.0);
  CHECK(kind_of([&] { inner_product_v(h, VectorXd::Ones(4), VectorXd::Ones(5)); }) == ErrorKind::DomainMismatch);
  CHECK(kind_of([&] { inner_product_e(h, VectorXd::Ones(3), VectorXd::Ones(2)); }) == ErrorKind::DomainMismatch);
}

TEST_CASE("self-adjoint, dissipative, mass-conserving on random weighted inputs") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = fixtures::random_connected(rng, {2, 20, 12, 5, true});
    const auto op = build_operator(h);
    const auto n = static_cast<Eigen::Index>(h.num_vertices());
    for (int k = 0; k < 100; ++k) {
      const VectorXd x = VectorXd::Random(n);
      const VectorXd y = VectorXd::Random(n);
      const double nx = std::sqrt(inner_product_v(h, x, x));
      const double ny = std::sqrt(inner_product_v(h, y, y));
      CHECK(std::abs(inner_product_v(h, op.apply(x), y) - inner_product_v(h, x, op.apply(y))) <= 1e-9 * nx * ny);
      const double q = inner_product_v(h, op.apply(x), x);
      CHECK(q <= 1e-12);
      double identity = 0.0;
      for (std::size_t e = 0; e < h.num_edges(); ++e) {
        const auto& mem = h.edge(e).members;
        double s = 0.0;
        for (std::size_t u : mem) {
          for (std::size_t v : mem) s += std::pow(x[static_cast<Eigen::Index>(u)] - x[static_cast<Eigen::Index>(v)], 2);
        }
        identity -= h.sigma(e) / 2.0 * s;
      }
      CHECK(q == doctest::Approx(identity).epsilon(1e-10));
      CHECK(std::abs(inner_product_v(h, op.apply(x), VectorXd::Ones(n))) <= 1e-9 * nx);
    }
  }
}

TEST_CASE("spectrum of H5 and of a single edge") {
  const auto s5 = spectrum(build_operator(fixtures::h5()));
  VectorXd expected(6);
  expected << 0, -2, -4, -4, -6, -8;
  CHECK((s5.eigenvalues - expected).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(s5.eigenvalues.sum() == doctest::Approx(-24.0));

  const auto s1 = spectrum(build_operator(fixtures::single_edge()));
  CHECK((s1.eigenvalues - VectorXd((VectorXd(3) << 0, -3, -3).finished())).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("spectrum is orthonormal, matches Jacobi, has a simple constant kernel") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const auto h = fixtures::random_connected(rng, {2, 20, 12, 5, true});
    const auto op = build_operator(h);
    const auto s = spectrum(op);
    const auto n = static_cast<Eigen::Index>(s.size());
    const Eigen::MatrixXd gram = s.eigenvectors.transpose() * s.vertex_weights.asDiagonal() * s.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-9);
    for (Eigen::Index i = 0; i < n; ++i) {
      CHECK((op.matrix * s.eigenvectors.col(i) - s.eigenvalues[i] * s.eigenvectors.col(i)).norm() < 1e-9);
    }
    CHECK((s.eigenvalues - oracles::operator_eigenvalues(h)).cwiseAbs().maxCoeff() <
          1e-9 * std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff()));
    CHECK(std::abs(s.eigenvalues[0]) < 1e-9);
    if (n > 1) CHECK(s.eigenvalues[1] < -1e-9);
    const VectorXd z0 = s.eigenvector(0);
    CHECK((z0.array() - z0[0]).abs().maxCoeff() < 1e-9);
    CHECK(z0[0] > 0);
    for (Eigen::Index i = 1; i < n; ++i) CHECK(s.eigenvalues[i] <= s.eigenvalues[i - 1]);
  }
}

TEST_CASE("spectrum is deterministic") {
  const auto op = build_operator(fixtures::h5());
  const auto a = spectrum(op);
  const auto b = spectrum(op);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("unit eigenpairs") {
  const auto h1 = fixtures::h1();
  const auto u1 = find_units(h1);
  const auto p = unit_eigenpair(h1, u1[0]);
  CHECK(p.eigenvalue == doctest::Approx(-3.0));
  CHECK(p.basis.cols() == 1);
  CHECK(kind_of([&] { unit_eigenpair(h1, u1[1]); }) == ErrorKind::SingletonUnit);

  const auto h5 = fixtures::h5();
  CHECK(unit_eigenpair(h5, find_units(h5)[2]).eigenvalue == doctest::Approx(-8.0));

  auto r = fixtures::h1_raw();
  r.vertex_weights["1"] = 2.0;
  const auto heavy = validate(r);
  CHECK(kind_of([&] { unit_eigenpair(heavy, find_units(heavy)[0]); }) == ErrorKind::NonConstantVertexWeight);
}

TEST_CASE("twin eigenpairs") {
  const auto h1 = fixtures::h1();
  const auto t1 = find_twins(h1, find_units(h1));
  const auto p1 = twin_eigenpair(h1, t1[0]);
  CHECK(p1.eigenvalue == doctest::Approx(-1.0));
  const VectorXd y = 2.0 * chi(h1, {"1", "2"}) - 2.0 * chi(h1, {"4", "5"});
  CHECK((p1.vector - y).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((build_operator(h1).apply(y) + y).cwiseAbs().maxCoeff() < 1e-12);

  const auto h5 = fixtures::h5();
  const auto p5 = twin_eigenpair(h5, find_twins(h5, find_units(h5))[0]);
  CHECK(p5.eigenvalue == doctest::Approx(-2.0));
  CHECK((p5.vector - (2.0 * chi(h5, {"1", "2"}) - 2.0 * chi(h5, {"3", "4"}))).cwiseAbs().maxCoeff() < 1e-12);

  auto r = fixtures::h1_raw();
  r.edges[0].delta = 9.0;
  r.edges[1].delta = 18.0;
  const auto heavy = validate(r);
  CHECK(kind_of([&] { twin_eigenpair(heavy, find_twins(heavy, find_units(heavy))[0]); }) ==
        ErrorKind::NotSigmaPreserving);
}

TEST_CASE("analytic eigenpairs appear in the numeric spectrum") {
  std::mt19937_64 rng(33);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = fixtures::unit_rich(rng);
    const auto op = build_operator(h);
    const auto s = spectrum(op);
    auto in_spectrum = [&](double lambda) {
      return (s.eigenvalues.array() - lambda).abs().minCoeff() <= 1e-9 * std::max(1.0, std::abs(lambda));
    };
    const auto units = find_units(h);
    for (const auto& u : units) {
      if (u.size() < 2) continue;
      const auto p = unit_eigenpair(h, u);
      CHECK(in_spectrum(p.eigenvalue));
      for (Eigen::Index k = 0; k < p.basis.cols(); ++k) {
        const VectorXd b = p.basis.col(k);
        CHECK((op.apply(b) - p.eigenvalue * b).norm() <= 1e-9 * b.norm());
      }
      ++checked;
    }
    for (const auto& t : find_twins(h, units)) {
      if (!t.sigma_preserving) continue;
      const auto p = twin_eigenpair(h, t);
      CHECK(in_spectrum(p.eigenvalue));
      CHECK((op.apply(p.vector) - p.eigenvalue * p.vector).norm() <= 1e-9 * p.vector.norm());
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("invariant subspaces") {
  const auto h = fixtures::h1();
  const auto op = build_operator(h);
  const auto t12 = unit_eigenpair(h, find_units(h)[0]).basis;
  const auto inv = check_invariant_subspace(op, t12);
  CHECK(inv.invariant);
  CHECK(inv.max_residual < 1e-12);

  const auto single = check_invariant_subspace(op, chi(h, {"1"}));
  CHECK_FALSE(single.invariant);
  CHECK(single.max_residual > 0.1);

  CHECK(check_invariant_subspace(op, VectorXd::Ones(5)).invariant);
}
