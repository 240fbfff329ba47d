#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hsync/dynamics.hpp"
#include "hsync/error.hpp"
#include "hsync/node_dynamics.hpp"
#include "oracles.hpp"

using namespace hsync;
using Eigen::VectorXd;

namespace {

std::vector<std::size_t> idx(const Hypergraph& h, const std::vector<std::string>& ls) {
  return resolve_vertices(h, ls);
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

TEST_CASE("dynamics presets parse and round-trip by name") {
  for (const char* spec : {"identity", "logistic:4", "logistic:3.5", "sine", "tanh", "linear:0.5", "diffusion",
                           "linear:1,0.2", "tanh/zero"}) {
    const auto dyn = parse_dynamics(spec);
    const auto again = parse_dynamics(dyn.name());
    CHECK(again.name() == dyn.name());
    CHECK(derivative_bound_violation(dyn) <= 1e-12);
  }
  const auto diffusion = parse_dynamics("diffusion");
  CHECK(diffusion.f.name == "identity");
  CHECK(diffusion.g.name == "zero");
  const auto lin = parse_dynamics("linear:1,0.2");
  CHECK(lin.sup_f_prime() == 1.0);
  CHECK(lin.sup_g_prime() == 0.2);
  CHECK(parse_dynamics("logistic:4").interval().hi == 1.0);

  CHECK(kind_of([] { parse_dynamics("cubic"); }) == ErrorKind::UnknownPreset);
  CHECK(kind_of([] { parse_dynamics("logistic:5"); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { parse_dynamics("linear:x"); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { parse_dynamics("identity:2"); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("single discrete steps") {
  const auto h = fixtures::h1();
  const auto op = build_operator(h);
  const auto id = parse_dynamics("identity");
  CHECK(step_discrete(h, id, 0.1, VectorXd::Ones(5)) == VectorXd::Ones(5));

  const VectorXd x = indicator(h, idx(h, {"1"}));
  const VectorXd expected = x + 0.1 * oracles::formula_matrix(h) * x;
  CHECK((step_discrete(h, id, 0.1, x) - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(step_discrete(h, id, 0.1, x)[0] == doctest::Approx(1.0 - 0.1 * 2.0));

  const auto logistic = parse_dynamics("logistic:4");
  const VectorXd c = VectorXd::Constant(5, 0.3);
  const VectorXd next = step_discrete(h, logistic, 0.3, c);
  CHECK((next.array() - 4 * 0.3 * 0.7).abs().maxCoeff() < 1e-15);

  CHECK(kind_of([&] { step_discrete(h, id, 0.0, x); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([&] { step_discrete(h, id, 1.0, x); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([&] { step_discrete(h, logistic, 0.1, VectorXd::Constant(5, 1.5)); }) ==
        ErrorKind::StateOutOfInterval);
}

TEST_CASE("identity step equals (I + eps L) by both paths") {
  std::mt19937_64 rng(4);
  const auto id = parse_dynamics("identity");
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = fixtures::random_connected(rng, {2, 15, 10, 5, true});
    const auto op = build_operator(h);
    const auto n = static_cast<Eigen::Index>(h.num_vertices());
    const VectorXd x = VectorXd::Random(n);
    const VectorXd affine = (Eigen::MatrixXd::Identity(n, n) + 0.2 * op.matrix) * x;
    CHECK((step_discrete(h, id, 0.2, x) - affine).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((step_discrete(op, id, 0.2, x) - step_discrete(h, id, 0.2, x)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("discrete simulation keeps constant states constant and units synchronized") {
  const auto h = fixtures::h1();
  const auto logistic = parse_dynamics("logistic:4");
  const auto traj = simulate_discrete(h, logistic, 0.1, VectorXd::Constant(5, 0.2), 200);
  for (const auto& x : traj.states) CHECK((x.array() - x[0]).abs().maxCoeff() == 0.0);

  VectorXd x0(5);
  x0 << 0.4, 0.4, 0.9, 0.15, 0.6;
  const auto run = simulate_discrete(h, logistic, 0.1, x0, 1000);
  CHECK(run.size() == 1001);
  const auto report = sync_report(run, idx(h, {"1", "2"}), 1e-10);
  CHECK(report.max_spread <= 1e-10);
  CHECK(std::all_of(report.synchronized_at.begin(), report.synchronized_at.end(), [](bool b) { return b; }));

  const auto strided = simulate_discrete(h, logistic, 0.1, x0, 1000, 7);
  CHECK(strided.times.back() == 1000.0);
  CHECK(strided.states.back() == run.states.back());

  CHECK(kind_of([&] { simulate_discrete(h, logistic, 0.1, x0, 0); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([&] { simulate_discrete(h, logistic, 0.1, VectorXd::Ones(3), 5); }) == ErrorKind::DomainMismatch);
  const auto linear = parse_dynamics("linear:10,10");
  CHECK(kind_of([&] { simulate_discrete(h, linear, 0.1, x0, 400); }) == ErrorKind::NumericOverflow);
}

TEST_CASE("non-twin union of units desynchronizes") {
  const auto h = fixtures::h4();
  const auto logistic = parse_dynamics("logistic:4");
  std::mt19937_64 rng(8);
  VectorXd x0 = random_state(5, logistic.interval(), rng);
  const auto cluster = idx(h, {"1", "2", "5"});
  for (std::size_t v : cluster) x0[static_cast<Eigen::Index>(v)] = 0.37;
  const auto traj = simulate_discrete(h, logistic, 0.1, x0, 100);
  CHECK(sync_report(traj, cluster).max_spread > 1e-8);
}

TEST_CASE("continuous pure diffusion follows the matrix exponential") {
  const auto h = fixtures::h1();
  const auto diffusion = parse_dynamics("diffusion");
  VectorXd x0(5);
  x0 << 1.0, -0.5, 0.25, 2.0, 0.0;
  const auto op = build_operator(h);
  const double eps = 0.5;
  const auto traj = simulate_continuous(h, diffusion, eps, x0, 2.0, 1e-3, 100);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const VectorXd exact = oracles::expm(eps * traj.times[k] * op.matrix) * x0;
    CHECK((traj.states[k] - exact).cwiseAbs().maxCoeff() < 1e-9);
  }
  const double mass0 = inner_product_v(h, x0, VectorXd::Ones(5));
  const auto late = simulate_continuous(h, diffusion, eps, x0, 50.0, 1e-3, 1000);
  for (const auto& x : late.states) {
    CHECK(std::abs(inner_product_v(h, x, VectorXd::Ones(5)) - mass0) <= 1e-9 * std::abs(mass0));
  }
  const VectorXd& last = late.states.back();
  CHECK(last.maxCoeff() - last.minCoeff() <= 1e-6);
  CHECK(last[0] == doctest::Approx(mass0 / 5.0));

  const auto constant = simulate_continuous(h, diffusion, eps, VectorXd::Ones(5), 1.0);
  CHECK((constant.states.back().array() - 1.0).abs().maxCoeff() == 0.0);
  CHECK(constant.times.back() == 1.0);
}

TEST_CASE("continuous run keeps a unit synchronized") {
  const auto h = fixtures::h1();
  const auto tanh_dyn = parse_dynamics("tanh");
  VectorXd x0(5);
  x0 << 0.8, -0.3, 0.1, 0.5, 0.5;
  const auto traj = simulate_continuous(h, tanh_dyn, 0.3, x0, 10.0, 1e-3, 50);
  CHECK(sync_report(traj, idx(h, {"4", "5"})).max_spread <= 1e-8);
  CHECK(kind_of([&] { simulate_continuous(h, tanh_dyn, 0.3, x0, 1.0, 0.0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("sync report on a halving spread") {
  Trajectory traj;
  for (int t = 0; t <= 40; ++t) {
    traj.times.push_back(t);
    VectorXd x(2);
    x << 0.0, std::pow(2.0, -t);
    traj.states.push_back(x);
  }
  const auto r = sync_report(traj, std::vector<std::size_t>{0, 1}, 1e-8);
  CHECK(r.asymptotic);
  CHECK_FALSE(r.synchronized_at[26]);
  CHECK(r.synchronized_at[27]);
  CHECK(kind_of([&] { sync_report(traj, std::vector<std::size_t>{0}); }) == ErrorKind::ClusterTooSmall);
}

TEST_CASE("sync preservation checks") {
  const auto h = fixtures::h1();
  const auto logistic = parse_dynamics("logistic:4");
  // uniform H1 has L(3,3) = -4, so eps = 0.3 pushes logistic states out of [0,1]
  CHECK(kind_of([&] { sync_preservation_check(h, idx(h, {"1", "2"}), logistic, 0.3, 5); }) ==
        ErrorKind::StateOutOfInterval);
  const auto avg = fixtures::averaging(h);
  CHECK((build_operator(avg).matrix.diagonal().array() + 1.0).abs().maxCoeff() < 1e-12);
  CHECK(sync_preservation_check(avg, idx(avg, {"1", "2"}), logistic, 0.3, 5).pass);
  const auto twins = sync_preservation_check(h, idx(h, {"1", "2", "4", "5"}), logistic, 0.1, 5);
  CHECK(twins.pass);
  CHECK(twins.kind == ClusterKind::TwinCollection);
  PreservationOptions cont;
  cont.mode = TimeMode::Continuous;
  cont.t_end = 2.0;
  cont.tol = 1e-7;
  CHECK(sync_preservation_check(h, idx(h, {"4", "5"}), parse_dynamics("tanh"), 0.3, 2, cont).pass);

  auto r = fixtures::h1_raw();
  r.vertex_weights["1"] = 2.0;
  const auto heavy = validate(r);
  CHECK(kind_of([&] { sync_preservation_check(heavy, idx(heavy, {"1", "2"}), logistic, 0.1, 1); }) ==
        ErrorKind::HypothesisViolated);
}

TEST_CASE("random states are reproducible from the seed") {
  std::mt19937_64 a(99), b(99);
  CHECK(random_state(10, {0.0, 1.0}, a) == random_state(10, {0.0, 1.0}, b));
  std::mt19937_64 c(1);
  const VectorXd x = random_state(100, {}, c);
  CHECK(x.minCoeff() >= -1.0);
  CHECK(x.maxCoeff() <= 1.0);
}
