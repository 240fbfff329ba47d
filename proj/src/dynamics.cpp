#include "hsync/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "hsync/error.hpp"

namespace hsync {

namespace {

using Index = Eigen::Index;

VertexFunction map_values(const ScalarMap& m, const VertexFunction& x) {
  VertexFunction out(x.size());
  for (Index i = 0; i < x.size(); ++i) out[i] = m.value(x[i]);
  return out;
}

void require_finite(const VertexFunction& x, double time) {
  if (!x.allFinite()) {
    throw Error(ErrorKind::NumericOverflow, "state is no longer finite at t = " + std::to_string(time));
  }
}

void require_inside(const VertexFunction& x, const Interval& range, double time) {
  for (Index i = 0; i < x.size(); ++i) {
    if (!range.contains(x[i])) {
      throw Error(ErrorKind::StateOutOfInterval,
                  "state " + std::to_string(x[i]) + " at vertex index " + std::to_string(i) + ", t = " +
                      std::to_string(time) + " lies outside [" + std::to_string(range.lo) + ", " +
                      std::to_string(range.hi) + "]");
    }
  }
}

VertexFunction vector_field(const Hypergraph& h, const NodeDynamics& dyn, double eps, const VertexFunction& x) {
  return map_values(dyn.g, x) + eps * apply_diffusion(h, map_values(dyn.f, x));
}

}  // namespace

std::string_view to_string(TimeMode mode) {
  return mode == TimeMode::Discrete ? "discrete" : "continuous";
}

TimeMode parse_time_mode(std::string_view name) {
  if (name == "discrete") return TimeMode::Discrete;
  if (name == "continuous") return TimeMode::Continuous;
  throw Error(ErrorKind::InvalidParameter, "mode must be 'discrete' or 'continuous'");
}

void require_coupling(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "coupling strength must lie in (0, 1)");
  }
}

VertexFunction step_discrete(const Hypergraph& h, const NodeDynamics& dyn, double eps, const VertexFunction& x) {
  require_coupling(eps);
  require_inside(x, dyn.interval(), 0.0);
  VertexFunction next = vector_field(h, dyn, eps, x);
  require_finite(next, 1.0);
  return next;
}

VertexFunction step_discrete(const DiffusionOperator& op, const NodeDynamics& dyn, double eps,
                             const VertexFunction& x) {
  require_coupling(eps);
  require_inside(x, dyn.interval(), 0.0);
  VertexFunction next = map_values(dyn.g, x) + eps * op.apply(map_values(dyn.f, x));
  require_finite(next, 1.0);
  return next;
}

Trajectory simulate_discrete(const Hypergraph& h, const NodeDynamics& dyn, double eps,
                             const VertexFunction& x0, std::size_t steps, std::size_t stride) {
  require_coupling(eps);
  if (steps == 0) throw Error(ErrorKind::InvalidParameter, "steps must be at least 1");
  if (static_cast<std::size_t>(x0.size()) != h.num_vertices()) {
    throw Error(ErrorKind::DomainMismatch, "initial state is not defined on V(H)");
  }
  stride = std::max<std::size_t>(stride, 1);
  const Interval range = dyn.interval();

  Trajectory traj{TimeMode::Discrete, eps, dyn.name(), {0.0}, {x0}};
  VertexFunction x = x0;
  require_finite(x, 0.0);
  for (std::size_t t = 1; t <= steps; ++t) {
    require_inside(x, range, static_cast<double>(t - 1));
    x = vector_field(h, dyn, eps, x);
    require_finite(x, static_cast<double>(t));
    if (t % stride == 0 || t == steps) {
      traj.times.push_back(static_cast<double>(t));
      traj.states.push_back(x);
    }
  }
  return traj;
}

Trajectory simulate_continuous(const Hypergraph& h, const NodeDynamics& dyn, double eps,
                               const VertexFunction& x0, double t_end, double dt, std::size_t stride) {
  require_coupling(eps);
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidParameter, "dt must be positive");
  if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidParameter, "t_end must be positive");
  if (static_cast<std::size_t>(x0.size()) != h.num_vertices()) {
    throw Error(ErrorKind::DomainMismatch, "initial state is not defined on V(H)");
  }
  stride = std::max<std::size_t>(stride, 1);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const double step = t_end / static_cast<double>(steps);

  Trajectory traj{TimeMode::Continuous, eps, dyn.name(), {0.0}, {x0}};
  VertexFunction x = x0;
  require_finite(x, 0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const VertexFunction k1 = vector_field(h, dyn, eps, x);
    const VertexFunction k2 = vector_field(h, dyn, eps, x + 0.5 * step * k1);
    const VertexFunction k3 = vector_field(h, dyn, eps, x + 0.5 * step * k2);
    const VertexFunction k4 = vector_field(h, dyn, eps, x + step * k3);
    x += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double time = k == steps ? t_end : static_cast<double>(k) * step;
    require_finite(x, time);
    if (k % stride == 0 || k == steps) {
      traj.times.push_back(time);
      traj.states.push_back(x);
    }
  }
  return traj;
}

double cluster_spread(const VertexFunction& x, std::span<const std::size_t> cluster) {
  if (cluster.empty()) return 0.0;
  double lo = x[static_cast<Index>(cluster.front())];
  double hi = lo;
  for (std::size_t v : cluster) {
    lo = std::min(lo, x[static_cast<Index>(v)]);
    hi = std::max(hi, x[static_cast<Index>(v)]);
  }
  return hi - lo;
}

SyncReport sync_report(const Trajectory& traj, std::span<const std::size_t> cluster, double tol) {
  if (cluster.size() < 2) throw Error(ErrorKind::ClusterTooSmall, "a cluster needs at least two vertices");
  if (traj.size() == 0) throw Error(ErrorKind::InvalidParameter, "trajectory is empty");
  const auto n = static_cast<std::size_t>(traj.states.front().size());
  for (std::size_t v : cluster) {
    if (v >= n) throw Error(ErrorKind::UnknownVertex, "cluster vertex outside the trajectory's vertex set");
  }

  SyncReport report;
  report.cluster.assign(cluster.begin(), cluster.end());
  report.tolerance = tol;
  report.times = traj.times;
  for (const auto& state : traj.states) {
    const double s = cluster_spread(state, cluster);
    report.spreads.push_back(s);
    report.synchronized_at.push_back(s <= tol);
    report.max_spread = std::max(report.max_spread, s);
  }
  report.final_spread = report.spreads.back();
  const std::size_t tail = std::max<std::size_t>(1, (report.spreads.size() + 9) / 10);
  report.asymptotic = std::all_of(report.spreads.end() - static_cast<std::ptrdiff_t>(tail), report.spreads.end(),
                                  [tol](double s) { return s <= tol; });
  return report;
}

VertexFunction random_state(std::size_t n, const Interval& interval, std::mt19937_64& rng) {
  const double lo = interval.bounded() ? interval.lo : -1.0;
  const double hi = interval.bounded() ? interval.hi : 1.0;
  std::uniform_real_distribution<double> dist(lo, hi);
  VertexFunction x(static_cast<Index>(n));
  for (Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
  return x;
}

PreservationResult sync_preservation_check(const Hypergraph& h, std::span<const std::size_t> cluster,
                                           const NodeDynamics& dyn, double eps, std::size_t trials,
                                           const PreservationOptions& opts) {
  const auto classification = classify_cluster(h, cluster);
  if (!common_vertex_weight(h, cluster)) {
    throw Error(ErrorKind::HypothesisViolated, "vertex weight is not constant on the cluster");
  }
  require_coupling(eps);

  PreservationResult result{true, classification.kind, trials, 0.0};
  std::mt19937_64 rng(opts.seed);
  const Interval range = dyn.interval();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    VertexFunction x0 = random_state(h.num_vertices(), range, rng);
    const double common = random_state(1, range, rng)[0];
    for (std::size_t v : cluster) x0[static_cast<Index>(v)] = common;

    const Trajectory traj = opts.mode == TimeMode::Discrete
                                ? simulate_discrete(h, dyn, eps, x0, opts.steps)
                                : simulate_continuous(h, dyn, eps, x0, opts.t_end, opts.dt);
    for (const auto& state : traj.states) {
      const double s = cluster_spread(state, cluster);
      result.max_spread = std::max(result.max_spread, s);
      if (!(s <= opts.tol)) result.pass = false;
    }
  }
  return result;
}

}  // namespace hsync
