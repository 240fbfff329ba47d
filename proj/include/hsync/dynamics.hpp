#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hsync/diffusion_operator.hpp"
#include "hsync/hypergraph.hpp"
#include "hsync/node_dynamics.hpp"
#include "hsync/units.hpp"

namespace hsync {

enum class TimeMode { Discrete, Continuous };

std::string_view to_string(TimeMode mode);
TimeMode parse_time_mode(std::string_view name);

inline constexpr double kDefaultSyncTolerance = 1e-8;
inline constexpr double kDefaultStep = 1e-3;

struct NetworkState {
  double time = 0.0;
  VertexFunction state;
};

/// Recorded states of one run, strictly increasing in time.
struct Trajectory {
  TimeMode mode = TimeMode::Discrete;
  double epsilon = 0.0;
  std::string dynamics;
  std::vector<double> times;
  std::vector<VertexFunction> states;

  std::size_t size() const { return times.size(); }
  NetworkState at(std::size_t k) const { return {times.at(k), states.at(k)}; }
};

/// x_{t+1} = g(x_t) + eps L f(x_t), with L applied through apply_diffusion.
/// Throws StateOutOfInterval if x_t leaves the dynamics interval and
/// NumericOverflow if the result is not finite.
VertexFunction step_discrete(const Hypergraph& h, const NodeDynamics& dyn, double eps, const VertexFunction& x);

/// Same step with L applied as a dense matrix.
VertexFunction step_discrete(const DiffusionOperator& op, const NodeDynamics& dyn, double eps,
                             const VertexFunction& x);

/// Iterates step_discrete `steps` times, recording x_0 and every `stride`-th
/// state (the final state is always recorded).
Trajectory simulate_discrete(const Hypergraph& h, const NodeDynamics& dyn, double eps,
                             const VertexFunction& x0, std::size_t steps, std::size_t stride = 1);

/// Classic fixed-step RK4 for x' = g(x) + eps L f(x) on [0, t_end]. The step
/// is shrunk so that an integer number of steps lands exactly on t_end.
Trajectory simulate_continuous(const Hypergraph& h, const NodeDynamics& dyn, double eps,
                               const VertexFunction& x0, double t_end, double dt = kDefaultStep,
                               std::size_t stride = 1);

/// max_{u,v in cluster} |x(u) - x(v)|
double cluster_spread(const VertexFunction& x, std::span<const std::size_t> cluster);

struct SyncReport {
  std::vector<std::size_t> cluster;
  double tolerance = kDefaultSyncTolerance;
  std::vector<double> times;
  std::vector<double> spreads;
  std::vector<bool> synchronized_at;
  bool asymptotic = false;
  double final_spread = 0.0;
  double max_spread = 0.0;
};

/// Per-time spread over the cluster. The asymptotic verdict holds when every
/// sample in the trailing 10% (at least one sample) is within tolerance.
SyncReport sync_report(const Trajectory& traj, std::span<const std::size_t> cluster,
                       double tol = kDefaultSyncTolerance);

/// Uniform sample from the interval, or from [-1, 1] if it is unbounded.
VertexFunction random_state(std::size_t n, const Interval& interval, std::mt19937_64& rng);

struct PreservationOptions {
  TimeMode mode = TimeMode::Discrete;
  std::size_t steps = 1000;  // discrete
  double t_end = 10.0;       // continuous
  double dt = kDefaultStep;  // continuous
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

struct PreservationResult {
  bool pass = false;
  ClusterKind kind = ClusterKind::UnitSubset;
  std::size_t trials = 0;
  double max_spread = 0.0;
};

/// Runs `trials` random initial conditions that are constant on the cluster
/// and checks the spread stays within opts.tol at every recorded time. The
/// cluster must be a unit subset or a collection of sigma-preserving twins
/// with constant delta_V; otherwise HypothesisViolated.
PreservationResult sync_preservation_check(const Hypergraph& h, std::span<const std::size_t> cluster,
                                           const NodeDynamics& dyn, double eps, std::size_t trials,
                                           const PreservationOptions& opts = {});

void require_coupling(double eps);

}  // namespace hsync
