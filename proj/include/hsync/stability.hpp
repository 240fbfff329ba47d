#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsync/diffusion_operator.hpp"
#include "hsync/dynamics.hpp"
#include "hsync/hypergraph.hpp"
#include "hsync/node_dynamics.hpp"
#include "hsync/units.hpp"

namespace hsync {

/// Stability verdicts are three-valued. A failed sufficient condition is
/// NotCertified; only a measurement can say EmpiricallyUnstable.
enum class Verdict { CertifiedStable, NotCertified, EmpiricallyUnstable };
std::string_view to_string(Verdict verdict);

enum class Provenance { UnitFormula, TwinFormula, Contraction, TwinClass };
std::string_view to_string(Provenance provenance);

/// An eigenvalue of L (always <= 0) and where it came from.
struct EigenvalueEntry {
  double value = 0.0;
  Provenance provenance = Provenance::UnitFormula;
  std::string source;  // cluster label
  double magnitude() const { return -value; }
};

enum class BoundModel { Discrete, Continuous, Certificate };
std::string_view to_string(BoundModel model);

/// One inequality lhs < rhs evaluated for one eigenvalue.
///   Discrete:    sup g' + eps |lambda| sup f' < 1
///   Continuous:  sup g' + eps lambda sup f'   < 0
///   Certificate: |sup g' + eps lambda sup f'| < 1
struct BoundCheck {
  BoundModel model = BoundModel::Discrete;
  double lambda = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  bool degenerate = false;  // sup f' = 0: the coupling term drops out
  double margin() const { return rhs - lhs; }
};

struct DerivativeBounds {
  double sup_f_prime = 0.0;
  double sup_g_prime = 0.0;

  static DerivativeBounds of(const NodeDynamics& dyn) { return {dyn.sup_f_prime(), dyn.sup_g_prime()}; }
};

BoundCheck evaluate_bound(BoundModel model, double lambda, const DerivativeBounds& bounds, double eps);

struct BoundResult {
  std::vector<EigenvalueEntry> eigenvalues;
  std::vector<BoundCheck> checks;
  bool pass() const;
};

/// The unit's eigenvalue -sum_{E_0} delta_E(e) / (c |e|) against the
/// discrete or continuous bound.
BoundResult discrete_unit_stability(const Hypergraph& h, const Unit& unit, const DerivativeBounds& bounds,
                                    double eps);
BoundResult continuous_unit_stability(const Hypergraph& h, const Unit& unit, const DerivativeBounds& bounds,
                                      double eps);

/// The three cluster eigenvalues of a sigma-preserving twin pair:
///   -(w/c) sum_{E_j} |e \ W_j|,  -sum_{E_i} delta_E/(c|e|),  -sum_{E_j} delta_E/(c|e|)
/// w must be the same sigma value on every edge of E_i and E_j.
BoundResult discrete_twin_stability(const Hypergraph& h, const TwinPair& pair, const DerivativeBounds& bounds,
                                    double eps);
BoundResult continuous_twin_stability(const Hypergraph& h, const TwinPair& pair,
                                      const DerivativeBounds& bounds, double eps);

/// eta_t^i = (y_t - x_t, z_i)_V. Rows are times, columns eigendirections.
Eigen::MatrixXd eta_components(const Spectrum& spec, const Trajectory& base, const Trajectory& perturbed);

/// Running estimate sigma_i(t) = (1/t) sum_{s<t} log|g'(c_s) + eps lambda_i f'(c_s)| along the common
/// cluster value c_s of a synchronized trajectory.
struct LyapunovEstimate {
  double lambda = 0.0;
  std::vector<double> sigma;  // sigma[t-1] = sigma_i(t), t = 1..T
  bool log_of_zero = false;   // some factor vanished; its log counted as -inf
  /// f = g only: trailing-half mean of log|f'(c_s)| and the test
  /// lambda_i in (-(e^{-s}+1)/eps, (e^{-s}-1)/eps).
  std::optional<double> sigma_inf;
  std::optional<bool> interval_test;
  Verdict verdict = Verdict::NotCertified;
};

LyapunovEstimate lyapunov_sigma(const Trajectory& traj, std::span<const std::size_t> cluster,
                                const Spectrum& spec, const NodeDynamics& dyn, double eps, std::size_t i,
                                double tol = kDefaultSyncTolerance);

enum class EmpiricalVerdict { Decaying, NotDecaying, Unstable };
std::string_view to_string(EmpiricalVerdict verdict);

struct PerturbationRun {
  Trajectory base;
  Trajectory perturbed;
  Eigen::MatrixXd eta;  // eta_components(base, perturbed)
};

struct PerturbationResult {
  PerturbationRun run;
  std::vector<std::size_t> directions;  // eigendirections carrying the initial perturbation
  std::vector<double> rates;            // fitted per-step ratio for each direction
  double growth = 0.0;                  // |P eta_T| / |P eta_0|, P = projection onto the cluster tangent
  EmpiricalVerdict verdict = EmpiricalVerdict::Decaying;
};

struct PerturbationOptions {
  double delta = 1e-6;
  std::uint64_t seed = 0;
  std::size_t steps = 60;
};

/// Runs a base trajectory started constant on the cluster and a copy
/// perturbed by delta times a random unit vector of T_cluster, then fits the
/// per-step ratio of every excited eigencomponent by least squares on
/// log|eta| over the trailing half of the window (values below 1e-14 are
/// dropped). Unstable when the tangent part grows more than 10x.
PerturbationResult perturb_and_measure(const Hypergraph& h, std::span<const std::size_t> cluster,
                                       const NodeDynamics& dyn, double eps, const PerturbationOptions& opts = {});

/// Least-squares growth factor exp(slope of log|series|).
std::optional<double> fit_rate(std::span<const double> series, double floor = 1e-14);

struct CertificateReport {
  std::size_t unit_cardinality = 0;
  double scale = 0.0;  // c c_E / c_V
  std::vector<EigenvalueEntry> assembled;       // scaled quotient spectrum plus unit values
  std::vector<EigenvalueEntry> twin_class_values;  // c_a, already inside the scaled quotient spectrum
  Eigen::VectorXd direct;                        // spectrum of L_H
  double max_mismatch = 0.0;
  std::vector<BoundCheck> checks;
  Verdict verdict = Verdict::NotCertified;
};

/// Full-synchronization certificate from a partial eigenvalue list. Requires
/// equal unit cardinality c, delta_V constant on units, sigma-preserving
/// canonical bijections, and c_a, b_a constant across each twin class;
/// otherwise HypothesesNotMet. The assembled list (c c_E / c_V times the
/// quotient spectrum, plus b_a with multiplicity c - 1 per unit) must match
/// the direct spectrum within 1e-9, else SpectrumMismatch.
CertificateReport contraction_stability_certificate(const Hypergraph& h, const DerivativeBounds& bounds,
                                                    double eps, double c_v = 1.0, double c_e = 1.0);

/// Per-cluster report combining the analytic checks with a perturbation run.
struct StabilityReport {
  std::string cluster;
  std::vector<std::size_t> members;
  std::vector<EigenvalueEntry> eigenvalues;
  std::vector<BoundCheck> checks;
  std::optional<PerturbationResult> empirical;
  Verdict verdict = Verdict::NotCertified;
};

struct AssessOptions {
  TimeMode model = TimeMode::Discrete;
  bool empirical = true;
  PerturbationOptions perturbation;
};

StabilityReport assess_unit(const Hypergraph& h, const Unit& unit, const std::string& label,
                            const NodeDynamics& dyn, double eps, const AssessOptions& opts = {});
StabilityReport assess_twin(const Hypergraph& h, const TwinPair& pair, const std::string& label,
                            const NodeDynamics& dyn, double eps, const AssessOptions& opts = {});

}  // namespace hsync
