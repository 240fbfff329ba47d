#include "hsync/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hsync/error.hpp"

namespace hsync {

namespace {

using Index = Eigen::Index;

constexpr double kSpectralTolerance = 1e-9;

Index idx(std::size_t i) { return static_cast<Index>(i); }

std::vector<std::size_t> union_of(const TwinPair& pair) {
  std::vector<std::size_t> out = pair.first.members;
  out.insert(out.end(), pair.second.members.begin(), pair.second.members.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// sum_{e in E_0} delta_E(e) / (c |e|)
double unit_magnitude(const Hypergraph& h, const Unit& unit, double c) {
  double sum = 0.0;
  for (std::size_t e : unit.generating_set) sum += h.edge_weight(e) / (c * static_cast<double>(h.edge(e).size()));
  return sum;
}

/// (1/c) sum_{e in E_0} sigma(e) |e \ W|
double twin_magnitude(const Hypergraph& h, const Unit& unit, double c) {
  double sum = 0.0;
  for (std::size_t e : unit.generating_set) {
    sum += h.sigma(e) * static_cast<double>(h.edge(e).size() - unit.size());
  }
  return sum / c;
}

BoundResult unit_bounds(BoundModel model, const Hypergraph& h, const Unit& unit, const DerivativeBounds& bounds,
                        double eps) {
  const UnitEigenpair pair = unit_eigenpair(h, unit);
  BoundResult out;
  out.eigenvalues.push_back({pair.eigenvalue, Provenance::UnitFormula, {}});
  out.checks.push_back(evaluate_bound(model, pair.eigenvalue, bounds, eps));
  return out;
}

BoundResult twin_bounds(BoundModel model, const Hypergraph& h, const TwinPair& pair, const DerivativeBounds& bounds,
                        double eps) {
  if (!pair.sigma_preserving) {
    throw Error(ErrorKind::NotSigmaPreserving, "canonical bijection of the twin pair is not sigma-preserving");
  }
  const auto members = union_of(pair);
  const auto c = common_vertex_weight(h, members);
  if (!c) throw Error(ErrorKind::NonConstantVertexWeight, "vertex weight varies across the twin units");

  const double w = h.sigma(pair.first.generating_set.front());
  for (const Unit* unit : {&pair.first, &pair.second}) {
    for (std::size_t e : unit->generating_set) {
      if (!nearly_equal(h.sigma(e), w)) {
        throw Error(ErrorKind::NonConstantSigma, "sigma is not constant on the generating sets of the twin pair");
      }
    }
  }

  BoundResult out;
  out.eigenvalues.push_back({-twin_magnitude(h, pair.second, *c), Provenance::TwinFormula, {}});
  out.eigenvalues.push_back({-unit_magnitude(h, pair.first, *c), Provenance::UnitFormula, {}});
  out.eigenvalues.push_back({-unit_magnitude(h, pair.second, *c), Provenance::UnitFormula, {}});
  for (const auto& entry : out.eigenvalues) out.checks.push_back(evaluate_bound(model, entry.value, bounds, eps));
  return out;
}

/// Weighted norm of the part of x in T_cluster (delta_V constant on the cluster).
double tangent_norm(const VertexFunction& x, std::span<const std::size_t> cluster, double weight) {
  double mean = 0.0;
  for (std::size_t v : cluster) mean += x[idx(v)];
  mean /= static_cast<double>(cluster.size());
  double sq = 0.0;
  for (std::size_t v : cluster) sq += (x[idx(v)] - mean) * (x[idx(v)] - mean);
  return std::sqrt(weight * sq);
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::CertifiedStable: return "CERTIFIED_STABLE";
    case Verdict::NotCertified: return "NOT_CERTIFIED";
    case Verdict::EmpiricallyUnstable: return "EMPIRICALLY_UNSTABLE";
  }
  return "NOT_CERTIFIED";
}

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::UnitFormula: return "unit";
    case Provenance::TwinFormula: return "twin";
    case Provenance::Contraction: return "contraction";
    case Provenance::TwinClass: return "twin-class";
  }
  return "unit";
}

std::string_view to_string(BoundModel model) {
  switch (model) {
    case BoundModel::Discrete: return "discrete";
    case BoundModel::Continuous: return "continuous";
    case BoundModel::Certificate: return "certificate";
  }
  return "discrete";
}

std::string_view to_string(EmpiricalVerdict verdict) {
  switch (verdict) {
    case EmpiricalVerdict::Decaying: return "DECAYING";
    case EmpiricalVerdict::NotDecaying: return "NOT_DECAYING";
    case EmpiricalVerdict::Unstable: return "EMPIRICALLY_UNSTABLE";
  }
  return "NOT_DECAYING";
}

BoundCheck evaluate_bound(BoundModel model, double lambda, const DerivativeBounds& bounds, double eps) {
  BoundCheck check;
  check.model = model;
  check.lambda = lambda;
  check.degenerate = bounds.sup_f_prime == 0.0;
  switch (model) {
    case BoundModel::Discrete:
      check.lhs = bounds.sup_g_prime + eps * std::abs(lambda) * bounds.sup_f_prime;
      check.rhs = 1.0;
      break;
    case BoundModel::Continuous:
      check.lhs = bounds.sup_g_prime + eps * lambda * bounds.sup_f_prime;
      check.rhs = 0.0;
      break;
    case BoundModel::Certificate:
      check.lhs = std::abs(bounds.sup_g_prime + eps * lambda * bounds.sup_f_prime);
      check.rhs = 1.0;
      break;
  }
  check.pass = check.lhs < check.rhs;
  return check;
}

bool BoundResult::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

BoundResult discrete_unit_stability(const Hypergraph& h, const Unit& unit, const DerivativeBounds& bounds,
                                    double eps) {
  return unit_bounds(BoundModel::Discrete, h, unit, bounds, eps);
}

BoundResult continuous_unit_stability(const Hypergraph& h, const Unit& unit, const DerivativeBounds& bounds,
                                      double eps) {
  return unit_bounds(BoundModel::Continuous, h, unit, bounds, eps);
}

BoundResult discrete_twin_stability(const Hypergraph& h, const TwinPair& pair, const DerivativeBounds& bounds,
                                    double eps) {
  return twin_bounds(BoundModel::Discrete, h, pair, bounds, eps);
}

BoundResult continuous_twin_stability(const Hypergraph& h, const TwinPair& pair,
                                      const DerivativeBounds& bounds, double eps) {
  return twin_bounds(BoundModel::Continuous, h, pair, bounds, eps);
}

Eigen::MatrixXd eta_components(const Spectrum& spec, const Trajectory& base, const Trajectory& perturbed) {
  if (base.times != perturbed.times) {
    throw Error(ErrorKind::TimeGridMismatch, "base and perturbed trajectories are sampled at different times");
  }
  const Index n = spec.eigenvectors.rows();
  Eigen::MatrixXd eta(idx(base.size()), n);
  const Eigen::MatrixXd weighted = spec.vertex_weights.asDiagonal() * spec.eigenvectors;
  for (std::size_t t = 0; t < base.size(); ++t) {
    if (base.states[t].size() != n || perturbed.states[t].size() != n) {
      throw Error(ErrorKind::DomainMismatch, "trajectory states do not match the spectrum's vertex set");
    }
    eta.row(idx(t)) = (weighted.transpose() * (perturbed.states[t] - base.states[t])).transpose();
  }
  return eta;
}

LyapunovEstimate lyapunov_sigma(const Trajectory& traj, std::span<const std::size_t> cluster,
                                const Spectrum& spec, const NodeDynamics& dyn, double eps, std::size_t i,
                                double tol) {
  if (traj.mode != TimeMode::Discrete) {
    throw Error(ErrorKind::InvalidParameter, "Lyapunov estimate is defined for discrete trajectories");
  }
  if (traj.size() < 2) throw Error(ErrorKind::InvalidParameter, "need at least one step");
  if (cluster.empty()) throw Error(ErrorKind::ClusterTooSmall, "cluster is empty");
  if (i >= spec.size()) throw Error(ErrorKind::InvalidParameter, "eigendirection index out of range");

  LyapunovEstimate out;
  out.lambda = spec.eigenvalues[idx(i)];
  const std::size_t steps = traj.size() - 1;
  std::vector<double> common(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    const auto& state = traj.states[s];
    if (cluster_spread(state, cluster) > tol) {
      throw Error(ErrorKind::NotSynchronized,
                  "cluster spread exceeds tolerance at t = " + std::to_string(traj.times[s]));
    }
    common[s] = state[idx(cluster.front())];
  }

  double sum = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    const double factor = dyn.g.derivative(common[s]) + eps * out.lambda * dyn.f.derivative(common[s]);
    if (factor == 0.0) out.log_of_zero = true;
    sum += std::log(std::abs(factor));
    out.sigma.push_back(sum / static_cast<double>(s + 1));
  }

  if (dyn.same_maps()) {
    const std::size_t start = steps / 2;
    double acc = 0.0;
    for (std::size_t s = start; s < steps; ++s) acc += std::log(std::abs(dyn.f.derivative(common[s])));
    const double sigma_inf = acc / static_cast<double>(steps - start);
    const double expo = std::exp(-sigma_inf);
    const double lo = -(expo + 1.0) / eps;
    const double hi = (expo - 1.0) / eps;
    out.sigma_inf = sigma_inf;
    out.interval_test = out.lambda > lo && out.lambda < hi;
    out.verdict = *out.interval_test ? Verdict::CertifiedStable : Verdict::NotCertified;
  } else {
    out.verdict = out.sigma.back() < 0.0 ? Verdict::CertifiedStable : Verdict::NotCertified;
  }
  return out;
}

std::optional<double> fit_rate(std::span<const double> series, double floor) {
  auto fit = [&](std::size_t start) -> std::optional<double> {
    double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t t = start; t < series.size(); ++t) {
      const double a = std::abs(series[t]);
      if (!(a > floor) || !std::isfinite(a)) continue;
      const double x = static_cast<double>(t);
      const double y = std::log(a);
      n += 1;
      st += x;
      sy += y;
      stt += x * x;
      sty += x * y;
    }
    if (n < 2) return std::nullopt;
    const double denom = n * stt - st * st;
    if (denom == 0.0) return std::nullopt;
    return std::exp((n * sty - st * sy) / denom);
  };
  if (auto r = fit(series.size() / 2)) return r;
  return fit(0);
}

PerturbationResult perturb_and_measure(const Hypergraph& h, std::span<const std::size_t> cluster,
                                       const NodeDynamics& dyn, double eps, const PerturbationOptions& opts) {
  classify_cluster(h, cluster);
  const auto weight = common_vertex_weight(h, cluster);
  if (!weight) throw Error(ErrorKind::HypothesisViolated, "vertex weight is not constant on the cluster");
  if (!(opts.delta >= 0.0)) throw Error(ErrorKind::InvalidParameter, "perturbation size must be nonnegative");

  std::mt19937_64 rng(opts.seed);
  const Interval range = dyn.interval();
  VertexFunction x0 = random_state(h.num_vertices(), range, rng);
  Interval inner = range;
  if (range.bounded()) {
    const double pad = 0.1 * (range.hi - range.lo);
    inner = {range.lo + pad, range.hi - pad};
  }
  const double common = random_state(1, inner, rng)[0];
  for (std::size_t v : cluster) x0[idx(v)] = common;

  VertexFunction direction = VertexFunction::Zero(x0.size());
  std::normal_distribution<double> normal(0.0, 1.0);
  double mean = 0.0;
  for (std::size_t v : cluster) mean += (direction[idx(v)] = normal(rng));
  mean /= static_cast<double>(cluster.size());
  for (std::size_t v : cluster) direction[idx(v)] -= mean;
  direction /= std::sqrt(inner_product_v(h, direction, direction));

  PerturbationResult out;
  out.run.base = simulate_discrete(h, dyn, eps, x0, opts.steps);
  out.run.perturbed = simulate_discrete(h, dyn, eps, x0 + opts.delta * direction, opts.steps);
  const Spectrum spec = spectrum(build_operator(h));
  out.run.eta = eta_components(spec, out.run.base, out.run.perturbed);

  const double initial = out.run.eta.row(0).cwiseAbs().maxCoeff();
  for (Index i = 0; i < out.run.eta.cols(); ++i) {
    if (initial == 0.0 || std::abs(out.run.eta(0, i)) <= 1e-8 * initial) continue;
    std::vector<double> series(static_cast<std::size_t>(out.run.eta.rows()));
    for (Index t = 0; t < out.run.eta.rows(); ++t) series[static_cast<std::size_t>(t)] = out.run.eta(t, i);
    auto rate = fit_rate(series);
    // nothing left above the floor: the component died out within the window
    if (!rate && std::abs(series.back()) <= 1e-14) rate = 0.0;
    out.directions.push_back(static_cast<std::size_t>(i));
    out.rates.push_back(rate.value_or(std::numeric_limits<double>::quiet_NaN()));
  }

  const double start = tangent_norm(out.run.perturbed.states.front() - out.run.base.states.front(), cluster, *weight);
  const double end = tangent_norm(out.run.perturbed.states.back() - out.run.base.states.back(), cluster, *weight);
  out.growth = start > 0.0 ? end / start : 0.0;
  if (out.growth > 10.0) {
    out.verdict = EmpiricalVerdict::Unstable;
  } else if (std::all_of(out.rates.begin(), out.rates.end(), [](double r) { return r < 1.0; })) {
    out.verdict = EmpiricalVerdict::Decaying;
  } else {
    out.verdict = EmpiricalVerdict::NotDecaying;
  }
  return out;
}

CertificateReport contraction_stability_certificate(const Hypergraph& h, const DerivativeBounds& bounds,
                                                    double eps, double c_v, double c_e) {
  auto not_met = [](const std::string& what) { return Error(ErrorKind::HypothesesNotMet, what); };

  const auto units = find_units(h);
  CertificateReport out;
  out.unit_cardinality = units.front().size();
  for (const auto& unit : units) {
    if (unit.size() != out.unit_cardinality) {
      throw not_met("equal cardinality: units of size " + std::to_string(out.unit_cardinality) + " and " +
                    std::to_string(unit.size()));
    }
  }
  std::vector<double> unit_weight;
  for (const auto& unit : units) {
    const auto c = common_vertex_weight(h, unit.members);
    if (!c) throw not_met("vertex weight: delta_V is not constant on every unit");
    unit_weight.push_back(*c);
  }
  const auto twins = find_twins(h, units);
  for (const auto& pair : twins) {
    if (!pair.sigma_preserving) throw not_met("sigma-preservation: a canonical twin bijection is not sigma-preserving");
  }
  std::vector<std::vector<std::size_t>> classes;
  try {
    classes = twin_classes(units, twins);
  } catch (const Error& e) {
    throw not_met(std::string("twin classes: ") + e.what());
  }

  // Scaled quotient spectrum.
  std::vector<double> quotient_values{0.0};
  if (units.size() >= 2) {
    const Contraction contraction = [&] {
      try {
        return contract(h, c_v, c_e);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::LoopInContraction) throw;
        throw not_met(std::string("contraction: ") + e.what());
      }
    }();
    for (std::size_t v = 0; v < h.num_vertices(); ++v) {
      const double lifted = c_v * contraction.quotient.vertex_weight(contraction.vertex_map[v]);
      if (!nearly_equal(h.vertex_weight(v), lifted)) throw not_met("vertex weight relation delta_V = c_V * lift");
    }
    for (std::size_t q = 0; q < contraction.quotient.num_edges(); ++q) {
      if (!nearly_equal(contraction.lifted_sigma[q], c_e * contraction.quotient.sigma(q))) {
        throw not_met("edge weight relation sigma-hat_H = c_E * sigma_quotient");
      }
    }
    const Spectrum qs = spectrum(build_operator(contraction.quotient));
    quotient_values.assign(qs.eigenvalues.data(), qs.eigenvalues.data() + qs.eigenvalues.size());
  }
  out.scale = static_cast<double>(out.unit_cardinality) * c_e / c_v;
  for (double mu : quotient_values) out.assembled.push_back({out.scale * mu, Provenance::Contraction, "quotient"});

  for (std::size_t u = 0; u < units.size(); ++u) {
    if (out.unit_cardinality < 2) break;
    const double b = -unit_magnitude(h, units[u], unit_weight[u]);
    for (std::size_t k = 1; k < out.unit_cardinality; ++k) {
      out.assembled.push_back({b, Provenance::UnitFormula, "U" + std::to_string(u)});
    }
  }

  for (std::size_t a = 0; a < classes.size(); ++a) {
    const auto& cls = classes[a];
    for (std::size_t k = 1; k < cls.size(); ++k) {
      const double b0 = unit_magnitude(h, units[cls[0]], unit_weight[cls[0]]);
      const double bk = unit_magnitude(h, units[cls[k]], unit_weight[cls[k]]);
      const double c0 = twin_magnitude(h, units[cls[0]], unit_weight[cls[0]]);
      const double ck = twin_magnitude(h, units[cls[k]], unit_weight[cls[k]]);
      if (!nearly_equal(b0, bk, kSpectralTolerance) || !nearly_equal(c0, ck, kSpectralTolerance)) {
        throw not_met("class constants: b_a or c_a differs across twin class C" + std::to_string(a));
      }
    }
    if (cls.size() >= 2) {
      out.twin_class_values.push_back(
          {-twin_magnitude(h, units[cls[0]], unit_weight[cls[0]]), Provenance::TwinClass, "C" + std::to_string(a)});
    }
  }

  const Spectrum direct = spectrum(build_operator(h));
  out.direct = direct.eigenvalues;
  std::vector<double> assembled;
  for (const auto& entry : out.assembled) assembled.push_back(entry.value);
  std::sort(assembled.begin(), assembled.end(), std::greater<>());
  const double tol = kSpectralTolerance * std::max(1.0, out.direct.cwiseAbs().maxCoeff());
  if (assembled.size() != direct.size()) {
    throw Error(ErrorKind::SpectrumMismatch, "assembled list has " + std::to_string(assembled.size()) +
                                                 " values, spectrum has " + std::to_string(direct.size()));
  }
  for (std::size_t k = 0; k < assembled.size(); ++k) {
    out.max_mismatch = std::max(out.max_mismatch, std::abs(assembled[k] - out.direct[idx(k)]));
  }
  if (out.max_mismatch > tol) {
    throw Error(ErrorKind::SpectrumMismatch,
                "assembled eigenvalues differ from the direct spectrum by " + std::to_string(out.max_mismatch));
  }
  for (const auto& entry : out.twin_class_values) {
    const bool found = std::any_of(quotient_values.begin(), quotient_values.end(),
                                   [&](double mu) { return std::abs(out.scale * mu - entry.value) <= tol; });
    if (!found) {
      throw Error(ErrorKind::SpectrumMismatch, "twin-class eigenvalue of " + entry.source +
                                                   " is missing from the scaled quotient spectrum");
    }
  }

  for (const auto& entry : out.assembled) out.checks.push_back(evaluate_bound(BoundModel::Certificate, entry.value, bounds, eps));
  for (const auto& entry : out.twin_class_values) {
    out.checks.push_back(evaluate_bound(BoundModel::Certificate, entry.value, bounds, eps));
  }
  const bool all = std::all_of(out.checks.begin(), out.checks.end(), [](const BoundCheck& c) { return c.pass; });
  out.verdict = all ? Verdict::CertifiedStable : Verdict::NotCertified;
  return out;
}

namespace {

StabilityReport finish(StabilityReport report, const Hypergraph& h, const NodeDynamics& dyn, double eps,
                       const AssessOptions& opts) {
  const BoundModel model = opts.model == TimeMode::Discrete ? BoundModel::Discrete : BoundModel::Continuous;
  bool certified = false;
  bool any = false;
  for (const auto& check : report.checks) {
    if (check.model != model) continue;
    certified = any ? certified && check.pass : check.pass;
    any = true;
  }
  report.verdict = certified ? Verdict::CertifiedStable : Verdict::NotCertified;
  if (opts.empirical && opts.model == TimeMode::Discrete) {
    report.empirical = perturb_and_measure(h, report.members, dyn, eps, opts.perturbation);
    if (report.empirical->verdict == EmpiricalVerdict::Unstable) report.verdict = Verdict::EmpiricallyUnstable;
  }
  return report;
}

}  // namespace

StabilityReport assess_unit(const Hypergraph& h, const Unit& unit, const std::string& label,
                            const NodeDynamics& dyn, double eps, const AssessOptions& opts) {
  require_coupling(eps);
  const auto bounds = DerivativeBounds::of(dyn);
  StabilityReport report;
  report.cluster = label;
  report.members = unit.members;
  const auto discrete = discrete_unit_stability(h, unit, bounds, eps);
  const auto continuous = continuous_unit_stability(h, unit, bounds, eps);
  report.eigenvalues = discrete.eigenvalues;
  for (auto& e : report.eigenvalues) e.source = label;
  report.checks = discrete.checks;
  report.checks.insert(report.checks.end(), continuous.checks.begin(), continuous.checks.end());
  return finish(std::move(report), h, dyn, eps, opts);
}

StabilityReport assess_twin(const Hypergraph& h, const TwinPair& pair, const std::string& label,
                            const NodeDynamics& dyn, double eps, const AssessOptions& opts) {
  require_coupling(eps);
  const auto bounds = DerivativeBounds::of(dyn);
  StabilityReport report;
  report.cluster = label;
  report.members = union_of(pair);
  const auto discrete = discrete_twin_stability(h, pair, bounds, eps);
  const auto continuous = continuous_twin_stability(h, pair, bounds, eps);
  report.eigenvalues = discrete.eigenvalues;
  for (auto& e : report.eigenvalues) e.source = label;
  report.checks = discrete.checks;
  report.checks.insert(report.checks.end(), continuous.checks.begin(), continuous.checks.end());
  return finish(std::move(report), h, dyn, eps, opts);
}

}  // namespace hsync
