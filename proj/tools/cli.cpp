#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsync/diffusion_operator.hpp"
#include "hsync/dynamics.hpp"
#include "hsync/hypergraph.hpp"
#include "hsync/hypergraph_io.hpp"
#include "hsync/node_dynamics.hpp"
#include "hsync/report.hpp"
#include "hsync/stability.hpp"
#include "hsync/units.hpp"

namespace hsync::cli {

namespace {

using Json = nlohmann::ordered_json;
using Index = Eigen::Index;

struct Config {
  std::string command;
  std::string input;
  std::string output;
  double eps = 0.1;
  double dt = kDefaultStep;
  double t_end = 10.0;
  double tol = kDefaultSyncTolerance;
  double cv = 1.0;
  double ce = 1.0;
  double delta = 1e-6;
  std::size_t steps = 0;
  std::size_t stride = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string dynamics = "logistic:4";
  std::string cluster;
  std::string mode = "discrete";
  std::string init = "random";
  std::string sweep;
  std::string format = "csv";
  bool certify_full = false;
  bool all = false;
  bool no_empirical = false;
};

/// Thrown for bad flag values; always exit 64.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  Hypergraph graph;
  std::string hash;
};

Loaded load(const Config& cfg) {
  const std::string text = read_file(cfg.input);
  return {validate(parse_hypergraph(text)), content_hash(text)};
}

Json meta(const Config& cfg, const std::string& hash, Json parameters) {
  Json m;
  m["tool"] = "hsync";
  m["version"] = HSYNC_VERSION;
  m["command"] = cfg.command;
  m["input_hash"] = hash;
  m["parameters"] = std::move(parameters);
  return m;
}

std::string csv_header(const Json& m) {
  std::string out;
  out += "# tool: hsync " + m["version"].get<std::string>() + "\n";
  out += "# command: " + m["command"].get<std::string>() + "\n";
  out += "# input_hash: " + m["input_hash"].get<std::string>() + "\n";
  out += "# parameters: " + m["parameters"].dump() + "\n";
  return out;
}

void emit(const Config& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
  } else {
    write_file(cfg.output, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("cannot read " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

NodeDynamics dynamics_of(const Config& cfg) {
  try {
    return parse_dynamics(cfg.dynamics);
  } catch (const Error& e) {
    throw UsageError(std::string("--dynamics: ") + e.what());
  }
}

TimeMode mode_of(const Config& cfg) {
  try {
    return parse_time_mode(cfg.mode);
  } catch (const Error& e) {
    throw UsageError(std::string("--mode: ") + e.what());
  }
}

std::uint64_t seed_of(Config& cfg) {
  if (!cfg.seed_given) {
    std::random_device device;
    cfg.seed = (static_cast<std::uint64_t>(device()) << 32) | device();
    cfg.seed_given = true;
  }
  return cfg.seed;
}

// ---------------------------------------------------------------- clusters

struct Structure {
  std::vector<Unit> units;
  std::vector<TwinPair> twins;
  std::vector<std::vector<std::size_t>> classes;
};

Structure structure_of(const Hypergraph& h) {
  Structure s;
  s.units = find_units(h);
  s.twins = find_twins(h, s.units);
  s.classes = twin_classes(s.units, s.twins);
  return s;
}

struct Cluster {
  std::string label;
  std::vector<std::size_t> members;
  std::optional<std::size_t> unit;  // members lie inside this unit
  std::optional<std::size_t> pair;  // members are the union of this twin pair
  std::optional<std::size_t> twin_class;
};

std::vector<std::size_t> pair_members(const TwinPair& p) {
  std::vector<std::size_t> m = p.first.members;
  m.insert(m.end(), p.second.members.begin(), p.second.members.end());
  std::sort(m.begin(), m.end());
  return m;
}

std::vector<std::size_t> class_members(const Structure& s, std::size_t c) {
  std::vector<std::size_t> m;
  for (std::size_t u : s.classes[c]) m.insert(m.end(), s.units[u].members.begin(), s.units[u].members.end());
  std::sort(m.begin(), m.end());
  return m;
}

std::optional<std::size_t> find_pair(const Structure& s, std::size_t a, std::size_t b) {
  for (std::size_t p = 0; p < s.twins.size(); ++p) {
    const auto& t = s.twins[p];
    if ((t.first_index == a && t.second_index == b) || (t.first_index == b && t.second_index == a)) return p;
  }
  return std::nullopt;
}

/// Ids U<k>, T<k>, C<k> select units, twin pairs and twin classes;
/// anything else is a comma-separated list of vertex labels.
Cluster resolve_cluster(const Hypergraph& h, const Structure& s, const std::string& text) {
  static const std::regex id_pattern("([UTC])([0-9]+)");
  std::smatch m;
  Cluster c;
  c.label = text;
  if (std::regex_match(text, m, id_pattern) && !h.find_vertex(text)) {
    const std::size_t k = std::stoul(m[2].str());
    const char kind = m[1].str()[0];
    const std::size_t count = kind == 'U' ? s.units.size() : kind == 'T' ? s.twins.size() : s.classes.size();
    if (k >= count) throw Error(ErrorKind::UnknownVertex, "no cluster with id '" + text + "'");
    if (kind == 'U') {
      c.members = s.units[k].members;
      c.unit = k;
    } else if (kind == 'T') {
      c.members = pair_members(s.twins[k]);
      c.pair = k;
    } else {
      c.members = class_members(s, k);
      c.twin_class = k;
      if (s.classes[k].size() == 1) {
        c.unit = s.classes[k].front();
      } else if (s.classes[k].size() == 2) {
        c.pair = find_pair(s, s.classes[k][0], s.classes[k][1]);
      }
    }
    return c;
  }

  const auto labels = split(text, ',');
  c.members = resolve_vertices(h, labels);
  const auto owner = unit_of_vertex(h, s.units);
  std::vector<std::size_t> touched;
  for (std::size_t v : c.members) touched.push_back(owner[v]);
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  if (touched.size() == 1) {
    c.unit = touched.front();
  } else if (touched.size() == 2) {
    if (auto p = find_pair(s, touched[0], touched[1]); p && pair_members(s.twins[*p]) == c.members) c.pair = p;
  }
  return c;
}

// ---------------------------------------------------------------- init

VertexFunction initial_state(const Hypergraph& h, const Structure& s, const NodeDynamics& dyn,
                             const std::string& init, std::mt19937_64& rng) {
  const Interval range = dyn.interval();
  if (init == "random") return random_state(h.num_vertices(), range, rng);

  if (init.starts_with("file:")) {
    const Json values = Json::parse(read_file(init.substr(5)), nullptr, false);
    if (values.is_discarded() || !values.is_object()) {
      throw Error(ErrorKind::ParseError, "initial state file must hold a JSON object {label: value}");
    }
    VertexFunction x(static_cast<Index>(h.num_vertices()));
    for (std::size_t v = 0; v < h.num_vertices(); ++v) {
      const auto it = values.find(h.vertex_label(v));
      if (it == values.end() || !it->is_number()) {
        throw Error(ErrorKind::DomainMismatch, "initial state file lacks a number for vertex '" + h.vertex_label(v) + "'");
      }
      x[static_cast<Index>(v)] = it->get<double>();
    }
    return x;
  }

  // constant-on-cluster <cluster> <value> [noise <amplitude>]
  std::istringstream in(init);
  std::string word, cluster, value_text, noise_word, amp_text;
  in >> word >> cluster >> value_text >> noise_word >> amp_text;
  if (word != "constant-on-cluster" || cluster.empty() || value_text.empty() ||
      (!noise_word.empty() && (noise_word != "noise" || amp_text.empty()))) {
    throw UsageError("--init expects 'random', 'file:<path>' or 'constant-on-cluster <cluster> <value> [noise <a>]'");
  }
  const double value = parse_double(value_text, "initial value");
  if (!range.contains(value)) throw UsageError("initial value lies outside the dynamics interval");
  const Cluster c = resolve_cluster(h, s, cluster);

  VertexFunction x;
  if (noise_word.empty()) {
    x = random_state(h.num_vertices(), range, rng);
  } else {
    const double amp = parse_double(amp_text, "noise amplitude");
    std::uniform_real_distribution<double> noise(-amp, amp);
    x.resize(static_cast<Index>(h.num_vertices()));
    for (Index v = 0; v < x.size(); ++v) x[v] = std::clamp(value + noise(rng), range.lo, range.hi);
  }
  for (std::size_t v : c.members) x[static_cast<Index>(v)] = value;
  return x;
}

// ---------------------------------------------------------------- commands

int cmd_validate(Config& cfg, std::ostream& out) {
  const auto [h, hash] = load(cfg);
  const auto [rank, corank] = h.rank_corank();
  Json j;
  j["meta"] = meta(cfg, hash, Json::object());
  j["valid"] = true;
  j["vertices"] = h.num_vertices();
  j["edges"] = h.num_edges();
  j["rank"] = rank;
  j["corank"] = corank;
  emit(cfg, out, dump(j));
  return kOk;
}

int cmd_units(Config& cfg, std::ostream& out) {
  const auto [h, hash] = load(cfg);
  Json j;
  j["meta"] = meta(cfg, hash, Json::object());
  j["units"] = report::units(h, find_units(h));
  emit(cfg, out, dump(j));
  return kOk;
}

int cmd_twins(Config& cfg, std::ostream& out) {
  const auto [h, hash] = load(cfg);
  const Structure s = structure_of(h);
  Json j;
  j["meta"] = meta(cfg, hash, Json::object());
  const Json body = report::twins(h, s.units, s.twins, s.classes);
  j["pairs"] = body["pairs"];
  j["classes"] = body["classes"];
  emit(cfg, out, dump(j));
  return kOk;
}

int cmd_spectrum(Config& cfg, std::ostream& out) {
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be 'csv' or 'json'");
  const auto [h, hash] = load(cfg);
  const Spectrum spec = spectrum(build_operator(h));
  const Json m = meta(cfg, hash, {{"format", cfg.format}});
  if (!cfg.output.empty()) write_file(cfg.output, csv_header(m) + report::eigenvectors_csv(h, spec));
  if (cfg.format == "csv") {
    out << csv_header(m) << report::spectrum_csv(spec);
  } else {
    Json j;
    j["meta"] = m;
    j["eigenvalues"] = Json::array();
    for (Index i = 0; i < spec.eigenvalues.size(); ++i) j["eigenvalues"].push_back(spec.eigenvalues[i]);
    j["analytic"] = report::analytic_eigenpairs(h);
    out << dump(j);
  }
  return kOk;
}

int cmd_contract(Config& cfg, std::ostream& out) {
  const auto [h, hash] = load(cfg);
  const Contraction c = contract(h, cfg.cv, cfg.ce);
  Json j;
  j["meta"] = meta(cfg, hash, {{"cv", cfg.cv}, {"ce", cfg.ce}});
  const Json body = report::contraction(h, c);
  for (const auto& [key, value] : body.items()) j[key] = value;
  emit(cfg, out, dump(j));
  return kOk;
}

int cmd_simulate(Config& cfg, std::ostream& out) {
  const auto [h, hash] = load(cfg);
  const NodeDynamics dyn = dynamics_of(cfg);
  const TimeMode mode = mode_of(cfg);
  require_coupling(cfg.eps);
  if (cfg.steps == 0 && mode == TimeMode::Discrete) throw UsageError("--steps must be at least 1");
  if (cfg.stride == 0) throw UsageError("--stride must be at least 1");
  if (mode == TimeMode::Continuous && !(cfg.dt > 0.0 && cfg.t_end > 0.0)) {
    throw UsageError("--dt and --t-end must be positive");
  }

  const Structure s = structure_of(h);
  std::mt19937_64 rng(seed_of(cfg));
  const VertexFunction x0 = initial_state(h, s, dyn, cfg.init, rng);
  const Trajectory traj = mode == TimeMode::Discrete
                              ? simulate_discrete(h, dyn, cfg.eps, x0, cfg.steps, cfg.stride)
                              : simulate_continuous(h, dyn, cfg.eps, x0, cfg.t_end, cfg.dt, cfg.stride);

  Cluster cluster;
  if (cfg.cluster.empty()) {
    cluster.label = "V";
    for (std::size_t v = 0; v < h.num_vertices(); ++v) cluster.members.push_back(v);
  } else {
    cluster = resolve_cluster(h, s, cfg.cluster);
  }

  Json params = {{"mode", cfg.mode}, {"dynamics", dyn.name()}, {"eps", cfg.eps}};
  if (mode == TimeMode::Discrete) {
    params["steps"] = cfg.steps;
  } else {
    params["dt"] = cfg.dt;
    params["t_end"] = cfg.t_end;
  }
  params["stride"] = cfg.stride;
  params["tol"] = cfg.tol;
  params["init"] = cfg.init;
  params["cluster"] = cluster.label;
  params["seed"] = cfg.seed;
  const Json m = meta(cfg, hash, params);

  if (!cfg.output.empty()) write_file(cfg.output, csv_header(m) + report::trajectory_csv(h, traj));
  Json j;
  j["meta"] = m;
  j["sync"] = report::sync(h, sync_report(traj, cluster.members, cfg.tol));
  out << dump(j);
  return kOk;
}

StabilityReport assess(const Hypergraph& h, const Structure& s, const Cluster& c, const NodeDynamics& dyn,
                       const Config& cfg, const AssessOptions& opts) {
  if (c.pair) return assess_twin(h, s.twins[*c.pair], c.label, dyn, cfg.eps, opts);
  if (c.unit && c.members.size() >= 2) {
    Unit sub = s.units[*c.unit];
    sub.members = c.members;
    return assess_unit(h, sub, c.label, dyn, cfg.eps, opts);
  }
  if (c.unit) throw Error(ErrorKind::SingletonUnit, "cluster '" + c.label + "' has a single vertex");
  throw Error(ErrorKind::HypothesisViolated,
              "cluster '" + c.label + "' is neither inside one unit nor the union of a twin pair");
}

std::vector<Cluster> all_clusters(const Hypergraph& h, const Structure& s) {
  std::vector<Cluster> out;
  for (std::size_t u = 0; u < s.units.size(); ++u) {
    if (s.units[u].size() >= 2) out.push_back({"U" + std::to_string(u), s.units[u].members, u, {}, {}});
  }
  for (std::size_t p = 0; p < s.twins.size(); ++p) {
    if (s.twins[p].sigma_preserving) out.push_back({"T" + std::to_string(p), pair_members(s.twins[p]), {}, p, {}});
  }
  (void)h;
  return out;
}

Json error_json(const Error& e) {
  return {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
}

/// eps_k = lo + (hi - lo) k / (n - 1)
std::vector<double> sweep_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("--sweep-eps expects lo:hi:n");
  const double lo = parse_double(parts[0], "sweep lower end");
  const double hi = parse_double(parts[1], "sweep upper end");
  const double count = parse_double(parts[2], "sweep count");
  if (!(count >= 1) || count != std::floor(count)) throw UsageError("--sweep-eps count must be a positive integer");
  const auto n = static_cast<std::size_t>(count);
  std::vector<double> grid;
  for (std::size_t k = 0; k < n; ++k) {
    grid.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  for (double e : grid) {
    if (!(e > 0.0 && e < 1.0)) throw UsageError("--sweep-eps values must lie in (0, 1)");
  }
  return grid;
}

int cmd_stability(Config& cfg, std::ostream& out) {
  const auto [h, hash] = load(cfg);
  const NodeDynamics dyn = dynamics_of(cfg);
  const TimeMode mode = mode_of(cfg);
  const auto bounds = DerivativeBounds::of(dyn);
  const int selectors = int(!cfg.cluster.empty()) + int(cfg.all) + int(cfg.certify_full);
  if (selectors != 1) throw UsageError("choose exactly one of --cluster, --all, --certify-full");
  if (cfg.steps == 0) throw UsageError("--steps must be at least 1");
  if (!(cfg.delta >= 0.0)) throw UsageError("--delta must be nonnegative");

  const Structure s = structure_of(h);
  std::vector<Cluster> clusters;
  if (cfg.all) clusters = all_clusters(h, s);
  if (!cfg.cluster.empty()) clusters.push_back(resolve_cluster(h, s, cfg.cluster));

  Json params = {{"dynamics", dyn.name()}, {"mode", cfg.mode}};
  if (!cfg.sweep.empty()) {
    const auto grid = sweep_grid(cfg.sweep);
    params["sweep_eps"] = cfg.sweep;
    params["selection"] = cfg.certify_full ? "certify-full" : cfg.all ? "all" : cfg.cluster;
    params["cv"] = cfg.cv;
    params["ce"] = cfg.ce;
    std::string csv = csv_header(meta(cfg, hash, params)) + "eps,cluster,lambda,lhs,rhs,margin,pass\n";
    const BoundModel model = cfg.certify_full ? BoundModel::Certificate
                             : mode == TimeMode::Discrete ? BoundModel::Discrete
                                                          : BoundModel::Continuous;
    for (double eps : grid) {
      auto row = [&](const std::string& label, const std::vector<BoundCheck>& checks) {
        const BoundCheck* worst = nullptr;
        for (const auto& c : checks) {
          if (c.model == model && (!worst || c.margin() < worst->margin())) worst = &c;
        }
        if (!worst) return;
        csv += report::format_value(eps) + "," + label + "," + report::format_value(worst->lambda) + "," +
               report::format_value(worst->lhs) + "," + report::format_value(worst->rhs) + "," +
               report::format_value(worst->margin()) + "," + (worst->pass ? "true" : "false") + "\n";
      };
      if (cfg.certify_full) {
        row("V", contraction_stability_certificate(h, bounds, eps, cfg.cv, cfg.ce).checks);
        continue;
      }
      Config at = cfg;
      at.eps = eps;
      for (const auto& c : clusters) {
        try {
          row(c.label, assess(h, s, c, dyn, at, {mode, false, {}}).checks);
        } catch (const Error&) {
          if (!cfg.all) throw;
        }
      }
    }
    emit(cfg, out, csv);
    return kOk;
  }

  require_coupling(cfg.eps);
  params["eps"] = cfg.eps;
  if (cfg.certify_full) {
    params["cv"] = cfg.cv;
    params["ce"] = cfg.ce;
    Json j;
    j["meta"] = meta(cfg, hash, params);
    j["certificate"] = report::certificate(contraction_stability_certificate(h, bounds, cfg.eps, cfg.cv, cfg.ce));
    emit(cfg, out, dump(j));
    return kOk;
  }

  AssessOptions opts;
  opts.model = mode;
  opts.empirical = !cfg.no_empirical;
  opts.perturbation.delta = cfg.delta;
  opts.perturbation.steps = cfg.steps;
  if (opts.empirical) {
    opts.perturbation.seed = seed_of(cfg);
    params["delta"] = cfg.delta;
    params["steps"] = cfg.steps;
    params["seed"] = cfg.seed;
  }
  params["selection"] = cfg.all ? "all" : cfg.cluster;

  Json j;
  j["meta"] = meta(cfg, hash, params);
  if (cfg.all) {
    j["reports"] = Json::array();
    for (const auto& c : clusters) {
      try {
        j["reports"].push_back(report::stability(h, assess(h, s, c, dyn, cfg, opts)));
      } catch (const Error& e) {
        Json failed = {{"cluster", c.label}, {"members", report::vertex_labels(h, c.members)}};
        const Json diagnostic = error_json(e);
        for (const auto& [key, value] : diagnostic.items()) failed[key] = value;
        j["reports"].push_back(failed);
      }
    }
  } else {
    j["report"] = report::stability(h, assess(h, s, clusters.front(), dyn, cfg, opts));
  }
  emit(cfg, out, dump(j));
  return kOk;
}

void add_input(CLI::App* sub, Config& cfg) {
  sub->add_option("-i,--input", cfg.input, "hypergraph JSON file")->required();
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter:
      return kUsage;
    case ErrorKind::SingletonUnit:
    case ErrorKind::NonConstantVertexWeight:
    case ErrorKind::NotSigmaPreserving:
    case ErrorKind::NonConstantSigma:
    case ErrorKind::HypothesisViolated:
    case ErrorKind::HypothesesNotMet:
      return kHypothesesNotMet;
    case ErrorKind::EigensolverFailure:
    case ErrorKind::StateOutOfInterval:
    case ErrorKind::NumericOverflow:
    case ErrorKind::TimeGridMismatch:
    case ErrorKind::NotSynchronized:
    case ErrorKind::SpectrumMismatch:
      return kNumericError;
    default:
      return kInputError;
  }
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016" PRIx64, hash);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Cluster synchronization analysis on weighted hypergraphs", "hsync"};
  app.set_version_flag("--version", std::string(HSYNC_VERSION));
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "check a hypergraph file");
  auto* units_cmd = app.add_subcommand("units", "list units and their generating sets");
  auto* twins_cmd = app.add_subcommand("twins", "list twin unit pairs and twin classes");
  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues (and eigenvectors with -o) of the diffusion operator");
  auto* contract_cmd = app.add_subcommand("contract", "contraction hypergraph with one vertex per unit");
  auto* simulate_cmd = app.add_subcommand("simulate", "run the network dynamics and report cluster synchronization");
  auto* stability_cmd = app.add_subcommand("stability", "stability of synchronized clusters");

  for (auto* sub : {validate_cmd, units_cmd, twins_cmd, spectrum_cmd, contract_cmd, simulate_cmd, stability_cmd}) {
    add_input(sub, cfg);
    sub->add_option("-o,--output", cfg.output, "output file");
  }
  spectrum_cmd->add_option("--format", cfg.format, "csv or json (json adds analytic eigenpairs)");
  for (auto* sub : {contract_cmd, stability_cmd}) {
    sub->add_option("--cv", cfg.cv, "vertex weight scaling c_V");
    sub->add_option("--ce", cfg.ce, "edge weight scaling c_E");
  }

  std::size_t sim_steps = 1000;
  std::size_t perturb_steps = 30;
  for (auto* sub : {simulate_cmd, stability_cmd}) {
    sub->add_option("--eps", cfg.eps, "coupling strength in (0, 1)");
    sub->add_option("--dynamics", cfg.dynamics, "logistic:a, linear:a,b, diffusion, identity, sine, tanh, f/g");
    sub->add_option("--mode", cfg.mode, "discrete or continuous");
    sub->add_option("--cluster", cfg.cluster, "U<k>, T<k>, C<k> or comma-separated vertex labels");
    sub->add_option_function<std::uint64_t>("--seed", [&cfg](const std::uint64_t& s) {
      cfg.seed = s;
      cfg.seed_given = true;
    }, "random seed (drawn and recorded when absent)");
  }
  simulate_cmd->add_option("--steps", sim_steps, "discrete steps");
  simulate_cmd->add_option("--t-end", cfg.t_end, "continuous end time");
  simulate_cmd->add_option("--dt", cfg.dt, "RK4 step");
  simulate_cmd->add_option("--tol", cfg.tol, "synchronization tolerance");
  simulate_cmd->add_option("--stride", cfg.stride, "record every k-th state");
  simulate_cmd->add_option("--init", cfg.init,
                           "random | file:<path> | 'constant-on-cluster <cluster> <value> [noise <a>]'");
  stability_cmd->add_option("--steps", perturb_steps, "perturbation window in steps");
  stability_cmd->add_option("--delta", cfg.delta, "perturbation size");
  stability_cmd->add_flag("--no-empirical", cfg.no_empirical, "skip the perturbation run");
  stability_cmd->add_flag("--all", cfg.all, "every unit with two or more vertices and every sigma-preserving twin pair");
  stability_cmd->add_flag("--certify-full", cfg.certify_full, "full-synchronization certificate via the contraction");
  stability_cmd->add_option("--sweep-eps", cfg.sweep, "lo:hi:n, CSV of the worst bound margin per eps");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << HSYNC_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << Json{{"error", "Usage"}, {"message", e.what()}}.dump() << "\n";
    err << app.help();
    return kUsage;
  }

  try {
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    cfg.steps = cfg.command == "stability" ? perturb_steps : sim_steps;
    if (cfg.command == "validate") return cmd_validate(cfg, out);
    if (cfg.command == "units") return cmd_units(cfg, out);
    if (cfg.command == "twins") return cmd_twins(cfg, out);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.command == "contract") return cmd_contract(cfg, out);
    if (cfg.command == "simulate") return cmd_simulate(cfg, out);
    return cmd_stability(cfg, out);
  } catch (const UsageError& e) {
    out << Json{{"error", "Usage"}, {"message", e.what()}}.dump() << "\n";
    return kUsage;
  } catch (const Error& e) {
    out << error_json(e).dump() << "\n";
    err << "hsync: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace hsync::cli
