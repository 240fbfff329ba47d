#include "hsync/node_dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include "hsync/error.hpp"

namespace hsync {

namespace {

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

double parse_number(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorKind::InvalidParameter,
                "cannot read number '" + std::string(text) + "' in '" + std::string(context) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

ScalarMap identity_map() {
  return {"identity", [](double x) { return x; }, [](double) { return 1.0; }, 1.0, {}};
}

ScalarMap zero_map() {
  return {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }, 0.0, {}};
}

ScalarMap linear_map(double slope) {
  return {"linear:" + format_number(slope), [slope](double x) { return slope * x; },
          [slope](double) { return slope; }, std::abs(slope), {}};
}

ScalarMap logistic_map(double a) {
  if (!(a > 0.0) || a > 4.0) {
    throw Error(ErrorKind::InvalidParameter, "logistic parameter must lie in (0, 4]");
  }
  // |a (1 - 2x)| on [0, 1] peaks at the endpoints.
  return {"logistic:" + format_number(a), [a](double x) { return a * x * (1.0 - x); },
          [a](double x) { return a * (1.0 - 2.0 * x); }, a, {0.0, 1.0}};
}

ScalarMap sine_map() {
  return {"sine", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }, 1.0, {}};
}

ScalarMap tanh_map() {
  return {"tanh", [](double x) { return std::tanh(x); },
          [](double x) {
            const double t = std::tanh(x);
            return 1.0 - t * t;
          },
          1.0, {}};
}

ScalarMap parse_scalar_map(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto no_arg = [&](ScalarMap m) {
    if (colon != std::string_view::npos) {
      throw Error(ErrorKind::InvalidParameter, "map '" + std::string(head) + "' takes no parameter");
    }
    return m;
  };
  if (head == "identity") return no_arg(identity_map());
  if (head == "zero") return no_arg(zero_map());
  if (head == "sine") return no_arg(sine_map());
  if (head == "tanh") return no_arg(tanh_map());
  if (head == "linear") return linear_map(arg.empty() ? 1.0 : parse_number(arg, spec));
  if (head == "logistic") return logistic_map(arg.empty() ? 4.0 : parse_number(arg, spec));
  throw Error(ErrorKind::UnknownPreset, "unknown dynamics '" + std::string(spec) + "'");
}

Interval NodeDynamics::interval() const {
  return {std::max(f.interval.lo, g.interval.lo), std::min(f.interval.hi, g.interval.hi)};
}

std::string NodeDynamics::name() const {
  if (same_maps()) return f.name;
  return f.name + "/" + g.name;
}

NodeDynamics parse_dynamics(std::string_view spec) {
  if (spec == "diffusion") return {identity_map(), zero_map()};
  if (const auto slash = spec.find('/'); slash != std::string_view::npos) {
    return {parse_scalar_map(spec.substr(0, slash)), parse_scalar_map(spec.substr(slash + 1))};
  }
  if (spec.starts_with("linear:") && spec.find(',') != std::string_view::npos) {
    const auto parts = split(spec.substr(7), ',');
    if (parts.size() != 2) {
      throw Error(ErrorKind::InvalidParameter, "expected linear:alpha,beta in '" + std::string(spec) + "'");
    }
    return {linear_map(parse_number(parts[0], spec)), linear_map(parse_number(parts[1], spec))};
  }
  ScalarMap m = parse_scalar_map(spec);
  return {m, m};
}

double derivative_bound_violation(const NodeDynamics& dyn, int samples) {
  const Interval range = dyn.interval();
  const double lo = range.bounded() ? range.lo : -10.0;
  const double hi = range.bounded() ? range.hi : 10.0;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double x = lo + (hi - lo) * k / std::max(1, samples - 1);
    worst = std::max(worst, std::abs(dyn.f.derivative(x)) - dyn.sup_f_prime());
    worst = std::max(worst, std::abs(dyn.g.derivative(x)) - dyn.sup_g_prime());
  }
  return worst;
}

}  // namespace hsync
