#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>

namespace hsync {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool bounded() const;
};

/// A scalar map with its derivative and sup |derivative| over `interval`.
struct ScalarMap {
  std::string name;  // canonical spec, e.g. "logistic:4"
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double sup_derivative = 0.0;
  Interval interval;
};

ScalarMap identity_map();
ScalarMap zero_map();
ScalarMap linear_map(double slope);
ScalarMap logistic_map(double a);  // a x (1 - x) on [0, 1]
ScalarMap sine_map();
ScalarMap tanh_map();

/// "identity", "zero", "linear:a", "logistic:a", "sine", "tanh"
ScalarMap parse_scalar_map(std::string_view spec);

/// Node maps of the network x_{t+1} = g(x_t) + eps L f(x_t) and its
/// continuous counterpart.
struct NodeDynamics {
  ScalarMap f;
  ScalarMap g;

  Interval interval() const;
  double sup_f_prime() const { return f.sup_derivative; }
  double sup_g_prime() const { return g.sup_derivative; }
  bool same_maps() const { return f.name == g.name; }
  /// Round-trips through parse_dynamics.
  std::string name() const;
};

/// Accepted forms:
///   "<map>"            f = g = map
///   "linear:a,b"       f = a x, g = b x
///   "diffusion"        f = identity, g = zero
///   "<f-map>/<g-map>"  explicit pair
NodeDynamics parse_dynamics(std::string_view spec);

/// Largest excess of |f'| over sup_f_prime (resp. g) on an evenly spaced grid
/// over the interval ([-10, 10] when unbounded). Zero when the bounds hold.
double derivative_bound_violation(const NodeDynamics& dyn, int samples = 2001);

}  // namespace hsync
