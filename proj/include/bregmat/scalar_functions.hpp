// Copyright 2026 The bregmat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BREGMAT_SCALAR_FUNCTIONS_HPP
#define BREGMAT_SCALAR_FUNCTIONS_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>

namespace bregmat {

/// |q - 1| at or below which the q-logarithm switches to ln.
inline constexpr double kQOneSwitch = 1e-9;

/// Relative coincidence threshold of the divided-difference kernel.
inline constexpr double kDividedDifferenceThreshold = 1e-7;

namespace family {

/// f(x) = x ln_q(x), q > 0.
struct Tsallis {
  double q;
};
/// f(x) = x ln x.
struct Entropy {};
/// f(x) = (x + lambda) ln(x + lambda), lambda >= 0.
struct ShiftedEntropy {
  double lambda;
};
/// f(x) = gamma x^2 / 2, gamma >= 0.
struct Quadratic {
  double gamma;
};
/// f(x) = x^p, p >= 1 or p <= 0 (convex branches only).
struct Power {
  double p;
};
/// User supplied f, f', f''. Boundary data describe the x -> 0+ limits.
struct Custom {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> fprime;
  std::function<double(double)> fsecond;  // may be empty
  std::optional<double> value_at_zero;    // nullopt: not continuous at 0
  double fprime_at_zero = 0.0;            // may be -infinity
};

}  // namespace family

/// A convex scalar function on (0, inf) together with f', f'' and its
/// boundary behaviour at zero.
class ScalarFunctionFamily {
 public:
  using Kind = std::variant<family::Tsallis, family::Entropy,
                            family::ShiftedEntropy, family::Quadratic,
                            family::Power, family::Custom>;

  /// Validates the parameters (DomainError for non-convex choices).
  explicit ScalarFunctionFamily(Kind kind);

  static ScalarFunctionFamily tsallis(double q);
  static ScalarFunctionFamily entropy();
  static ScalarFunctionFamily shifted_entropy(double lambda);
  static ScalarFunctionFamily quadratic(double gamma);
  static ScalarFunctionFamily power(double p);
  static ScalarFunctionFamily custom(family::Custom c);

  /// Parses "tsallis:q=1.5", "entropy", "shifted-entropy:lambda=0.3",
  /// "quadratic:gamma=1", "power:p=3". Throws std::invalid_argument.
  static ScalarFunctionFamily parse(const std::string& spec);

  const Kind& kind() const noexcept { return kind_; }
  /// Canonical spec string (parse(to_string()) reproduces the family).
  std::string to_string() const;

  bool continuous_at_zero() const noexcept { return value_at_zero().has_value(); }
  std::optional<double> value_at_zero() const;
  /// lim_{x->0+} f'(x); -infinity when unbounded below.
  double fprime_limit_at_zero() const;
  bool has_second_derivative() const;

  double f(double x) const;
  double fprime(double x) const;
  double fsecond(double x) const;

 private:
  Kind kind_;
};

/// f + a x + b, as a custom family with the same boundary behaviour.
ScalarFunctionFamily plus_affine(const ScalarFunctionFamily& fam, double a,
                                 double b);

/// f (order 0), f' (order 1) or f'' (order 2) at x > 0.
/// DomainError for x <= 0, UnsupportedError when f'' is unavailable.
double scalar_eval(const ScalarFunctionFamily& fam, int order, double x);

/// Deformed logarithm (x^(q-1) - 1) / (q - 1), ln x near q = 1.
double ln_q(double q, double x);

/// Divided difference of f (order 0) or f' (order 1) at a, b > 0, with the
/// derivative at the midpoint used when a and b coincide to within
/// kDividedDifferenceThreshold * max(1, |a|, |b|).
double divided_difference(const ScalarFunctionFamily& fam, int order, double a,
                          double b);

}  // namespace bregmat

#endif  // BREGMAT_SCALAR_FUNCTIONS_HPP
