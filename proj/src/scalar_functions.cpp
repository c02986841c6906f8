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

#include "bregmat/scalar_functions.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bregmat/errors.hpp"

namespace bregmat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool near_one(double q) { return std::abs(q - 1.0) <= kQOneSwitch; }

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text, const std::string& spec) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != last ||
      !std::isfinite(v))
    throw std::invalid_argument("malformed number '" + text +
                                "' in function family '" + spec + "'");
  return v;
}

}  // namespace

ScalarFunctionFamily::ScalarFunctionFamily(Kind kind) : kind_(std::move(kind)) {
  std::visit(
      Overloaded{
          [](const family::Tsallis& t) {
            if (!(t.q > 0.0))
              throw DomainError("tsallis: q must be > 0 for convexity");
          },
          [](const family::Entropy&) {},
          [](const family::ShiftedEntropy& s) {
            if (!(s.lambda >= 0.0))
              throw DomainError("shifted-entropy: lambda must be >= 0");
          },
          [](const family::Quadratic& q) {
            if (!(q.gamma >= 0.0))
              throw DomainError("quadratic: gamma must be >= 0");
          },
          [](const family::Power& p) {
            if (p.p > 0.0 && p.p < 1.0)
              throw DomainError("power: x^p is concave for 0 < p < 1");
          },
          [](const family::Custom& c) {
            if (!c.f || !c.fprime)
              throw DomainError("custom: f and f' are required");
          },
      },
      kind_);
}

ScalarFunctionFamily ScalarFunctionFamily::tsallis(double q) {
  return ScalarFunctionFamily(family::Tsallis{q});
}
ScalarFunctionFamily ScalarFunctionFamily::entropy() {
  return ScalarFunctionFamily(family::Entropy{});
}
ScalarFunctionFamily ScalarFunctionFamily::shifted_entropy(double lambda) {
  return ScalarFunctionFamily(family::ShiftedEntropy{lambda});
}
ScalarFunctionFamily ScalarFunctionFamily::quadratic(double gamma) {
  return ScalarFunctionFamily(family::Quadratic{gamma});
}
ScalarFunctionFamily ScalarFunctionFamily::power(double p) {
  return ScalarFunctionFamily(family::Power{p});
}
ScalarFunctionFamily ScalarFunctionFamily::custom(family::Custom c) {
  return ScalarFunctionFamily(std::move(c));
}

ScalarFunctionFamily ScalarFunctionFamily::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::map<std::string, double> params;
  if (colon != std::string::npos) {
    std::stringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("malformed parameter '" + item +
                                    "' in function family '" + spec + "'");
      params[item.substr(0, eq)] = parse_number(item.substr(eq + 1), spec);
    }
    if (params.empty())
      throw std::invalid_argument("missing parameters in '" + spec + "'");
  }

  auto take = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument(std::string("function family '") + spec +
                                  "' requires parameter '" + key + "'");
    const double v = it->second;
    params.erase(it);
    return v;
  };
  auto done = [&](ScalarFunctionFamily fam) {
    if (!params.empty())
      throw std::invalid_argument("unknown parameter '" + params.begin()->first +
                                  "' in function family '" + spec + "'");
    return fam;
  };

  try {
    if (name == "tsallis") return done(tsallis(take("q")));
    if (name == "entropy") return done(entropy());
    if (name == "shifted-entropy") return done(shifted_entropy(take("lambda")));
    if (name == "quadratic") return done(quadratic(take("gamma")));
    if (name == "power") return done(power(take("p")));
  } catch (const DomainError& e) {
    throw std::invalid_argument(e.what());
  }
  throw std::invalid_argument("unknown function family '" + name + "'");
}

std::string ScalarFunctionFamily::to_string() const {
  return std::visit(
      Overloaded{
          [](const family::Tsallis& t) { return "tsallis:q=" + shortest(t.q); },
          [](const family::Entropy&) { return std::string("entropy"); },
          [](const family::ShiftedEntropy& s) {
            return "shifted-entropy:lambda=" + shortest(s.lambda);
          },
          [](const family::Quadratic& q) {
            return "quadratic:gamma=" + shortest(q.gamma);
          },
          [](const family::Power& p) { return "power:p=" + shortest(p.p); },
          [](const family::Custom& c) { return "custom:" + c.name; },
      },
      kind_);
}

std::optional<double> ScalarFunctionFamily::value_at_zero() const {
  return std::visit(
      Overloaded{
          [](const family::Tsallis&) -> std::optional<double> { return 0.0; },
          [](const family::Entropy&) -> std::optional<double> { return 0.0; },
          [](const family::ShiftedEntropy& s) -> std::optional<double> {
            return s.lambda > 0.0 ? s.lambda * std::log(s.lambda) : 0.0;
          },
          [](const family::Quadratic&) -> std::optional<double> { return 0.0; },
          [](const family::Power& p) -> std::optional<double> {
            if (p.p > 0.0) return 0.0;
            if (p.p == 0.0) return 1.0;
            return std::nullopt;
          },
          [](const family::Custom& c) { return c.value_at_zero; },
      },
      kind_);
}

double ScalarFunctionFamily::fprime_limit_at_zero() const {
  return std::visit(
      Overloaded{
          [](const family::Tsallis& t) {
            return t.q > 1.0 && !near_one(t.q) ? -1.0 / (t.q - 1.0) : -kInf;
          },
          [](const family::Entropy&) { return -kInf; },
          [](const family::ShiftedEntropy& s) {
            return s.lambda > 0.0 ? std::log(s.lambda) + 1.0 : -kInf;
          },
          [](const family::Quadratic&) { return 0.0; },
          [](const family::Power& p) {
            if (p.p > 1.0) return 0.0;
            if (p.p == 1.0) return 1.0;
            if (p.p == 0.0) return 0.0;
            return -kInf;
          },
          [](const family::Custom& c) { return c.fprime_at_zero; },
      },
      kind_);
}

bool ScalarFunctionFamily::has_second_derivative() const {
  if (auto* c = std::get_if<family::Custom>(&kind_))
    return static_cast<bool>(c->fsecond);
  return true;
}

double ScalarFunctionFamily::f(double x) const {
  return std::visit(
      Overloaded{
          [x](const family::Tsallis& t) { return x * ln_q(t.q, x); },
          [x](const family::Entropy&) { return x * std::log(x); },
          [x](const family::ShiftedEntropy& s) {
            return (x + s.lambda) * std::log(x + s.lambda);
          },
          [x](const family::Quadratic& q) { return 0.5 * q.gamma * x * x; },
          [x](const family::Power& p) { return std::pow(x, p.p); },
          [x](const family::Custom& c) { return c.f(x); },
      },
      kind_);
}

double ScalarFunctionFamily::fprime(double x) const {
  return std::visit(
      Overloaded{
          [x](const family::Tsallis& t) {
            if (near_one(t.q)) return std::log(x) + 1.0;
            return ln_q(t.q, x) + std::pow(x, t.q - 1.0);
          },
          [x](const family::Entropy&) { return std::log(x) + 1.0; },
          [x](const family::ShiftedEntropy& s) {
            return std::log(x + s.lambda) + 1.0;
          },
          [x](const family::Quadratic& q) { return q.gamma * x; },
          [x](const family::Power& p) {
            return p.p == 0.0 ? 0.0 : p.p * std::pow(x, p.p - 1.0);
          },
          [x](const family::Custom& c) { return c.fprime(x); },
      },
      kind_);
}

double ScalarFunctionFamily::fsecond(double x) const {
  return std::visit(
      Overloaded{
          [x](const family::Tsallis& t) {
            return t.q * std::pow(x, t.q - 2.0);
          },
          [x](const family::Entropy&) { return 1.0 / x; },
          [x](const family::ShiftedEntropy& s) { return 1.0 / (x + s.lambda); },
          [](const family::Quadratic& q) { return q.gamma; },
          [x](const family::Power& p) {
            return p.p * (p.p - 1.0) * std::pow(x, p.p - 2.0);
          },
          [x](const family::Custom& c) {
            if (!c.fsecond)
              throw UnsupportedError("custom family '" + c.name +
                                     "' has no second derivative");
            return c.fsecond(x);
          },
      },
      kind_);
}

ScalarFunctionFamily plus_affine(const ScalarFunctionFamily& fam, double a,
                                 double b) {
  family::Custom c;
  c.name = fam.to_string() + "+affine";
  c.f = [fam, a, b](double x) { return fam.f(x) + a * x + b; };
  c.fprime = [fam, a](double x) { return fam.fprime(x) + a; };
  if (fam.has_second_derivative())
    c.fsecond = [fam](double x) { return fam.fsecond(x); };
  if (auto v0 = fam.value_at_zero()) c.value_at_zero = *v0 + b;
  c.fprime_at_zero = fam.fprime_limit_at_zero() + a;
  return ScalarFunctionFamily::custom(std::move(c));
}

double scalar_eval(const ScalarFunctionFamily& fam, int order, double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "scalar_eval: x must be > 0, got " << x;
    throw DomainError(os.str());
  }
  switch (order) {
    case 0:
      return fam.f(x);
    case 1:
      return fam.fprime(x);
    case 2:
      return fam.fsecond(x);
    default:
      throw ContractViolation("scalar_eval: order must be 0, 1 or 2");
  }
}

double ln_q(double q, double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "ln_q: x must be > 0, got " << x;
    throw DomainError(os.str());
  }
  if (near_one(q)) return std::log(x);
  // expm1 keeps full precision for q close to (but not at) 1.
  return std::expm1((q - 1.0) * std::log(x)) / (q - 1.0);
}

double divided_difference(const ScalarFunctionFamily& fam, int order, double a,
                          double b) {
  if (order != 0 && order != 1)
    throw ContractViolation("divided_difference: order must be 0 or 1");
  // Symmetric by construction: always evaluate with a >= b.
  if (a < b) std::swap(a, b);
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) > kDividedDifferenceThreshold * scale)
    return (scalar_eval(fam, order, a) - scalar_eval(fam, order, b)) / (a - b);
  return scalar_eval(fam, order + 1, 0.5 * (a + b));
}

}  // namespace bregmat
