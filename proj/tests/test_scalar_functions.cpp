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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bregmat/errors.hpp"
#include "bregmat/scalar_functions.hpp"

using namespace bregmat;

namespace {

std::vector<ScalarFunctionFamily> builtin_families() {
  return {ScalarFunctionFamily::tsallis(0.5),  ScalarFunctionFamily::tsallis(1.0),
          ScalarFunctionFamily::tsallis(1.5),  ScalarFunctionFamily::tsallis(2.0),
          ScalarFunctionFamily::tsallis(3.0),  ScalarFunctionFamily::entropy(),
          ScalarFunctionFamily::shifted_entropy(0.3), ScalarFunctionFamily::quadratic(1.0),
          ScalarFunctionFamily::power(3.0),    ScalarFunctionFamily::power(-1.0)};
}

std::vector<double> log_grid() {
  std::vector<double> xs;
  for (int k = -12; k <= 12; ++k) xs.push_back(std::pow(10.0, 0.5 * k));
  return xs;
}

}  // namespace

TEST_CASE("scalar_eval examples") {
  for (double q : {0.5, 1.0, 1.5, 2.0, 3.0})
    CHECK(scalar_eval(ScalarFunctionFamily::tsallis(q), 0, 1.0) == 0.0);
  CHECK(scalar_eval(ScalarFunctionFamily::entropy(), 2, 2.0) == doctest::Approx(0.5));
  CHECK(scalar_eval(ScalarFunctionFamily::tsallis(2.0), 0, 3.0) == doctest::Approx(6.0));
  // (x^q - x)/(q - 1) closed form at another point.
  CHECK(scalar_eval(ScalarFunctionFamily::tsallis(1.5), 0, 4.0) ==
        doctest::Approx((8.0 - 4.0) / 0.5).epsilon(1e-14));
  CHECK(scalar_eval(ScalarFunctionFamily::tsallis(1.0), 0, 3.0) ==
        doctest::Approx(3.0 * std::log(3.0)).epsilon(1e-14));
  CHECK(scalar_eval(ScalarFunctionFamily::quadratic(2.0), 0, 3.0) == doctest::Approx(9.0));
  CHECK(scalar_eval(ScalarFunctionFamily::power(3.0), 2, 2.0) == doctest::Approx(12.0));
}

TEST_CASE("scalar_eval errors") {
  CHECK_THROWS_AS(scalar_eval(ScalarFunctionFamily::entropy(), 0, 0.0), DomainError);
  CHECK_THROWS_AS(scalar_eval(ScalarFunctionFamily::entropy(), 1, -1.0), DomainError);
  const auto no_second = ScalarFunctionFamily::custom(
      {"cube", [](double x) { return x * x * x; }, [](double x) { return 3 * x * x; },
       nullptr, 0.0, 0.0});
  CHECK_FALSE(no_second.has_second_derivative());
  CHECK(scalar_eval(no_second, 1, 2.0) == 12.0);
  CHECK_THROWS_AS(scalar_eval(no_second, 2, 2.0), UnsupportedError);
  CHECK_THROWS_AS(ScalarFunctionFamily::tsallis(0.0), DomainError);
  CHECK_THROWS_AS(ScalarFunctionFamily::tsallis(-1.0), DomainError);
  CHECK_THROWS_AS(ScalarFunctionFamily::shifted_entropy(-0.1), DomainError);
  CHECK_THROWS_AS(ScalarFunctionFamily::quadratic(-1.0), DomainError);
  CHECK_THROWS_AS(ScalarFunctionFamily::power(0.5), DomainError);
}

TEST_CASE("q-logarithm") {
  for (double q : {0.5, 1.0, 1.5, 2.0}) CHECK(ln_q(q, 1.0) == 0.0);
  CHECK(ln_q(1.0, std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ln_q(2.0, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ln_q(0.5, 4.0) == doctest::Approx((0.5 - 1.0) / -0.5).epsilon(1e-15));
  CHECK_THROWS_AS(ln_q(1.5, 0.0), DomainError);
  for (double x : {0.1, 1.0, 7.0}) {
    CHECK(std::abs(ln_q(1.0 + 1e-6, x) - std::log(x)) <= 1e-5);
    CHECK(std::abs(ln_q(1.0 - 1e-6, x) - std::log(x)) <= 1e-5);
    // Both sides of the switch.
    CHECK(std::abs(ln_q(1.0 + 2e-9, x) - ln_q(1.0 + 5e-10, x)) <= 1e-8);
  }
}

TEST_CASE("Tsallis function vanishes at zero") {
  for (double q : {0.5, 1.0, 1.5, 2.0}) {
    const auto fam = ScalarFunctionFamily::tsallis(q);
    double prev = std::numeric_limits<double>::infinity();
    for (double x : {1e-3, 1e-6, 1e-9}) {
      const double v = std::abs(scalar_eval(fam, 0, x));
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 1e-3);
    CHECK(fam.continuous_at_zero());
    CHECK(*fam.value_at_zero() == 0.0);
  }
}

TEST_CASE("boundary behaviour of f' at zero") {
  CHECK(ScalarFunctionFamily::tsallis(2.0).fprime_limit_at_zero() == doctest::Approx(-1.0));
  CHECK(ScalarFunctionFamily::tsallis(1.5).fprime_limit_at_zero() == doctest::Approx(-2.0));
  CHECK(std::isinf(ScalarFunctionFamily::tsallis(1.0).fprime_limit_at_zero()));
  CHECK(std::isinf(ScalarFunctionFamily::tsallis(0.5).fprime_limit_at_zero()));
  CHECK(std::isinf(ScalarFunctionFamily::entropy().fprime_limit_at_zero()));
  CHECK(ScalarFunctionFamily::quadratic(3.0).fprime_limit_at_zero() == 0.0);
  CHECK(ScalarFunctionFamily::shifted_entropy(0.5).fprime_limit_at_zero() ==
        doctest::Approx(std::log(0.5) + 1.0));
  CHECK_FALSE(ScalarFunctionFamily::power(-1.0).continuous_at_zero());
}

TEST_CASE("convexity and derivative consistency on a log grid") {
  for (const auto& fam : builtin_families()) {
    CAPTURE(fam.to_string());
    for (double x : log_grid()) {
      CAPTURE(x);
      CHECK(fam.fsecond(x) >= -1e-12);
      const double h = 1e-4 * x;
      const double d1 = (fam.f(x + h) - fam.f(x - h)) / (2 * h);
      const double scale1 = std::abs(fam.fprime(x)) + std::abs(fam.f(x)) / x;
      CHECK(std::abs(d1 - fam.fprime(x)) <= 1e-6 * scale1);
      const double d2 = (fam.fprime(x + h) - fam.fprime(x - h)) / (2 * h);
      const double scale2 = std::abs(fam.fsecond(x)) + std::abs(fam.fprime(x)) / x;
      CHECK(std::abs(d2 - fam.fsecond(x)) <= 1e-6 * scale2);
    }
  }
}

TEST_CASE("shifted entropy is entropy translated") {
  const auto e = ScalarFunctionFamily::entropy();
  for (double lam : {0.0, 0.1, 1.0, 10.0}) {
    const auto s = ScalarFunctionFamily::shifted_entropy(lam);
    for (double x : {1e-3, 0.5, 2.0, 40.0}) {
      CHECK(s.f(x) == e.f(x + lam));
      CHECK(s.fprime(x) == e.fprime(x + lam));
    }
  }
}

TEST_CASE("divided differences") {
  const auto quad = ScalarFunctionFamily::quadratic(1.0);
  for (auto [a, b] : {std::pair{1.0, 3.0}, {0.2, 0.7}, {5.0, 5.0}})
    CHECK(divided_difference(quad, 0, a, b) == doctest::Approx((a + b) / 2).epsilon(1e-14));
  const auto ent = ScalarFunctionFamily::entropy();
  for (double x : {0.3, 1.0, 8.0}) CHECK(divided_difference(ent, 1, x, x) == doctest::Approx(1 / x));
  CHECK(divided_difference(ent, 1, 1.0, std::numbers::e) ==
        doctest::Approx(1.0 / (std::numbers::e - 1.0)).epsilon(1e-14));
  CHECK(divided_difference(ent, 1, 1.0, std::numbers::e) ==
        divided_difference(ent, 1, std::numbers::e, 1.0));
  CHECK_THROWS_AS(divided_difference(ent, 0, 0.0, 1.0), DomainError);

  // Just above and below the coincidence threshold.
  for (const auto& fam : builtin_families()) {
    for (double a : {0.01, 1.0, 50.0}) {
      const double gap = kDividedDifferenceThreshold * std::max(1.0, a);
      for (int order : {0, 1}) {
        const double above = divided_difference(fam, order, a + 1.01 * gap, a);
        const double below = divided_difference(fam, order, a + 0.99 * gap, a);
        CHECK(std::abs(above - below) <= 1e-5 * (1.0 + std::abs(fam.fsecond(a))));
      }
    }
  }
}

TEST_CASE("family spec strings") {
  CHECK(ScalarFunctionFamily::parse("tsallis:q=1.5").to_string() == "tsallis:q=1.5");
  CHECK(ScalarFunctionFamily::parse("entropy").to_string() == "entropy");
  CHECK(ScalarFunctionFamily::parse("shifted-entropy:lambda=0.3").to_string() ==
        "shifted-entropy:lambda=0.3");
  CHECK(ScalarFunctionFamily::parse("quadratic:gamma=1").to_string() == "quadratic:gamma=1");
  CHECK(ScalarFunctionFamily::parse("power:p=3").to_string() == "power:p=3");
  for (const auto& fam : builtin_families())
    CHECK(ScalarFunctionFamily::parse(fam.to_string()).to_string() == fam.to_string());
  for (const char* bad : {"tsallis:q=", "tsallis", "tsallis:q=abc", "tsallis:p=2",
                          "foo", "", "entropy:q=1", "quadratic:gamma=1x"})
    CHECK_THROWS_AS(ScalarFunctionFamily::parse(bad), std::invalid_argument);
  CHECK_THROWS_AS(ScalarFunctionFamily::parse("tsallis:q=-2"), std::invalid_argument);
  CHECK_THROWS_AS(ScalarFunctionFamily::tsallis(-2.0), DomainError);
}

TEST_CASE("adding an affine function") {
  const auto base = ScalarFunctionFamily::tsallis(1.5);
  const auto shifted = plus_affine(base, 2.0, -1.0);
  for (double x : {0.1, 1.0, 3.0}) {
    CHECK(shifted.f(x) == doctest::Approx(base.f(x) + 2 * x - 1));
    CHECK(shifted.fprime(x) == doctest::Approx(base.fprime(x) + 2));
    CHECK(shifted.fsecond(x) == doctest::Approx(base.fsecond(x)));
  }
  CHECK(*shifted.value_at_zero() == doctest::Approx(-1.0));
  CHECK(shifted.fprime_limit_at_zero() == doctest::Approx(base.fprime_limit_at_zero() + 2));
}
