// Copyright 2026 The dske-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dske/estimators.hpp"

#include <cmath>

#include "doctest.h"

namespace dske {
namespace {

TEST_SUITE("estimators") {

TEST_CASE("statistical distance") {
  const std::vector<double> p{0.75, 0.25}, q{0.5, 0.5};
  CHECK(statistical_distance(p, p) == 0.0);
  CHECK(statistical_distance(p, q) == doctest::Approx(0.25));
  const std::vector<double> a{1.0, 0.0}, b{0.0, 1.0};
  CHECK(statistical_distance(a, b) == 1.0);

  const std::vector<double> short_one{1.0};
  CHECK_THROWS_AS(statistical_distance(p, short_one), std::invalid_argument);
  const std::vector<double> not_normalized{0.5, 0.4};
  CHECK_THROWS_AS(statistical_distance(p, not_normalized),
                  std::invalid_argument);
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(3, 2) == 3);
  CHECK(binomial(11, 6) == 462);
  CHECK(binomial(12, 6) == 924);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(4, 7) == 0);
}

TEST_CASE("the large-n footnote arithmetic") {
  CHECK(std::abs(log2_binomial(99, 50) - 95.35) <= 0.01);
  // n <= 11 keeps the loss under 9 bits.
  CHECK(log2_binomial(11, 6) < 9.0);
}

TEST_CASE("clopper-pearson intervals") {
  const auto ci = clopper_pearson(0, 1000);
  CHECK(ci.low == 0.0);
  CHECK(ci.high > 0.0);
  CHECK(ci.high < 0.01);

  const auto mid = clopper_pearson(500, 1000);
  CHECK(mid.low < 0.5);
  CHECK(mid.high > 0.5);
  CHECK(mid.high - mid.low < 0.1);

  const auto full = clopper_pearson(1000, 1000);
  CHECK(full.high == 1.0);
  CHECK(full.low > 0.99);

  CHECK_THROWS_AS(clopper_pearson(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(clopper_pearson(5, 4), std::invalid_argument);
}

TEST_CASE("interval width shrinks with the square root of the trials") {
  // Quadrupling the sample halves the width; doubling shrinks it by
  // sqrt(2). Both within 20%.
  const auto width = [](std::uint64_t k, std::uint64_t n) {
    const auto ci = clopper_pearson(k, n);
    return ci.high - ci.low;
  };
  const double w1 = width(200, 1000);
  const double w2 = width(400, 2000);
  const double w4 = width(800, 4000);
  CHECK(w4 / w1 == doctest::Approx(0.5).epsilon(0.2));
  CHECK(w2 / w1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("formula values") {
  CHECK(forgery_bound(FieldSpec::gf16(), 2) == 0.125);
  CHECK(forgery_bound(FieldSpec::gf16(), 16) == 1.0);
  CHECK(forgery_bound(FieldSpec::gf16(), 40) == 1.0);
  CHECK(validation_bound(FieldSpec::gf16(), 1) == 0.125);
  const ThresholdParams p(3, 2, 1, FieldSpec::gf16());
  CHECK(skeleton_epsilon(p) == 0.375);  // C(3,2) * 2 / 16
  const ThresholdParams big(3, 2, 1, FieldSpec::gf2_64());
  CHECK(skeleton_epsilon(big) == doctest::Approx(6.0 / std::ldexp(1.0, 64)));
  CHECK(composed_epsilon(p, 36) == 1.0);  // saturates at gf16
}

TEST_CASE("forgery enumeration meets the bound exactly") {
  for (std::uint64_t s = 1; s <= 3; ++s) {
    const auto r = forgery_bound_exhaustive(FieldSpec::gf16(), s);
    CHECK(r.pass);
    CHECK(r.measured == r.bound);
    CHECK(r.measured == static_cast<double>(s) / 16.0);
  }
}

TEST_CASE("enumeration refuses oversized state spaces") {
  CHECK_THROWS_AS(forgery_bound_exhaustive(FieldSpec::gf2_64(), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(secret_validation_bound_exhaustive(FieldSpec::gf2_64(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(confidentiality_exact(FieldSpec::gf2_64(), 3, 2, 1),
                  std::invalid_argument);
}

TEST_CASE("secret validation enumeration stays under the bound") {
  const auto r = secret_validation_bound_exhaustive(FieldSpec::gf16(), 1);
  CHECK(r.pass);
  CHECK(r.measured == 0.125);  // two roots achievable, bound attained
  CHECK(r.bound == 0.125);
}

TEST_CASE("conditional secret distribution is exactly uniform") {
  const auto zero = confidentiality_exact(FieldSpec::gf16(), 3, 2, 0);
  CHECK(zero.pass);
  CHECK(zero.measured == 0.0);
  const auto one = confidentiality_exact(FieldSpec::gf16(), 3, 2, 1);
  CHECK(one.pass);
  CHECK(one.measured == 0.0);
  const auto two = confidentiality_exact(FieldSpec::gf16(), 3, 2, 2);
  CHECK(two.pass);
  CHECK(two.measured > 0.0);  // k shares determine the secret
}

TEST_CASE("eve's view is independent of the payload") {
  const auto r =
      eve_view_independence_exact(FieldSpec::gf16(), 3, 2, 1, {1});
  CHECK(r.pass);
  CHECK(r.measured == 0.0);
  CHECK_THROWS_AS(
      eve_view_independence_exact(FieldSpec::gf16(), 3, 2, 1, {1, 2}),
      std::invalid_argument);
}

TEST_CASE("composition estimate requires general mode") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  cfg.trials = 50;
  CHECK_THROWS_AS(protocol_epsilon_estimate(cfg), std::invalid_argument);
  cfg.mode = ProtocolMode::general;
  const auto r = protocol_epsilon_estimate(cfg);
  CHECK(r.pass);
  CHECK(r.measured == 0.0);
}

TEST_CASE("bound reports serialize to json") {
  BoundReport r;
  r.name = "demo";
  r.bound = 0.5;
  r.measured = 0.25;
  r.method = "exhaustive";
  r.pass = true;
  const auto j = r.to_json();
  CHECK(j.find("\"name\":\"demo\"") != std::string::npos);
  CHECK(j.find("\"pass\":true") != std::string::npos);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dske
