// Copyright 2026 The nbspec authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nbspec/errors.hpp"
#include "nbspec/pathmatrices.hpp"
#include "nbspec/prooforacle.hpp"

using namespace nbspec;

namespace {

Rational rat_pow(const Rational& base, std::size_t exp) {
  Rational out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

TEST_CASE("binomial product closed forms") {
  // k = 1 collapses to f = 1 - p/q for any admissible pair.
  const std::vector<std::pair<Rational, Rational>> points = {
      {Rational(1, 8), Rational(1, 8)},
      {Rational(1, 10), Rational(1, 8)},
      {Rational(3, 16), Rational(1, 5)},
  };
  for (const auto& [p, q] : points) {
    const BinomialProductReport rep = binomial_product_expectation(1, p, q);
    const Rational expected = 1 - p / q;
    CHECK(rep.value == expected);
    CHECK(rep.within_bound);
  }

  // Hand expansion at k = 2, p = q = 1/20:
  // (1-p)^2 + 2 p (1-p)(1 - 1/q) + p^2 (1 - 1/q)(2 - 1/q) = -19/400.
  const BinomialProductReport rep =
      binomial_product_expectation(2, Rational(1, 20), Rational(1, 20));
  CHECK(rep.value == Rational(-19, 400));
  CHECK(rep.bound == doctest::Approx(4.0 * std::pow(6.0 / std::sqrt(20.0), 2))
                         .epsilon(1e-12));
  CHECK(rep.within_bound);
}

TEST_CASE("binomial product hypothesis guards") {
  const Rational ok(1, 20);
  CHECK_THROWS_AS(binomial_product_expectation(0, ok, ok),
                  PreconditionFailedError);
  CHECK_THROWS_AS(binomial_product_expectation(2, Rational(0), ok),
                  PreconditionFailedError);
  CHECK_THROWS_AS(binomial_product_expectation(2, Rational(1), Rational(1)),
                  PreconditionFailedError);
  CHECK_THROWS_AS(binomial_product_expectation(2, ok, Rational(1, 40)),
                  PreconditionFailedError);
  // 2 q k^2 = 4 > 1.
  CHECK_THROWS_AS(
      binomial_product_expectation(2, Rational(1, 2), Rational(1, 2)),
      PreconditionFailedError);
  // q = 1/8, k = 2 puts 2 q k^2 = 1 on the boundary, but a tiny p drives
  // 4 (1 - p/q)^2 toward 4.
  CHECK_THROWS_AS(
      binomial_product_expectation(2, Rational(1, 800), Rational(1, 8)),
      PreconditionFailedError);
}

TEST_CASE("confluent U classical anchors") {
  const std::vector<std::pair<Rational, Rational>> grid = {
      {Rational(3, 2), Rational(5, 7)},
      {Rational(-4, 3), Rational(2)},
      {Rational(7), Rational(-9, 4)},
  };
  for (const auto& [b, z] : grid) {
    CHECK(confluent_u_value(0, b, z) == Rational(1));
    CHECK(confluent_u_value(1, b, z) == z - b);

    // u_k = (-1)^k U(-k, b, z) obeys the Laguerre-type three-term recurrence
    // u_{k+1} = (2k + b - z) u_k - k (k + b - 1) u_{k-1}.
    std::vector<Rational> u = {Rational(1), b - z};
    for (std::size_t k = 1; k <= 5; ++k) {
      const Rational kk(static_cast<long>(k));
      const Rational next = (2 * kk + b - z) * u[k] - kk * (kk + b - 1) * u[k - 1];
      u.push_back(next);
      const Rational sign = (k + 1) % 2 == 0 ? Rational(1) : Rational(-1);
      CHECK(confluent_u_value(k + 1, b, z) == sign * next);
    }
  }
}

TEST_CASE("binomial product matches confluent U") {
  // f(q) = p^k U(-k, 1/q - k, (1-p)/p) exactly, for every admissible point.
  for (std::size_t k = 1; k <= 6; ++k) {
    const Rational kk(static_cast<long>(k));
    const std::vector<std::pair<Rational, Rational>> points = {
        {Rational(1, static_cast<long>(2 * k * k + 2)),
         Rational(1, static_cast<long>(2 * k * k + 2))},
        {Rational(3, static_cast<long>(16 * k * k)),
         Rational(1, static_cast<long>(4 * k * k))},
    };
    for (const auto& [p, q] : points) {
      const BinomialProductReport rep = binomial_product_expectation(k, p, q);
      const Rational u = confluent_u_value(k, 1 / q - kk, (1 - p) / p);
      CHECK(rep.value == rat_pow(p, k) * u);
    }
  }
}

TEST_CASE("path classification statistics") {
  // Two disjoint fresh edges: both distinct, both consistent.
  const PathStatistics fresh = classify_path({0, 3, 1, 4}, 2);
  CHECK(fresh.k == 2);
  CHECK(fresh.k0 == 2);
  CHECK(fresh.a == 2);
  CHECK(fresh.a1 == 2);
  CHECK(fresh.b == 0);
  CHECK(classify_path({0, 3, 1, 4}, 1).a1 == 1);
  CHECK(classify_path({0, 3, 1, 4}, 0).a1 == 0);

  // The same edge twice: one distinct edge of weight 2, so never a weight-1
  // centered step.
  const PathStatistics doubled = classify_path({0, 3, 0, 3}, 2);
  CHECK(doubled.a == 1);
  CHECK(doubled.a1 == 0);
  CHECK(doubled.b == 0);

  // Two edges sharing half-edge 3: both inconsistent.
  const PathStatistics tangled = classify_path({0, 3, 3, 1}, 2);
  CHECK(tangled.a == 2);
  CHECK(tangled.a1 == 0);
  CHECK(tangled.b == 2);

  CHECK_THROWS_AS(classify_path({}, 0), InvalidPathError);
  CHECK_THROWS_AS(classify_path({0, 3, 1}, 0), InvalidPathError);
  CHECK_THROWS_AS(classify_path({0, 0}, 0), InvalidPathError);
  CHECK_THROWS_AS(classify_path({0, 3}, 2), PreconditionFailedError);
}

TEST_CASE("matching path expectations at n=2 d=3") {
  // m = 6 half-edges, 15 matchings, each pair matched in 3 of them.
  CHECK(path_expectation_exact(2, 3, {0, 3}, 0) == Rational(1, 5));
  CHECK(path_expectation_exact(2, 3, {0, 3}, 1) == Rational(1, 30));
  CHECK(path_expectation_exact(2, 3, {0, 3, 1, 4}, 0) == Rational(1, 15));
  // Indicator square: E M^2 = E M.
  CHECK(path_expectation_exact(2, 3, {0, 3, 0, 3}, 0) == Rational(1, 5));
  // E (M - 1/6) M = (1 - 1/6) P(matched) = 1/6.
  CHECK(path_expectation_exact(2, 3, {0, 3, 0, 3}, 1) == Rational(1, 6));
  // E (M - 1/6)^2 = 1/5 - 1/15 + 1/36 = 29/180.
  CHECK(path_expectation_exact(2, 3, {0, 3, 0, 3}, 2) == Rational(29, 180));

  // A single deterministic matching at m = 2.
  CHECK(path_expectation_exact(1, 2, {0, 1}, 0) == Rational(1));
}

TEST_CASE("matching path expectation guards") {
  CHECK_THROWS_AS(path_expectation_exact(7, 2, {0, 1}, 0),
                  EnumerationBudgetError);
  CHECK_THROWS_AS(path_expectation_exact(3, 3, {0, 1}, 0),
                  NoMatchingExistsError);
  CHECK_THROWS_AS(path_expectation_exact(2, 3, {0, 6}, 0), InvalidPathError);
  CHECK_THROWS_AS(path_expectation_exact(2, 3, {0, 0}, 0), InvalidPathError);
  CHECK_THROWS_AS(path_expectation_exact(2, 3, {0, 3}, 2),
                  PreconditionFailedError);
}

TEST_CASE("permutation expectations exact") {
  using Pairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  CHECK(permutation_expectation_exact(5, Pairs{{0, 0}}, 0) == Rational(1, 5));
  CHECK(permutation_expectation_exact(5, Pairs{{0, 0}}, 1) == Rational(0));
  CHECK(permutation_expectation_exact(5, Pairs{{0, 0}, {1, 1}}, 0) ==
        Rational(1, 20));
  // Centered covariance of two disjoint entries: 1/20 - 1/25.
  CHECK(permutation_expectation_exact(5, Pairs{{0, 0}, {1, 1}}, 2) ==
        Rational(1, 100));
  // A row cannot map to two columns.
  CHECK(permutation_expectation_exact(5, Pairs{{0, 0}, {0, 1}}, 0) ==
        Rational(0));
  CHECK(permutation_expectation_exact(1, Pairs{{0, 0}}, 0) == Rational(1));
}

TEST_CASE("permutation expectation guards") {
  using Pairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  CHECK_THROWS_AS(permutation_expectation_exact(9, Pairs{{0, 0}}, 0),
                  EnumerationBudgetError);
  CHECK_THROWS_AS(permutation_expectation_exact(5, Pairs{{0, 0}}, 2),
                  PreconditionFailedError);
  CHECK_THROWS_AS(permutation_expectation_exact(5, Pairs{{5, 0}}, 0),
                  InvalidPathError);
  CHECK_THROWS_AS(permutation_expectation_exact(5, Pairs{{0, 5}}, 0),
                  InvalidPathError);
}

TEST_CASE("survey rows and implied constants") {
  const SurveyReport report = exppath_bound_survey(2, 3, 2);
  REQUIRE(!report.rows.empty());
  double max_seen = 0.0;
  bool saw_k2 = false;
  for (const SurveyRow& row : report.rows) {
    CHECK(row.realizations >= 1);
    CHECK(row.bound_part > 0.0);
    CHECK(row.implied_c >= 0.0);
    CHECK(row.k >= 1);
    CHECK(row.k <= 2);
    CHECK(row.k0 <= row.k);
    max_seen = std::max(max_seen, row.implied_c);
    saw_k2 = saw_k2 || row.k == 2;
    // Every single-step expectation is pattern independent.
    if (row.k == 1 && row.k0 == 0) {
      CHECK(row.value == doctest::Approx(1.0 / 5.0).epsilon(1e-12));
    }
    if (row.k == 1 && row.k0 == 1) {
      CHECK(row.value == doctest::Approx(1.0 / 30.0).epsilon(1e-12));
    }
  }
  CHECK(saw_k2);
  CHECK(report.max_implied_c == doctest::Approx(max_seen).epsilon(1e-12));
  CHECK(report.max_implied_c == doctest::Approx(2.4).epsilon(1e-9));
  CHECK(report.max_implied_c <= 100.0);

  // Longer paths stay finite as well.
  const SurveyReport deep = exppath_bound_survey(2, 3, 3);
  CHECK(deep.max_implied_c <= 100.0);
}

TEST_CASE("survey guards and csv rendering") {
  CHECK_THROWS_AS(exppath_bound_survey(7, 2, 1), EnumerationBudgetError);
  CHECK_THROWS_AS(exppath_bound_survey(2, 3, 0), PreconditionFailedError);
  CHECK_THROWS_AS(exppath_bound_survey(1, 2, 2), PreconditionFailedError);

  const SurveyReport report = exppath_bound_survey(2, 3, 1);
  const std::string csv = survey_to_csv(report);
  std::istringstream lines(csv);
  std::string header;
  REQUIRE(std::getline(lines, header));
  CHECK(header ==
        "gamma_hash,k,k0,a,a1,b,realizations,value,bound_part,implied_c");
  std::size_t body = 0;
  for (std::string line; std::getline(lines, line);) ++body;
  CHECK(body == report.rows.size());
}
