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

#ifndef NBSPEC_PROOFORACLE_HPP_
#define NBSPEC_PROOFORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nbspec/pathmatrices.hpp"

namespace nbspec {

// Edge statistics of an admissible path of 2k half-edges: a distinct edges,
// a1 centered steps landing on a consistent weight-1 edge, b inconsistent
// edges. An edge is consistent when its half-edges only ever pair with each
// other along the path.
struct PathStatistics {
  std::size_t a = 0;
  std::size_t a1 = 0;
  std::size_t b = 0;
  std::size_t k = 0;
  std::size_t k0 = 0;
};

struct BinomialProductReport {
  Rational value;             // exact f(q)
  double bound = 0.0;         // 4 (3 k sqrt(q))^k
  bool within_bound = false;  // f(q)^2 <= 16 (3k)^(2k) q^k, checked exactly
};

// Exact f(q) = sum_t C(k,t) p^t (1-p)^(k-t) prod_{n=1..t} (n - 1/q) for a
// binomial(k, p) count, under the hypotheses 0 < p < 1, q >= p and
// 4 (1 - p/q)^2 <= 2 q k^2 <= 1.
BinomialProductReport binomial_product_expectation(std::size_t k,
                                                   const Rational& p,
                                                   const Rational& q);

// Polynomial value of the confluent hypergeometric function of the second
// kind at negative integer first parameter:
// U(-k, b, z) = (-1)^k sum_j C(k,j) (b+j)_(k-j) (-z)^j with rising factorials.
Rational confluent_u_value(std::size_t k, const Rational& b, const Rational& z);

PathStatistics classify_path(const Path& gamma, std::size_t k0);

// Exact expectation over all (nd-1)!! matchings of
// prod_{t <= k0} (M - 1/(nd))_{g_{2t-1} g_{2t}} prod_{t > k0} M_{...}.
Rational path_expectation_exact(std::size_t n, std::size_t d, const Path& gamma,
                                std::size_t k0);

// Single-permutation analogue: expectation over a uniform permutation of
// {0..n-1} of prod over (row, col) index pairs, the first k0 factors centered
// by 1/n. Exhaustive over n! permutations, n <= 8.
Rational permutation_expectation_exact(
    std::size_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
    std::size_t k0);

struct SurveyRow {
  std::string gamma_hash;  // canonical pattern, pairs joined by ';'
  std::size_t k = 0;
  std::size_t k0 = 0;
  std::size_t a = 0;
  std::size_t a1 = 0;
  std::size_t b = 0;
  std::uint64_t realizations = 0;  // admissible paths sharing the pattern
  double value = 0.0;
  double bound_part = 0.0;  // 9^b (1/(dn))^a (4k/sqrt(dn))^a1
  double implied_c = 0.0;
};

struct SurveyReport {
  std::vector<SurveyRow> rows;
  double max_implied_c = 0.0;
};

// Exhaustive survey over canonical admissible patterns up to length 2*max_k
// and every centering split k0. Expectations depend on the identification
// pattern only, by exchangeability of the uniform matching.
SurveyReport exppath_bound_survey(std::size_t n, std::size_t d,
                                  std::size_t max_k);

std::string survey_to_csv(const SurveyReport& report);

}  // namespace nbspec

#endif  // NBSPEC_PROOFORACLE_HPP_
