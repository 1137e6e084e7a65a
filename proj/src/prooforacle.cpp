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

#include "nbspec/prooforacle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "nbspec/configuration.hpp"
#include "nbspec/errors.hpp"

namespace nbspec {

namespace {

BigInt binomial_coefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    out *= static_cast<unsigned>(n - i);
    out /= static_cast<unsigned>(i + 1);
  }
  return out;
}

Rational rational_pow(const Rational& base, std::size_t exp) {
  Rational out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

BigInt double_factorial_odd(std::size_t m) {
  // (m-1)!! for even m.
  BigInt out = 1;
  for (std::size_t i = m; i >= 2; i -= 2) out *= static_cast<unsigned>(i - 1);
  return out;
}

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void validate_admissible(const Path& gamma, std::size_t k0) {
  if (gamma.empty() || gamma.size() % 2 != 0) {
    throw InvalidPathError("path must have positive even length");
  }
  for (std::size_t t = 0; t + 1 < gamma.size(); t += 2) {
    if (gamma[t] == gamma[t + 1]) {
      throw InvalidPathError("matching step repeats a half-edge");
    }
  }
  if (k0 > gamma.size() / 2) {
    throw PreconditionFailedError("k0 exceeds the number of steps");
  }
}

}  // namespace

BinomialProductReport binomial_product_expectation(std::size_t k,
                                                   const Rational& p,
                                                   const Rational& q) {
  if (k < 1) throw PreconditionFailedError("k must be at least 1");
  if (!(p > 0 && p < 1)) {
    throw PreconditionFailedError("hypothesis 0 < p < 1 failed");
  }
  if (!(q >= p)) throw PreconditionFailedError("hypothesis q >= p failed");
  const Rational kk(static_cast<unsigned>(k * k));
  const Rational lhs = 4 * (1 - p / q) * (1 - p / q);
  const Rational mid = 2 * q * kk;
  if (!(lhs <= mid)) {
    throw PreconditionFailedError("hypothesis 4 (1 - p/q)^2 <= 2 q k^2 failed");
  }
  if (!(mid <= 1)) {
    throw PreconditionFailedError("hypothesis 2 q k^2 <= 1 failed");
  }

  Rational f = 0;
  for (std::size_t t = 0; t <= k; ++t) {
    Rational term(binomial_coefficient(k, t));
    term *= rational_pow(p, t);
    term *= rational_pow(1 - p, k - t);
    for (std::size_t n = 1; n <= t; ++n) {
      term *= Rational(static_cast<unsigned>(n)) - 1 / q;
    }
    f += term;
  }

  BinomialProductReport rep;
  rep.value = f;
  rep.bound = 4.0 * std::pow(3.0 * static_cast<double>(k) *
                                 std::sqrt(static_cast<double>(q)),
                             static_cast<double>(k));
  const Rational bound_sq =
      16 * rational_pow(Rational(static_cast<unsigned>(9 * k * k)), k) *
      rational_pow(q, k);
  rep.within_bound = f * f <= bound_sq;
  return rep;
}

Rational confluent_u_value(std::size_t k, const Rational& b,
                           const Rational& z) {
  Rational sum = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    Rational term(binomial_coefficient(k, j));
    Rational rising = 1;
    for (std::size_t i = 0; i < k - j; ++i) {
      rising *= b + Rational(static_cast<unsigned>(j + i));
    }
    term *= rising;
    term *= rational_pow(-z, j);
    sum += term;
  }
  return (k % 2 == 0) ? sum : -sum;
}

PathStatistics classify_path(const Path& gamma, std::size_t k0) {
  validate_admissible(gamma, k0);
  const std::size_t k = gamma.size() / 2;

  std::vector<std::uint64_t> step_keys(k);
  for (std::size_t t = 0; t < k; ++t) {
    step_keys[t] = pair_key(gamma[2 * t], gamma[2 * t + 1]);
  }
  std::map<std::uint64_t, std::size_t> weight;
  for (const std::uint64_t key : step_keys) ++weight[key];

  // An edge {e, f} is consistent when every step touching e or f is exactly
  // the step {e, f}.
  std::map<std::uint64_t, bool> consistent;
  for (const auto& kv : weight) {
    const std::uint64_t key = kv.first;
    const auto e = static_cast<std::uint32_t>(key >> 32);
    const auto f = static_cast<std::uint32_t>(key & 0xffffffffu);
    bool ok = true;
    for (std::size_t t = 0; t < k && ok; ++t) {
      if (step_keys[t] == key) continue;
      const std::uint32_t g = gamma[2 * t];
      const std::uint32_t h = gamma[2 * t + 1];
      if (g == e || g == f || h == e || h == f) ok = false;
    }
    consistent[key] = ok;
  }

  PathStatistics stats;
  stats.k = k;
  stats.k0 = k0;
  stats.a = weight.size();
  for (const auto& kv : consistent) {
    if (!kv.second) ++stats.b;
  }
  for (std::size_t t = 0; t < k0; ++t) {
    const std::uint64_t key = step_keys[t];
    if (consistent[key] && weight[key] == 1) ++stats.a1;
  }
  return stats;
}

Rational path_expectation_exact(std::size_t n, std::size_t d,
                                const Path& gamma, std::size_t k0) {
  validate_admissible(gamma, k0);
  const std::size_t m = n * d;
  if (m > 12) {
    throw EnumerationBudgetError("exhaustive matching expectation needs nd <= 12");
  }
  if (m % 2 != 0) {
    throw NoMatchingExistsError("odd half-edge count has no perfect matching");
  }
  for (const std::uint32_t h : gamma) {
    if (h >= m) throw InvalidPathError("path half-edge out of range");
  }
  const std::size_t k = gamma.size() / 2;
  const auto mi = static_cast<std::int64_t>(m);

  BigInt total = 0;
  for_each_matching(m, [&](const std::vector<std::uint32_t>& pairing) {
    BigInt term = 1;
    for (std::size_t t = k0; t < k; ++t) {
      if (pairing[gamma[2 * t]] != gamma[2 * t + 1]) {
        term = 0;
        break;
      }
    }
    if (term == 0) return;
    for (std::size_t t = 0; t < k0; ++t) {
      term *= pairing[gamma[2 * t]] == gamma[2 * t + 1] ? BigInt(mi - 1)
                                                        : BigInt(-1);
    }
    total += term;
  });
  BigInt denom = double_factorial_odd(m);
  for (std::size_t i = 0; i < k0; ++i) denom *= static_cast<unsigned>(m);
  return Rational(total, denom);
}

Rational permutation_expectation_exact(
    std::size_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
    std::size_t k0) {
  if (n < 1 || n > 8) {
    throw EnumerationBudgetError("exhaustive permutation expectation needs n <= 8");
  }
  if (k0 > pairs.size()) {
    throw PreconditionFailedError("k0 exceeds the number of factors");
  }
  for (const auto& [i, j] : pairs) {
    if (i >= n || j >= n) throw InvalidPathError("pair index out of range");
  }
  const auto ni = static_cast<std::int64_t>(n);

  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  BigInt total = 0;
  BigInt count = 0;
  do {
    ++count;
    BigInt term = 1;
    for (std::size_t t = k0; t < pairs.size(); ++t) {
      if (perm[pairs[t].first] != pairs[t].second) {
        term = 0;
        break;
      }
    }
    if (term == 0) continue;
    for (std::size_t t = 0; t < k0; ++t) {
      term *= perm[pairs[t].first] == pairs[t].second ? BigInt(ni - 1)
                                                      : BigInt(-1);
    }
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));

  BigInt denom = count;
  for (std::size_t i = 0; i < k0; ++i) denom *= static_cast<unsigned>(n);
  return Rational(total, denom);
}

SurveyReport exppath_bound_survey(std::size_t n, std::size_t d,
                                  std::size_t max_k) {
  const std::size_t m = n * d;
  if (m > 12) {
    throw EnumerationBudgetError("exhaustive survey needs nd <= 12");
  }
  if (max_k < 1 || 2 * max_k > m) {
    throw PreconditionFailedError("survey needs 1 <= max_k and 2 max_k <= nd");
  }

  SurveyReport report;
  const double dm = static_cast<double>(m);

  // Canonical patterns: restricted-growth strings over the 2k positions with
  // distinct symbols inside every step pair. Expectations are invariant
  // under half-edge relabeling, so one representative per pattern suffices.
  for (std::size_t k = 1; k <= max_k; ++k) {
    std::vector<std::uint32_t> symbols;
    std::function<void()> rec = [&]() {
      if (symbols.size() == 2 * k) {
        Path gamma(symbols.begin(), symbols.end());
        std::size_t n_symbols = 0;
        for (const std::uint32_t s : symbols) {
          n_symbols = std::max<std::size_t>(n_symbols, s + 1);
        }
        std::uint64_t realizations = 1;
        for (std::size_t i = 0; i < n_symbols; ++i) {
          realizations *= static_cast<std::uint64_t>(m - i);
        }
        std::string hash;
        for (std::size_t t = 0; t < k; ++t) {
          if (t > 0) hash += ';';
          hash += std::to_string(symbols[2 * t]);
          hash += ',';
          hash += std::to_string(symbols[2 * t + 1]);
        }
        for (std::size_t k0 = 0; k0 <= k; ++k0) {
          const Rational value = path_expectation_exact(n, d, gamma, k0);
          const PathStatistics stats = classify_path(gamma, k0);
          SurveyRow row;
          row.gamma_hash = hash;
          row.k = k;
          row.k0 = k0;
          row.a = stats.a;
          row.a1 = stats.a1;
          row.b = stats.b;
          row.realizations = realizations;
          row.value = static_cast<double>(value);
          row.bound_part =
              std::pow(9.0, static_cast<double>(stats.b)) *
              std::pow(1.0 / dm, static_cast<double>(stats.a)) *
              std::pow(4.0 * static_cast<double>(k) / std::sqrt(dm),
                       static_cast<double>(stats.a1));
          row.implied_c = std::abs(row.value) / row.bound_part;
          report.max_implied_c = std::max(report.max_implied_c, row.implied_c);
          report.rows.push_back(std::move(row));
        }
        return;
      }
      std::uint32_t max_used = 0;
      for (const std::uint32_t s : symbols) {
        max_used = std::max(max_used, s + 1);
      }
      const bool closes_step = symbols.size() % 2 == 1;
      for (std::uint32_t s = 0; s <= max_used && s < m; ++s) {
        if (closes_step && s == symbols.back()) continue;
        symbols.push_back(s);
        rec();
        symbols.pop_back();
      }
    };
    rec();
  }
  return report;
}

std::string survey_to_csv(const SurveyReport& report) {
  std::ostringstream out;
  out << "gamma_hash,k,k0,a,a1,b,realizations,value,bound_part,implied_c\n";
  out.precision(17);
  for (const SurveyRow& row : report.rows) {
    out << row.gamma_hash << ',' << row.k << ',' << row.k0 << ',' << row.a
        << ',' << row.a1 << ',' << row.b << ',' << row.realizations << ','
        << row.value << ',' << row.bound_part << ',' << row.implied_c << '\n';
  }
  return out.str();
}

}  // namespace nbspec
