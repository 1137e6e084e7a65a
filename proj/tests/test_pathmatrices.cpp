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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "nbspec/configuration.hpp"
#include "nbspec/errors.hpp"
#include "nbspec/multigraph.hpp"
#include "nbspec/nonbacktracking.hpp"
#include "nbspec/pathmatrices.hpp"
#include "nbspec/rng.hpp"
#include "nbspec/tangle.hpp"

using namespace nbspec;

namespace {

// Independent cycle count of a pair multiset: dedupe pairs as a set, then
// count the insertions joining already-connected vertices.
std::size_t pair_graph_cycles(
    const HalfEdgeSpace& space,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::vector<std::uint32_t> parent(space.n);
  for (std::uint32_t v = 0; v < space.n; ++v) parent[v] = v;
  const auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::size_t cycles = 0;
  for (auto [a, b] : pairs) {
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    const auto ra = find(static_cast<std::uint32_t>(space.vertex_of(a)));
    const auto rb = find(static_cast<std::uint32_t>(space.vertex_of(b)));
    if (ra == rb) {
      ++cycles;
    } else {
      parent[ra] = rb;
    }
  }
  return cycles;
}

// Pairs closed by a path: positions (1,2), (3,4), ... in 1-based terms.
std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_of_path(
    const Path& gamma) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t t = 0; t + 1 < gamma.size(); t += 2) {
    out.push_back({gamma[t], gamma[t + 1]});
  }
  return out;
}

bool sigma_consistent(const Path& gamma, const Matching& sigma) {
  for (std::size_t t = 0; t + 1 < gamma.size(); t += 2) {
    if (sigma.at(gamma[t]) != gamma[t + 1]) return false;
  }
  return true;
}

IntMatrix dense_b(const HalfEdgeSpace& space, const Matching& sigma) {
  const NBMatrix b = nb_from_matching(space, sigma);
  const auto m = static_cast<Eigen::Index>(b.dimension());
  IntMatrix out = IntMatrix::Zero(m, m);
  for (Eigen::Index e = 0; e < m; ++e) {
    for (const auto f : b.row(static_cast<std::size_t>(e))) {
      out(e, static_cast<Eigen::Index>(f)) += 1;
    }
  }
  return out;
}

// Loop at each vertex plus one crossing edge on two vertices of degree 3.
const std::vector<std::uint32_t> kLoopPairing = {1, 0, 3, 2, 5, 4};
// Triple edge between the two vertices.
const std::vector<std::uint32_t> kTriplePairing = {3, 4, 5, 0, 1, 2};

}  // namespace

TEST_CASE("path enumeration counts by class") {
  const HalfEdgeSpace space{2, 3};
  const std::size_t m = space.size();

  // Length 2: any admissible pair.
  CHECK(enumerate_paths(space, PathKind::Admissible, 2, std::nullopt,
                        std::nullopt)
            .size() == m * (m - 1));

  // Length 3 from a fixed start: (m-1) pairs times (d-1) continuations.
  for (std::uint32_t e = 0; e < m; ++e) {
    CHECK(enumerate_paths(space, PathKind::NonBacktracking, 3, e, std::nullopt)
              .size() == (m - 1) * (space.d - 1));
  }

  // One pair never closes two cycles, so length 3 classes coincide.
  for (std::uint32_t e = 0; e < m; ++e) {
    for (std::uint32_t f = 0; f < m; ++f) {
      CHECK(enumerate_paths(space, PathKind::NonBacktracking, 3, e, f).size() ==
            enumerate_paths(space, PathKind::TangleFree, 3, e, f).size());
    }
  }

  CHECK(enumerate_paths(space, PathKind::Admissible, 0, std::nullopt,
                        std::nullopt)
            .empty());
  CHECK_THROWS_AS(enumerate_paths(space, PathKind::Admissible, 2,
                                  std::uint32_t{9}, std::nullopt),
                  InvalidEdgeError);
  CHECK_THROWS_AS(enumerate_paths(space, PathKind::Admissible, 4, std::nullopt,
                                  std::nullopt, 10),
                  EnumerationBudgetError);
}

TEST_CASE("length-3 path counts reproduce the K step matrix") {
  const HalfEdgeSpace space{2, 3};
  const Eigen::MatrixXi kmat = k_matrix(space);
  for (std::uint32_t e = 0; e < space.size(); ++e) {
    for (std::uint32_t f = 0; f < space.size(); ++f) {
      const auto count =
          enumerate_paths(space, PathKind::NonBacktracking, 3, e, f).size();
      CHECK(static_cast<int>(count) ==
            kmat(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(f)));
    }
  }
}

TEST_CASE("consistent path counts match powers of the operator") {
  const HalfEdgeSpace space{4, 3};
  Rng rng(41);
  const Matching sigma = sample_uniform_matching(space, rng);
  const IntMatrix b = dense_b(space, sigma);
  const auto m = static_cast<Eigen::Index>(space.size());

  for (std::size_t k = 1; k <= 2; ++k) {
    const IntMatrix power = k == 1 ? b : IntMatrix((b * b).eval());
    IntMatrix nb_count = IntMatrix::Zero(m, m);
    IntMatrix tf_count = IntMatrix::Zero(m, m);
    for (std::uint32_t e = 0; e < space.size(); ++e) {
      for (const Path& gamma : enumerate_paths(
               space, PathKind::NonBacktracking, 2 * k + 1, e, std::nullopt)) {
        if (sigma_consistent(gamma, sigma)) {
          nb_count(e, static_cast<Eigen::Index>(gamma.back())) += 1;
        }
      }
      for (const Path& gamma : enumerate_paths(
               space, PathKind::TangleFree, 2 * k + 1, e, std::nullopt)) {
        if (sigma_consistent(gamma, sigma)) {
          tf_count(e, static_cast<Eigen::Index>(gamma.back())) += 1;
        }
      }
    }
    const IntMatrix btf = build_B_tf(space, sigma, k);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        CHECK(nb_count(i, j) == power(i, j));
        CHECK(tf_count(i, j) == btf(i, j));
      }
    }
  }
}

TEST_CASE("first power equals the operator on every instance") {
  // A single matching pair cannot close two cycles, so the tangle-free
  // constraint is vacuous at k = 1, loops included.
  for (const auto& pairing : {kLoopPairing, kTriplePairing}) {
    const HalfEdgeSpace space{2, 3};
    const Matching sigma(pairing);
    CHECK(verify_power_identity(space, sigma, 1));
  }
  Rng rng(43);
  for (std::size_t t = 0; t < 5; ++t) {
    const HalfEdgeSpace space{6, 3};
    const Matching sigma = sample_uniform_matching(space, rng);
    CHECK(verify_power_identity(space, sigma, 1));
  }
}

TEST_CASE("powers separate from path counts exactly at the tangle radius") {
  // Two loops at one vertex of degree 4: the radius-1 ball has two cycles,
  // and a consistent path can traverse both within two matching steps.
  const HalfEdgeSpace space1{1, 4};
  const Matching two_loops({1, 0, 3, 2});
  CHECK(!is_ell_tangle_free(multigraph_of_matching(space1, two_loops), 1));
  CHECK(verify_power_identity(space1, two_loops, 1));
  CHECK(!verify_power_identity(space1, two_loops, 2));

  // Loops at both endpoints of an edge: the two cycles are one step apart,
  // so the identity survives k = 2 and breaks at k = 3.
  const HalfEdgeSpace space2{2, 3};
  const Matching loops(kLoopPairing);
  CHECK(verify_power_identity(space2, loops, 1));
  CHECK(verify_power_identity(space2, loops, 2));
  CHECK(!verify_power_identity(space2, loops, 3));
}

TEST_CASE("centered one-step matrix in closed form") {
  // uB^(1) = B - K/(dn) holds entrywise on every instance.
  for (const auto& pairing : {kLoopPairing, kTriplePairing}) {
    const HalfEdgeSpace space{2, 3};
    const Matching sigma(pairing);
    const auto m = static_cast<Eigen::Index>(space.size());
    const RatMatrix ub1 = build_underline_B_tf(space, sigma, 1);
    const IntMatrix b = dense_b(space, sigma);
    const Eigen::MatrixXi kmat = k_matrix(space);
    const Rational inv_dn(1, static_cast<unsigned>(space.size()));
    Rational row_target(space.d - 1);
    row_target *= inv_dn;
    for (Eigen::Index i = 0; i < m; ++i) {
      Rational row_sum(0);
      for (Eigen::Index j = 0; j < m; ++j) {
        Rational expected(b(i, j));
        expected -= inv_dn * kmat(i, j);
        CHECK(ub1(i, j) == expected);
        row_sum += ub1(i, j);
      }
      CHECK(row_sum == row_target);
    }
  }
}

TEST_CASE("centered zero-step matrix is the identity") {
  const HalfEdgeSpace space{2, 3};
  const Matching sigma(kTriplePairing);
  const RatMatrix ub0 = build_underline_B_tf(space, sigma, 0);
  for (Eigen::Index i = 0; i < 6; ++i) {
    for (Eigen::Index j = 0; j < 6; ++j) {
      CHECK(ub0(i, j) == Rational(i == j ? 1 : 0));
    }
  }
}

TEST_CASE("centered two-step matrix equals the weighted path sum") {
  const HalfEdgeSpace space{2, 3};
  const std::int64_t dn = 6;
  for (const auto& pairing : {kLoopPairing, kTriplePairing}) {
    const Matching sigma(pairing);
    const RatMatrix ub2 = build_underline_B_tf(space, sigma, 2);
    for (std::uint32_t e = 0; e < 6; ++e) {
      for (std::uint32_t f = 0; f < 6; ++f) {
        Rational sum(0);
        for (const Path& gamma :
             enumerate_paths(space, PathKind::TangleFree, 5, e, f)) {
          Rational w(1);
          for (const auto& [a, b] : pairs_of_path(gamma)) {
            w *= Rational(sigma.at(a) == b ? dn - 1 : -1, dn);
          }
          sum += w;
        }
        CHECK(ub2(static_cast<Eigen::Index>(e),
                  static_cast<Eigen::Index>(f)) == sum);
      }
    }
  }
}

TEST_CASE("remainder matrix vanishes at radius one") {
  // With a single freed pair the path graph has at most one cycle.
  for (const auto& pairing : {kLoopPairing, kTriplePairing}) {
    const HalfEdgeSpace space{2, 3};
    const RatMatrix r11 = build_R(space, Matching(pairing), 1, 1);
    for (Eigen::Index i = 0; i < 6; ++i) {
      for (Eigen::Index j = 0; j < 6; ++j) {
        CHECK(r11(i, j) == Rational(0));
      }
    }
  }
}

TEST_CASE("remainder matrix brute force at radius two") {
  const HalfEdgeSpace space{2, 3};
  const std::int64_t dn = 6;
  const auto half_edges_at = [&](std::uint32_t h) {
    std::vector<std::uint32_t> out;
    const std::size_t v = space.vertex_of(h);
    for (std::size_t i = 0; i < space.d; ++i) {
      const auto c = static_cast<std::uint32_t>(space.first_at(v) + i);
      if (c != h) out.push_back(c);
    }
    return out;
  };

  for (const auto& pairing : {kLoopPairing, kTriplePairing}) {
    const Matching sigma(pairing);

    // k = 1: freed pair (e, y), then one forced pair; tangled iff the two
    // pairs close two cycles.
    RatMatrix brute1 = RatMatrix::Constant(6, 6, Rational(0));
    for (std::uint32_t e = 0; e < 6; ++e) {
      for (std::uint32_t y = 0; y < 6; ++y) {
        if (y == e) continue;
        for (const auto h : half_edges_at(y)) {
          const auto sh = static_cast<std::uint32_t>(sigma.at(h));
          for (const auto f : half_edges_at(sh)) {
            if (pair_graph_cycles(space, {{e, y}, {h, sh}}) >= 2) {
              brute1(static_cast<Eigen::Index>(e),
                     static_cast<Eigen::Index>(f)) += 1;
            }
          }
        }
      }
    }

    // k = 2: one centered pair (e, y), then the freed pair (g, z).
    RatMatrix brute2 = RatMatrix::Constant(6, 6, Rational(0));
    for (std::uint32_t e = 0; e < 6; ++e) {
      for (std::uint32_t y = 0; y < 6; ++y) {
        if (y == e) continue;
        const Rational w(sigma.at(e) == y ? dn - 1 : -1, dn);
        for (const auto g : half_edges_at(y)) {
          for (std::uint32_t z = 0; z < 6; ++z) {
            if (z == g) continue;
            for (const auto f : half_edges_at(z)) {
              if (pair_graph_cycles(space, {{e, y}, {g, z}}) >= 2) {
                brute2(static_cast<Eigen::Index>(e),
                       static_cast<Eigen::Index>(f)) += w;
              }
            }
          }
        }
      }
    }

    const RatMatrix r21 = build_R(space, sigma, 2, 1);
    const RatMatrix r22 = build_R(space, sigma, 2, 2);
    bool any_nonzero = false;
    for (Eigen::Index i = 0; i < 6; ++i) {
      for (Eigen::Index j = 0; j < 6; ++j) {
        CHECK(r21(i, j) == brute1(i, j));
        CHECK(r22(i, j) == brute2(i, j));
        if (r21(i, j) != 0 || r22(i, j) != 0) any_nonzero = true;
      }
    }
    CHECK(any_nonzero);
  }

  CHECK_THROWS_AS(build_R(space, Matching(kLoopPairing), 2, 3),
                  PreconditionFailedError);
  CHECK_THROWS_AS(build_R(space, Matching(kLoopPairing), 2, 0),
                  PreconditionFailedError);
  CHECK_THROWS_AS(build_R(space, Matching(kLoopPairing), 2, 1, 10),
                  EnumerationBudgetError);
}

TEST_CASE("telescoping decomposition is exact for every matching") {
  // Loops, parallel edges and random instances alike.
  for (const auto& pairing : {kLoopPairing, kTriplePairing}) {
    const HalfEdgeSpace space{2, 3};
    double worst = 1.0;
    CHECK(verify_decomposition(space, Matching(pairing), 2,
                               kDefaultEnumerationBudget, &worst));
    CHECK(worst == 0.0);
  }
  Rng rng(47);
  for (std::size_t t = 0; t < 3; ++t) {
    const HalfEdgeSpace space{4, 3};
    const Matching sigma = sample_uniform_matching(space, rng);
    double worst = 1.0;
    CHECK(verify_decomposition(space, sigma, 2, kDefaultEnumerationBudget,
                               &worst));
    CHECK(worst == 0.0);
  }
}

TEST_CASE("norm bound on tangle-free instances") {
  Rng rng(53);
  const HalfEdgeSpace space{12, 3};
  std::size_t checked = 0;
  for (std::size_t attempt = 0; attempt < 500 && checked < 3; ++attempt) {
    const Matching sigma = sample_uniform_matching(space, rng);
    const BaseMultigraph g = multigraph_of_matching(space, sigma);
    if (!is_ell_tangle_free(g, 1)) continue;
    const NormBoundReport rep = verify_norm_bound_lemma(space, sigma, 1);
    if (rep.skipped) continue;
    CHECK(rep.holds);
    CHECK(rep.lhs <= rep.rhs + 1e-10);
    CHECK(rep.rhs > 0.0);
    ++checked;
  }
  CHECK(checked == 3);
}

TEST_CASE("norm bound preconditions") {
  const HalfEdgeSpace space{2, 3};
  CHECK_THROWS_AS(verify_norm_bound_lemma(space, Matching(kLoopPairing), 1),
                  PreconditionTangledError);
  CHECK_THROWS_AS(verify_norm_bound_lemma(space, Matching(kTriplePairing), 0),
                  PreconditionFailedError);

  // A plain cycle is tangle-free but its operator is reducible.
  const HalfEdgeSpace ring{4, 2};
  std::vector<std::uint32_t> pairing(8);
  for (std::uint32_t v = 0; v < 4; ++v) {
    const std::uint32_t a = v * 2 + 1;
    const std::uint32_t b = ((v + 1) % 4) * 2;
    pairing[a] = b;
    pairing[b] = a;
  }
  const NormBoundReport rep = verify_norm_bound_lemma(ring, Matching(pairing), 1);
  CHECK(rep.skipped);
  CHECK(!rep.reason.empty());
}

TEST_CASE("kernel residue bound on block examples") {
  // S acts on the first coordinate, R on the second: hypotheses hold and
  // the only eigenvalue outside sigma(S) is bounded by the kernel norm.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2, 2);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2, 2);
  s(0, 0) = 2.0;
  r(1, 1) = 1.0;
  double bound = 0.0;
  CHECK(lemma_hr_check(s, r, &bound));
  CHECK(bound == doctest::Approx(1.0));

  // Zero perturbation is trivially within the bound.
  CHECK(lemma_hr_check(s, Eigen::MatrixXd::Zero(2, 2)));

  // im(S) not in ker(R): hypothesis rejected.
  Eigen::MatrixXd bad_s = Eigen::MatrixXd::Zero(2, 2);
  Eigen::MatrixXd bad_r = Eigen::MatrixXd::Zero(2, 2);
  bad_s(0, 1) = 1.0;
  bad_r(1, 0) = 1.0;
  CHECK_THROWS_AS(lemma_hr_check(bad_s, bad_r), HypothesisFailedError);

  CHECK_THROWS_AS(lemma_hr_check(Eigen::MatrixXd::Zero(2, 2),
                                 Eigen::MatrixXd::Zero(3, 3)),
                  DimensionMismatchError);
}

TEST_CASE("builders validate the matching size") {
  const HalfEdgeSpace space{4, 3};
  const Matching wrong(kTriplePairing);
  CHECK_THROWS_AS(build_B_tf(space, wrong, 1), DimensionMismatchError);
  CHECK_THROWS_AS(build_underline_B_tf(space, wrong, 1),
                  DimensionMismatchError);
  CHECK_THROWS_AS(build_R(space, wrong, 2, 1), DimensionMismatchError);
}
