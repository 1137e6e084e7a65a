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

#include <cstdint>
#include <queue>
#include <vector>

#include "nbspec/configuration.hpp"
#include "nbspec/errors.hpp"
#include "nbspec/multigraph.hpp"
#include "nbspec/rng.hpp"
#include "nbspec/tangle.hpp"

using namespace nbspec;

namespace {

// Independent ball cycle count: full BFS distances, then the edges whose
// endpoints both lie within the radius.
std::size_t brute_ball_cycles(const BaseMultigraph& x, std::uint32_t v,
                              std::size_t ell) {
  const std::size_t n = x.actual_vertex_count();
  std::vector<std::size_t> dist(n, n + 1);
  std::queue<std::uint32_t> queue;
  dist[v] = 0;
  queue.push(v);
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop();
    for (const auto e : x.out_edges(u)) {
      const auto w = static_cast<std::uint32_t>(x.actual_head(e));
      if (dist[w] > dist[u] + 1) {
        dist[w] = dist[u] + 1;
        queue.push(w);
      }
    }
  }
  std::size_t vertices = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (dist[u] <= ell) ++vertices;
  }
  std::size_t edges = 0;
  for (std::size_t j = 0; j < x.edge_count(); ++j) {
    const auto e = static_cast<std::uint32_t>(2 * j);
    if (dist[x.actual_tail(e)] <= ell && dist[x.actual_head(e)] <= ell) {
      ++edges;
    }
  }
  return edges + 1 > vertices ? edges + 1 - vertices : 0;
}

}  // namespace

TEST_CASE("complete graph balls carry all three independent cycles") {
  const BaseMultigraph k4 = complete_graph(4);
  const NeighborhoodReport rep = ball_report(k4, 0, 1);
  CHECK(rep.center == 0);
  CHECK(rep.radius == 1);
  CHECK(rep.ball_vertices == 4);
  CHECK(rep.ball_edges == 6);
  CHECK(rep.cycle_count == 3);

  std::uint32_t witness = 99;
  CHECK(!is_ell_tangle_free(k4, 1, &witness));
  CHECK(witness == 0);
  CHECK(!is_tangle_free_graph(k4));
}

TEST_CASE("cycles and trees are tangle free at every radius") {
  const BaseMultigraph c5 = cycle_graph(5);
  for (std::size_t ell = 1; ell <= 4; ++ell) {
    CHECK(is_ell_tangle_free(c5, ell));
  }
  CHECK(is_tangle_free_graph(c5));
  const NeighborhoodReport rep = ball_report(c5, 2, 1);
  CHECK(rep.ball_vertices == 3);
  CHECK(rep.ball_edges == 2);
  CHECK(rep.cycle_count == 0);
  // Radius 2 closes the cycle: 5 vertices, 5 edges, one cycle.
  CHECK(ball_report(c5, 2, 2).cycle_count == 1);

  const BaseMultigraph tree =
      BaseMultigraph::from_edge_list(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}});
  for (std::size_t ell = 1; ell <= 3; ++ell) {
    CHECK(is_ell_tangle_free(tree, ell));
  }
  CHECK(is_tangle_free_graph(tree));
}

TEST_CASE("parallel edges and loop pairs are tangles") {
  // Two vertices with a triple edge: 3 edges, 2 vertices, 2 cycles.
  const BaseMultigraph theta =
      BaseMultigraph::from_edge_list(2, {{0, 1}, {0, 1}, {0, 1}});
  CHECK(ball_report(theta, 0, 1).cycle_count == 2);
  CHECK(!is_ell_tangle_free(theta, 1));
  CHECK(!is_tangle_free_graph(theta));

  // One loop is a single cycle, two loops at a vertex are a tangle.
  CHECK(is_ell_tangle_free(bouquet_graph(1), 1));
  CHECK(is_tangle_free_graph(bouquet_graph(1)));
  CHECK(ball_report(bouquet_graph(2), 0, 1).cycle_count == 2);
  CHECK(!is_ell_tangle_free(bouquet_graph(2), 1));
}

TEST_CASE("global cycle count splits across components") {
  // Two disjoint cycles: each ball sees one cycle, the graph carries two.
  std::vector<BaseMultigraph::Edge> edges;
  for (std::size_t v = 0; v < 4; ++v) edges.push_back({v, (v + 1) % 4});
  for (std::size_t v = 0; v < 4; ++v) edges.push_back({4 + v, 4 + (v + 1) % 4});
  const BaseMultigraph two_cycles = BaseMultigraph::from_edge_list(8, edges);
  CHECK(is_ell_tangle_free(two_cycles, 4));
  CHECK(!is_tangle_free_graph(two_cycles));
}

TEST_CASE("ball reports match the brute-force recount on random instances") {
  Rng rng(17);
  for (std::size_t t = 0; t < 30; ++t) {
    const std::size_t n = 8 + 2 * (t % 5);
    const HalfEdgeSpace space{n, 3};
    const Matching sigma = sample_uniform_matching(space, rng);
    const BaseMultigraph g = multigraph_of_matching(space, sigma);
    for (std::size_t ell = 1; ell <= 3; ++ell) {
      for (std::size_t v = 0; v < n; ++v) {
        const NeighborhoodReport rep =
            ball_report(g, static_cast<std::uint32_t>(v), ell);
        CHECK(rep.cycle_count ==
              brute_ball_cycles(g, static_cast<std::uint32_t>(v), ell));
      }
      std::uint32_t witness = 0;
      const bool fast = is_ell_tangle_free(g, ell, &witness);
      bool brute = true;
      for (std::size_t v = 0; v < n && brute; ++v) {
        if (brute_ball_cycles(g, static_cast<std::uint32_t>(v), ell) > 1) {
          brute = false;
        }
      }
      CHECK(fast == brute);
      if (!fast) {
        CHECK(brute_ball_cycles(g, witness, ell) > 1);
      }
    }
  }
}

TEST_CASE("tangled fraction estimates and regime flag") {
  Rng rng(1);
  const TangledFractionResult res = tangled_fraction(12, 3, 1, 400, rng);
  CHECK(res.trials == 400);
  // Long-run value near 0.35 at this size.
  CHECK(res.fraction > 0.15);
  CHECK(res.fraction < 0.60);
  CHECK(res.standard_error > 0.0);
  CHECK(res.standard_error < 0.05);
  // Radius 1 already exceeds 0.24 log_2 12.
  CHECK(!res.regime_ok);

  Rng rng2(2);
  const TangledFractionResult big = tangled_fraction(2000, 3, 2, 10, rng2);
  CHECK(big.regime_ok);

  CHECK_THROWS_AS(tangled_fraction(8, 3, 1, 0, rng), EmptySampleError);
}

TEST_CASE("ball center must exist") {
  CHECK_THROWS_AS(ball_report(complete_graph(4), 7, 1), InvalidEdgeError);
}
