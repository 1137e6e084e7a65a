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
#include <vector>

#include "nbspec/errors.hpp"
#include "nbspec/multigraph.hpp"

using namespace nbspec;

TEST_CASE("complete graph counts and adjacency") {
  const BaseMultigraph k4 = complete_graph(4);
  CHECK(k4.vertex_count() == 4);
  CHECK(k4.actual_vertex_count() == 4);
  CHECK(k4.edge_count() == 6);
  CHECK(k4.directed_edge_count() == 12);
  CHECK(!k4.has_custom_map());
  CHECK(max_degree(k4) == 3);

  const AdjacencyMatrix a = adjacency(k4);
  CHECK(a.dimension() == 4);
  CHECK(a.is_symmetric());
  CHECK(a.total() == 12);
  for (std::size_t u = 0; u < 4; ++u) {
    CHECK(a(u, u) == 0);
    for (std::size_t v = 0; v < 4; ++v) {
      if (u != v) CHECK(a(u, v) == 1);
    }
  }
  CHECK(is_simple_regular(a, 3));
  CHECK(!is_simple_regular(a, 4));

  const auto rows = a.row_sums();
  CHECK(std::all_of(rows.begin(), rows.end(),
                    [](std::int64_t s) { return s == 3; }));
}

TEST_CASE("bouquet graph keeps loops as inverse pairs") {
  const BaseMultigraph b2 = bouquet_graph(2);
  CHECK(b2.vertex_count() == 1);
  CHECK(b2.edge_count() == 2);
  CHECK(b2.directed_edge_count() == 4);
  CHECK(b2.degree(0) == 4);
  CHECK(max_degree(b2) == 4);

  // A loop contributes 2 on the diagonal and both orientations leave v.
  const AdjacencyMatrix a = adjacency(b2);
  CHECK(a(0, 0) == 4);
  CHECK(a.total() == 4);
  CHECK(!is_simple_regular(a, 4));
  CHECK(b2.out_edges(0).size() == 4);
  for (std::size_t e = 0; e < 4; ++e) {
    CHECK(b2.tail(e) == 0);
    CHECK(b2.head(e) == 0);
    CHECK(BaseMultigraph::inverse(BaseMultigraph::inverse(e)) == e);
  }
}

TEST_CASE("cycle graph structure") {
  const BaseMultigraph c5 = cycle_graph(5);
  CHECK(c5.vertex_count() == 5);
  CHECK(c5.edge_count() == 5);
  const AdjacencyMatrix a = adjacency(c5);
  CHECK(is_simple_regular(a, 2));
  for (std::size_t v = 0; v < 5; ++v) {
    CHECK(a(v, (v + 1) % 5) == 1);
    CHECK(a(v, (v + 2) % 5) == 0);
  }
  // cycle_graph(2) is a doubled edge, kept as a multigraph.
  const BaseMultigraph c2 = cycle_graph(2);
  CHECK(c2.edge_count() == 2);
  CHECK(adjacency(c2)(0, 1) == 2);
  CHECK(!is_simple_regular(adjacency(c2), 2));
}

TEST_CASE("directed edge orientation and inverse") {
  const BaseMultigraph x =
      BaseMultigraph::from_edge_list(3, {{0, 1}, {1, 2}});
  CHECK(x.tail(0) == 0);
  CHECK(x.head(0) == 1);
  CHECK(x.tail(1) == 1);
  CHECK(x.head(1) == 0);
  CHECK(BaseMultigraph::inverse(2) == 3);
  // out_edges groups directed edges by actual tail.
  const auto& at1 = x.out_edges(1);
  CHECK(at1.size() == 2);
  for (const auto e : at1) CHECK(x.actual_tail(e) == 1);
}

TEST_CASE("custom vertex map folds vertices") {
  // Two abstract vertices mapped onto one actual vertex turn the edge
  // between them into a loop of the actual graph.
  const BaseMultigraph x =
      BaseMultigraph::from_edge_list(2, {{0, 1}}, std::vector<std::size_t>{0, 0});
  CHECK(x.has_custom_map());
  CHECK(x.vertex_count() == 2);
  CHECK(x.actual_vertex_count() == 1);
  CHECK(x.map_at(0) == 0);
  CHECK(x.actual_head(0) == 0);
  CHECK(x.actual_tail(1) == 0);
  const AdjacencyMatrix a = adjacency(x);
  CHECK(a.dimension() == 1);
  CHECK(a(0, 0) == 2);
  CHECK(a.total() == static_cast<std::int64_t>(x.directed_edge_count()));
}

TEST_CASE("adjacency total equals directed edge count") {
  for (const auto& x : {complete_graph(5), bouquet_graph(3), cycle_graph(7)}) {
    CHECK(adjacency(x).total() ==
          static_cast<std::int64_t>(x.directed_edge_count()));
  }
}

TEST_CASE("invalid edges are rejected") {
  CHECK_THROWS_AS(BaseMultigraph::from_edge_list(2, {{0, 2}}),
                  InvalidEdgeError);
  CHECK_THROWS_AS(
      BaseMultigraph::from_edge_list(2, {{0, 1}}, std::vector<std::size_t>{0}),
      PreconditionFailedError);
  // Map values choose the actual vertex set; gaps become isolated vertices.
  const BaseMultigraph sparse = BaseMultigraph::from_edge_list(
      2, {{0, 1}}, std::vector<std::size_t>{0, 5});
  CHECK(sparse.actual_vertex_count() == 6);
  CHECK(adjacency(sparse)(0, 5) == 1);
  CHECK(sparse.degree(3) == 0);
}

TEST_CASE("simple regular detector rejects defects") {
  // Loop on the diagonal.
  AdjacencyMatrix loop(2);
  loop(0, 0) = 2;
  loop(0, 1) = loop(1, 0) = 1;
  loop(1, 1) = 2;
  CHECK(!is_simple_regular(loop, 3));

  // Multi-edge entry above 1.
  AdjacencyMatrix multi(2);
  multi(0, 1) = multi(1, 0) = 3;
  CHECK(!is_simple_regular(multi, 3));

  // Uneven row sums.
  AdjacencyMatrix uneven(3);
  uneven(0, 1) = uneven(1, 0) = 1;
  uneven(1, 2) = uneven(2, 1) = 1;
  CHECK(!is_simple_regular(uneven, 2));
}
