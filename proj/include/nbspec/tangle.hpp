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

#pragma once

#include <cstddef>
#include <cstdint>

#include "nbspec/multigraph.hpp"
#include "nbspec/rng.hpp"

namespace nbspec {

struct NeighborhoodReport {
  std::uint32_t center = 0;
  std::size_t radius = 0;
  std::size_t ball_vertices = 0;
  std::size_t ball_edges = 0;  // multiplicity counted; a loop is one edge
  std::size_t cycle_count = 0;
};

// BFS ball of radius ell around v with the induced edge set; the ball is
// connected, so cycle_count = edges - vertices + 1.
NeighborhoodReport ball_report(const BaseMultigraph& x, std::uint32_t v,
                               std::size_t ell);

// True iff every radius-ell neighborhood carries at most one cycle. When
// offending is non-null and the result is false, it receives a witness
// vertex whose ball has two or more cycles.
bool is_ell_tangle_free(const BaseMultigraph& x, std::size_t ell,
                        std::uint32_t* offending = nullptr);

// True iff the whole graph has at most one independent cycle, that is
// edges - vertices + components <= 1.
bool is_tangle_free_graph(const BaseMultigraph& x);

struct TangledFractionResult {
  double fraction;
  double standard_error;
  std::size_t trials;
  // ell <= 0.24 log_{d-1} n, the regime of the tail bound; advisory only.
  bool regime_ok;
};

TangledFractionResult tangled_fraction(std::size_t n, std::size_t d,
                                       std::size_t ell, std::size_t trials,
                                       Rng& rng);

}  // namespace nbspec
