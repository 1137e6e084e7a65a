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

#ifndef NBSPEC_IO_HPP_
#define NBSPEC_IO_HPP_

#include <string>

#include "nbspec/configuration.hpp"
#include "nbspec/lift.hpp"
#include "nbspec/multigraph.hpp"
#include "nbspec/nonbacktracking.hpp"

namespace nbspec {

// Graph text format: "n_vertices n_edges", one "u v" line per edge, then an
// optional "map" line followed by one actual-vertex id per abstract vertex.
// format(parse(text)) == text for canonically formatted input.
std::string format_graph(const BaseMultigraph& x);
BaseMultigraph parse_graph(const std::string& text);

// Matching file: one "v i v' i'" line per pair, i in {1..d}, listed once with
// the smaller half-edge id first and lines sorted by it.
std::string format_matching(const HalfEdgeSpace& space, const Matching& sigma);
Matching parse_matching(const HalfEdgeSpace& space, const std::string& text);

// Coordinate export "row col value" of the 0/1 operator, sorted by row then
// column.
std::string format_sparse(const NBMatrix& b);

// Lift permutation file: one "e: i1 i2 ... in" line per undirected edge with
// 1-based images; the reverse orientation uses the inverse implicitly.
std::string format_lift_permutations(const LiftPermutations& sigma);
LiftPermutations parse_lift_permutations(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace nbspec

#endif  // NBSPEC_IO_HPP_
