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

#ifndef NBSPEC_EXPERIMENT_HPP_
#define NBSPEC_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

#include "nbspec/multigraph.hpp"

namespace nbspec {

struct ExperimentConfig {
  std::string experiment;  // "friedman", "lift" or "identity"
  std::size_t n = 0;       // vertex count or lift degree
  std::size_t d = 3;
  std::size_t ell = 2;
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  std::string base_graph = "bouquet2";  // named graph or a file path
  std::size_t threads = 0;              // 0: NBSPEC_THREADS env var, else 1
  std::size_t max_attempts = 1000;
};

// Flag wins over the NBSPEC_THREADS environment variable; default 1.
std::size_t resolve_threads(const ExperimentConfig& config);

// Named graphs "k<n>", "bouquet<l>", "cycle<n>", otherwise a graph file path.
BaseMultigraph resolve_base_graph(const std::string& name_or_path);

struct ExperimentResult {
  std::string jsonl;   // one record per trial plus a summary record
  std::string csv;     // header plus one summary row
  std::string report;  // human-readable PASS/FAIL lines (identity suite)
  bool pass = true;
};

// Uniform simple d-regular graphs; per-trial spectral gap statistics and the
// summary fractions below 2 sqrt(d-1) + eps.
ExperimentResult run_friedman_experiment(const ExperimentConfig& config);

// Random n-lifts of a fixed base; containment of the base spectrum and the
// leading new-eigenvalue modulus against sqrt(rho_1) + eps.
ExperimentResult run_lift_experiment(const ExperimentConfig& config);

// Deterministic verification sweep over the exact identities and oracles.
ExperimentResult run_identity_suite(const ExperimentConfig& config);

}  // namespace nbspec

#endif  // NBSPEC_EXPERIMENT_HPP_
