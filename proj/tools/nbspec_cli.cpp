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

// Command line laboratory built on the nbspec C interface.
// Exit codes: 0 success, 1 verification or runtime failure, 2 configuration
// or input error, 3 precondition failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbspec.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;

int exit_code_for(int status) {
  switch (status) {
    case NBSPEC_OK:
      return kExitOk;
    case NBSPEC_ERR_IO_FAILURE:
    case NBSPEC_ERR_INVALID_EDGE:
    case NBSPEC_ERR_INVALID_PATH:
    case NBSPEC_ERR_DIMENSION_MISMATCH:
    case NBSPEC_ERR_EMPTY_SAMPLE:
      return kExitConfig;
    case NBSPEC_ERR_PRECONDITION_FAILED:
    case NBSPEC_ERR_PRECONDITION_TANGLED:
    case NBSPEC_ERR_NOT_REGULAR:
    case NBSPEC_ERR_NO_MATCHING_EXISTS:
    case NBSPEC_ERR_REDUCIBLE_OPERATOR:
      return kExitPrecondition;
    default:
      return kExitFailure;
  }
}

int report_error(int status) {
  std::cerr << "error (" << nbspec_error_code_name(status)
            << "): " << nbspec_last_error_message() << "\n";
  return exit_code_for(status);
}

// Owned C string with scoped release.
struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { nbspec_string_free(ptr); }
  std::string str() const { return ptr == nullptr ? std::string() : ptr; }
};

struct OwnedGraph {
  nbspec_graph* ptr = nullptr;
  ~OwnedGraph() { nbspec_graph_free(ptr); }
};

// Writes to the path, or to stdout when the path is empty.
bool emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

struct ExperimentFiles {
  std::string jsonl_path;
  std::string csv_path;
};

int run_experiment_command(const nlohmann::json& config,
                           const ExperimentFiles& files, bool print_report) {
  OwnedString jsonl;
  OwnedString csv;
  OwnedString report;
  int pass = 1;
  const int status = nbspec_run_experiment(config.dump().c_str(), &jsonl.ptr,
                                           &csv.ptr, &report.ptr, &pass);
  if (status != NBSPEC_OK) return report_error(status);
  if (print_report) {
    std::cout << report.str();
  } else if (files.jsonl_path.empty()) {
    std::cout << jsonl.str();
  }
  if (!files.jsonl_path.empty() && !emit(jsonl.str(), files.jsonl_path)) {
    return kExitConfig;
  }
  if (!files.csv_path.empty() && !emit(csv.str(), files.csv_path)) {
    return kExitConfig;
  }
  return pass != 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nbspec: a laboratory for non-backtracking spectra of random "
               "regular graphs and lifts"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 1 verification or runtime failure,\n"
      "2 configuration or input error, 3 precondition failure.\n"
      "Graphs are given as named graphs (k4, bouquet2, cycle5) or file paths.\n"
      "The NBSPEC_THREADS environment variable sets the default worker count.");

  // sample-regular
  std::size_t sr_n = 10;
  std::size_t sr_d = 3;
  std::uint64_t sr_seed = 1;
  std::size_t sr_max_attempts = 1000;
  std::string sr_out;
  std::string sr_matching_out;
  auto* sample_regular =
      app.add_subcommand("sample-regular",
                         "Sample a uniform simple d-regular graph by "
                         "rejection from the configuration model");
  sample_regular->add_option("--n", sr_n, "Vertex count")->required();
  sample_regular->add_option("--d", sr_d, "Degree (default 3)");
  sample_regular->add_option("--seed", sr_seed, "Seed (default 1)");
  sample_regular->add_option("--max-attempts", sr_max_attempts,
                             "Rejection attempt budget (default 1000)");
  sample_regular->add_option("--out", sr_out,
                             "Write the graph here instead of stdout");
  sample_regular->add_option("--matching-out", sr_matching_out,
                             "Also write the accepted matching here");

  // sample-lift
  std::string sl_base = "bouquet2";
  std::size_t sl_n = 10;
  std::uint64_t sl_seed = 1;
  std::string sl_out;
  auto* sample_lift = app.add_subcommand(
      "sample-lift", "Sample uniform permutations for a random degree-n lift");
  sample_lift->add_option("--base", sl_base,
                          "Base graph, named or a file path (default bouquet2)");
  sample_lift->add_option("--n", sl_n, "Lift degree")->required();
  sample_lift->add_option("--seed", sl_seed, "Seed (default 1)");
  sample_lift->add_option("--out", sl_out,
                          "Write the permutations here instead of stdout");

  // spectrum
  std::string sp_graph;
  bool sp_iterative = false;
  std::string sp_out;
  auto* spectrum = app.add_subcommand(
      "spectrum", "Spectral report of a regular graph as JSON");
  spectrum->add_option("--graph", sp_graph, "Graph, named or a file path")
      ->required();
  spectrum->add_flag("--iterative", sp_iterative,
                     "Use the iterative extremal eigenvalue solver");
  spectrum->add_option("--out", sp_out, "Write the JSON here instead of stdout");

  // tangle-check
  std::string tc_graph;
  std::size_t tc_ell = 1;
  auto* tangle_check = app.add_subcommand(
      "tangle-check",
      "Check whether every radius-ell ball carries at most one cycle");
  tangle_check->add_option("--graph", tc_graph, "Graph, named or a file path")
      ->required();
  tangle_check->add_option("--ell", tc_ell, "Ball radius (default 1)");

  // verify-decomposition
  std::size_t vd_n = 6;
  std::size_t vd_d = 3;
  std::size_t vd_ell = 2;
  std::uint64_t vd_seed = 1;
  auto* verify_decomposition =
      app.add_subcommand("verify-decomposition",
                         "Verify the exact telescoping decomposition of the "
                         "tangle-free path matrix on a seeded instance");
  verify_decomposition->add_option("--n", vd_n, "Vertex count (default 6)");
  verify_decomposition->add_option("--d", vd_d, "Degree (default 3)");
  verify_decomposition->add_option("--ell", vd_ell, "Path depth (default 2)");
  verify_decomposition->add_option("--seed", vd_seed, "Seed (default 1)");

  // oracle
  std::size_t or_n = 2;
  std::size_t or_d = 3;
  std::size_t or_k = 2;
  double or_max_c = 0.0;
  std::string or_out;
  auto* oracle = app.add_subcommand(
      "oracle",
      "Exhaustive path-expectation survey over a small half-edge space");
  oracle->add_option("--n", or_n, "Vertex count (default 2)");
  oracle->add_option("--d", or_d, "Degree (default 3)");
  oracle->add_option("--max-k", or_k, "Largest path length (default 2)");
  oracle->add_option("--max-c", or_max_c,
                     "Fail when the implied constant exceeds this (default "
                     "0, no check)");
  oracle->add_option("--out", or_out, "Write the CSV here instead of stdout");

  // experiment-friedman
  std::size_t ef_n = 200;
  std::size_t ef_d = 3;
  std::size_t ef_trials = 10;
  std::uint64_t ef_seed = 1;
  std::size_t ef_threads = 0;
  std::size_t ef_max_attempts = 1000;
  ExperimentFiles ef_files;
  auto* experiment_friedman = app.add_subcommand(
      "experiment-friedman",
      "Second eigenvalue statistics of uniform random regular graphs");
  experiment_friedman->add_option("--n", ef_n, "Vertex count (default 200)");
  experiment_friedman->add_option("--d", ef_d, "Degree (default 3)");
  experiment_friedman->add_option("--trials", ef_trials,
                                  "Trial count (default 10)");
  experiment_friedman->add_option("--master-seed", ef_seed,
                                  "Master seed (default 1)");
  experiment_friedman->add_option(
      "--threads", ef_threads,
      "Worker threads (default: NBSPEC_THREADS, else 1)");
  experiment_friedman->add_option("--max-attempts", ef_max_attempts,
                                  "Rejection budget per trial (default 1000)");
  experiment_friedman->add_option("--jsonl", ef_files.jsonl_path,
                                  "Write per-trial JSONL here");
  experiment_friedman->add_option("--csv", ef_files.csv_path,
                                  "Write the summary CSV here");

  // experiment-lift
  std::string el_base = "bouquet2";
  std::size_t el_n = 50;
  std::size_t el_trials = 10;
  std::uint64_t el_seed = 1;
  std::size_t el_threads = 0;
  ExperimentFiles el_files;
  auto* experiment_lift = app.add_subcommand(
      "experiment-lift",
      "New eigenvalue statistics of uniform random lifts of a base graph");
  experiment_lift->add_option(
      "--base", el_base, "Base graph, named or a file path (default bouquet2)");
  experiment_lift->add_option("--n", el_n, "Lift degree (default 50)");
  experiment_lift->add_option("--trials", el_trials,
                              "Trial count (default 10)");
  experiment_lift->add_option("--master-seed", el_seed,
                              "Master seed (default 1)");
  experiment_lift->add_option(
      "--threads", el_threads,
      "Worker threads (default: NBSPEC_THREADS, else 1)");
  experiment_lift->add_option("--jsonl", el_files.jsonl_path,
                              "Write per-trial JSONL here");
  experiment_lift->add_option("--csv", el_files.csv_path,
                              "Write the summary CSV here");

  // identity-suite
  std::uint64_t is_seed = 1;
  ExperimentFiles is_files;
  auto* identity_suite = app.add_subcommand(
      "identity-suite",
      "Deterministic identity and bound checks across the library");
  identity_suite->add_option("--master-seed", is_seed,
                             "Master seed (default 1)");
  identity_suite->add_option("--jsonl", is_files.jsonl_path,
                             "Write per-check JSONL here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (sample_regular->parsed()) {
    OwnedString graph_text;
    OwnedString matching_text;
    size_t attempts = 0;
    const int status = nbspec_sample_regular(
        sr_n, sr_d, sr_seed, sr_max_attempts, &graph_text.ptr,
        sr_matching_out.empty() ? nullptr : &matching_text.ptr, &attempts);
    if (status != NBSPEC_OK) return report_error(status);
    if (!emit(graph_text.str(), sr_out)) return kExitConfig;
    if (!sr_matching_out.empty() &&
        !emit(matching_text.str(), sr_matching_out)) {
      return kExitConfig;
    }
    std::cerr << "accepted after " << attempts << " attempt(s)\n";
    return kExitOk;
  }

  if (sample_lift->parsed()) {
    OwnedGraph base;
    int status = nbspec_graph_resolve(sl_base.c_str(), &base.ptr);
    if (status != NBSPEC_OK) return report_error(status);
    OwnedString perms;
    status = nbspec_sample_lift(base.ptr, sl_n, sl_seed, &perms.ptr);
    if (status != NBSPEC_OK) return report_error(status);
    return emit(perms.str(), sl_out) ? kExitOk : kExitConfig;
  }

  if (spectrum->parsed()) {
    OwnedGraph graph;
    int status = nbspec_graph_resolve(sp_graph.c_str(), &graph.ptr);
    if (status != NBSPEC_OK) return report_error(status);
    OwnedString json;
    status = nbspec_spectral_report_json(graph.ptr, sp_iterative ? 1 : 0,
                                         &json.ptr);
    if (status != NBSPEC_OK) return report_error(status);
    return emit(json.str() + "\n", sp_out) ? kExitOk : kExitConfig;
  }

  if (tangle_check->parsed()) {
    OwnedGraph graph;
    int status = nbspec_graph_resolve(tc_graph.c_str(), &graph.ptr);
    if (status != NBSPEC_OK) return report_error(status);
    int tangle_free = 0;
    uint32_t witness = 0;
    status = nbspec_tangle_check(graph.ptr, tc_ell, &tangle_free, &witness);
    if (status != NBSPEC_OK) return report_error(status);
    if (tangle_free != 0) {
      std::cout << "tangle-free (ell " << tc_ell << ")\n";
    } else {
      std::cout << "tangled (ell " << tc_ell << ", witness vertex " << witness
                << ")\n";
    }
    return kExitOk;
  }

  if (verify_decomposition->parsed()) {
    int ok = 0;
    double worst = 0.0;
    const int status =
        nbspec_verify_decomposition(vd_n, vd_d, vd_ell, vd_seed, &ok, &worst);
    if (status != NBSPEC_OK) return report_error(status);
    std::cout << (ok != 0 ? "exact" : "MISMATCH")
              << " (largest residual " << worst << ")\n";
    return ok != 0 ? kExitOk : kExitFailure;
  }

  if (oracle->parsed()) {
    OwnedString csv;
    double max_c = 0.0;
    const int status =
        nbspec_oracle_survey(or_n, or_d, or_k, &csv.ptr, &max_c);
    if (status != NBSPEC_OK) return report_error(status);
    if (!emit(csv.str(), or_out)) return kExitConfig;
    std::cerr << "largest implied constant: " << max_c << "\n";
    if (or_max_c > 0.0 && max_c > or_max_c) {
      std::cerr << "exceeds the requested envelope " << or_max_c << "\n";
      return kExitFailure;
    }
    return kExitOk;
  }

  if (experiment_friedman->parsed()) {
    nlohmann::json config;
    config["experiment"] = "friedman";
    config["n"] = ef_n;
    config["d"] = ef_d;
    config["trials"] = ef_trials;
    config["master_seed"] = ef_seed;
    config["threads"] = ef_threads;
    config["max_attempts"] = ef_max_attempts;
    return run_experiment_command(config, ef_files, false);
  }

  if (experiment_lift->parsed()) {
    nlohmann::json config;
    config["experiment"] = "lift";
    config["base_graph"] = el_base;
    config["n"] = el_n;
    config["trials"] = el_trials;
    config["master_seed"] = el_seed;
    config["threads"] = el_threads;
    return run_experiment_command(config, el_files, false);
  }

  if (identity_suite->parsed()) {
    nlohmann::json config;
    config["experiment"] = "identity";
    config["master_seed"] = is_seed;
    return run_experiment_command(config, is_files, true);
  }

  std::cerr << "error: no subcommand\n";
  return kExitConfig;
}
