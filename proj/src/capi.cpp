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

#include "nbspec.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nbspec/configuration.hpp"
#include "nbspec/errors.hpp"
#include "nbspec/experiment.hpp"
#include "nbspec/io.hpp"
#include "nbspec/lift.hpp"
#include "nbspec/multigraph.hpp"
#include "nbspec/nonbacktracking.hpp"
#include "nbspec/pathmatrices.hpp"
#include "nbspec/prooforacle.hpp"
#include "nbspec/rng.hpp"
#include "nbspec/spectra.hpp"
#include "nbspec/tangle.hpp"

struct nbspec_graph {
  nbspec::BaseMultigraph graph;
};

namespace {

using ordered_json = nlohmann::ordered_json;

thread_local int t_last_code = NBSPEC_OK;
thread_local std::string t_last_message;

void set_last_error(int code, const std::string& message) {
  t_last_code = code;
  t_last_message = message;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void write_out(char** out, const std::string& s) {
  if (out != nullptr) *out = copy_string(s);
}

int guard(const std::function<void()>& body) {
  try {
    body();
    set_last_error(NBSPEC_OK, "");
    return NBSPEC_OK;
  } catch (const nbspec::Error& err) {
    const int code = static_cast<int>(err.code());
    set_last_error(code, err.what());
    return code;
  } catch (const std::exception& err) {
    set_last_error(NBSPEC_ERR_UNKNOWN, err.what());
    return NBSPEC_ERR_UNKNOWN;
  } catch (...) {
    set_last_error(NBSPEC_ERR_UNKNOWN, "unknown failure");
    return NBSPEC_ERR_UNKNOWN;
  }
}

}  // namespace

extern "C" {

const char* nbspec_version(void) { return "0.1.0"; }

const char* nbspec_error_code_name(int code) {
  return nbspec::error_code_name(static_cast<nbspec::ErrorCode>(code));
}

int nbspec_last_error_code(void) { return t_last_code; }

const char* nbspec_last_error_message(void) { return t_last_message.c_str(); }

void nbspec_string_free(char* s) { std::free(s); }

int nbspec_graph_parse(const char* text, nbspec_graph** out) {
  return guard([&] {
    if (text == nullptr || out == nullptr) {
      throw nbspec::PreconditionFailedError("null argument");
    }
    *out = new nbspec_graph{nbspec::parse_graph(text)};
  });
}

int nbspec_graph_resolve(const char* name_or_path, nbspec_graph** out) {
  return guard([&] {
    if (name_or_path == nullptr || out == nullptr) {
      throw nbspec::PreconditionFailedError("null argument");
    }
    *out = new nbspec_graph{nbspec::resolve_base_graph(name_or_path)};
  });
}

int nbspec_graph_format(const nbspec_graph* g, char** text_out) {
  return guard([&] {
    if (g == nullptr || text_out == nullptr) {
      throw nbspec::PreconditionFailedError("null argument");
    }
    write_out(text_out, nbspec::format_graph(g->graph));
  });
}

int nbspec_graph_counts(const nbspec_graph* g, size_t* n_vertices_out,
                        size_t* n_edges_out, size_t* n_actual_vertices_out) {
  return guard([&] {
    if (g == nullptr) throw nbspec::PreconditionFailedError("null argument");
    if (n_vertices_out != nullptr) *n_vertices_out = g->graph.vertex_count();
    if (n_edges_out != nullptr) *n_edges_out = g->graph.edge_count();
    if (n_actual_vertices_out != nullptr) {
      *n_actual_vertices_out = g->graph.actual_vertex_count();
    }
  });
}

void nbspec_graph_free(nbspec_graph* g) { delete g; }

int nbspec_sample_regular(size_t n, size_t d, uint64_t seed,
                          size_t max_attempts, char** graph_text_out,
                          char** matching_text_out, size_t* attempts_out) {
  return guard([&] {
    nbspec::Rng rng(seed);
    const nbspec::RegularSample sample =
        nbspec::sample_uniform_regular(n, d, rng, max_attempts);
    if (graph_text_out != nullptr) {
      const nbspec::HalfEdgeSpace space{n, d};
      write_out(graph_text_out,
                nbspec::format_graph(
                    nbspec::multigraph_of_matching(space, sample.matching)));
    }
    if (matching_text_out != nullptr) {
      const nbspec::HalfEdgeSpace space{n, d};
      write_out(matching_text_out,
                nbspec::format_matching(space, sample.matching));
    }
    if (attempts_out != nullptr) *attempts_out = sample.attempts;
  });
}

int nbspec_sample_lift(const nbspec_graph* base, size_t n, uint64_t seed,
                       char** perms_text_out) {
  return guard([&] {
    if (base == nullptr || perms_text_out == nullptr) {
      throw nbspec::PreconditionFailedError("null argument");
    }
    nbspec::Rng rng(seed);
    const nbspec::LiftPermutations sigma =
        nbspec::sample_random_lift(base->graph, n, rng);
    write_out(perms_text_out, nbspec::format_lift_permutations(sigma));
  });
}

int nbspec_spectral_report_json(const nbspec_graph* g, int iterative,
                                char** json_out) {
  return guard([&] {
    if (g == nullptr || json_out == nullptr) {
      throw nbspec::PreconditionFailedError("null argument");
    }
    const nbspec::AdjacencyMatrix a = nbspec::adjacency(g->graph);
    const std::vector<std::int64_t> rows = a.row_sums();
    if (rows.empty()) {
      throw nbspec::PreconditionFailedError("empty graph");
    }
    const bool regular =
        std::all_of(rows.begin(), rows.end(),
                    [&](std::int64_t s) { return s == rows.front(); });
    if (!regular || rows.front() < 2) {
      throw nbspec::NotRegularError(
          "spectral report needs a regular graph of degree at least 2");
    }
    const auto d = static_cast<std::size_t>(rows.front());
    const nbspec::EigsMode mode = iterative != 0
                                      ? nbspec::EigsMode::IterativeExtremal
                                      : nbspec::EigsMode::Dense;
    ordered_json out;
    out["n"] = a.dimension();
    out["d"] = d;
    if (nbspec::is_simple_regular(a, d)) {
      const nbspec::SpectralReport rep = nbspec::spectral_report(a, d, mode);
      out["eigenvalues"] = rep.eigenvalues;
      out["mu"] = rep.mu;
      out["mu2_or_mun"] = rep.gap_stat;
      out["ramanujan"] = rep.ramanujan;
      out["nb_second_modulus"] =
          nbspec::nb_modulus_from_adjacency(rep.gap_stat, d);
    } else {
      // Regular multigraph: eigenvalues and the gap statistic still make
      // sense, the simple-graph Ramanujan flag does not.
      const std::vector<double> eigs = nbspec::sym_eigs(a, mode);
      out["eigenvalues"] = eigs;
      if (eigs.size() >= 2) {
        const double gap = std::max(eigs[1], std::abs(eigs.back()));
        double mu = 0.0;
        for (double x : eigs) {
          if (std::abs(x) < static_cast<double>(d) - 1e-9) {
            mu = std::max(mu, std::abs(x));
          }
        }
        out["mu"] = mu;
        out["mu2_or_mun"] = gap;
        out["nb_second_modulus"] =
            nbspec::nb_modulus_from_adjacency(gap, d);
      } else {
        out["mu"] = nullptr;
        out["mu2_or_mun"] = nullptr;
        out["nb_second_modulus"] = nullptr;
      }
      out["ramanujan"] = nullptr;
    }
    write_out(json_out, out.dump());
  });
}

int nbspec_tangle_check(const nbspec_graph* g, size_t ell,
                        int* tangle_free_out, uint32_t* witness_out) {
  return guard([&] {
    if (g == nullptr || tangle_free_out == nullptr) {
      throw nbspec::PreconditionFailedError("null argument");
    }
    std::uint32_t witness = 0;
    const bool free = nbspec::is_ell_tangle_free(g->graph, ell, &witness);
    *tangle_free_out = free ? 1 : 0;
    if (witness_out != nullptr) *witness_out = free ? 0 : witness;
  });
}

int nbspec_verify_decomposition(size_t n, size_t d, size_t ell, uint64_t seed,
                                int* ok_out, double* worst_out) {
  return guard([&] {
    if (ok_out == nullptr) {
      throw nbspec::PreconditionFailedError("null argument");
    }
    const nbspec::HalfEdgeSpace space{n, d};
    nbspec::Rng rng(seed);
    const nbspec::Matching sigma = nbspec::sample_uniform_matching(space, rng);
    double worst = 0.0;
    const bool ok = nbspec::verify_decomposition(
        space, sigma, ell, nbspec::kDefaultEnumerationBudget, &worst);
    *ok_out = ok ? 1 : 0;
    if (worst_out != nullptr) *worst_out = worst;
  });
}

int nbspec_oracle_survey(size_t n, size_t d, size_t max_k, char** csv_out,
                         double* max_c_out) {
  return guard([&] {
    const nbspec::SurveyReport survey = nbspec::exppath_bound_survey(n, d, max_k);
    if (csv_out != nullptr) write_out(csv_out, nbspec::survey_to_csv(survey));
    if (max_c_out != nullptr) *max_c_out = survey.max_implied_c;
  });
}

int nbspec_run_experiment(const char* config_json, char** jsonl_out,
                          char** csv_out, char** report_out, int* pass_out) {
  return guard([&] {
    if (config_json == nullptr) {
      throw nbspec::PreconditionFailedError("null argument");
    }
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& err) {
      throw nbspec::IoFailureError(std::string("invalid experiment config: ") +
                                   err.what());
    }
    if (!parsed.is_object()) {
      throw nbspec::IoFailureError("experiment config must be a JSON object");
    }
    nbspec::ExperimentConfig config;
    try {
      config.experiment = parsed.value("experiment", std::string("identity"));
      config.n = parsed.value("n", config.n);
      config.d = parsed.value("d", config.d);
      config.ell = parsed.value("ell", config.ell);
      config.trials = parsed.value("trials", config.trials);
      config.master_seed = parsed.value("master_seed", config.master_seed);
      config.base_graph = parsed.value("base_graph", config.base_graph);
      config.threads = parsed.value("threads", config.threads);
      config.max_attempts = parsed.value("max_attempts", config.max_attempts);
    } catch (const nlohmann::json::exception& err) {
      throw nbspec::IoFailureError(std::string("invalid experiment config: ") +
                                   err.what());
    }
    nbspec::ExperimentResult result;
    if (config.experiment == "friedman") {
      result = nbspec::run_friedman_experiment(config);
    } else if (config.experiment == "lift") {
      result = nbspec::run_lift_experiment(config);
    } else if (config.experiment == "identity") {
      result = nbspec::run_identity_suite(config);
    } else {
      throw nbspec::IoFailureError("unknown experiment \"" +
                                   config.experiment + "\"");
    }
    if (jsonl_out != nullptr) write_out(jsonl_out, result.jsonl);
    if (csv_out != nullptr) write_out(csv_out, result.csv);
    if (report_out != nullptr) write_out(report_out, result.report);
    if (pass_out != nullptr) *pass_out = result.pass ? 1 : 0;
  });
}

}  // extern "C"
