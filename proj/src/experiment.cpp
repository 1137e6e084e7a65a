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

#include "nbspec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nbspec/configuration.hpp"
#include "nbspec/errors.hpp"
#include "nbspec/io.hpp"
#include "nbspec/lift.hpp"
#include "nbspec/nonbacktracking.hpp"
#include "nbspec/pathmatrices.hpp"
#include "nbspec/prooforacle.hpp"
#include "nbspec/rng.hpp"
#include "nbspec/spectra.hpp"
#include "nbspec/tangle.hpp"

namespace nbspec {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// Nearest-rank quantile on a sorted sample.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const auto m = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * m));
  rank = std::min(std::max<std::size_t>(rank, 1), sorted.size());
  return sorted[rank - 1];
}

double fraction_at_most(const std::vector<double>& values, double cutoff) {
  if (values.empty()) return 0.0;
  const auto count = static_cast<double>(
      std::count_if(values.begin(), values.end(),
                    [cutoff](double v) { return v <= cutoff; }));
  return count / static_cast<double>(values.size());
}

void append_quantiles(ordered_json& rec, std::vector<double> values) {
  std::sort(values.begin(), values.end());
  rec["min"] = values.empty() ? 0.0 : values.front();
  rec["q25"] = quantile(values, 0.25);
  rec["median"] = quantile(values, 0.50);
  rec["q75"] = quantile(values, 0.75);
  rec["q95"] = quantile(values, 0.95);
  rec["max"] = values.empty() ? 0.0 : values.back();
}

std::vector<std::string> run_trials(
    std::size_t trials, std::size_t threads,
    const std::function<std::string(std::size_t)>& work) {
  std::vector<std::string> out(trials);
  if (threads <= 1) {
    for (std::size_t t = 0; t < trials; ++t) out[t] = work(t);
    return out;
  }
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= trials) return;
      out[t] = work(t);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t width = std::min(threads, trials);
  pool.reserve(width);
  for (std::size_t i = 0; i < width; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

bool parse_size(const std::string& text, std::size_t* out) {
  std::size_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) return false;
  *out = value;
  return true;
}

}  // namespace

std::size_t resolve_threads(const ExperimentConfig& config) {
  if (config.threads > 0) return config.threads;
  if (const char* env = std::getenv("NBSPEC_THREADS")) {
    std::size_t value = 0;
    if (parse_size(env, &value) && value > 0) return value;
  }
  return 1;
}

BaseMultigraph resolve_base_graph(const std::string& name_or_path) {
  std::size_t value = 0;
  if (name_or_path.size() > 1 &&
      (name_or_path[0] == 'k' || name_or_path[0] == 'K') &&
      parse_size(name_or_path.substr(1), &value)) {
    return complete_graph(value);
  }
  if (name_or_path.rfind("bouquet", 0) == 0 &&
      parse_size(name_or_path.substr(7), &value)) {
    return bouquet_graph(value);
  }
  if (name_or_path.rfind("cycle", 0) == 0 &&
      parse_size(name_or_path.substr(5), &value)) {
    return cycle_graph(value);
  }
  return parse_graph(read_text_file(name_or_path));
}

ExperimentResult run_friedman_experiment(const ExperimentConfig& config) {
  const std::size_t n = config.n;
  const std::size_t d = config.d;
  if (n < 4 || d < 3) {
    throw PreconditionFailedError("experiment needs n >= 4 and d >= 3");
  }
  if ((n * d) % 2 != 0) {
    throw PreconditionFailedError("n d must be even");
  }
  if (config.trials < 1) {
    throw PreconditionFailedError("trials must be positive");
  }
  const std::size_t trials = config.trials;
  const std::size_t threads = resolve_threads(config);

  std::vector<char> rejected(trials, 0);
  std::vector<double> gaps(trials, 0.0);

  const auto work = [&](std::size_t t) -> std::string {
    const std::uint64_t seed = Rng::derive_seed(config.master_seed, t);
    Rng rng(seed);
    ordered_json rec;
    rec["schema_version"] = 1;
    rec["experiment"] = "friedman";
    rec["trial"] = t;
    rec["master_seed"] = config.master_seed;
    rec["seed"] = seed;
    rec["n"] = n;
    rec["d"] = d;
    try {
      const RegularSample sample =
          sample_uniform_regular(n, d, rng, config.max_attempts);
      rec["attempts"] = sample.attempts;
      rec["rejected"] = false;
      const EigsMode mode =
          n >= 500 ? EigsMode::IterativeExtremal : EigsMode::Dense;
      const SpectralReport rep = spectral_report(sample.adjacency, d, mode);
      rec["mu2_or_mun"] = rep.gap_stat;
      rec["mu"] = rep.mu;
      rec["ramanujan"] = rep.ramanujan;
      rec["nb_second_modulus"] = nb_modulus_from_adjacency(rep.gap_stat, d);
      gaps[t] = rep.gap_stat;
    } catch (const RejectionBudgetExhaustedError&) {
      rec["attempts"] = config.max_attempts;
      rec["rejected"] = true;
      rejected[t] = 1;
    }
    return rec.dump() + "\n";
  };
  const std::vector<std::string> lines = run_trials(trials, threads, work);

  std::vector<double> kept;
  std::vector<double> nb_kept;
  std::size_t n_rejected = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (rejected[t]) {
      ++n_rejected;
    } else {
      kept.push_back(gaps[t]);
      nb_kept.push_back(nb_modulus_from_adjacency(gaps[t], d));
    }
  }
  std::sort(kept.begin(), kept.end());
  std::sort(nb_kept.begin(), nb_kept.end());
  const double ram = 2.0 * std::sqrt(static_cast<double>(d) - 1.0);
  const double nb_ram = std::sqrt(static_cast<double>(d) - 1.0);

  ordered_json sum;
  sum["schema_version"] = 1;
  sum["experiment"] = "friedman";
  sum["summary"] = true;
  sum["master_seed"] = config.master_seed;
  sum["n"] = n;
  sum["d"] = d;
  sum["trials"] = trials;
  sum["rejected"] = n_rejected;
  sum["frac_005"] = fraction_at_most(kept, ram + 0.05);
  sum["frac_010"] = fraction_at_most(kept, ram + 0.10);
  sum["frac_015"] = fraction_at_most(kept, ram + 0.15);
  sum["frac_020"] = fraction_at_most(kept, ram + 0.20);
  sum["nb_frac_010"] = fraction_at_most(nb_kept, nb_ram + 0.10);
  append_quantiles(sum, kept);

  ExperimentResult result;
  for (const std::string& line : lines) result.jsonl += line;
  result.jsonl += sum.dump() + "\n";
  result.csv =
      "experiment,n,d,trials,rejected,frac_005,frac_010,frac_015,frac_020,"
      "nb_frac_010,min,q25,median,q75,q95,max\n";
  result.csv += "friedman," + std::to_string(n) + ',' + std::to_string(d) +
                ',' + std::to_string(trials) + ',' +
                std::to_string(n_rejected);
  for (const char* key : {"frac_005", "frac_010", "frac_015", "frac_020",
                          "nb_frac_010", "min", "q25", "median", "q75", "q95",
                          "max"}) {
    result.csv += ',' + format_double(sum[key].get<double>());
  }
  result.csv += '\n';
  return result;
}

ExperimentResult run_lift_experiment(const ExperimentConfig& config) {
  const std::size_t n = config.n;
  if (n < 1) throw PreconditionFailedError("lift degree must be at least 1");
  if (config.trials < 1) {
    throw PreconditionFailedError("trials must be positive");
  }
  const std::size_t trials = config.trials;
  const std::size_t threads = resolve_threads(config);

  const BaseMultigraph base = resolve_base_graph(config.base_graph);
  const NBMatrix base_b = nb_from_multigraph(base);
  if (!is_irreducible(base_b)) {
    throw ReducibleOperatorError("base operator must be irreducible");
  }
  const double rho1 = perron_eigenvalue(base_b, 1e-11, 200000);
  const std::vector<std::complex<double>> base_eigs =
      nonsym_eigs_dense(base_b.dense());
  const std::size_t r = base.directed_edge_count();

  const AdjacencyMatrix base_adj = adjacency(base);
  const std::vector<std::int64_t> row_sums = base_adj.row_sums();
  const bool regular =
      std::all_of(row_sums.begin(), row_sums.end(),
                  [&](std::int64_t s) { return s == row_sums.front(); });
  const std::size_t dreg =
      regular ? static_cast<std::size_t>(row_sums.front()) : 0;
  const std::size_t lift_vertices = base.actual_vertex_count() * n;

  // Spectrum route: regular bases go through the adjacency solve and the
  // spectral mapping (valid for regular multigraphs); small operators go
  // dense; the rest uses the projected power estimate.
  std::string route;
  if (regular && dreg >= 3 && lift_vertices <= 2500) {
    route = "ihara-bass";
  } else if (r * n <= 4000) {
    route = "dense";
  } else {
    route = "projected-power";
  }

  std::vector<double> new_leads(trials, 0.0);
  std::vector<char> has_lead(trials, 0);
  std::vector<char> contained(trials, 0);
  std::vector<char> containment_known(trials, 0);

  const auto work = [&](std::size_t t) -> std::string {
    const std::uint64_t seed = Rng::derive_seed(config.master_seed, t);
    Rng rng(seed);
    ordered_json rec;
    rec["schema_version"] = 1;
    rec["experiment"] = "lift";
    rec["trial"] = t;
    rec["master_seed"] = config.master_seed;
    rec["seed"] = seed;
    rec["base"] = config.base_graph;
    rec["n"] = n;
    rec["r"] = r;
    rec["rho1"] = rho1;
    rec["route"] = route;
    try {
      const LiftPermutations sigma = sample_random_lift(base, n, rng);
      if (route == "projected-power") {
        const double lead =
            new_lead_modulus(base, sigma, NewEigMethod::ProjectedPower);
        rec["containment_ok"] = nullptr;
        rec["new_lead_modulus"] = lead;
        new_leads[t] = lead;
        has_lead[t] = 1;
        return rec.dump() + "\n";
      }
      const Lift lift = build_lift(base, sigma);
      std::vector<std::complex<double>> lift_eigs;
      if (route == "ihara-bass") {
        const std::vector<double> adj_eigs =
            sym_eigs(adjacency(lift.graph), EigsMode::Dense);
        lift_eigs = ihara_bass_spectrum(adj_eigs, lift_vertices, dreg);
      } else {
        lift_eigs = nonsym_eigs_dense(lift.b_n.dense());
      }
      containment_known[t] = 1;
      try {
        const SplitSpectrum split = split_spectrum(lift_eigs, base_eigs, 1e-6);
        const double lead =
            split.new_eigs.empty() ? 0.0 : std::abs(split.new_eigs.front());
        rec["containment_ok"] = true;
        rec["new_lead_modulus"] = lead;
        contained[t] = 1;
        new_leads[t] = lead;
        has_lead[t] = 1;
      } catch (const ContainmentViolationError&) {
        rec["containment_ok"] = false;
        rec["new_lead_modulus"] = nullptr;
      }
    } catch (const Error& err) {
      rec["error"] = error_code_name(err.code());
      rec["message"] = err.what();
    }
    return rec.dump() + "\n";
  };
  const std::vector<std::string> lines = run_trials(trials, threads, work);

  std::vector<double> leads;
  std::size_t n_known = 0;
  std::size_t n_contained = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (has_lead[t]) leads.push_back(new_leads[t]);
    if (containment_known[t]) {
      ++n_known;
      if (contained[t]) ++n_contained;
    }
  }
  std::sort(leads.begin(), leads.end());
  const double target = std::sqrt(rho1);

  ordered_json sum;
  sum["schema_version"] = 1;
  sum["experiment"] = "lift";
  sum["summary"] = true;
  sum["master_seed"] = config.master_seed;
  sum["base"] = config.base_graph;
  sum["n"] = n;
  sum["r"] = r;
  sum["rho1"] = rho1;
  sum["route"] = route;
  sum["trials"] = trials;
  sum["containment_checked"] = n_known;
  sum["containment_frac"] =
      n_known == 0 ? 0.0
                   : static_cast<double>(n_contained) /
                         static_cast<double>(n_known);
  sum["frac_005"] = fraction_at_most(leads, target + 0.05);
  sum["frac_010"] = fraction_at_most(leads, target + 0.10);
  sum["frac_015"] = fraction_at_most(leads, target + 0.15);
  sum["frac_020"] = fraction_at_most(leads, target + 0.20);
  append_quantiles(sum, leads);

  ExperimentResult result;
  for (const std::string& line : lines) result.jsonl += line;
  result.jsonl += sum.dump() + "\n";
  result.csv =
      "experiment,base,n,r,trials,rho1,containment_frac,frac_005,frac_010,"
      "frac_015,frac_020,min,q25,median,q75,q95,max\n";
  result.csv += "lift," + config.base_graph + ',' + std::to_string(n) + ',' +
                std::to_string(r) + ',' + std::to_string(trials);
  for (const char* key :
       {"rho1", "containment_frac", "frac_005", "frac_010", "frac_015",
        "frac_020", "min", "q25", "median", "q75", "q95", "max"}) {
    result.csv += ',' + format_double(sum[key].get<double>());
  }
  result.csv += '\n';
  return result;
}

ExperimentResult run_identity_suite(const ExperimentConfig& config) {
  ExperimentResult result;
  const std::uint64_t master = config.master_seed;

  const auto add = [&result](const std::string& name, bool ok,
                             const std::string& note) {
    ordered_json rec;
    rec["schema_version"] = 1;
    rec["experiment"] = "identity";
    rec["check"] = name;
    rec["pass"] = ok;
    if (!note.empty()) rec["note"] = note;
    result.jsonl += rec.dump() + "\n";
    result.report += (ok ? "PASS " : "FAIL ") + name;
    if (!note.empty()) result.report += " (" + note + ")";
    result.report += "\n";
    result.pass = result.pass && ok;
  };

  // Spectral mapping on seeded simple regular samples.
  {
    bool ok = true;
    std::string note;
    for (std::size_t i = 0; i < 10 && ok; ++i) {
      const std::size_t d = 3 + i % 2;
      const std::size_t n = 8 + 2 * (i / 2);
      const std::uint64_t seed = Rng::derive_seed(master, 100 + i);
      Rng rng(seed);
      const RegularSample sample = sample_uniform_regular(n, d, rng, 10000);
      const HalfEdgeSpace space{n, d};
      const NBMatrix b = nb_from_matching(space, sample.matching);
      double worst = 0.0;
      if (!verify_ihara_bass(sample.adjacency, b, 1e-8, &worst)) {
        ok = false;
        note = "seed " + std::to_string(seed) + ", residual " +
               format_double(worst);
      }
    }
    add("ihara_bass_spectrum", ok, note);
  }

  // Tangle-free power identity. Small cubic graphs are never tangle-free
  // beyond radius 1 (a radius-2 ball already carries several cycles), so the
  // small instances check k up to the largest tangle-free radius they attain
  // and one larger instance exercises radius 2.
  {
    bool ok = true;
    std::string note;
    for (std::size_t i = 0; i < 6 && ok; ++i) {
      const std::size_t n = 8 + 2 * (i % 3);
      const HalfEdgeSpace space{n, 3};
      const std::uint64_t seed = Rng::derive_seed(master, 200 + i);
      Rng rng(seed);
      bool found = false;
      for (std::size_t attempt = 0; attempt < 2000 && !found; ++attempt) {
        const Matching sigma = sample_uniform_matching(space, rng);
        const BaseMultigraph graph = multigraph_of_matching(space, sigma);
        if (!is_ell_tangle_free(graph, 1)) {
          continue;
        }
        found = true;
        std::size_t ell_star = 1;
        while (ell_star < 3 && is_ell_tangle_free(graph, ell_star + 1)) {
          ++ell_star;
        }
        for (std::size_t k = 1; k <= ell_star && ok; ++k) {
          if (!verify_power_identity(space, sigma, k,
                                     kDefaultEnumerationBudget)) {
            ok = false;
            note = "seed " + std::to_string(seed) + ", k " + std::to_string(k);
          }
        }
      }
      if (!found) {
        ok = false;
        note = "no tangle-free instance at seed " + std::to_string(seed);
      }
    }
    if (ok) {
      const std::size_t n = 200;
      const HalfEdgeSpace space{n, 3};
      const std::uint64_t seed = Rng::derive_seed(master, 250);
      Rng rng(seed);
      bool found = false;
      for (std::size_t attempt = 0; attempt < 200 && !found; ++attempt) {
        const Matching sigma = sample_uniform_matching(space, rng);
        if (!is_ell_tangle_free(multigraph_of_matching(space, sigma), 2)) {
          continue;
        }
        found = true;
        for (std::size_t k = 1; k <= 2 && ok; ++k) {
          if (!verify_power_identity(space, sigma, k,
                                     kDefaultEnumerationBudget)) {
            ok = false;
            note = "n 200, k " + std::to_string(k);
          }
        }
      }
      if (!found) {
        ok = false;
        note = "no radius-2 tangle-free instance at n 200";
      }
    }
    add("power_identity", ok, note);
  }

  // Exact decomposition identity, any matching.
  {
    bool ok = true;
    std::string note;
    for (std::size_t i = 0; i < 6 && ok; ++i) {
      const std::size_t n = 4 + 2 * (i % 2);
      const HalfEdgeSpace space{n, 3};
      const std::uint64_t seed = Rng::derive_seed(master, 300 + i);
      Rng rng(seed);
      const Matching sigma = sample_uniform_matching(space, rng);
      double worst = 0.0;
      if (!verify_decomposition(space, sigma, 2, kDefaultEnumerationBudget,
                                &worst)) {
        ok = false;
        note = "seed " + std::to_string(seed) + ", worst residual " +
               format_double(worst);
      }
    }
    add("decomposition", ok, note);
  }

  // Block decomposition of a lift operator feeds the eigenvalue-residue
  // lemma: S and R are the fiber-constant and complement compressions.
  {
    bool ok = true;
    std::string note;
    const BaseMultigraph base = complete_graph(4);
    const std::size_t n = 3;
    const std::uint64_t seed = Rng::derive_seed(master, 400);
    Rng rng(seed);
    const LiftPermutations sigma = sample_random_lift(base, n, rng);
    const Lift lift = build_lift(base, sigma);
    const Eigen::MatrixXd bn = lift.b_n.dense();
    const auto dim = static_cast<Eigen::Index>(lift.base_r * n);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t e = 0; e < lift.base_r; ++e) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          p(static_cast<Eigen::Index>(e * n + i),
            static_cast<Eigen::Index>(e * n + j)) =
              1.0 / static_cast<double>(n);
        }
      }
    }
    const Eigen::MatrixXd m2 = bn * bn;
    const Eigen::MatrixXd s = p * m2 * p;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
    const Eigen::MatrixXd r = (id - p) * m2 * (id - p);
    try {
      if (!lemma_hr_check(s, r, nullptr)) {
        ok = false;
        note = "new eigenvalue exceeded the kernel bound";
      }
    } catch (const Error& err) {
      ok = false;
      note = err.what();
    }
    add("kernel_bound_lemma", ok, note);
  }

  // Binomial product bound on a coarse hypothesis-respecting grid.
  {
    bool ok = true;
    std::string note;
    std::size_t evaluated = 0;
    for (std::size_t k = 1; k <= 6 && ok; ++k) {
      for (std::size_t qi = 1; qi <= 100 && ok; ++qi) {
        const Rational q(static_cast<unsigned>(qi), 200u);
        if (!(2 * q * Rational(static_cast<unsigned>(k * k)) <= 1)) continue;
        for (std::size_t pi = 1; pi <= qi && ok; ++pi) {
          const Rational p(static_cast<unsigned>(pi), 200u);
          const Rational lhs = 4 * (1 - p / q) * (1 - p / q);
          if (!(lhs <= 2 * q * Rational(static_cast<unsigned>(k * k)))) {
            continue;
          }
          ++evaluated;
          const BinomialProductReport rep =
              binomial_product_expectation(k, p, q);
          if (!rep.within_bound) {
            ok = false;
            note = "violation at k " + std::to_string(k);
          }
        }
      }
    }
    if (ok && evaluated == 0) {
      ok = false;
      note = "empty grid";
    }
    add("binomial_product_bound", ok, note);
  }

  // Exhaustive expectation survey envelope.
  {
    const SurveyReport survey = exppath_bound_survey(2, 3, 2);
    const bool ok = survey.max_implied_c <= 100.0;
    add("expectation_survey", ok,
        "max implied constant " + format_double(survey.max_implied_c));
  }

  ordered_json sum;
  sum["schema_version"] = 1;
  sum["experiment"] = "identity";
  sum["summary"] = true;
  sum["master_seed"] = master;
  sum["pass"] = result.pass;
  result.jsonl += sum.dump() + "\n";
  result.csv = "experiment,master_seed,pass\nidentity," +
               std::to_string(master) + ',' + (result.pass ? "1" : "0") + "\n";
  return result;
}

}  // namespace nbspec
