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

#include "nbspec/lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nbspec/errors.hpp"
#include "nbspec/spectra.hpp"

namespace nbspec {

LiftPermutations::LiftPermutations(std::size_t n_undirected_edges,
                                   std::size_t degree)
    : degree_(degree),
      forward_(n_undirected_edges),
      backward_(n_undirected_edges) {
  if (degree == 0) {
    throw PreconditionFailedError("lift degree must be at least 1");
  }
  std::vector<std::uint32_t> id(degree);
  std::iota(id.begin(), id.end(), 0u);
  for (std::size_t j = 0; j < n_undirected_edges; ++j) {
    forward_[j] = id;
    backward_[j] = id;
  }
}

LiftPermutations LiftPermutations::identity(std::size_t n_undirected_edges,
                                            std::size_t degree) {
  return LiftPermutations(n_undirected_edges, degree);
}

void LiftPermutations::set_forward(std::size_t edge,
                                   const std::vector<std::uint32_t>& perm) {
  if (edge >= forward_.size()) {
    throw InvalidEdgeError("permutation edge index out of range");
  }
  if (perm.size() != degree_) {
    throw DimensionMismatchError("permutation size does not match lift degree");
  }
  std::vector<bool> seen(degree_, false);
  std::vector<std::uint32_t> inv(degree_);
  for (std::uint32_t i = 0; i < degree_; ++i) {
    const std::uint32_t img = perm[i];
    if (img >= degree_ || seen[img]) {
      throw PreconditionFailedError("image list is not a permutation");
    }
    seen[img] = true;
    inv[img] = i;
  }
  forward_[edge] = perm;
  backward_[edge] = inv;
}

std::uint32_t LiftPermutations::sigma(std::uint32_t directed_edge,
                                      std::uint32_t i) const {
  const std::size_t j = directed_edge / 2;
  if (j >= forward_.size() || i >= degree_) {
    throw InvalidEdgeError("sigma index out of range");
  }
  return directed_edge % 2 == 0 ? forward_[j][i] : backward_[j][i];
}

bool LiftPermutations::is_involutive_consistent() const {
  for (std::size_t j = 0; j < forward_.size(); ++j) {
    for (std::uint32_t i = 0; i < degree_; ++i) {
      if (backward_[j][forward_[j][i]] != i) return false;
    }
  }
  return true;
}

Eigen::VectorXd FiberSubspace::project(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) {
    throw DimensionMismatchError("vector does not match fiber space dimension");
  }
  Eigen::VectorXd out(x.size());
  for (std::size_t e = 0; e < r; ++e) {
    const double mean =
        x.segment(static_cast<Eigen::Index>(e * n), static_cast<Eigen::Index>(n))
            .mean();
    out.segment(static_cast<Eigen::Index>(e * n), static_cast<Eigen::Index>(n))
        .setConstant(mean);
  }
  return out;
}

Eigen::VectorXd FiberSubspace::project_out(const Eigen::VectorXd& x) const {
  return x - project(x);
}

Eigen::VectorXd FiberSubspace::embed(const Eigen::VectorXd& base) const {
  if (static_cast<std::size_t>(base.size()) != r) {
    throw DimensionMismatchError("base vector does not match edge count");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(dimension()));
  for (std::size_t e = 0; e < r; ++e) {
    out.segment(static_cast<Eigen::Index>(e * n), static_cast<Eigen::Index>(n))
        .setConstant(base(static_cast<Eigen::Index>(e)));
  }
  return out;
}

Eigen::VectorXd FiberSubspace::restrict_to_base(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) {
    throw DimensionMismatchError("vector does not match fiber space dimension");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(r));
  for (std::size_t e = 0; e < r; ++e) {
    out(static_cast<Eigen::Index>(e)) =
        x.segment(static_cast<Eigen::Index>(e * n), static_cast<Eigen::Index>(n))
            .mean();
  }
  return out;
}

LiftPermutations sample_random_lift(const BaseMultigraph& x, std::size_t n,
                                    Rng& rng) {
  if (n < 1) throw PreconditionFailedError("lift degree must be at least 1");
  LiftPermutations sigma(x.edge_count(), n);
  std::vector<std::uint32_t> perm(n);
  for (std::size_t j = 0; j < x.edge_count(); ++j) {
    std::iota(perm.begin(), perm.end(), 0u);
    rng.shuffle(perm);
    sigma.set_forward(j, perm);
  }
  return sigma;
}

Lift build_lift(const BaseMultigraph& x, const LiftPermutations& sigma) {
  if (sigma.undirected_edges() != x.edge_count()) {
    throw DimensionMismatchError("permutation family does not match edge count");
  }
  const std::size_t n = sigma.degree();
  const std::size_t r = x.directed_edge_count();

  // Vertex (v, i) of the lift gets id v * n + i; the vertex map acts on the
  // first coordinate only.
  std::vector<BaseMultigraph::Edge> lifted_edges;
  lifted_edges.reserve(x.edge_count() * n);
  for (std::size_t j = 0; j < x.edge_count(); ++j) {
    const std::size_t e = 2 * j;
    const std::size_t u = x.tail(e);
    const std::size_t w = x.head(e);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t img = sigma.forward(j)[i];
      lifted_edges.emplace_back(u * n + i, w * n + img);
    }
  }
  std::optional<std::vector<std::size_t>> lifted_map;
  if (x.has_custom_map()) {
    std::vector<std::size_t> map(x.vertex_count() * n);
    for (std::size_t v = 0; v < x.vertex_count(); ++v) {
      for (std::size_t i = 0; i < n; ++i) map[v * n + i] = x.map_at(v) * n + i;
    }
    lifted_map = std::move(map);
  }

  // Row (e, i): columns (f, sigma_e(i)) over f leaving the head of e,
  // excluding the reversal of e.
  std::vector<std::vector<std::uint32_t>> rows(r * n);
  for (std::uint32_t e = 0; e < r; ++e) {
    const std::size_t head = x.actual_head(e);
    const auto rev = static_cast<std::uint32_t>(BaseMultigraph::inverse(e));
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t j = sigma.sigma(e, i);
      auto& row = rows[static_cast<std::size_t>(e) * n + i];
      for (std::uint32_t f : x.out_edges(head)) {
        if (f != rev) {
          row.push_back(f * static_cast<std::uint32_t>(n) + j);
        }
      }
    }
  }
  return Lift{BaseMultigraph::from_edge_list(x.vertex_count() * n,
                                             std::move(lifted_edges),
                                             std::move(lifted_map)),
              NBMatrix(NBMatrix::IndexKind::DirectedEdge, std::move(rows)), r,
              n};
}

Eigen::MatrixXd fiber_restriction(const NBMatrix& b_n, std::size_t r,
                                  std::size_t n) {
  if (b_n.dimension() != r * n) {
    throw DimensionMismatchError("operator dimension is not r * n");
  }
  const FiberSubspace h{r, n};
  Eigen::MatrixXd out(static_cast<Eigen::Index>(r),
                      static_cast<Eigen::Index>(r));
  Eigen::VectorXd base = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(r));
  Eigen::VectorXd image(static_cast<Eigen::Index>(r * n));
  for (std::size_t f = 0; f < r; ++f) {
    base(static_cast<Eigen::Index>(f)) = 1.0;
    const Eigen::VectorXd lifted = h.embed(base);
    b_n.apply(lifted.data(), image.data());
    out.col(static_cast<Eigen::Index>(f)) = h.restrict_to_base(image);
    base(static_cast<Eigen::Index>(f)) = 0.0;
  }
  return out;
}

SplitSpectrum split_spectrum(const std::vector<std::complex<double>>& lift_eigs,
                             const std::vector<std::complex<double>>& base_eigs,
                             double tol) {
  if (lift_eigs.size() < base_eigs.size()) {
    throw DimensionMismatchError("lift spectrum smaller than base spectrum");
  }
  std::vector<bool> used(lift_eigs.size(), false);
  SplitSpectrum out;
  out.old_eigs.reserve(base_eigs.size());
  for (const auto& mu : base_eigs) {
    std::size_t best = lift_eigs.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lift_eigs.size(); ++i) {
      if (used[i]) continue;
      const double dist = std::abs(lift_eigs[i] - mu);
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    if (best == lift_eigs.size() || best_dist > tol * (1.0 + std::abs(mu))) {
      throw ContainmentViolationError(
          "base eigenvalue has no match in the lift spectrum");
    }
    used[best] = true;
    out.old_eigs.push_back(lift_eigs[best]);
  }
  for (std::size_t i = 0; i < lift_eigs.size(); ++i) {
    if (!used[i]) out.new_eigs.push_back(lift_eigs[i]);
  }
  std::sort(out.new_eigs.begin(), out.new_eigs.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              const double ma = std::abs(a);
              const double mb = std::abs(b);
              if (ma != mb) return ma > mb;
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });
  return out;
}

double new_lead_modulus(const BaseMultigraph& x, const LiftPermutations& sigma,
                        NewEigMethod method) {
  const NBMatrix base_b = nb_from_multigraph(x);
  if (!is_irreducible(base_b)) {
    throw ReducibleOperatorError("base operator must be irreducible");
  }
  const std::size_t n = sigma.degree();
  if (n == 1) return 0.0;
  const Lift lift = build_lift(x, sigma);
  const std::size_t r = lift.base_r;

  if (method == NewEigMethod::Dense) {
    const auto lift_eigs = nonsym_eigs_dense(lift.b_n.dense());
    const auto base_eigs = nonsym_eigs_dense(base_b.dense());
    const SplitSpectrum split = split_spectrum(lift_eigs, base_eigs, 1e-6);
    return split.new_eigs.empty() ? 0.0 : std::abs(split.new_eigs.front());
  }

  const FiberSubspace h{r, n};
  const auto dim = static_cast<Eigen::Index>(r * n);
  const std::size_t max_iters = 512;
  double best = 0.0;
  for (std::uint64_t restart = 0; restart < 8; ++restart) {
    Rng local(Rng::derive_seed(0x9fb21c651e98df25ULL, restart));
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = local.uniform_unit() - 0.5;
    v = h.project_out(v);
    const double nrm0 = v.norm();
    if (nrm0 < 1e-12) continue;
    v /= nrm0;

    Eigen::VectorXd w(dim);
    // Prefix sums of log growth; the estimate uses the second half of the
    // iteration window so the burn-in decomposition error drops out.
    std::vector<double> cum_log{0.0};
    cum_log.reserve(max_iters + 1);
    double prev_est = std::numeric_limits<double>::quiet_NaN();
    double est = 0.0;
    bool settled = false;
    for (std::size_t k = 1; k <= max_iters; ++k) {
      lift.b_n.apply(v.data(), w.data());
      w = h.project_out(w);
      const double nrm = w.norm();
      if (nrm < 1e-300) {
        est = 0.0;
        settled = true;
        break;
      }
      cum_log.push_back(cum_log.back() + std::log(nrm));
      v = w / nrm;
      if (k >= 48 && k % 16 == 0) {
        const std::size_t half = k / 2;
        est = std::exp((cum_log[k] - cum_log[half]) /
                       static_cast<double>(k - half));
        if (!std::isnan(prev_est) &&
            std::abs(est - prev_est) <= 1e-3 * std::max(1.0, est)) {
          settled = true;
          break;
        }
        prev_est = est;
      }
    }
    if (!settled) {
      throw ConvergenceFailureError(
          "projected power iteration did not settle within budget");
    }
    best = std::max(best, est);
  }
  return best;
}

}  // namespace nbspec
