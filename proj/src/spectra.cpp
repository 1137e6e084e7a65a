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

#include "nbspec/spectra.hpp"

#include <dlfcn.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include <Eigen/SVD>

#include "nbspec/errors.hpp"
#include "nbspec/rng.hpp"

namespace nbspec {

namespace {

// Pin BLAS to one thread; results stay bitwise reproducible and the library
// composes with caller-level parallelism.
struct BlasThreadGuard {
  BlasThreadGuard() {
    using SetThreads = void (*)(int);
    if (auto* f = reinterpret_cast<SetThreads>(
            dlsym(RTLD_DEFAULT, "openblas_set_num_threads"))) {
      f(1);
    }
  }
};
const BlasThreadGuard blas_thread_guard{};

void check_lapack(int info, const char* what) {
  if (info != 0) {
    throw ConvergenceFailureError(std::string(what) + " failed with info " +
                                  std::to_string(info));
  }
}

struct Csr {
  std::size_t n = 0;
  std::vector<int> ptr;
  std::vector<int> idx;
  std::vector<double> val;

  void apply(const double* x, double* y) const {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int k = ptr[i]; k < ptr[i + 1]; ++k) acc += val[k] * x[idx[k]];
      y[i] = acc;
    }
  }
};

Csr csr_of_adjacency(const AdjacencyMatrix& a) {
  Csr csr;
  csr.n = a.dimension();
  csr.ptr.assign(csr.n + 1, 0);
  for (std::size_t i = 0; i < csr.n; ++i) {
    int nnz = 0;
    for (std::size_t j = 0; j < csr.n; ++j) {
      if (a(i, j) != 0) ++nnz;
    }
    csr.ptr[i + 1] = csr.ptr[i] + nnz;
  }
  csr.idx.resize(csr.ptr[csr.n]);
  csr.val.resize(csr.ptr[csr.n]);
  for (std::size_t i = 0; i < csr.n; ++i) {
    int k = csr.ptr[i];
    for (std::size_t j = 0; j < csr.n; ++j) {
      if (a(i, j) != 0) {
        csr.idx[k] = static_cast<int>(j);
        csr.val[k] = static_cast<double>(a(i, j));
        ++k;
      }
    }
  }
  return csr;
}

std::vector<double> tridiag_values(std::vector<double> diag,
                                   std::vector<double> off) {
  check_lapack(LAPACKE_dsterf(static_cast<lapack_int>(diag.size()), diag.data(),
                              off.data()),
               "dsterf");
  return diag;  // ascending
}

// Bottom components of selected Ritz vectors via tridiagonal inverse
// iteration; returns false when the cluster is too tight for dstein.
bool ritz_bottom_components(const std::vector<double>& diag,
                            const std::vector<double>& off,
                            const std::vector<double>& targets,
                            std::vector<double>* bottom) {
  const auto k = static_cast<lapack_int>(diag.size());
  const auto m = static_cast<lapack_int>(targets.size());
  std::vector<lapack_int> iblock(diag.size(), 1), isplit(diag.size(), 0);
  isplit[0] = k;
  std::vector<double> z(static_cast<std::size_t>(k) * targets.size());
  std::vector<lapack_int> ifailv(targets.size(), 0);
  const lapack_int info = LAPACKE_dstein(
      LAPACK_COL_MAJOR, k, diag.data(), off.data(), m, targets.data(),
      iblock.data(), isplit.data(), z.data(), k, ifailv.data());
  if (info != 0) return false;
  bottom->resize(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    (*bottom)[j] = z[j * static_cast<std::size_t>(k) +
                     static_cast<std::size_t>(k - 1)];
  }
  return true;
}

// Indices of the extremal Ritz values in an ascending list: bottom two and
// top two, deduplicated, ascending.
std::vector<std::size_t> extremal_indices(std::size_t k) {
  std::vector<std::size_t> out;
  for (std::size_t i : {std::size_t{0}, std::size_t{1}}) {
    if (i < k) out.push_back(i);
  }
  for (std::size_t off = 2; off >= 1; --off) {
    if (k >= off) {
      const std::size_t i = k - off;
      if (out.empty() || out.back() < i) out.push_back(i);
    }
  }
  return out;
}

// Lanczos with full reorthogonalization. Returns the extremal eigenvalues
// (top two and bottom two) of A restricted to the complement of the deflated
// direction, descending.
std::vector<double> lanczos_extremal(const Csr& a, bool deflate_ones) {
  const std::size_t n = a.n;
  const std::size_t effective_dim = n - (deflate_ones ? 1 : 0);
  const std::size_t kmax = std::min<std::size_t>(effective_dim, 1200);
  if (kmax == 0) return {};

  Eigen::MatrixXd v(static_cast<Eigen::Index>(n),
                    static_cast<Eigen::Index>(kmax));
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  std::vector<double> alpha, beta;  // beta[j] couples steps j and j+1
  alpha.reserve(kmax);
  beta.reserve(kmax);

  Rng rng(Rng::derive_seed(0x6c62272e07bb0142ULL, n + (deflate_ones ? 1 : 0)));
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    v(i, 0) = rng.uniform_unit() - 0.5;
  }
  if (deflate_ones) v.col(0).array() -= v.col(0).mean();
  v.col(0).normalize();

  std::vector<double> prev_extremal;
  double scale = 1.0;
  const auto finalize = [&](std::size_t k,
                            bool require_residual) -> std::vector<double> {
    std::vector<double> diag(alpha.begin(), alpha.begin() + k);
    std::vector<double> off(beta.begin(),
                            beta.begin() + (k > 0 ? k - 1 : 0));
    std::vector<double> theta = tridiag_values(diag, off);
    const std::vector<std::size_t> pick = extremal_indices(k);
    std::vector<double> targets;
    for (std::size_t i : pick) targets.push_back(theta[i]);
    if (require_residual) {
      std::vector<double> diag2(alpha.begin(), alpha.begin() + k);
      std::vector<double> off2(beta.begin(),
                               beta.begin() + (k > 0 ? k - 1 : 0));
      std::vector<double> bottom;
      if (!ritz_bottom_components(diag2, off2, targets, &bottom)) return {};
      const double beta_k = beta.size() >= k ? beta[k - 1] : 0.0;
      for (double s : bottom) {
        if (std::abs(beta_k * s) > 1e-8 * scale) return {};
      }
    }
    std::sort(targets.begin(), targets.end(), std::greater<double>());
    return targets;
  };

  for (std::size_t k = 1; k <= kmax; ++k) {
    const Eigen::Index kc = static_cast<Eigen::Index>(k - 1);
    a.apply(v.col(kc).data(), w.data());
    if (deflate_ones) w.array() -= w.mean();
    alpha.push_back(v.col(kc).dot(w));
    // Two-pass reorthogonalization against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd coeffs =
          v.leftCols(kc + 1).transpose() * w;
      w.noalias() -= v.leftCols(kc + 1) * coeffs;
    }
    if (deflate_ones) w.array() -= w.mean();
    const double b = w.norm();
    scale = std::max({scale, std::abs(alpha.back()), b});

    if (b <= 1e-12 * scale || k == effective_dim) {
      // Invariant subspace: Ritz values are exact.
      std::vector<double> out = finalize(k, false);
      if (!out.empty()) return out;
    }
    beta.push_back(b);
    if (k < kmax) v.col(kc + 1) = w / b;

    if (k % 16 == 0 || k == kmax) {
      std::vector<double> diag(alpha.begin(), alpha.end());
      std::vector<double> off(beta.begin(), beta.begin() + (k - 1));
      std::vector<double> theta = tridiag_values(diag, off);
      std::vector<double> extremal;
      for (std::size_t i : extremal_indices(k)) extremal.push_back(theta[i]);
      bool stable = prev_extremal.size() == extremal.size();
      if (stable) {
        for (std::size_t i = 0; i < extremal.size(); ++i) {
          if (std::abs(extremal[i] - prev_extremal[i]) > 1e-9 * scale) {
            stable = false;
            break;
          }
        }
      }
      prev_extremal = extremal;
      if (stable) {
        std::vector<double> out = finalize(k, true);
        if (!out.empty()) return out;
      }
    }
  }
  throw ConvergenceFailureError(
      "Lanczos did not converge within " + std::to_string(kmax) + " steps");
}

bool looks_regular(const AdjacencyMatrix& a, std::size_t* degree) {
  const std::vector<std::int64_t> sums = a.row_sums();
  if (sums.empty()) return false;
  for (std::int64_t s : sums) {
    if (s != sums[0]) return false;
  }
  if (sums[0] < 0) return false;
  *degree = static_cast<std::size_t>(sums[0]);
  return a.is_symmetric();
}

struct SpectrumStats {
  double gap;
  double mu;
  bool second_trivial;
};

// eigs must contain the extremes: full spectrum, or {d, top block, bottom
// block} from the deflated iterative solver.
SpectrumStats stats_from_eigs(const std::vector<double>& eigs, std::size_t d) {
  if (eigs.size() < 2) {
    throw EmptySampleError("need at least two eigenvalues");
  }
  SpectrumStats st{};
  st.gap = std::max(eigs[1], std::abs(eigs.back()));
  st.mu = 0.0;
  const double cutoff = static_cast<double>(d) - 1e-9;
  for (double x : eigs) {
    if (std::abs(x) < cutoff) st.mu = std::max(st.mu, std::abs(x));
  }
  st.second_trivial = eigs[1] >= cutoff;
  return st;
}

}  // namespace

std::vector<double> sym_eigs_dense_matrix(const Eigen::MatrixXd& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.rows() != a.cols()) {
    throw DimensionMismatchError("matrix is not square");
  }
  if (n == 0) return {};
  std::vector<double> buf(a.data(), a.data() + a.size());
  std::vector<double> w(static_cast<std::size_t>(n));
  check_lapack(
      LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', n, buf.data(), n, w.data()),
      "dsyev");
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<std::complex<double>> nonsym_eigs_dense(const Eigen::MatrixXd& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.rows() != a.cols()) {
    throw DimensionMismatchError("matrix is not square");
  }
  if (n > 4000) {
    throw PreconditionFailedError(
        "dense nonsymmetric solves are limited to dimension 4000");
  }
  if (n == 0) return {};
  std::vector<double> buf(a.data(), a.data() + a.size());
  std::vector<double> wr(static_cast<std::size_t>(n)),
      wi(static_cast<std::size_t>(n));
  // ldvl/ldvr must still be >= n even though no vectors are requested.
  check_lapack(LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, buf.data(), n,
                             wr.data(), wi.data(), nullptr, n, nullptr, n),
               "dgeev");
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {wr[i], wi[i]};
  std::sort(out.begin(), out.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              const double mx = std::abs(x), my = std::abs(y);
              if (mx != my) return mx > my;
              if (x.real() != y.real()) return x.real() < y.real();
              return x.imag() < y.imag();
            });
  return out;
}

double operator_norm(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

std::vector<double> sym_eigs(const AdjacencyMatrix& a, EigsMode mode) {
  const std::size_t n = a.dimension();
  if (!a.is_symmetric()) {
    throw PreconditionFailedError("adjacency matrix is not symmetric");
  }
  if (mode == EigsMode::Dense || n < 16) {
    if (n > 2500) {
      throw PreconditionFailedError(
          "dense symmetric solves are limited to dimension 2500");
    }
    Eigen::MatrixXd dense(static_cast<Eigen::Index>(n),
                          static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            static_cast<double>(a(i, j));
      }
    }
    return sym_eigs_dense_matrix(dense);
  }

  const Csr csr = csr_of_adjacency(a);
  std::size_t degree = 0;
  const bool regular = looks_regular(a, &degree);
  std::vector<double> out = lanczos_extremal(csr, regular);
  if (regular) out.push_back(static_cast<double>(degree));
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

GapStatistic gap_statistic(const AdjacencyMatrix& a, std::size_t d,
                           EigsMode mode) {
  if (!is_simple_regular(a, d)) {
    throw NotRegularError("gap statistic requires a simple d-regular graph");
  }
  const std::vector<double> eigs = sym_eigs(a, mode);
  const SpectrumStats st = stats_from_eigs(eigs, d);
  return GapStatistic{st.gap, st.mu};
}

bool is_ramanujan(const AdjacencyMatrix& a, std::size_t d, EigsMode mode) {
  if (!is_simple_regular(a, d)) {
    throw NotRegularError("Ramanujan test requires a simple d-regular graph");
  }
  const std::vector<double> eigs = sym_eigs(a, mode);
  const SpectrumStats st = stats_from_eigs(eigs, d);
  if (st.second_trivial) return false;
  return st.mu <= 2.0 * std::sqrt(static_cast<double>(d) - 1.0) + 1e-10;
}

bool alon_boppana_check(const AdjacencyMatrix& a, std::size_t d, double eps,
                        AlonBoppanaReport* report) {
  if (!is_simple_regular(a, d)) {
    throw NotRegularError("Alon-Boppana check requires a simple d-regular graph");
  }
  const std::vector<double> eigs = sym_eigs(a, EigsMode::Dense);
  if (eigs.size() < 2) {
    throw EmptySampleError("need at least two eigenvalues");
  }
  const double threshold = 2.0 * std::sqrt(static_cast<double>(d) - 1.0) - eps;
  const double mu2 = eigs[1];
  std::size_t above = 0;
  for (double x : eigs) {
    if (x >= threshold) ++above;
  }
  if (report != nullptr) {
    report->mu2_above = mu2 >= threshold;
    report->mu2 = mu2;
    report->serre_fraction =
        static_cast<double>(above) / static_cast<double>(eigs.size());
  }
  return mu2 >= threshold;
}

SpectralReport spectral_report(const AdjacencyMatrix& a, std::size_t d,
                               EigsMode mode) {
  if (!is_simple_regular(a, d)) {
    throw NotRegularError("spectral report requires a simple d-regular graph");
  }
  SpectralReport rep;
  rep.eigenvalues = sym_eigs(a, mode);
  const SpectrumStats st = stats_from_eigs(rep.eigenvalues, d);
  rep.mu = st.mu;
  rep.gap_stat = st.gap;
  rep.ramanujan =
      !st.second_trivial &&
      st.mu <= 2.0 * std::sqrt(static_cast<double>(d) - 1.0) + 1e-10;
  rep.d = d;
  return rep;
}

}  // namespace nbspec
