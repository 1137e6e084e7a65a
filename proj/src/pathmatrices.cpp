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

#include "nbspec/pathmatrices.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "nbspec/errors.hpp"
#include "nbspec/nonbacktracking.hpp"
#include "nbspec/spectra.hpp"
#include "nbspec/tangle.hpp"

namespace nbspec {

namespace {

// Path graph built incrementally during depth-first enumeration. Edges are
// half-edge pairs deduplicated as a set; the cycle count is the number of
// non-tree pair insertions. Strict stack discipline (push/pop).
class IncrementalPathGraph {
 public:
  explicit IncrementalPathGraph(std::size_t n_vertices)
      : parent_(n_vertices), size_(n_vertices, 1) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::size_t cycles() const { return cycles_; }

  void push_pair(std::uint32_t a, std::uint32_t b, std::uint32_t va,
                 std::uint32_t vb) {
    const std::uint64_t key = pair_key(a, b);
    Op op{};
    if (std::find(keys_.begin(), keys_.end(), key) != keys_.end()) {
      op.kind = Op::Duplicate;
      ops_.push_back(op);
      return;
    }
    keys_.push_back(key);
    const std::uint32_t ra = find(va);
    const std::uint32_t rb = find(vb);
    if (ra == rb) {
      ++cycles_;
      op.kind = Op::Cycle;
    } else {
      const std::uint32_t child = size_[ra] <= size_[rb] ? ra : rb;
      const std::uint32_t root = child == ra ? rb : ra;
      parent_[child] = root;
      size_[root] += size_[child];
      op.kind = Op::Merge;
      op.child = child;
      op.root = root;
    }
    ops_.push_back(op);
  }

  void pop_pair() {
    const Op op = ops_.back();
    ops_.pop_back();
    if (op.kind == Op::Duplicate) return;
    keys_.pop_back();
    if (op.kind == Op::Cycle) {
      --cycles_;
    } else {
      size_[op.root] -= size_[op.child];
      parent_[op.child] = op.child;
    }
  }

 private:
  struct Op {
    enum Kind { Duplicate, Cycle, Merge } kind;
    std::uint32_t child = 0;
    std::uint32_t root = 0;
  };

  static std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  std::uint32_t find(std::uint32_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint64_t> keys_;
  std::vector<Op> ops_;
  std::size_t cycles_ = 0;
};

struct Budget {
  std::size_t remaining;
  void tick() {
    if (remaining == 0) {
      throw EnumerationBudgetError("path enumeration budget exhausted");
    }
    --remaining;
  }
};

using BigIntMatrix =
    Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;

BigInt pow_bigint(std::size_t base, std::size_t exp) {
  BigInt out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= static_cast<unsigned>(base);
  return out;
}

RatMatrix over_denominator(const BigIntMatrix& num, const BigInt& den) {
  RatMatrix out(num.rows(), num.cols());
  for (Eigen::Index i = 0; i < num.rows(); ++i) {
    for (Eigen::Index j = 0; j < num.cols(); ++j) {
      out(i, j) = Rational(num(i, j), den);
    }
  }
  return out;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  }
  return out;
}

RatMatrix to_rational_int(const Eigen::MatrixXi& a) {
  RatMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  }
  return out;
}

Eigen::MatrixXd to_double(const RatMatrix& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out(i, j) = static_cast<double>(a(i, j));
    }
  }
  return out;
}

// Coefficient loops instead of Eigen operators: mixed scalar and matrix
// expressions on multiprecision scalars do not survive overload resolution
// with this Eigen release.
RatMatrix rat_product(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out = RatMatrix::Constant(a.rows(), b.cols(), Rational(0));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

// acc += c * a.
void rat_axpy(RatMatrix& acc, const Rational& c, const RatMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0) acc(i, j) += c * a(i, j);
    }
  }
}

// Sigma-forced tangle-free walker shared by build_B_tf and the suffix part
// of build_R.
void dfs_forced(const HalfEdgeSpace& space, const Matching& sigma,
                IncrementalPathGraph& graph, Budget& budget,
                std::uint32_t cur, std::size_t steps_left,
                const std::function<void(std::uint32_t)>& leaf) {
  budget.tick();
  if (steps_left == 0) {
    leaf(cur);
    return;
  }
  const auto y = static_cast<std::uint32_t>(sigma.at(cur));
  graph.push_pair(cur, y, static_cast<std::uint32_t>(space.vertex_of(cur)),
                  static_cast<std::uint32_t>(space.vertex_of(y)));
  if (graph.cycles() <= 1) {
    const std::size_t v = space.vertex_of(y);
    for (std::size_t i = 0; i < space.d; ++i) {
      const auto next = static_cast<std::uint32_t>(space.first_at(v) + i);
      if (next != y) {
        dfs_forced(space, sigma, graph, budget, next, steps_left - 1, leaf);
      }
    }
  }
  graph.pop_pair();
}

}  // namespace

std::vector<Path> enumerate_paths(const HalfEdgeSpace& space, PathKind kind,
                                  std::size_t length,
                                  std::optional<std::uint32_t> e,
                                  std::optional<std::uint32_t> f,
                                  std::size_t budget_size) {
  const std::size_t m = space.size();
  if (e && *e >= m) throw InvalidEdgeError("start half-edge out of range");
  if (f && *f >= m) throw InvalidEdgeError("end half-edge out of range");
  std::vector<Path> out;
  if (length == 0) return out;

  Budget budget{budget_size};
  IncrementalPathGraph graph(space.n);
  Path path;
  path.reserve(length);

  // Position p = path.size() + 1 in the 1-based convention of the path
  // classes; even positions close a matching-step pair.
  std::function<void()> rec = [&]() {
    budget.tick();
    if (path.size() == length) {
      if (!f || path.back() == *f) out.push_back(path);
      return;
    }
    const std::size_t p = path.size() + 1;
    const bool even = p % 2 == 0;
    const auto visit = [&](std::uint32_t cand) {
      if (even) {
        if (cand == path.back()) return;  // admissibility
        if (kind == PathKind::TangleFree) {
          graph.push_pair(path.back(), cand,
                          static_cast<std::uint32_t>(space.vertex_of(path.back())),
                          static_cast<std::uint32_t>(space.vertex_of(cand)));
          if (graph.cycles() <= 1) {
            path.push_back(cand);
            rec();
            path.pop_back();
          }
          graph.pop_pair();
          return;
        }
      }
      path.push_back(cand);
      rec();
      path.pop_back();
    };
    if (p == 1) {
      if (e) {
        visit(*e);
      } else {
        for (std::uint32_t c = 0; c < m; ++c) visit(c);
      }
      return;
    }
    if (even || kind == PathKind::Admissible) {
      for (std::uint32_t c = 0; c < m; ++c) visit(c);
      return;
    }
    // Odd continuation of a non-backtracking path: same vertex, new
    // half-edge.
    const std::uint32_t prev = path.back();
    const std::size_t v = space.vertex_of(prev);
    for (std::size_t i = 0; i < space.d; ++i) {
      const auto cand = static_cast<std::uint32_t>(space.first_at(v) + i);
      if (cand != prev) visit(cand);
    }
  };
  rec();
  return out;
}

IntMatrix build_B_tf(const HalfEdgeSpace& space, const Matching& sigma,
                     std::size_t k, std::size_t budget_size) {
  if (sigma.size() != space.size()) {
    throw DimensionMismatchError("matching size does not match half-edge space");
  }
  const auto m = static_cast<Eigen::Index>(space.size());
  IntMatrix out = IntMatrix::Zero(m, m);
  Budget budget{budget_size};
  IncrementalPathGraph graph(space.n);
  for (Eigen::Index e = 0; e < m; ++e) {
    dfs_forced(space, sigma, graph, budget, static_cast<std::uint32_t>(e), k,
               [&](std::uint32_t last) { out(e, last) += 1; });
  }
  return out;
}

RatMatrix build_underline_B_tf(const HalfEdgeSpace& space,
                               const Matching& sigma, std::size_t k,
                               std::size_t budget_size) {
  if (sigma.size() != space.size()) {
    throw DimensionMismatchError("matching size does not match half-edge space");
  }
  const auto m = static_cast<Eigen::Index>(space.size());
  BigIntMatrix num = BigIntMatrix::Constant(m, m, BigInt(0));
  Budget budget{budget_size};
  IncrementalPathGraph graph(space.n);
  const auto dn = static_cast<std::int64_t>(space.size());

  std::function<void(Eigen::Index, std::uint32_t, std::size_t, const BigInt&)>
      rec = [&](Eigen::Index e, std::uint32_t cur, std::size_t steps_left,
                const BigInt& weight) {
        budget.tick();
        if (steps_left == 0) {
          num(e, static_cast<Eigen::Index>(cur)) += weight;
          return;
        }
        for (std::uint32_t y = 0; y < space.size(); ++y) {
          if (y == cur) continue;  // admissibility
          graph.push_pair(cur, y,
                          static_cast<std::uint32_t>(space.vertex_of(cur)),
                          static_cast<std::uint32_t>(space.vertex_of(y)));
          if (graph.cycles() <= 1) {
            const BigInt child =
                weight * (sigma.at(cur) == y ? BigInt(dn - 1) : BigInt(-1));
            const std::size_t v = space.vertex_of(y);
            for (std::size_t i = 0; i < space.d; ++i) {
              const auto next =
                  static_cast<std::uint32_t>(space.first_at(v) + i);
              if (next != y) rec(e, next, steps_left - 1, child);
            }
          }
          graph.pop_pair();
        }
      };

  for (Eigen::Index e = 0; e < m; ++e) {
    rec(e, static_cast<std::uint32_t>(e), k, BigInt(1));
  }
  return over_denominator(num, pow_bigint(space.size(), k));
}

RatMatrix build_R(const HalfEdgeSpace& space, const Matching& sigma,
                  std::size_t ell, std::size_t k, std::size_t budget_size) {
  if (sigma.size() != space.size()) {
    throw DimensionMismatchError("matching size does not match half-edge space");
  }
  if (k < 1 || k > ell) {
    throw PreconditionFailedError("remainder index k must satisfy 1 <= k <= ell");
  }
  const auto m = static_cast<Eigen::Index>(space.size());
  BigIntMatrix num = BigIntMatrix::Constant(m, m, BigInt(0));
  Budget budget{budget_size};
  // Separate graphs: the prefix and suffix must each stay tangle-free while
  // the full path graph must end up tangled.
  IncrementalPathGraph prefix_graph(space.n);
  IncrementalPathGraph suffix_graph(space.n);
  IncrementalPathGraph full_graph(space.n);
  const auto dn = static_cast<std::int64_t>(space.size());
  const auto vtx = [&](std::uint32_t h) {
    return static_cast<std::uint32_t>(space.vertex_of(h));
  };

  std::function<void(Eigen::Index, std::uint32_t, std::size_t, const BigInt&)>
      rec_suffix = [&](Eigen::Index e, std::uint32_t cur,
                       std::size_t steps_left, const BigInt& weight) {
        budget.tick();
        if (steps_left == 0) {
          if (full_graph.cycles() >= 2) {
            num(e, static_cast<Eigen::Index>(cur)) += weight;
          }
          return;
        }
        const auto y = static_cast<std::uint32_t>(sigma.at(cur));
        suffix_graph.push_pair(cur, y, vtx(cur), vtx(y));
        full_graph.push_pair(cur, y, vtx(cur), vtx(y));
        if (suffix_graph.cycles() <= 1) {
          const std::size_t v = space.vertex_of(y);
          for (std::size_t i = 0; i < space.d; ++i) {
            const auto next = static_cast<std::uint32_t>(space.first_at(v) + i);
            if (next != y) rec_suffix(e, next, steps_left - 1, weight);
          }
        }
        full_graph.pop_pair();
        suffix_graph.pop_pair();
      };

  // Freed middle step: any admissible pair, no weight factor.
  const auto rec_middle = [&](Eigen::Index e, std::uint32_t g,
                              const BigInt& weight) {
    budget.tick();
    for (std::uint32_t y = 0; y < space.size(); ++y) {
      if (y == g) continue;
      full_graph.push_pair(g, y, vtx(g), vtx(y));
      const std::size_t v = space.vertex_of(y);
      for (std::size_t i = 0; i < space.d; ++i) {
        const auto h = static_cast<std::uint32_t>(space.first_at(v) + i);
        if (h != y) rec_suffix(e, h, ell - k, weight);
      }
      full_graph.pop_pair();
    }
  };

  std::function<void(Eigen::Index, std::uint32_t, std::size_t, const BigInt&)>
      rec_prefix = [&](Eigen::Index e, std::uint32_t cur,
                       std::size_t steps_left, const BigInt& weight) {
        budget.tick();
        if (steps_left == 0) {
          rec_middle(e, cur, weight);
          return;
        }
        for (std::uint32_t y = 0; y < space.size(); ++y) {
          if (y == cur) continue;
          prefix_graph.push_pair(cur, y, vtx(cur), vtx(y));
          full_graph.push_pair(cur, y, vtx(cur), vtx(y));
          if (prefix_graph.cycles() <= 1) {
            const BigInt child =
                weight * (sigma.at(cur) == y ? BigInt(dn - 1) : BigInt(-1));
            const std::size_t v = space.vertex_of(y);
            for (std::size_t i = 0; i < space.d; ++i) {
              const auto next =
                  static_cast<std::uint32_t>(space.first_at(v) + i);
              if (next != y) rec_prefix(e, next, steps_left - 1, child);
            }
          }
          full_graph.pop_pair();
          prefix_graph.pop_pair();
        }
      };

  for (Eigen::Index e = 0; e < m; ++e) {
    rec_prefix(e, static_cast<std::uint32_t>(e), k - 1, BigInt(1));
  }
  return over_denominator(num, pow_bigint(space.size(), k - 1));
}

bool verify_power_identity(const HalfEdgeSpace& space, const Matching& sigma,
                           std::size_t k, std::size_t budget_size) {
  const NBMatrix b = nb_from_matching(space, sigma);
  const auto m = static_cast<Eigen::Index>(b.dimension());
  IntMatrix bdense = IntMatrix::Zero(m, m);
  for (Eigen::Index e = 0; e < m; ++e) {
    for (std::uint32_t fcol : b.row(static_cast<std::size_t>(e))) {
      bdense(e, static_cast<Eigen::Index>(fcol)) += 1;
    }
  }
  IntMatrix power = IntMatrix::Identity(m, m);
  for (std::size_t i = 0; i < k; ++i) power = (power * bdense).eval();
  const IntMatrix btf = build_B_tf(space, sigma, k, budget_size);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (power(i, j) != btf(i, j)) return false;
    }
  }
  return true;
}

bool verify_decomposition(const HalfEdgeSpace& space, const Matching& sigma,
                          std::size_t ell, std::size_t budget_size,
                          double* worst_abs) {
  const std::size_t d = space.d;
  const Rational inv_dn(1, static_cast<unsigned>(space.size()));

  std::vector<RatMatrix> ub(ell + 1);
  std::vector<RatMatrix> bk(ell + 1);
  for (std::size_t j = 0; j <= ell; ++j) {
    ub[j] = build_underline_B_tf(space, sigma, j, budget_size);
    bk[j] = to_rational(build_B_tf(space, sigma, j, budget_size));
  }
  std::vector<RatMatrix> rk(ell + 1);
  for (std::size_t k = 1; k <= ell; ++k) {
    rk[k] = build_R(space, sigma, ell, k, budget_size);
  }
  const RatMatrix kr = to_rational_int(k_matrix(space));
  const RatMatrix nr = to_rational_int(n_matrix(space));
  const auto m = static_cast<Eigen::Index>(space.size());
  const RatMatrix ones = RatMatrix::Constant(m, m, Rational(1));

  RatMatrix form1 = ub[ell];
  RatMatrix form2 = ub[ell];
  const Rational neg_inv = -inv_dn;
  const Rational coef_ones = Rational(static_cast<unsigned>(d - 1)) * inv_dn;
  for (std::size_t k = 1; k <= ell; ++k) {
    const RatMatrix mid1 = rat_product(rat_product(ub[k - 1], kr), bk[ell - k]);
    rat_axpy(form1, inv_dn, mid1);
    rat_axpy(form1, neg_inv, rk[k]);
    const RatMatrix mid_ones =
        rat_product(rat_product(ub[k - 1], ones), bk[ell - k]);
    const RatMatrix mid_n =
        rat_product(rat_product(ub[k - 1], nr), bk[ell - k]);
    rat_axpy(form2, coef_ones, mid_ones);
    rat_axpy(form2, neg_inv, mid_n);
    rat_axpy(form2, neg_inv, rk[k]);
  }

  const RatMatrix& lhs = bk[ell];
  Rational worst(0);
  bool ok = true;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const Rational d1 = lhs(i, j) - form1(i, j);
      const Rational d2 = lhs(i, j) - form2(i, j);
      if (d1 != 0 || d2 != 0) ok = false;
      const Rational ad1 = abs(d1);
      const Rational ad2 = abs(d2);
      if (ad1 > worst) worst = ad1;
      if (ad2 > worst) worst = ad2;
    }
  }
  if (worst_abs != nullptr) *worst_abs = static_cast<double>(worst);
  return ok;
}

NormBoundReport verify_norm_bound_lemma(const HalfEdgeSpace& space,
                                        const Matching& sigma, std::size_t ell,
                                        std::size_t budget_size) {
  if (ell < 1) throw PreconditionFailedError("ell must be at least 1");
  const BaseMultigraph g = multigraph_of_matching(space, sigma);
  if (!is_ell_tangle_free(g, ell)) {
    throw PreconditionTangledError(
        "instance is not tangle-free at the requested radius");
  }
  NormBoundReport rep;
  const NBMatrix b = nb_from_matching(space, sigma);
  if (!is_irreducible(b)) {
    rep.skipped = true;
    rep.reason = "operator is reducible; second eigenvalue is ambiguous";
    return rep;
  }
  std::vector<std::complex<double>> eigs = nonsym_eigs_dense(b.dense());
  // Remove one copy of the Perron eigenvalue d-1 (simple by irreducibility).
  const double perron = static_cast<double>(space.d) - 1.0;
  std::size_t drop = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    const double dist = std::abs(eigs[i] - std::complex<double>(perron, 0.0));
    if (dist < best) {
      best = dist;
      drop = i;
    }
  }
  double lhs = 0.0;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (i != drop) lhs = std::max(lhs, std::abs(eigs[i]));
  }

  const double dn = static_cast<double>(space.size());
  double sum = operator_norm(
      to_double(build_underline_B_tf(space, sigma, ell, budget_size)));
  for (std::size_t k = 0; k < ell; ++k) {
    const double norm_ub = operator_norm(
        to_double(build_underline_B_tf(space, sigma, k, budget_size)));
    sum += norm_ub *
           std::pow(static_cast<double>(space.d) - 1.0,
                    static_cast<double>(ell - k)) /
           dn;
  }
  for (std::size_t k = 1; k <= ell; ++k) {
    sum += operator_norm(to_double(build_R(space, sigma, ell, k, budget_size))) /
           dn;
  }
  rep.lhs = lhs;
  rep.rhs = std::pow(sum, 1.0 / static_cast<double>(ell));
  rep.holds = rep.lhs <= rep.rhs + 1e-10;
  return rep;
}

bool lemma_hr_check(const Eigen::MatrixXd& s, const Eigen::MatrixXd& r,
                    double* bound_out) {
  if (s.rows() != s.cols() || r.rows() != r.cols() || s.rows() != r.rows()) {
    throw DimensionMismatchError("lemma check needs square matrices of equal size");
  }
  const double scale = 1.0 + s.norm() * r.norm();
  if ((r * s).norm() > 1e-10 * scale) {
    throw HypothesisFailedError("im(S) is not contained in ker(R)");
  }
  if ((r * s.transpose()).norm() > 1e-10 * scale) {
    throw HypothesisFailedError("im(S*) is not contained in ker(R)");
  }
  const Eigen::Index n = s.rows();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double rank_tol =
      1e-12 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rank_tol) ++rank;
  }
  double bound = 0.0;
  if (rank < n) {
    const Eigen::MatrixXd kernel = svd.matrixV().rightCols(n - rank);
    bound = operator_norm((s + r) * kernel);
  }
  if (bound_out != nullptr) *bound_out = bound;

  const std::vector<std::complex<double>> eig_sr = nonsym_eigs_dense(s + r);
  const std::vector<std::complex<double>> eig_s = nonsym_eigs_dense(s);
  for (const auto& lambda : eig_sr) {
    bool in_sigma_s = false;
    for (const auto& mu : eig_s) {
      if (std::abs(lambda - mu) <= 1e-8 * (1.0 + std::abs(lambda))) {
        in_sigma_s = true;
        break;
      }
    }
    if (!in_sigma_s && std::abs(lambda) > bound + 1e-8) return false;
  }
  return true;
}

}  // namespace nbspec
