#pragma once

// Generic points of the varieties attached to multisegments, the T-matrices,
// and the randomized algorithms: hom / ext^1 dimensions, rigidity,
// commutation, the star operation, factorization, and the involution
// computed from the reversed grading.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "compstar/common.hpp"
#include "compstar/field.hpp"
#include "compstar/quiver.hpp"
#include "compstar/segment.hpp"

namespace compstar {

struct EngineConfig {
  std::uint64_t prime = Fp::kDefaultPrime;
  int trials = 5;
  std::uint64_t seed = 0;
};

// A computed value together with the trial count and an a-priori bound on the
// probability that the value is wrong (conservative Schwartz-Zippel estimate
// combined over trials).
template <typename T>
struct RandomizedVerdict {
  T value{};
  int trials = 0;
  double error_bound = 0.0;
};

// A sampled point: the normal-form degree +1 map plus a degree -1 map
// assembled from uniformly random coordinates x_{i,j}, (i,j) in U_m.
struct GenericModule {
  Multisegment m;
  std::vector<std::pair<int, int>> U;  // U_m, canonical indices
  std::vector<std::uint64_t> coords;   // aligned with U
  GradedMap t_plus;
  GradedMap t_minus;

  int dim(int site) const { return t_plus.dims[site]; }
  std::uint64_t coord(int i, int j) const {
    for (std::size_t k = 0; k < U.size(); ++k)
      if (U[k].first == i && U[k].second == j) return coords[k];
    return 0;
  }
};

// Assemble the degree -1 map from coordinates:
// T_- f_{i,r+1} = sum over {j : r in D_j, (i,j) in U_m} of x_{i,j} f_{j,r}.
inline GradedMap assemble_t_minus(const Multisegment& m,
                                  const std::vector<std::pair<int, int>>& U,
                                  const std::vector<std::uint64_t>& coords) {
  GradedMap t = GradedMap::zero(m.n, -1, grdim(m));
  for (std::size_t k = 0; k < U.size(); ++k) {
    auto [i, j] = U[k];
    for (int r = 1; r < m.n; ++r) {
      if (!m.segs[i].contains(r + 1) || !m.segs[j].contains(r)) continue;
      int col = basis_position(m, r + 1, i);
      int row = basis_position(m, r, j);
      t.blocks[r + 1].at(row, col) = coords[k];
    }
  }
  return t;
}

inline GenericModule sample_generic(const Fp& F, const Multisegment& m,
                                    std::mt19937_64& rng) {
  GenericModule M;
  M.m = m;
  M.U = index_sets(m, m).U;
  M.coords.reserve(M.U.size());
  for (std::size_t k = 0; k < M.U.size(); ++k) M.coords.push_back(F.uniform(rng));
  M.t_plus = normal_form(m);
  M.t_minus = assemble_t_minus(m, M.U, M.coords);
  return M;
}

// ---- T-matrices ------------------------------------------------------------

// The matrix of T_{M;N} : Hom_Q(M,N) -> Hom_Q(M, tau N) in the bases b_{i,j}
// ((i,j) in V_{m;n}, columns) and c_{i,j} ((i,j) in U_{m;n}, rows):
//   T(b_{i,j}) =   sum_{k : (k,i) in U_m, (k,j) in U_{m;n}}  x_{k,i} c_{k,j}
//               -  sum_{k : (j,k) in U_n, (i,k) in U_{m;n}}  y_{j,k} c_{i,k}.
inline Mat t_matrix(const Fp& F, const GenericModule& M, const GenericModule& N) {
  IndexSets mn = index_sets(M.m, N.m);
  std::map<std::pair<int, int>, int> urow, vcol;
  for (std::size_t k = 0; k < mn.U.size(); ++k) urow[mn.U[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < mn.V.size(); ++k) vcol[mn.V[k]] = static_cast<int>(k);
  Mat A(mn.U.size(), mn.V.size());
  for (std::size_t c = 0; c < mn.V.size(); ++c) {
    auto [i, j] = mn.V[c];
    for (std::size_t t = 0; t < M.U.size(); ++t) {
      auto [k, ii] = M.U[t];
      if (ii != i) continue;
      auto it = urow.find({k, j});
      if (it == urow.end()) continue;
      A.at(it->second, c) = F.add(A.at(it->second, c), M.coords[t]);
    }
    for (std::size_t t = 0; t < N.U.size(); ++t) {
      auto [jj, k] = N.U[t];
      if (jj != j) continue;
      auto it = urow.find({i, k});
      if (it == urow.end()) continue;
      A.at(it->second, c) = F.sub(A.at(it->second, c), N.coords[t]);
    }
  }
  return A;
}

// The matrix of the dual map T*_{M;N} in the dual bases (rows V_{m;n},
// columns U_{m;n}):
//   T*(c^_{i,j}) =   sum_{k : (i,k) in U_m, (k,j) in V_{m;n}}  x_{i,k} b^_{k,j}
//                 -  sum_{k : (k,j) in U_n, (i,k) in V_{m;n}}  y_{k,j} b^_{i,k}.
inline Mat t_dual_matrix(const Fp& F, const GenericModule& M,
                         const GenericModule& N) {
  IndexSets mn = index_sets(M.m, N.m);
  std::map<std::pair<int, int>, int> ucol, vrow;
  for (std::size_t k = 0; k < mn.U.size(); ++k) ucol[mn.U[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < mn.V.size(); ++k) vrow[mn.V[k]] = static_cast<int>(k);
  Mat A(mn.V.size(), mn.U.size());
  for (std::size_t c = 0; c < mn.U.size(); ++c) {
    auto [i, j] = mn.U[c];
    for (std::size_t t = 0; t < M.U.size(); ++t) {
      auto [ii, k] = M.U[t];
      if (ii != i) continue;
      auto it = vrow.find({k, j});
      if (it == vrow.end()) continue;
      A.at(it->second, c) = F.add(A.at(it->second, c), M.coords[t]);
    }
    for (std::size_t t = 0; t < N.U.size(); ++t) {
      auto [k, jj] = N.U[t];
      if (jj != j) continue;
      auto it = vrow.find({i, k});
      if (it == vrow.end()) continue;
      A.at(it->second, c) = F.sub(A.at(it->second, c), N.coords[t]);
    }
  }
  return A;
}

// ---- Linear systems for hom / ext ------------------------------------------

namespace detail {

// Variable layout for a family of per-site matrices: block r has shape
// rows[r] x cols[r]; entries are numbered row-major inside each block.
struct BlockLayout {
  std::vector<int> offset, rows, cols;
  int total = 0;

  void add(int r, int nrows, int ncols) {
    while (static_cast<int>(offset.size()) <= r) {
      offset.push_back(total);
      rows.push_back(0);
      cols.push_back(0);
    }
    offset[r] = total;
    rows[r] = nrows;
    cols[r] = ncols;
    total += nrows * ncols;
  }
  int var(int r, int i, int j) const { return offset[r] + i * cols[r] + j; }
};

struct SystemBuilder {
  int nvars;
  std::vector<std::vector<std::uint64_t>> rows;

  explicit SystemBuilder(int nv) : nvars(nv) {}
  std::vector<std::uint64_t>& new_row() {
    rows.emplace_back(nvars, 0);
    return rows.back();
  }
  Mat to_matrix() const {
    Mat A(rows.size(), nvars);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < nvars; ++j) A.at(i, j) = rows[i][j];
    return A;
  }
};

}  // namespace detail

// Matrix of the linear system cutting out the graded degree-0 intertwiners
// phi : M -> N with phi T_+^M = T_+^N phi and phi T_-^M = T_-^N phi.
// Variables: the entries of phi_r (dim N_r x dim M_r), r = 1..n.
inline Mat hom_system(const Fp& F, const GenericModule& M, const GenericModule& N) {
  const int n = M.m.n;
  detail::BlockLayout phi;
  for (int r = 1; r <= n; ++r) phi.add(r, N.dim(r), M.dim(r));
  detail::SystemBuilder sys(phi.total);
  // phi_{r+1} T_+^M[r] - T_+^N[r] phi_r = 0 on V^M_r
  for (int r = 1; r < n; ++r)
    for (int u = 0; u < N.dim(r + 1); ++u)
      for (int v = 0; v < M.dim(r); ++v) {
        auto& row = sys.new_row();
        for (int w = 0; w < M.dim(r + 1); ++w)
          row[phi.var(r + 1, u, w)] =
              F.add(row[phi.var(r + 1, u, w)], M.t_plus.blocks[r].at(w, v));
        for (int w = 0; w < N.dim(r); ++w)
          row[phi.var(r, w, v)] =
              F.sub(row[phi.var(r, w, v)], N.t_plus.blocks[r].at(u, w));
      }
  // phi_{r-1} T_-^M[r] - T_-^N[r] phi_r = 0 on V^M_r
  for (int r = 2; r <= n; ++r)
    for (int u = 0; u < N.dim(r - 1); ++u)
      for (int v = 0; v < M.dim(r); ++v) {
        auto& row = sys.new_row();
        for (int w = 0; w < M.dim(r - 1); ++w)
          row[phi.var(r - 1, u, w)] =
              F.add(row[phi.var(r - 1, u, w)], M.t_minus.blocks[r].at(w, v));
        for (int w = 0; w < N.dim(r); ++w)
          row[phi.var(r, w, v)] =
              F.sub(row[phi.var(r, w, v)], N.t_minus.blocks[r].at(u, w));
      }
  return sys.to_matrix();
}

inline long hom_dim_direct(const Fp& F, const GenericModule& M,
                           const GenericModule& N) {
  Mat A = hom_system(F, M, N);
  return static_cast<long>(A.cols) - static_cast<long>(rank(F, A));
}

// The cocycle system for extensions of x1 by x2 (x2 the submodule): pairs
// (T12+, T12-) of maps V^1 -> V^2 of degrees +1 / -1 satisfying, on each
// graded piece V^1_s,
//   T2+ T12- + T12+ T1-  =  T2- T12+ + T12- T1+.
struct CocycleSystem {
  detail::BlockLayout plus;   // A[r] : V^1_r -> V^2_{r+1}, r = 1..n-1
  detail::BlockLayout minus;  // B[r] : V^1_r -> V^2_{r-1}, r = 2..n
  int nvars = 0;
  Mat matrix;
};

inline CocycleSystem cocycle_system(const Fp& F, const GenericModule& M1,
                                    const GenericModule& M2) {
  const int n = M1.m.n;
  CocycleSystem cs;
  for (int r = 1; r < n; ++r) cs.plus.add(r, M2.dim(r + 1), M1.dim(r));
  for (int r = 2; r <= n; ++r) cs.minus.add(r, M2.dim(r - 1), M1.dim(r));
  const int minus_base = cs.plus.total;
  cs.nvars = cs.plus.total + cs.minus.total;
  detail::SystemBuilder sys(cs.nvars);
  auto avar = [&](int r, int i, int j) { return cs.plus.var(r, i, j); };
  auto bvar = [&](int r, int i, int j) { return minus_base + cs.minus.var(r, i, j); };
  for (int s = 1; s <= n; ++s)
    for (int u = 0; u < M2.dim(s); ++u)
      for (int v = 0; v < M1.dim(s); ++v) {
        auto& row = sys.new_row();
        if (s >= 2)  // T2+[s-1] B[s]
          for (int w = 0; w < M2.dim(s - 1); ++w)
            row[bvar(s, w, v)] =
                F.add(row[bvar(s, w, v)], M2.t_plus.blocks[s - 1].at(u, w));
        if (s >= 2)  // A[s-1] T1-[s]
          for (int w = 0; w < M1.dim(s - 1); ++w)
            row[avar(s - 1, u, w)] =
                F.add(row[avar(s - 1, u, w)], M1.t_minus.blocks[s].at(w, v));
        if (s < n)  // - T2-[s+1] A[s]
          for (int w = 0; w < M2.dim(s + 1); ++w)
            row[avar(s, w, v)] =
                F.sub(row[avar(s, w, v)], M2.t_minus.blocks[s + 1].at(u, w));
        if (s < n)  // - B[s+1] T1+[s]
          for (int w = 0; w < M1.dim(s + 1); ++w)
            row[bvar(s + 1, u, w)] =
                F.sub(row[bvar(s + 1, u, w)], M1.t_plus.blocks[s].at(w, v));
      }
  cs.matrix = sys.to_matrix();
  return cs;
}

// ---- The randomized engine -------------------------------------------------

class Engine {
 public:
  explicit Engine(EngineConfig cfg = {}) : cfg_(cfg), F_(cfg.prime) {
    if (cfg_.trials < 1) throw precondition_error("trials must be >= 1");
  }

  const EngineConfig& config() const { return cfg_; }
  const Fp& field() const { return F_; }

  // min over trials of dim Hom_Pi(x1, x2) at sampled generic points.
  // Equal arguments are sampled on the diagonal (x1 = x2), so the value on
  // (m, m) is the generic endomorphism dimension.
  RandomizedVerdict<long> hom_pi(const Multisegment& m, const Multisegment& n) const {
    check_ambient(m, n);
    std::uint64_t h = stream("hom", m, n);
    long best = -1;
    std::size_t dim_bound = 0;
    const bool diagonal = (m == n);
    for (int t = 0; t < cfg_.trials; ++t) {
      auto rng = make_rng(cfg_.seed, h, t);
      GenericModule M1 = sample_generic(F_, m, rng);
      GenericModule M2 = diagonal ? M1 : sample_generic(F_, n, rng);
      Mat A = hom_system(F_, M1, M2);
      dim_bound = std::max(dim_bound, std::max(A.rows, A.cols));
      long v = static_cast<long>(A.cols) - static_cast<long>(rank(F_, A));
      best = best < 0 ? v : std::min(best, v);
    }
    return {best, cfg_.trials, min_bound(dim_bound)};
  }

  // min over trials of dim Ext^1_Pi(x1, x2); diagonal sampling on equal
  // arguments (so the value on (m, m) is the generic self-extension space).
  RandomizedVerdict<long> ext1_pi(const Multisegment& m, const Multisegment& n) const {
    return ext1_impl(m, n, /*diagonal=*/m == n, "ext1");
  }

  RandomizedVerdict<bool> is_rigid(const Multisegment& m) const {
    RandomizedVerdict<long> e = ext1_impl(m, m, /*diagonal=*/true, "ext1");
    return {e.value == 0, e.trials, e.error_bound};
  }

  // Ext^1 vanishing for SOME pair of points: always samples independently.
  RandomizedVerdict<bool> strongly_commute(const Multisegment& m,
                                           const Multisegment& n) const {
    RandomizedVerdict<long> e = ext1_impl(m, n, /*diagonal=*/false, "sext1");
    return {e.value == 0, e.trials, e.error_bound};
  }

  // The star operation: generic extension of a point of m (quotient) by a
  // point of n (submodule), recovered from the rank profile of T_+.
  RandomizedVerdict<Multisegment> star(const Multisegment& m,
                                       const Multisegment& n) const {
    check_ambient(m, n);
    if (m.empty()) return {n, 0, 0.0};
    if (n.empty()) return {m, 0, 0.0};
    std::uint64_t h = stream("star", m, n);
    std::vector<Multisegment> outcomes;
    std::size_t dim_bound = 0;
    for (int t = 0; t < cfg_.trials; ++t) {
      auto rng = make_rng(cfg_.seed, h, t);
      GenericModule M1 = sample_generic(F_, m, rng);
      GenericModule M2 = sample_generic(F_, n, rng);
      CocycleSystem cs = cocycle_system(F_, M1, M2);
      dim_bound = std::max(dim_bound,
                           std::max(cs.matrix.rows, cs.matrix.cols));
      std::vector<std::uint64_t> v = random_kernel_element(F_, cs.matrix, rng);
      outcomes.push_back(assemble_extension(M1, M2, cs, v));
    }
    return {modal(outcomes, "star"), cfg_.trials, modal_bound(dim_bound)};
  }

  RandomizedVerdict<bool> commute(const Multisegment& m, const Multisegment& n) const {
    RandomizedVerdict<Multisegment> a = star(m, n);
    RandomizedVerdict<Multisegment> b = star(n, m);
    return {a.value == b.value, a.trials + b.trials,
            a.error_bound + b.error_bound};
  }

  // The involution computed from the degree -1 part of a generic point,
  // after reversing the grading.
  RandomizedVerdict<Multisegment> mw(const Multisegment& m) const {
    if (m.empty()) return {m, 0, 0.0};
    std::uint64_t h = stream("mw", m, m);
    std::vector<Multisegment> outcomes;
    std::size_t dim_bound = 0;
    for (int t = 0; t < cfg_.trials; ++t) {
      auto rng = make_rng(cfg_.seed, h, t);
      GenericModule M = sample_generic(F_, m, rng);
      GradedMap rev = reverse_grading(M.t_minus);
      std::size_t total = 0;
      for (int r = 1; r <= m.n; ++r) total += rev.dims[r];
      dim_bound = std::max(dim_bound, total);
      outcomes.push_back(dual(recover_multisegment(F_, rev)));
    }
    return {modal(outcomes, "mw"), cfg_.trials, modal_bound(dim_bound)};
  }

  // Find the unique n with star(m1, n) = mC, if it exists. Requires m1 rigid.
  RandomizedVerdict<std::optional<Multisegment>> factor(
      const Multisegment& mC, const Multisegment& m1) const {
    check_ambient(mC, m1);
    if (!is_rigid(m1).value)
      throw precondition_error("factor requires a rigid known factor");
    std::uint64_t h = stream("factor", mC, m1);
    std::vector<Multisegment> successes;
    std::size_t dim_bound = 0;
    for (int t = 0; t < cfg_.trials; ++t) {
      auto rng = make_rng(cfg_.seed, h, t);
      GenericModule X = sample_generic(F_, mC, rng);
      GenericModule X1 = sample_generic(F_, m1, rng);
      Mat A = hom_system(F_, X, X1);
      dim_bound = std::max(dim_bound, std::max(A.rows, A.cols));
      std::vector<std::uint64_t> phi = random_kernel_element(F_, A, rng);
      auto kernel = kernel_of_morphism(X, X1, phi);
      if (kernel) successes.push_back(*kernel);
    }
    if (successes.empty())
      return {std::nullopt, cfg_.trials, modal_bound(dim_bound)};
    return {modal(successes, "factor"), cfg_.trials, modal_bound(dim_bound)};
  }

 private:
  EngineConfig cfg_;
  Fp F_;

  static void check_ambient(const Multisegment& m, const Multisegment& n) {
    if (m.n != n.n) throw precondition_error("ambient size mismatch");
  }

  std::uint64_t stream(const char* op, const Multisegment& m,
                       const Multisegment& n) const {
    std::string s = std::string(op) + "|" + std::to_string(m.n) + "|" +
                    format_multisegment(m) + "|" + format_multisegment(n);
    return fnv1a64(s);
  }

  double per_trial_eps(std::size_t dim) const {
    double d = static_cast<double>(dim);
    double eps = d * d / static_cast<double>(F_.modulus());
    return std::min(1.0, eps);
  }
  double min_bound(std::size_t dim) const {
    return std::pow(per_trial_eps(dim), cfg_.trials);
  }
  double modal_bound(std::size_t dim) const {
    int h = cfg_.trials / 2 + 1;  // failures needed to corrupt the majority
    double c = 1.0;
    for (int i = 0; i < h; ++i)
      c = c * static_cast<double>(cfg_.trials - i) / static_cast<double>(i + 1);
    return std::min(1.0, c * std::pow(per_trial_eps(dim), h));
  }

  RandomizedVerdict<long> ext1_impl(const Multisegment& m, const Multisegment& n,
                                    bool diagonal, const char* op) const {
    check_ambient(m, n);
    std::uint64_t h = stream(op, m, n);
    long best = -1;
    std::size_t dim_bound = 0;
    for (int t = 0; t < cfg_.trials; ++t) {
      auto rng = make_rng(cfg_.seed, h, t);
      GenericModule M1 = sample_generic(F_, m, rng);
      GenericModule M2 = diagonal ? M1 : sample_generic(F_, n, rng);
      CocycleSystem cs = cocycle_system(F_, M1, M2);
      dim_bound = std::max(dim_bound, std::max(cs.matrix.rows, cs.matrix.cols));
      long dimZ = static_cast<long>(cs.nvars) -
                  static_cast<long>(rank(F_, cs.matrix));
      long d0 = 0;
      for (int s = 1; s <= m.n; ++s) d0 += M2.dim(s) * M1.dim(s);
      long hom = hom_dim_direct(F_, M1, M2);
      long v = dimZ - (d0 - hom);
      best = best < 0 ? v : std::min(best, v);
    }
    return {best, cfg_.trials, min_bound(dim_bound)};
  }

  Multisegment assemble_extension(const GenericModule& M1, const GenericModule& M2,
                                  const CocycleSystem& cs,
                                  const std::vector<std::uint64_t>& v) const {
    const int n = M1.m.n;
    std::vector<int> d(n, 0);
    for (int r = 1; r <= n; ++r) d[r - 1] = M1.dim(r) + M2.dim(r);
    GradedMap T = GradedMap::zero(n, +1, d);
    for (int r = 1; r < n; ++r) {
      // basis of V_r: V^1_r first, then V^2_r
      for (int i = 0; i < M1.dim(r + 1); ++i)
        for (int j = 0; j < M1.dim(r); ++j)
          T.blocks[r].at(i, j) = M1.t_plus.blocks[r].at(i, j);
      for (int i = 0; i < M2.dim(r + 1); ++i)
        for (int j = 0; j < M2.dim(r); ++j)
          T.blocks[r].at(M1.dim(r + 1) + i, M1.dim(r) + j) =
              M2.t_plus.blocks[r].at(i, j);
      for (int i = 0; i < M2.dim(r + 1); ++i)
        for (int j = 0; j < M1.dim(r); ++j)
          T.blocks[r].at(M1.dim(r + 1) + i, j) = v[cs.plus.var(r, i, j)];
    }
    return recover_multisegment(F_, T);
  }

  // Kernel of a surjective morphism phi : X -> X1, recovered from the
  // restriction of T_+ to the per-site kernels. Returns nullopt when phi is
  // not surjective on some graded piece.
  std::optional<Multisegment> kernel_of_morphism(
      const GenericModule& X, const GenericModule& X1,
      const std::vector<std::uint64_t>& phi) const {
    const int n = X.m.n;
    detail::BlockLayout lay;
    for (int r = 1; r <= n; ++r) lay.add(r, X1.dim(r), X.dim(r));
    std::vector<Mat> K(n + 1);  // columns span Ker phi_r
    std::vector<int> kd(n, 0);
    for (int r = 1; r <= n; ++r) {
      Mat P(X1.dim(r), X.dim(r));
      for (int i = 0; i < X1.dim(r); ++i)
        for (int j = 0; j < X.dim(r); ++j) P.at(i, j) = phi[lay.var(r, i, j)];
      if (static_cast<int>(rank(F_, P)) != X1.dim(r)) return std::nullopt;
      auto basis = nullspace(F_, P);
      Mat B(X.dim(r), basis.size());
      for (std::size_t c = 0; c < basis.size(); ++c)
        for (int i = 0; i < X.dim(r); ++i) B.at(i, c) = basis[c][i];
      K[r] = B;
      kd[r - 1] = static_cast<int>(basis.size());
    }
    GradedMap T = GradedMap::zero(n, +1, kd);
    for (int r = 1; r < n; ++r) {
      // T_+ maps Ker phi_r into Ker phi_{r+1}; express the image in the
      // kernel basis: K_{r+1} X = T_+ K_r.
      Mat img = mat_mul(F_, X.t_plus.blocks[r], K[r]);
      T.blocks[r] = solve_full_col_rank(F_, K[r + 1], img);
    }
    return recover_multisegment(F_, T);
  }

  template <typename T>
  T modal(const std::vector<T>& outcomes, const char* op) const {
    std::map<std::string, std::pair<int, T>> votes;
    for (const T& o : outcomes) {
      std::string key;
      if constexpr (std::is_same_v<T, Multisegment>)
        key = format_multisegment(o);
      else
        key = std::to_string(o);
      auto [it, fresh] = votes.emplace(key, std::make_pair(0, o));
      ++it->second.first;
    }
    for (const auto& [key, v] : votes)
      if (2 * v.first > static_cast<int>(outcomes.size())) return v.second;
    throw no_majority_error(std::string(op) +
                            ": no strict majority across trials; retry with "
                            "more trials or a larger field");
  }
};

}  // namespace compstar
