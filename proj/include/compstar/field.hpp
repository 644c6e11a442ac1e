#pragma once

// Prime-field scalar arithmetic and dense exact linear algebra.
//
// All generic-point computations run over a fixed word-sized prime field
// (default p = 2^61 - 1). Matrices are dense and tiny (at most a few hundred
// rows), so plain Gaussian elimination is the right tool.

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

#include "compstar/common.hpp"

namespace compstar {

class Fp {
 public:
  static constexpr std::uint64_t kDefaultPrime = 2305843009213693951ull;  // 2^61 - 1

  explicit Fp(std::uint64_t p = kDefaultPrime) : p_(p) {
    if (p < 2) throw precondition_error("field modulus must be >= 2");
  }

  std::uint64_t modulus() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;  // p < 2^62, so no overflow
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    assert(a != 0);
    return pow(a, p_ - 2);
  }

  // Uniform element of {0, ..., p-1} via rejection sampling on 64-bit draws.
  std::uint64_t uniform(std::mt19937_64& rng) const {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % p_;
    for (;;) {
      std::uint64_t r = rng();
      if (r < limit) return r % p_;
    }
  }

 private:
  std::uint64_t p_;
};

struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint64_t> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  std::uint64_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t k) {
    Mat m(k, k);
    for (std::size_t i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
  }
};

inline Mat mat_mul(const Fp& F, const Mat& A, const Mat& B) {
  assert(A.cols == B.rows);
  Mat C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      std::uint64_t v = A.at(i, k);
      if (!v) continue;
      for (std::size_t j = 0; j < B.cols; ++j)
        C.at(i, j) = F.add(C.at(i, j), F.mul(v, B.at(k, j)));
    }
  return C;
}

// In-place reduced row echelon form; returns the pivot column of each pivot
// row, in order.
inline std::vector<std::size_t> rref(const Fp& F, Mat& A) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < A.cols && row < A.rows; ++col) {
    std::size_t sel = row;
    while (sel < A.rows && A.at(sel, col) == 0) ++sel;
    if (sel == A.rows) continue;
    if (sel != row)
      for (std::size_t j = 0; j < A.cols; ++j)
        std::swap(A.at(sel, j), A.at(row, j));
    std::uint64_t piv_inv = F.inv(A.at(row, col));
    for (std::size_t j = col; j < A.cols; ++j)
      A.at(row, j) = F.mul(A.at(row, j), piv_inv);
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (i == row) continue;
      std::uint64_t v = A.at(i, col);
      if (!v) continue;
      for (std::size_t j = col; j < A.cols; ++j)
        A.at(i, j) = F.sub(A.at(i, j), F.mul(v, A.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(const Fp& F, Mat A) { return rref(F, A).size(); }

// Basis of {v : Av = 0}; size = cols - rank(A).
inline std::vector<std::vector<std::uint64_t>> nullspace(const Fp& F, Mat A) {
  std::vector<std::size_t> pivots = rref(F, A);
  std::vector<bool> is_pivot(A.cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < A.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(A.cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = F.neg(A.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

// Uniformly random field-coefficient combination of a nullspace basis of A.
inline std::vector<std::uint64_t> random_kernel_element(const Fp& F, const Mat& A,
                                                        std::mt19937_64& rng) {
  auto basis = nullspace(F, A);
  std::vector<std::uint64_t> v(A.cols, 0);
  for (const auto& b : basis) {
    std::uint64_t c = F.uniform(rng);
    for (std::size_t j = 0; j < A.cols; ++j)
      v[j] = F.add(v[j], F.mul(c, b[j]));
  }
  return v;
}

// Solve A X = B for X (each column independently). Requires the system to be
// consistent and A to have full column rank, which is the only case we need
// (expressing vectors in a known basis).
inline Mat solve_full_col_rank(const Fp& F, const Mat& A, const Mat& B) {
  assert(A.rows == B.rows);
  Mat aug(A.rows, A.cols + B.cols);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    for (std::size_t j = 0; j < B.cols; ++j) aug.at(i, A.cols + j) = B.at(i, j);
  }
  std::vector<std::size_t> pivots = rref(F, aug);
  Mat X(A.cols, B.cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] >= A.cols)
      throw precondition_error("solve_full_col_rank: inconsistent system");
    for (std::size_t j = 0; j < B.cols; ++j)
      X.at(pivots[r], j) = aug.at(r, A.cols + j);
  }
  if (pivots.size() != A.cols)
    throw precondition_error("solve_full_col_rank: rank-deficient system");
  return X;
}

}  // namespace compstar
