#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "shardforge/numeric.hpp"

namespace shardforge {

// Dense matrix over an arbitrary field object F.  F supplies:
//   typename Elt; zero(), one(), add, sub, mul, neg, inv, is_zero, eq.
// Elimination always pivots on the first nonzero row in column order, so
// echelon forms, kernels and solutions are deterministic.
template <class F>
struct Mat {
  using Elt = typename F::Elt;
  int rows = 0, cols = 0;
  std::vector<Elt> a;

  Mat() = default;
  Mat(const F& f, int r, int c) : rows(r), cols(c), a(size_t(r) * c, f.zero()) {}

  Elt& at(int r, int c) { return a[size_t(r) * cols + c]; }
  const Elt& at(int r, int c) const { return a[size_t(r) * cols + c]; }
};

template <class F>
Mat<F> mat_identity(const F& f, int n) {
  Mat<F> m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

template <class F>
Mat<F> mat_mul(const F& f, const Mat<F>& A, const Mat<F>& B) {
  assert(A.cols == B.rows);
  Mat<F> C(f, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      if (f.is_zero(A.at(i, k))) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = f.add(C.at(i, j), f.mul(A.at(i, k), B.at(k, j)));
    }
  return C;
}

template <class F>
Mat<F> mat_add(const F& f, const Mat<F>& A, const Mat<F>& B) {
  assert(A.rows == B.rows && A.cols == B.cols);
  Mat<F> C(f, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = f.add(A.a[i], B.a[i]);
  return C;
}

template <class F>
Mat<F> mat_neg(const F& f, const Mat<F>& A) {
  Mat<F> C(f, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = f.neg(A.a[i]);
  return C;
}

template <class F>
Mat<F> mat_transpose(const F& f, const Mat<F>& A) {
  Mat<F> C(f, A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(j, i) = A.at(i, j);
  return C;
}

template <class F>
bool mat_is_zero(const F& f, const Mat<F>& A) {
  for (const auto& x : A.a)
    if (!f.is_zero(x)) return false;
  return true;
}

template <class F>
bool mat_eq(const F& f, const Mat<F>& A, const Mat<F>& B) {
  if (A.rows != B.rows || A.cols != B.cols) return false;
  for (size_t i = 0; i < A.a.size(); ++i)
    if (!f.eq(A.a[i], B.a[i])) return false;
  return true;
}

// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<int> row_reduce(const F& f, Mat<F>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pr = -1;
    for (int i = r; i < m.rows; ++i)
      if (!f.is_zero(m.at(i, c))) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    auto inv = f.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || f.is_zero(m.at(i, c))) continue;
      auto factor = m.at(i, c);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int mat_rank(const F& f, Mat<F> m) {
  return int(row_reduce(f, m).size());
}

// Columns form a basis of {x : A x = 0}, ordered by free column index.
template <class F>
Mat<F> kernel_basis(const F& f, Mat<F> A) {
  auto pivots = row_reduce(f, A);
  std::vector<bool> is_pivot(A.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  int k = A.cols - int(pivots.size());
  Mat<F> K(f, A.cols, k);
  int col = 0;
  for (int cf = 0; cf < A.cols; ++cf) {
    if (is_pivot[cf]) continue;
    K.at(cf, col) = f.one();
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      K.at(pivots[pi], col) = f.neg(A.at(int(pi), cf));
    ++col;
  }
  return K;
}

// Exact solve A X = B; nullopt if inconsistent. Free variables are set to 0.
template <class F>
std::optional<Mat<F>> mat_solve(const F& f, const Mat<F>& A, const Mat<F>& B) {
  assert(A.rows == B.rows);
  Mat<F> aug(f, A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols; ++j) aug.at(i, A.cols + j) = B.at(i, j);
  }
  std::vector<int> pivots = row_reduce(f, aug);
  for (int c : pivots)
    if (c >= A.cols) return std::nullopt;
  Mat<F> X(f, A.cols, B.cols);
  for (size_t pi = 0; pi < pivots.size(); ++pi)
    for (int j = 0; j < B.cols; ++j) X.at(pivots[pi], j) = aug.at(int(pi), A.cols + j);
  return X;
}

struct RationalField {
  using Elt = BigRat;
  Elt zero() const { return BigRat(0); }
  Elt one() const { return BigRat(1); }
  Elt add(const Elt& a, const Elt& b) const { return a + b; }
  Elt sub(const Elt& a, const Elt& b) const { return a - b; }
  Elt mul(const Elt& a, const Elt& b) const { return a * b; }
  Elt neg(const Elt& a) const { return -a; }
  Elt inv(const Elt& a) const { return 1 / a; }
  bool is_zero(const Elt& a) const { return a == 0; }
  bool eq(const Elt& a, const Elt& b) const { return a == b; }
};

using RatMat = Mat<RationalField>;

// --- helpers on integer row lists, used by the cone and rank-two modules ---

// Reduced row echelon form of the rational row space, rescaled so each row is
// a primitive integer vector with positive pivot.  Unique for a given span.
inline std::vector<BigVec> canonical_subspace_basis(const std::vector<BigVec>& rows_in, int n) {
  RationalField f;
  if (rows_in.empty()) return {};
  Mat<RationalField> m(f, int(rows_in.size()), n);
  for (size_t i = 0; i < rows_in.size(); ++i)
    for (int j = 0; j < n; ++j) m.at(int(i), j) = BigRat(rows_in[i][j]);
  auto pivots = row_reduce(f, m);
  std::vector<BigVec> out;
  for (size_t r = 0; r < pivots.size(); ++r) {
    RatVec row(n);
    for (int j = 0; j < n; ++j) row[j] = m.at(int(r), j);
    out.push_back(primitive_from_rational(row));  // pivot entry is positive
  }
  return out;
}

inline int rank_of_rows(const std::vector<BigVec>& rows, int n) {
  return int(canonical_subspace_basis(rows, n).size());
}

}  // namespace shardforge
