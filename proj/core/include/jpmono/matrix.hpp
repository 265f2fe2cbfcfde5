#ifndef JPMONO_MATRIX_HPP
#define JPMONO_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "jpmono/error.hpp"

namespace jpmono {

// Dense matrix over a ring context R (Fq, DualFq, W2k, ...).  All operations
// take the context as first argument; the matrix itself is plain storage.
template <class R> struct Mat {
  using E = typename R::elem;
  int n = 0, m = 0;
  std::vector<E> a;

  Mat() = default;
  Mat(int n_, int m_) : n(n_), m(m_), a((size_t)n_ * m_) {}
  E &at(int i, int j) { return a[(size_t)i * m + j]; }
  const E &at(int i, int j) const { return a[(size_t)i * m + j]; }
  bool operator==(const Mat &o) const { return n == o.n && m == o.m && a == o.a; }
};

template <class R> Mat<R> mat_identity(const R &K, int n) {
  Mat<R> I(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) I.at(i, j) = i == j ? K.one() : K.zero();
  return I;
}

template <class R> Mat<R> mat_scalar(const R &K, int n, typename R::elem c) {
  Mat<R> I(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) I.at(i, j) = i == j ? c : K.zero();
  return I;
}

template <class R> Mat<R> mat_mul(const R &K, const Mat<R> &A, const Mat<R> &B) {
  if (A.m != B.n) fail(errc::dimension_mismatch, "mat_mul");
  Mat<R> C(A.n, B.m);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < B.m; ++j) {
      auto s = K.zero();
      for (int l = 0; l < A.m; ++l) s = K.add(s, K.mul(A.at(i, l), B.at(l, j)));
      C.at(i, j) = s;
    }
  return C;
}

template <class R> Mat<R> mat_add(const R &K, const Mat<R> &A, const Mat<R> &B) {
  Mat<R> C(A.n, A.m);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = K.add(A.a[i], B.a[i]);
  return C;
}

template <class R> Mat<R> mat_sub(const R &K, const Mat<R> &A, const Mat<R> &B) {
  Mat<R> C(A.n, A.m);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = K.sub(A.a[i], B.a[i]);
  return C;
}

template <class R> Mat<R> mat_scale(const R &K, typename R::elem c, const Mat<R> &A) {
  Mat<R> C(A.n, A.m);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = K.mul(c, A.a[i]);
  return C;
}

template <class R> Mat<R> mat_transpose(const R &, const Mat<R> &A) {
  Mat<R> C(A.m, A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.m; ++j) C.at(j, i) = A.at(i, j);
  return C;
}

template <class R> bool mat_is_zero(const R &K, const Mat<R> &A) {
  for (auto &x : A.a)
    if (!K.is_zero(x)) return false;
  return true;
}

template <class R> bool mat_is_identity(const R &K, const Mat<R> &A) {
  if (A.n != A.m) return false;
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.m; ++j) {
      auto want = i == j ? K.one() : K.zero();
      if (A.at(i, j) != want) return false;
    }
  return true;
}

// is A = c*I for some c?  Returns the scalar if so.
template <class R> std::optional<typename R::elem> mat_scalar_of(const R &K, const Mat<R> &A) {
  if (A.n != A.m || A.n == 0) return std::nullopt;
  auto c = A.at(0, 0);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.m; ++j) {
      if (i == j && !(A.at(i, j) == c)) return std::nullopt;
      if (i != j && !K.is_zero(A.at(i, j))) return std::nullopt;
    }
  return c;
}

template <class R> typename R::elem mat_trace(const R &K, const Mat<R> &A) {
  auto s = K.zero();
  for (int i = 0; i < A.n; ++i) s = K.add(s, A.at(i, i));
  return s;
}

template <class R> std::vector<typename R::elem>
mat_vec(const R &K, const Mat<R> &A, const std::vector<typename R::elem> &v) {
  std::vector<typename R::elem> r(A.n);
  for (int i = 0; i < A.n; ++i) {
    auto s = K.zero();
    for (int j = 0; j < A.m; ++j) s = K.add(s, K.mul(A.at(i, j), v[j]));
    r[i] = s;
  }
  return r;
}

// Row echelon form in place over a ring with enough units (fields and local
// rings both work for the invertible-input cases we use).  Pivot rule is
// fixed: scan columns left to right, take the lowest-index usable row.
// Over a field any nonzero entry is usable; over a local ring a pivot must be
// a unit, and a column whose nonzero entries are all non-units aborts with
// Singular when require_full_rank, else the column is skipped.
// Returns the rank (number of pivots); pivot columns appended to pivots.
template <class R>
int rref_in_place(const R &K, Mat<R> &A, std::vector<int> *pivots = nullptr,
                  bool require_unit_pivots = false) {
  int rank = 0;
  for (int col = 0; col < A.m && rank < A.n; ++col) {
    int piv = -1;
    for (int r = rank; r < A.n; ++r) {
      bool usable = R::is_field ? !K.is_zero(A.at(r, col)) : K.is_unit(A.at(r, col));
      if (usable) { piv = r; break; }
    }
    if (piv < 0) {
      if (!R::is_field && require_unit_pivots) {
        for (int r = rank; r < A.n; ++r)
          if (!K.is_zero(A.at(r, col))) fail(errc::singular, "no unit pivot in column");
      }
      continue;
    }
    if (piv != rank)
      for (int j = 0; j < A.m; ++j) std::swap(A.at(piv, j), A.at(rank, j));
    auto pinv = K.inv(A.at(rank, col));
    for (int j = 0; j < A.m; ++j) A.at(rank, j) = K.mul(pinv, A.at(rank, j));
    for (int r = 0; r < A.n; ++r) {
      if (r == rank || K.is_zero(A.at(r, col))) continue;
      auto f = A.at(r, col);
      for (int j = 0; j < A.m; ++j) A.at(r, j) = K.sub(A.at(r, j), K.mul(f, A.at(rank, j)));
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

template <class R> int mat_rank(const R &K, Mat<R> A) {
  static_assert(R::is_field);
  return rref_in_place(K, A);
}

// Basis of the right kernel {v : Av = 0}; field contexts only.
template <class R>
std::vector<std::vector<typename R::elem>> kernel_basis(const R &K, Mat<R> A) {
  static_assert(R::is_field);
  std::vector<int> pivots;
  int rank = rref_in_place(K, A, &pivots);
  std::vector<bool> is_pivot(A.m, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename R::elem>> basis;
  for (int free = 0; free < A.m; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename R::elem> v(A.m, K.zero());
    v[free] = K.one();
    for (int r = 0; r < rank; ++r) v[pivots[r]] = K.neg(A.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class R> Mat<R> mat_inverse(const R &K, const Mat<R> &A) {
  if (A.n != A.m) fail(errc::dimension_mismatch, "inverse of non-square");
  int n = A.n;
  Mat<R> W(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      W.at(i, j) = A.at(i, j);
      W.at(i, n + j) = i == j ? K.one() : K.zero();
    }
  std::vector<int> pivots;
  int rank = rref_in_place(K, W, &pivots, true);
  if (rank < n || (n > 0 && pivots.back() >= n))
    fail(errc::singular, "matrix not invertible");
  Mat<R> Inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Inv.at(i, j) = W.at(i, n + j);
  return Inv;
}

// Determinant.  Fields: elimination with the fixed pivot rule.  Local rings:
// cofactor-free expansion det(A0 + eps*A1) handled by the caller (jprep uses
// unit-pivot elimination, valid for matrices with invertible reduction).
template <class R> typename R::elem mat_det(const R &K, Mat<R> A) {
  if (A.n != A.m) fail(errc::dimension_mismatch, "det of non-square");
  auto det = K.one();
  int n = A.n;
  int rank = 0;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r) {
      bool usable = R::is_field ? !K.is_zero(A.at(r, col)) : K.is_unit(A.at(r, col));
      if (usable) { piv = r; break; }
    }
    if (piv < 0) {
      if constexpr (R::is_field) return K.zero();
      else fail(errc::singular, "det over local ring needs unit pivots");
    }
    if (piv != rank) {
      for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(rank, j));
      det = K.neg(det);
    }
    det = K.mul(det, A.at(rank, col));
    auto pinv = K.inv(A.at(rank, col));
    for (int r = rank + 1; r < n; ++r) {
      if (K.is_zero(A.at(r, col))) continue;
      auto f = K.mul(pinv, A.at(r, col));
      for (int j = col; j < n; ++j) A.at(r, j) = K.sub(A.at(r, j), K.mul(f, A.at(rank, j)));
    }
    ++rank;
  }
  return det;
}

template <class R> Mat<R> mat_pow(const R &K, Mat<R> A, uint64_t e) {
  Mat<R> r = mat_identity(K, A.n);
  while (e) {
    if (e & 1) r = mat_mul(K, r, A);
    A = mat_mul(K, A, A);
    e >>= 1;
  }
  return r;
}

// dim ker(A - lambda I)
template <class R>
int eigenspace_dim(const R &K, const Mat<R> &A, typename R::elem lambda) {
  static_assert(R::is_field);
  Mat<R> B = A;
  for (int i = 0; i < B.n; ++i) B.at(i, i) = K.sub(B.at(i, i), lambda);
  return B.n - mat_rank(K, B);
}

// least d in [1, bound] with A^d = I
template <class R>
std::optional<uint64_t> element_order(const R &K, const Mat<R> &A, uint64_t bound) {
  Mat<R> P = A;
  for (uint64_t d = 1; d <= bound; ++d) {
    if (mat_is_identity(K, P)) return d;
    P = mat_mul(K, P, A);
  }
  return std::nullopt;
}

// rank(A) <= 1 via vanishing of all 2x2 minors; works over any ring
template <class R> bool mat_rank_le1(const R &K, const Mat<R> &A) {
  for (int i = 0; i < A.n; ++i)
    for (int r = i + 1; r < A.n; ++r)
      for (int j = 0; j < A.m; ++j)
        for (int c = j + 1; c < A.m; ++c) {
          auto minor = K.sub(K.mul(A.at(i, j), A.at(r, c)), K.mul(A.at(i, c), A.at(r, j)));
          if (!K.is_zero(minor)) return false;
        }
  return true;
}

// Entrywise equality through the ring's is_zero (so the numeric context gets
// its tolerance).
template <class R> bool mat_equal(const R &K, const Mat<R> &A, const Mat<R> &B) {
  if (A.n != B.n || A.m != B.m) return false;
  for (size_t i = 0; i < A.a.size(); ++i)
    if (!K.is_zero(K.sub(A.a[i], B.a[i]))) return false;
  return true;
}

// Incremental row-space basis, kept sifted: each stored row is normalized and
// has zeros at the pivot columns of the rows stored before it.
template <class R> struct SiftBasis {
  const R *Kp;
  int m;
  std::vector<std::vector<typename R::elem>> rows;
  std::vector<int> pivcol;

  SiftBasis(const R &K, int width) : Kp(&K), m(width) {}
  int dim() const { return (int)rows.size(); }

  // Reduces v against the basis; a nonzero remainder is normalized, stored
  // and reported as true.
  bool add(std::vector<typename R::elem> v) {
    const R &K = *Kp;
    for (size_t r = 0; r < rows.size(); ++r) {
      auto c = v[pivcol[r]];
      if (K.is_zero(c)) continue;
      for (int j = 0; j < m; ++j) v[j] = K.sub(v[j], K.mul(c, rows[r][j]));
    }
    int p = -1;
    for (int j = 0; j < m; ++j)
      if (!K.is_zero(v[j])) { p = j; break; }
    if (p < 0) return false;
    auto s = K.inv(v[p]);
    for (int j = 0; j < m; ++j) v[j] = K.mul(s, v[j]);
    rows.push_back(std::move(v));
    pivcol.push_back(p);
    return true;
  }
};

// Solve A x = b; returns the particular solution with free variables zero,
// or nullopt when inconsistent.  Field contexts only.
template <class R>
std::optional<std::vector<typename R::elem>>
solve_linear(const R &K, Mat<R> A, const std::vector<typename R::elem> &b) {
  static_assert(R::is_field);
  int n = A.n, m = A.m;
  Mat<R> W(n, m + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) W.at(i, j) = A.at(i, j);
    W.at(i, m) = b[i];
  }
  std::vector<int> pivots;
  int rank = rref_in_place(K, W, &pivots);
  for (int r = 0; r < rank; ++r)
    if (pivots[r] == m) return std::nullopt; // pivot in the constant column
  std::vector<typename R::elem> x(m, K.zero());
  for (int r = 0; r < rank; ++r) x[pivots[r]] = W.at(r, m);
  return x;
}

} // namespace jpmono

#endif
