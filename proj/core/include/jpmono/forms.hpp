#ifndef JPMONO_FORMS_HPP
#define JPMONO_FORMS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "jpmono/jprep.hpp"

namespace jpmono {

// Invariant form of a tuple: solves g A sigma(g)^T = A.  sign is +1 for
// symmetric, -1 for alternating/anti-Hermitian representatives.
struct FormMatrix {
  Mat<Fq> A;
  InvolKind invol = InvolKind::Identity;
  int sign = 0;
  bool nondegenerate = false;
};

// Identity involution: bilinear forms, solution must be a single F_q-line.
// FrobeniusHalf: sesquilinear forms over F_{q}=F_{q0^2}, solution a single
// F_q-line (two F_{q0}-dimensions); the anti-Hermitian representative is
// returned.  Throws NoForm when the space is zero and NonUnique when it is
// bigger than the Schur bound.  The caller is expected to pass a verified
// tuple.
FormMatrix invariant_form(const Fq &K, const JPTuple<Fq> &t, InvolKind inv);

// SwapFactors flavor: the invariant pair (A, -A^T) across the two embeddings
// of one split prime; solves g1 A g2^T = A.  Returned A is the first factor,
// sign -1 by the pair convention.
FormMatrix pair_form(const Fq &K, const JPTuple<Fq> &t1, const JPTuple<Fq> &t2);

struct Rat {
  int64_t num = 0;
  int64_t den = 1;
};

// Exponents a_0..a_{n+1}, each in (0,1), with integral sum; lambda_i =
// exp(2 pi i a_i) implied.
struct SignatureQuery {
  std::vector<Rat> a;
};

struct Signature {
  int pos = 0;
  int neg = 0;
};

// pos = -1 + sum {a_i}, neg = -1 + sum {-a_i}; pos + neg = n.
Signature signature_formula(const SignatureQuery &q);

// Complex floating-point context for the numeric oracle.
struct Cplx {
  using elem = std::complex<double>;
  static constexpr bool is_field = true;
  double tol = 1e-9;

  elem zero() const { return {0.0, 0.0}; }
  elem one() const { return {1.0, 0.0}; }
  bool is_zero(elem a) const { return std::abs(a) <= tol; }
  bool is_unit(elem a) const { return !is_zero(a); }
  elem add(elem a, elem b) const { return a + b; }
  elem sub(elem a, elem b) const { return a - b; }
  elem neg(elem a) const { return -a; }
  elem mul(elem a, elem b) const { return a * b; }
  elem inv(elem a) const {
    if (is_zero(a)) fail(errc::singular, "division by (numerically) zero");
    return 1.0 / a;
  }
  elem div(elem a, elem b) const { return mul(a, inv(b)); }
  elem from_int(int64_t v) const { return {(double)v, 0.0}; }
};

// Eigenvalues (ascending) and optionally an orthonormal eigenbasis of a
// Hermitian matrix, by cyclic complex Jacobi rotations.
std::vector<double> hermitian_eigen(const Cplx &C, Mat<Cplx> H, Mat<Cplx> *vecs = nullptr);

// Builds the tuple over complex floats with the same ansatz, extracts the
// invariant form from the nullspace of the stacked system, Hermitianizes it
// and counts eigenvalue signs.  The sign of the form itself is a convention
// (both H and -H are invariant), so callers compare {pos,neg} as an
// unordered pair against the formula.  Throws IllConditioned when the
// nullspace is not numerically one-dimensional or an eigenvalue sits within
// tol of zero.
Signature signature_numeric(const SignatureQuery &q, double tol = 1e-8);

} // namespace jpmono

#endif
