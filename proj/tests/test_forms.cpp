#include "doctest.h"

#include "jpmono/forms.hpp"
#include "jpmono/cyclo.hpp"

#include <cmath>

using namespace jpmono;

TEST_CASE("anti-invariant tuples carry an alternating form") {
  Fq K(7, 1);
  Params<Fq> par;
  par.lambda0 = K.from_int(-1);
  par.lambdas = {K.from_int(-1), K.from_int(-1), K.from_int(-1)};
  auto t = jp_construct(K, par);
  auto fm = invariant_form(K, t, InvolKind::Identity);
  CHECK(fm.sign == -1);
  CHECK(fm.nondegenerate);
  CHECK(fm.invol == InvolKind::Identity);
  for (int i = 0; i < 2; ++i) {
    CHECK(K.is_zero(fm.A.at(i, i)));
    for (int j = 0; j < 2; ++j) CHECK(fm.A.at(i, j) == K.neg(fm.A.at(j, i)));
  }
  for (auto &g : t.gens)
    CHECK(mat_equal(K, mat_mul(K, g, mat_mul(K, fm.A, mat_transpose(K, g))), fm.A));
}

static Mat<Fq> conj_transpose(const Fq &K, const Mat<Fq> &A) {
  Mat<Fq> B = mat_transpose(K, A);
  for (auto &x : B.a) x = K.frob_half(x);
  return B;
}

TEST_CASE("norm-one parameters over F_9 carry an anti-Hermitian form") {
  Fq K(3, 2);
  fel i4 = root_of_unity(K, 4);
  Params<Fq> par;
  par.lambda0 = i4;
  par.lambdas = {i4, i4, K.pow(i4, 2), K.pow(i4, 3)};
  auto t = jp_construct(K, par);
  REQUIRE(jp_verify(K, t).all_ok());

  auto fm = invariant_form(K, t, InvolKind::FrobeniusHalf);
  CHECK(fm.sign == -1);
  CHECK(fm.nondegenerate);
  CHECK(mat_equal(K, conj_transpose(K, fm.A), mat_scale(K, K.from_int(-1), fm.A)));
  for (auto &g : t.gens)
    CHECK(mat_equal(K, mat_mul(K, g, mat_mul(K, fm.A, conj_transpose(K, g))), fm.A));

  // the same tuple has no bilinear invariant form: the parameters are not
  // closed under inversion
  try {
    invariant_form(K, t, InvolKind::Identity);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.code == errc::no_form);
  }
}

TEST_CASE("split primes pair the two embeddings") {
  SymbolicParams sp{5, 1, {1, 1, 1, 1}};
  auto rd = split_prime(5, 11)[0];
  Fq K = residue_field(rd);
  auto t1 = jp_construct(K, reduce_params(K, sp, rd, 0).par, {1});
  auto t2 = jp_construct(K, reduce_params(K, sp, rd, 1).par, {1});
  auto fm = pair_form(K, t1, t2);
  CHECK(fm.sign == -1);
  CHECK(fm.nondegenerate);
  for (size_t i = 0; i < t1.gens.size(); ++i)
    CHECK(mat_equal(K, mat_mul(K, t1.gens[i], mat_mul(K, fm.A, mat_transpose(K, t2.gens[i]))), fm.A));
}

static SignatureQuery q_of(std::vector<Rat> a) { return SignatureQuery{std::move(a)}; }

TEST_CASE("signature formula pins") {
  auto s = signature_formula(q_of({{1, 2}, {1, 2}, {1, 2}, {1, 2}}));
  CHECK(s.pos == 1);
  CHECK(s.neg == 1);

  s = signature_formula(q_of({{1, 3}, {1, 3}, {1, 3}, {1, 3}, {1, 3}, {1, 3}}));
  CHECK(s.pos == 1);
  CHECK(s.neg == 3);

  s = signature_formula(q_of({{1, 5}, {1, 5}, {1, 5}, {1, 5}, {1, 5}}));
  CHECK(s.pos == 0);
  CHECK(s.neg == 3);

  s = signature_formula(q_of({{1, 5}, {2, 5}, {3, 5}, {4, 5}, {1, 5}, {4, 5}}));
  CHECK(s.pos == 2);
  CHECK(s.neg == 2);
}

TEST_CASE("signature query validation") {
  auto code = [](const SignatureQuery &q) {
    try {
      signature_formula(q);
    } catch (const Error &e) {
      return e.code;
    }
    return errc::no_solution;
  };
  CHECK(code(q_of({{1, 2}, {1, 2}})) == errc::bad_input);
  CHECK(code(q_of({{0, 2}, {1, 2}, {1, 2}})) == errc::bad_input);
  CHECK(code(q_of({{3, 2}, {1, 2}, {1, 2}})) == errc::bad_input);
  CHECK(code(q_of({{1, 2}, {1, 2}, {1, 2}})) == errc::non_integral);
}

TEST_CASE("numeric signatures agree with the formula as unordered pairs") {
  std::vector<std::vector<Rat>> queries = {
      {{1, 2}, {1, 2}, {1, 2}, {1, 2}},
      {{1, 3}, {1, 3}, {1, 3}, {1, 3}, {1, 3}, {1, 3}},
      {{1, 5}, {1, 5}, {1, 5}, {1, 5}, {1, 5}},
      {{1, 5}, {2, 5}, {3, 5}, {4, 5}, {1, 5}, {4, 5}},
      {{1, 3}, {2, 3}, {1, 3}, {2, 3}},
      {{1, 7}, {2, 7}, {4, 7}, {3, 7}, {4, 7}},
      {{5, 12}, {7, 12}, {1, 12}, {11, 12}},
  };
  for (auto &a : queries) {
    auto q = q_of(a);
    auto f = signature_formula(q);
    auto m = signature_numeric(q);
    int n = (int)a.size() - 2;
    CHECK(f.pos + f.neg == n);
    CHECK(m.pos + m.neg == n);
    bool same = (m.pos == f.pos && m.neg == f.neg) || (m.pos == f.neg && m.neg == f.pos);
    CHECK(same);
  }
}

TEST_CASE("hermitian eigenvalues by jacobi rotations") {
  Cplx C;
  Mat<Cplx> H(2, 2);
  H.at(0, 0) = {2.0, 0.0};
  H.at(0, 1) = {0.0, 1.0};
  H.at(1, 0) = {0.0, -1.0};
  H.at(1, 1) = {2.0, 0.0};
  auto ev = hermitian_eigen(C, H);
  REQUIRE(ev.size() == 2);
  CHECK(std::abs(ev[0] - 1.0) < 1e-9);
  CHECK(std::abs(ev[1] - 3.0) < 1e-9);
}
