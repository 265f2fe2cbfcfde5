#include "doctest.h"

#include "jpmono/grpengine.hpp"
#include "jpmono/cyclo.hpp"

using namespace jpmono;

static Mat<Fq> mat2(const Fq &K, int64_t a, int64_t b, int64_t c, int64_t d) {
  Mat<Fq> M(2, 2);
  M.at(0, 0) = K.from_int(a);
  M.at(0, 1) = K.from_int(b);
  M.at(1, 0) = K.from_int(c);
  M.at(1, 1) = K.from_int(d);
  return M;
}

TEST_CASE("schreier-sims on small matrix groups") {
  Fq K(5, 1);
  auto B0 = bsgs_build(K, {mat_identity(K, 2)});
  CHECK(B0.order().str() == "1");
  CHECK(B0.member(mat_identity(K, 2)));

  auto T = mat2(K, 1, 1, 0, 1), U = mat2(K, 1, 0, 1, 1);
  auto B = bsgs_build(K, {T, U});
  CHECK(B.order().as_u64() == 120);
  CHECK(B.member(mat2(K, 2, 0, 0, 3)));
  CHECK(B.member(mat_mul(K, T, mat_mul(K, U, T))));
  CHECK(!B.member(mat2(K, 2, 0, 0, 1)));

  // the classical integral triple generates the same SL_2(F_5)
  auto g1 = mat2(K, 1, 2, 0, 1), g2 = mat2(K, 1, 0, -2, 1), g3 = mat2(K, -1, 2, -2, 3);
  auto B2 = bsgs_build(K, {g1, g2, g3});
  CHECK(B2.order().as_u64() == 120);

  // seeds change the run, not the answer
  BsgsConfig cfg;
  cfg.seed = 99;
  CHECK(bsgs_build(K, {T, U}, cfg).order().as_u64() == 120);

  // strong generators reproduce the group
  CHECK(bsgs_build(K, B.strong_gens()).order().as_u64() == 120);
}

TEST_CASE("block sums multiply orders") {
  Fq K(5, 1);
  auto T = mat2(K, 1, 1, 0, 1), U = mat2(K, 1, 0, 1, 1);
  auto block = [&](const Mat<Fq> &A, const Mat<Fq> &B) {
    Mat<Fq> M = mat_identity(K, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        M.at(i, j) = A.at(i, j);
        M.at(i + 2, j + 2) = B.at(i, j);
      }
    return M;
  };
  auto I = mat_identity(K, 2);
  auto B = bsgs_build(K, {block(T, I), block(U, I), block(I, T), block(I, U)});
  CHECK(B.order().as_u64() == 14400);
  CHECK(B.member(block(T, U)));
}

TEST_CASE("classical order formulas") {
  CHECK(classical_order(GroupFamily::Sp, 2, 3).as_u64() == 24);
  CHECK(classical_order(GroupFamily::Sp, 4, 3).as_u64() == 51840);
  CHECK(classical_order(GroupFamily::SU, 3, 2).as_u64() == 216);
  CHECK(classical_order(GroupFamily::GU, 3, 2).as_u64() == 648);
  CHECK(classical_order(GroupFamily::GU, 3, 5).as_u64() == 2268000);
  CHECK(classical_order(GroupFamily::SL, 3, 11).as_u64() == 212427600);
  CHECK(classical_order(GroupFamily::SL, 4, 8).as_u64() == 34558531338240);
  CHECK(classical_order(GroupFamily::GU, 5, 3).str() == "1032762286080");
  CHECK(classical_order(GroupFamily::GL, 2, 5).as_u64() == 480);
  // |GU| = (q0 + 1) |SU|, |GL| = (q - 1) |SL|
  auto su = classical_order(GroupFamily::SU, 5, 3);
  su.mul_u64(4);
  CHECK(su == classical_order(GroupFamily::GU, 5, 3));
  CHECK_THROWS_AS(classical_order(GroupFamily::Sp, 3, 5), Error);
}

TEST_CASE("exception registry lookups") {
  CHECK(exception_lookup({6, 2, {1, 1, 1, 1}}) == "3^{1+2}.2");
  CHECK(exception_lookup({6, 1, {1, 1, 1, 2}}) == "ST26");
  CHECK(exception_lookup({6, 1, {2, 1, 1, 1}}) == "ST26"); // permutation
  CHECK(exception_lookup({6, 1, {1, 1, 1, 1, 1}}) == "ST32");
  CHECK(exception_lookup({6, 5, {5, 5, 5, 5, 5}}) == "ST32"); // Galois twist
  CHECK(exception_lookup({6, 1, {1, 1, 2, 2}}) == "");
  CHECK(exception_lookup({5, 1, {1, 1, 1, 1}}) == "");
  CHECK(exception_registry().size() >= 3);
}

static ClassificationResult classify_symbolic(const SymbolicParams &sp, uint32_t p) {
  auto rd = split_prime(sp.N, p)[0];
  Fq K = residue_field(rd);
  auto red = reduce_params(K, sp, rd, 0);
  auto t = jp_construct(K, red.par);
  return classify(K, t, sp, rd);
}

TEST_CASE("anti-invariant tuples close onto the full symplectic group") {
  SymbolicParams sp2{2, 1, {1, 1, 1}};
  auto r = classify_symbolic(sp2, 3);
  CHECK(r.verdict == GroupVerdict::Symplectic);
  CHECK(r.evidence.group_order.as_u64() == 24);
  CHECK(r.evidence.form_kind == "alternating");

  r = classify_symbolic(sp2, 5);
  CHECK(r.verdict == GroupVerdict::Symplectic);
  CHECK(r.evidence.group_order.as_u64() == 120);

  SymbolicParams sp4{2, 1, {1, 1, 1, 1, 1}};
  r = classify_symbolic(sp4, 3);
  CHECK(r.verdict == GroupVerdict::Symplectic);
  CHECK(r.evidence.group_order.as_u64() == 51840);
  CHECK(r.evidence.group_order == r.evidence.classical_order);
}

TEST_CASE("registry parameters reduce to the finite exceptions") {
  struct Row {
    SymbolicParams sp;
    const char *name;
    uint64_t order;
  };
  std::vector<Row> rows = {
      {{6, 2, {1, 1, 1, 1}}, "3^{1+2}.2", 54},
      {{6, 1, {1, 1, 1, 2}}, "ST26", 1296},
      {{6, 1, {1, 1, 1, 1, 1}}, "ST32", 155520},
  };
  for (auto &row : rows) {
    auto r7 = classify_symbolic(row.sp, 7);
    CHECK(r7.verdict == GroupVerdict::ComplexReflectionFinite);
    CHECK(r7.evidence.exception_hit == row.name);
    CHECK(r7.evidence.group_order.as_u64() == row.order);
    auto r13 = classify_symbolic(row.sp, 13);
    CHECK(r13.verdict == GroupVerdict::ComplexReflectionFinite);
    CHECK(r13.evidence.group_order == r7.evidence.group_order);
  }
}

TEST_CASE("generic parameters fill the linear range") {
  SymbolicParams sp{7, 1, {1, 1, 1, 1, 2}};
  auto r = classify_symbolic(sp, 2);
  CHECK(r.verdict == GroupVerdict::LinearRange);
  CHECK(r.evidence.det_image_order == 7);
  CHECK(r.evidence.form_kind == "none");
  auto expect = classical_order(GroupFamily::SL, 4, 8);
  expect.mul_u64(7);
  CHECK(r.evidence.group_order == expect);
}

TEST_CASE("pairwise image at one embedding is a graph") {
  SymbolicParams sp{5, 1, {1, 1, 1, 1}};
  auto prs = split_prime(5, 11);
  Fq K = residue_field(prs[0]);
  auto rep = pairwise_test(K, sp, prs[0], 0, prs[0], 0);
  CHECK(rep.verdict == PairVerdict::Graph);
  CHECK(rep.certificate_graph);
}

TEST_CASE("pairwise image at two split primes is the full product") {
  SymbolicParams sp{5, 1, {1, 1, 1, 1}};
  auto prs = split_prime(5, 11);
  REQUIRE(prs.size() == 2);
  Fq K = residue_field(prs[0]);
  auto rep = pairwise_test(K, sp, prs[0], 0, prs[1], 0);
  CHECK(rep.verdict == PairVerdict::Surjective);
  CHECK(!rep.certificate_graph);
  CHECK(rep.order1 == rep.order2);
  CHECK(rep.joint_order == rep.expected);
  CHECK(rep.joint_order.str() == "225627426208800000");
  CHECK(rep.det_pair_order == 5);
}
