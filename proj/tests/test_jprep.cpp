#include "doctest.h"

#include "jpmono/jprep.hpp"

using namespace jpmono;

static Params<Fq> all_minus_one(const Fq &K, int n) {
  Params<Fq> par;
  par.lambda0 = K.from_int(-1);
  par.lambdas.assign(n + 1, K.from_int(-1));
  return par;
}

TEST_CASE("construct and verify over a range of fields and ranks") {
  for (auto [p, k] : {std::pair<uint32_t, uint32_t>{5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
    Fq K(p, k);
    for (int n = 1; n <= 5; ++n) {
      for (uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed * 977 + n);
        auto par = random_valid_params(K, n, rng);
        if (!par) continue;
        auto t = jp_construct(K, *par, {seed});
        REQUIRE(t.n() == n);
        auto rep = jp_verify(K, t, seed);
        CHECK(rep.all_ok());
        CHECK(rep.params_valid);
        IrrVerdict iv = rep.irreducible;
        for (uint64_t extra = 1; iv == IrrVerdict::Inconclusive && extra <= 3; ++extra)
          iv = meataxe_irreducible(K, t.gens, seed + 977 * extra);
        CHECK(iv == IrrVerdict::Irreducible);
      }
    }
  }
}

TEST_CASE("anti-invariant parameters give the classical 2x2 triple") {
  Fq K(7, 1);
  auto t = jp_construct(K, all_minus_one(K, 2));
  auto rep = jp_verify(K, t);
  CHECK(rep.all_ok());
  CHECK(rep.params_valid);

  // the standard integral model reduces to the same parameters: the three
  // matrices are pseudo-reflections with det 1 multiplying to -I
  int64_t g1[2][2] = {{1, 2}, {0, 1}};
  int64_t g2[2][2] = {{1, 0}, {-2, 1}};
  int64_t g3[2][2] = {{-1, 2}, {-2, 3}};
  int64_t prod[2][2] = {{0, 0}, {0, 0}};
  int64_t tmp[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      tmp[i][j] = 0;
      for (int l = 0; l < 2; ++l) tmp[i][j] += g1[i][l] * g2[l][j];
    }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) prod[i][j] += tmp[i][l] * g3[l][j];
  CHECK(prod[0][0] == -1);
  CHECK(prod[0][1] == 0);
  CHECK(prod[1][0] == 0);
  CHECK(prod[1][1] == -1);

  JPTuple<Fq> u;
  u.params = all_minus_one(K, 2);
  for (auto *g : {&g1, &g2, &g3}) {
    Mat<Fq> M(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) M.at(i, j) = K.from_int((*g)[i][j]);
    u.gens.push_back(M);
  }
  auto urep = jp_verify(K, u);
  CHECK(urep.all_ok());
  CHECK(urep.params_valid);
  CHECK(urep.irreducible == IrrVerdict::Irreducible);
}

TEST_CASE("subset spectra match the rank prediction for every subset") {
  Fq K(3, 2);
  Rng rng(4);
  auto par = random_valid_params(K, 4, rng);
  REQUIRE(par.has_value());
  auto t = jp_construct(K, *par, {4});
  REQUIRE(jp_verify(K, t).all_ok());
  for (uint32_t mask = 1; mask < 32; ++mask) {
    std::vector<int> S;
    for (int i = 0; i < 5; ++i)
      if (mask & (1u << i)) S.push_back(i + 1);
    auto rep = subset_spectrum(K, t, S);
    CHECK(rep.matches_expected);
    CHECK(rep.scalar == (S.size() == 5));
    CHECK(rep.extra_eigenvalue == [&] {
      fel l = t.params.lambda0;
      for (int i : S) l = K.mul(l, t.params.lambdas[i - 1]);
      return l;
    }());
  }
}

TEST_CASE("subset index validation") {
  Fq K(5, 1);
  auto t = jp_construct(K, all_minus_one(K, 3));
  auto code = [&](const std::vector<int> &S) {
    try {
      subset_spectrum(K, t, S);
    } catch (const Error &e) {
      return e.code;
    }
    return errc::no_solution;
  };
  CHECK(code({}) == errc::bad_input);
  CHECK(code({0, 1}) == errc::bad_input);
  CHECK(code({1, 5}) == errc::bad_input);
  CHECK(code({2, 2}) == errc::bad_input);
  CHECK(code({3, 1}) == errc::bad_input);
}

TEST_CASE("restriction to a subset is again a valid tuple") {
  Fq K(5, 2);
  Rng rng(11);
  auto par = random_valid_params(K, 5, rng);
  REQUIRE(par.has_value());
  auto t = jp_construct(K, *par, {11});
  std::vector<int> S = {1, 3, 5};
  auto r = jp_restrict(K, t, S);
  CHECK(r.n() == 3);
  CHECK(r.params.lambda0 == t.params.lambda0);
  CHECK(r.params.lambdas[0] == t.params.lambdas[0]);
  CHECK(r.params.lambdas[1] == t.params.lambdas[2]);
  CHECK(r.params.lambdas[2] == t.params.lambdas[4]);
  fel lamS = K.mul(t.params.lambdas[0], K.mul(t.params.lambdas[2], t.params.lambdas[4]));
  CHECK(r.params.lambdas[3] == K.inv(K.mul(t.params.lambda0, lamS)));
  CHECK(jp_verify(K, r).all_ok());
}

TEST_CASE("restriction refuses a trivial partial product") {
  Fq K(7, 1);
  Params<Fq> par;
  par.lambda0 = 3;
  par.lambdas = {2, 4, 5}; // lambda_1 lambda_2 = 1
  auto t = jp_construct(K, par);
  REQUIRE(jp_verify(K, t).all_ok());
  try {
    jp_restrict(K, t, {1, 2});
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.code == errc::degenerate_restriction);
  }
  CHECK_THROWS_AS(jp_restrict(K, t, {1, 2, 3}), Error); // |S| > n
}

TEST_CASE("braid action preserves verification and the braid relation") {
  Fq K(7, 1);
  Rng rng(3);
  auto par = random_valid_params(K, 3, rng);
  REQUIRE(par.has_value());
  auto t = jp_construct(K, *par, {3});
  auto t1 = braid_act(K, t, 1);
  CHECK(jp_verify(K, t1).all_ok());
  CHECK(t1.params.lambdas[0] == t.params.lambdas[1]);
  CHECK(t1.params.lambdas[1] == t.params.lambdas[0]);

  auto lhs = braid_act(braid_act(braid_act(t.params, 1), 2), 1);
  auto rhs = braid_act(braid_act(braid_act(t.params, 2), 1), 2);
  CHECK(lhs.lambdas == rhs.lambdas);

  SymbolicParams sp{5, 1, {1, 2, 3, 4}};
  auto sp2 = braid_act(sp, 2);
  CHECK(sp2.e == std::vector<uint32_t>{1, 3, 2, 4});
  CHECK_THROWS_AS(braid_act(sp, 4), Error);
  CHECK_THROWS_AS(braid_act(K, t, 0), Error);
}

TEST_CASE("rigidity: two constructions intertwine in exactly one dimension") {
  Fq K(3, 2);
  Rng rng(21);
  auto par = random_valid_params(K, 4, rng);
  REQUIRE(par.has_value());
  auto a = jp_construct(K, *par, {1});
  auto b = jp_construct(K, *par, {2});
  auto X = intertwiner_space(K, a.gens, b.gens);
  REQUIRE(X.size() == 1);
  CHECK(mat_rank(K, X[0]) == 4);
  // and the intertwiner actually conjugates one tuple into the other
  auto Xi = mat_inverse(K, X[0]);
  for (int i = 0; i < 5; ++i)
    CHECK(mat_equal(K, mat_mul(K, Xi, mat_mul(K, a.gens[i], X[0])), b.gens[i]));
}

TEST_CASE("distinct parameter multisets never intertwine") {
  Fq K(7, 1);
  Params<Fq> p1, p2;
  p1.lambda0 = 3;
  p1.lambdas = {2, 4, 5};
  p2.lambda0 = 3;
  p2.lambdas = {2, 2, 3}; // 3*2*2*3 = 36 = 1 mod 7
  auto a = jp_construct(K, p1);
  auto b = jp_construct(K, p2);
  CHECK(intertwiner_space(K, a.gens, b.gens).empty());
}

TEST_CASE("construction over the dual numbers") {
  Fq F(3, 1);
  DualFq D(F);
  Params<DualFq> par;
  fel base = 2;
  std::vector<fel> nu = {1, 2, 1, 2, 0, 0}; // sums to 0 mod 3
  par.lambda0 = DualFq::make(base, F.mul(base, nu[0]));
  for (int i = 1; i < 6; ++i) par.lambdas.push_back(DualFq::make(base, F.mul(base, nu[i])));
  CHECK(params_product_one(D, par));
  auto t = jp_construct(D, par);
  auto rep = jp_verify(D, t);
  CHECK(rep.all_ok());
  CHECK(rep.params_valid);
  CHECK(rep.irreducible == IrrVerdict::NotApplicable);
}

TEST_CASE("degenerate and non-unit parameters are rejected") {
  Fq K(5, 1);
  Params<Fq> par;
  par.lambda0 = 2;
  par.lambdas = {1, 3, 4};
  try {
    jp_construct(K, par);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.code == errc::degenerate_params);
  }
  par.lambdas = {0, 3, 4};
  try {
    jp_construct(K, par);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.code == errc::non_unit);
  }

  JPTuple<Fq> broken;
  broken.params.lambda0 = 2;
  broken.params.lambdas = {2, 2};
  broken.gens = {mat_identity(K, 2)};
  CHECK_THROWS_AS(jp_verify(K, broken), Error);
}

TEST_CASE("verification flags a wrong determinant and a broken product") {
  Fq K(7, 1);
  auto t = jp_construct(K, all_minus_one(K, 2));
  t.gens[1] = mat_mul(K, t.gens[1], mat_scalar(K, 2, K.from_int(2)));
  auto rep = jp_verify(K, t);
  CHECK(!rep.determinants[1]);
  CHECK(!rep.scalar_product);
  CHECK(!rep.all_ok());
}
