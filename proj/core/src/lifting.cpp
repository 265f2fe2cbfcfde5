#include "jpmono/lifting.hpp"

#include <algorithm>

namespace jpmono {

LiftParams lift_params(const DualFq &D, const SymbolicParams &sp,
                       const ResidueData &rd, int which) {
  ReducedDualParams r = reduce_params_dual(D, sp, rd, which);
  if (r.any_degenerate)
    fail(errc::degenerate_params, "a parameter reduces to 1 in the dual ring");
  LiftParams lp;
  lp.par = r.par;
  lp.nu.assign(r.nu.begin(), r.nu.end());
  return lp;
}

const char *origin_name(LieOrigin o) {
  switch (o) {
  case LieOrigin::UnipotentPart: return "UnipotentPart";
  case LieOrigin::CharTwoSquare: return "CharTwoSquare";
  case LieOrigin::TripleWord: return "TripleWord";
  case LieOrigin::PairWord: return "PairWord";
  case LieOrigin::ConjugationWord: return "ConjugationWord";
  }
  return "?";
}

const char *target_name(LieTarget t) {
  switch (t) {
  case LieTarget::SL: return "sl";
  case LieTarget::SU: return "su";
  case LieTarget::SpGraded: return "sp-graded";
  }
  return "?";
}

Mat<Fq> mat_base(const Mat<DualFq> &A) {
  Mat<Fq> B(A.n, A.m);
  for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = DualFq::base(A.a[i]);
  return B;
}

Mat<Fq> mat_eps(const Mat<DualFq> &A) {
  Mat<Fq> B(A.n, A.m);
  for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = DualFq::epspart(A.a[i]);
  return B;
}

namespace {

std::optional<LieElement> accept(const DualFq &D, const Mat<DualFq> &W,
                                 std::string word, LieOrigin org) {
  const Fq &K = *D.F;
  if (!mat_is_identity(K, mat_base(W))) return std::nullopt;
  Mat<Fq> B = mat_eps(W);
  if (mat_scalar_of(K, B).has_value()) return std::nullopt;
  return LieElement{std::move(B), std::move(word), org};
}

} // namespace

std::optional<LieElement> lie_detect(const DualFq &D, const LiftParams &lp,
                                     const JPTuple<DualFq> &t,
                                     const JPOptions &opt) {
  const Fq &K = *D.F;
  uint32_t p = K.p;
  int n = t.n();
  auto bar = [&](int i) { // lambda_0 bar for i = 0, else lambda_i bar
    return DualFq::base(i == 0 ? lp.par.lambda0 : lp.par.lambdas[i - 1]);
  };
  fel one = K.one();

  // (a) unipotent part of a single generator
  for (int i = 1; i <= n + 1; ++i) {
    if (K.is_zero(K.sub(K.mul(bar(0), bar(i)), one))) continue;
    if ((lp.nu[0] + lp.nu[i]) % p == 0) continue;
    JordanParts<DualFq> jp = jordan_parts(D, p, t.gens[i - 1]);
    auto r = accept(D, jp.u, "(g" + std::to_string(i) + ")_u",
                    LieOrigin::UnipotentPart);
    if (r) return r;
  }

  // (b) squares of transvection-like generators in characteristic 2
  if (p == 2) {
    for (int i = 1; i <= n + 1; ++i) {
      if (!K.is_zero(K.sub(K.mul(bar(0), bar(i)), one))) continue;
      if ((lp.nu[0] + lp.nu[i]) % 2 == 0) continue;
      Mat<DualFq> W = mat_mul(D, t.gens[i - 1], t.gens[i - 1]);
      auto r = accept(D, W, "(g" + std::to_string(i) + ")^2",
                      LieOrigin::CharTwoSquare);
      if (r) return r;
    }
  }

  // (c) totally ramified all-(-1) words with K = (1-p)/2
  fel m1 = K.neg(one);
  bool allm1 = p != 2;
  for (int i = 0; allm1 && i <= n + 1; ++i)
    allm1 = K.is_zero(K.sub(bar(i), m1));
  if (allm1) {
    uint64_t e = (p - 1) / 2;
    std::vector<Mat<DualFq>> gam;
    for (auto &g : t.gens) gam.push_back(mat_pow(D, mat_inverse(D, g), e));
    auto wname = [&](int i, int j, int pw) {
      return "(g" + std::to_string(i) + "^K g" + std::to_string(j) +
             (pw == 4 ? "^K g" + std::to_string(i) + "^K)^4" : "^K)^6");
    };
    for (int i = 1; i <= n + 1; ++i)
      for (int j = i + 1; j <= n + 1; ++j) {
        if (lp.nu[i] == lp.nu[j]) continue;
        Mat<DualFq> W = mat_mul(D, mat_mul(D, gam[i - 1], gam[j - 1]), gam[i - 1]);
        W = mat_pow(D, W, 4);
        auto r = accept(D, W, wname(i, j, 4), LieOrigin::TripleWord);
        if (r) return r;
      }
    if (p > 3)
      for (int i = 1; i <= n + 1; ++i)
        for (int j = i + 1; j <= n + 1; ++j) {
          if ((2 * lp.nu[0] + lp.nu[i] + lp.nu[j]) % p == 0) continue;
          Mat<DualFq> W = mat_pow(D, mat_mul(D, gam[i - 1], gam[j - 1]), 6);
          auto r = accept(D, W, wname(i, j, 6), LieOrigin::PairWord);
          if (r) return r;
        }
  }

  // (d) budgeted search for h with h gbar_i h^-1 = gbar_i^-1
  Rng rng(opt.seed ^ 0xa0761d6478bd642fULL);
  std::vector<Mat<Fq>> barg, barg_inv;
  for (auto &g : t.gens) {
    barg.push_back(mat_base(g));
    barg_inv.push_back(mat_inverse(K, barg.back()));
  }
  for (int trial = 0; trial < 200; ++trial) {
    int len = 2 + (int)rng.below(6);
    std::string hw;
    Mat<DualFq> h = mat_identity(D, n);
    for (int s = 0; s < len; ++s) {
      int gi = (int)rng.below(t.gens.size());
      h = mat_mul(D, h, t.gens[gi]);
      hw += "g" + std::to_string(gi + 1);
    }
    Mat<Fq> hb = mat_base(h);
    if (mat_scalar_of(K, hb).has_value()) continue;
    Mat<Fq> hbi = mat_inverse(K, hb);
    for (int i = 1; i <= n + 1; ++i) {
      Mat<Fq> c = mat_mul(K, mat_mul(K, hb, barg[i - 1]), hbi);
      if (!mat_equal(K, c, barg_inv[i - 1])) continue;
      Mat<DualFq> W = mat_mul(D, mat_mul(D, mat_mul(D, h, t.gens[i - 1]),
                                         mat_inverse(D, h)),
                              t.gens[i - 1]);
      auto r = accept(D, W,
                      "(h g" + std::to_string(i) + " h^-1) g" +
                          std::to_string(i) + ", h=" + hw,
                      LieOrigin::ConjugationWord);
      if (r) return r;
    }
  }
  return std::nullopt;
}

namespace {

std::vector<fel> vectorize(const Fq &K, const Mat<Fq> &M) {
  std::vector<fel> v(M.a.size() * K.k);
  for (size_t i = 0; i < M.a.size(); ++i)
    for (uint32_t d = 0; d < K.k; ++d) v[i * K.k + d] = K.coeff_get(M.a[i], d);
  return v;
}

// x^d * E_ij over F_q as a matrix
Mat<Fq> unit_mat(const Fq &K, int n, int i, int j, uint32_t d) {
  Mat<Fq> M(n, n);
  M.at(i, j) = K.pow((fel)K.p, d);
  if (K.k == 1) M.at(i, j) = K.one(); // d is always 0 in the prime field
  return M;
}

} // namespace

SpanReport span_full(const Fq &K, const Mat<Fq> &B,
                     const std::vector<Mat<Fq>> &gens, LieTarget target,
                     const Mat<Fq> *form) {
  if (mat_scalar_of(K, B).has_value())
    fail(errc::bad_input, "span seed must be nonscalar");
  int n = B.n;
  Fq Fp(K.p);
  SiftBasis<Fq> W(Fp, n * n * (int)K.k);

  std::vector<Mat<Fq>> queue;
  queue.push_back(B);
  queue.push_back(mat_identity(K, n));
  for (uint32_t d = 1; d < K.k; ++d)
    queue.push_back(mat_scalar(K, n, K.pow((fel)K.p, d)));
  std::vector<Mat<Fq>> ginv;
  for (auto &g : gens) ginv.push_back(mat_inverse(K, g));
  for (size_t idx = 0; idx < queue.size(); ++idx) {
    Mat<Fq> M = queue[idx];
    if (!W.add(vectorize(K, M))) continue;
    for (size_t gi = 0; gi < gens.size(); ++gi)
      queue.push_back(mat_mul(K, mat_mul(K, gens[gi], M), ginv[gi]));
  }

  std::vector<Mat<Fq>> tbasis;
  switch (target) {
  case LieTarget::SL: {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (uint32_t d = 0; d < K.k; ++d) tbasis.push_back(unit_mat(K, n, i, j, d));
      }
    for (int i = 1; i < n; ++i)
      for (uint32_t d = 0; d < K.k; ++d)
        tbasis.push_back(mat_sub(K, unit_mat(K, n, i, i, d), unit_mat(K, n, 0, 0, d)));
    break;
  }
  case LieTarget::SU: {
    if (K.k % 2 != 0 || form == nullptr)
      fail(errc::bad_target, "su target needs a quadratic residue field and a form");
    const Mat<Fq> &H = *form;
    uint32_t half = K.k / 2;
    auto sigmat = [&](const Mat<Fq> &M) { // sigma(M)^T
      Mat<Fq> R(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          fel x = M.at(j, i);
          for (uint32_t s = 0; s < half; ++s) x = K.frob(x);
          R.at(i, j) = x;
        }
      return R;
    };
    // F_p-linear system: A*H - H*sigma(A)^T = 0 and tr A = 0.  The sign is
    // the odd one: the involution negates the dual parameter, so degree-one
    // elements twist the anti-Hermitian condition by a trace-zero scalar.
    int cols = n * n * (int)K.k;
    Mat<Fq> sys(cols + (int)K.k, cols);
    int col = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (uint32_t d = 0; d < K.k; ++d, ++col) {
          Mat<Fq> U = unit_mat(K, n, i, j, d);
          Mat<Fq> C = mat_sub(K, mat_mul(K, U, H), mat_mul(K, H, sigmat(U)));
          std::vector<fel> vc = vectorize(K, C);
          for (int r = 0; r < cols; ++r) sys.at(r, col) = vc[r];
          fel tr = mat_trace(K, U);
          for (uint32_t r = 0; r < K.k; ++r) sys.at(cols + (int)r, col) = K.coeff_get(tr, r);
        }
    auto ker = kernel_basis(Fp, sys);
    for (auto &v : ker) {
      Mat<Fq> M(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          fel x = 0;
          for (uint32_t d = 0; d < K.k; ++d)
            x = K.add(x, K.mul(v[(size_t)(i * n + j) * K.k + d], K.pow((fel)K.p, d)));
          M.at(i, j) = x;
        }
      tbasis.push_back(M);
    }
    break;
  }
  case LieTarget::SpGraded: {
    if (n % 2 != 0 || form == nullptr)
      fail(errc::bad_target, "sp-graded target needs even n and an alternating form");
    // B*J alternating: the odd piece of gl under the form, scalars included
    Mat<Fq> Jinv = mat_inverse(K, *form);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (uint32_t d = 0; d < K.k; ++d)
          tbasis.push_back(mat_mul(
              K, mat_sub(K, unit_mat(K, n, i, j, d), unit_mat(K, n, j, i, d)), Jinv));
    break;
  }
  }

  SpanReport rep;
  rep.dim_span = W.dim();
  rep.dim_target = (int)tbasis.size();
  SiftBasis<Fq> probe = W;
  rep.full = true;
  for (auto &M : tbasis)
    if (probe.add(vectorize(K, M))) rep.full = false;
  return rep;
}

LiftReport lift_run(const DualFq &D, const LiftParams &lp, const JPOptions &opt) {
  const Fq &K = *D.F;
  JPTuple<DualFq> t = jp_construct(D, lp.par, opt);
  LiftReport rep;
  auto det = lie_detect(D, lp, t, opt);
  if (!det) return rep;
  rep.found = true;
  rep.elem = *det;

  JPTuple<Fq> tb;
  tb.params.lambda0 = DualFq::base(lp.par.lambda0);
  for (auto l : lp.par.lambdas) tb.params.lambdas.push_back(DualFq::base(l));
  for (auto &g : t.gens) tb.gens.push_back(mat_base(g));

  fel m1 = K.neg(K.one());
  bool allm1 = K.is_zero(K.sub(tb.params.lambda0, m1));
  for (auto l : tb.params.lambdas) allm1 = allm1 && K.is_zero(K.sub(l, m1));

  std::optional<FormMatrix> fm;
  rep.target = LieTarget::SL;
  if (allm1 && t.n() % 2 == 0) {
    try {
      FormMatrix f = invariant_form(K, tb, InvolKind::Identity);
      if (f.nondegenerate && f.sign < 0) {
        fm = f;
        rep.target = LieTarget::SpGraded;
      }
    } catch (const Error &e) {
      if (e.code != errc::no_form && e.code != errc::non_unique) throw;
    }
  } else if (K.k % 2 == 0) {
    try {
      FormMatrix f = invariant_form(K, tb, InvolKind::FrobeniusHalf);
      if (f.nondegenerate) {
        fm = f;
        rep.target = LieTarget::SU;
      }
    } catch (const Error &e) {
      if (e.code != errc::no_form && e.code != errc::non_unique) throw;
    }
  }

  SpanReport sr = span_full(K, rep.elem.B, tb.gens, rep.target,
                            fm ? &fm->A : nullptr);
  rep.full = sr.full;
  rep.dim_span = sr.dim_span;
  rep.dim_target = sr.dim_target;
  return rep;
}

SplitReport sl2_w2_split_test(uint32_t k) {
  if (k != 1 && k != 2) fail(errc::bad_input, "k must be 1 or 2");
  W2k R(k);
  uint32_t q = 1u << k;
  auto lift_mat = [&](fel a, fel b, fel c, fel d) {
    Mat<W2k> M(2, 2);
    M.at(0, 0) = R.lift(a);
    M.at(0, 1) = R.lift(b);
    M.at(1, 0) = R.lift(c);
    M.at(1, 1) = R.lift(d);
    return M;
  };
  W2k::elem two = R.from_int(2);
  auto order2_lifts = [&](const Mat<W2k> &L) {
    std::vector<Mat<W2k>> out;
    for (uint32_t a = 0; a < q; ++a)
      for (uint32_t b = 0; b < q; ++b)
        for (uint32_t c = 0; c < q; ++c)
          for (uint32_t d = 0; d < q; ++d) {
            Mat<W2k> A = L;
            A.at(0, 0) = R.add(A.at(0, 0), R.mul(two, R.lift((fel)a)));
            A.at(0, 1) = R.add(A.at(0, 1), R.mul(two, R.lift((fel)b)));
            A.at(1, 0) = R.add(A.at(1, 0), R.mul(two, R.lift((fel)c)));
            A.at(1, 1) = R.add(A.at(1, 1), R.mul(two, R.lift((fel)d)));
            if (mat_is_identity(R, mat_mul(R, A, A))) out.push_back(A);
          }
    return out;
  };

  SplitReport rep;
  rep.witness_commutator = mat_identity(R, 2);
  if (k == 1) {
    auto O = order2_lifts(lift_mat(1, 1, 0, 1));
    rep.order2_exists = !O.empty();
    rep.splits = rep.order2_exists; // a single generator commutes with itself
    return rep;
  }
  auto O1 = order2_lifts(lift_mat(1, 1, 0, 1));
  auto O2 = order2_lifts(lift_mat(1, 2, 0, 1)); // omega packs to 2 in F_4
  rep.order2_exists = !O1.empty() && !O2.empty();
  bool witness_set = false;
  for (auto &A : O1)
    for (auto &B : O2) {
      Mat<W2k> ab = mat_mul(R, A, B);
      Mat<W2k> ba = mat_mul(R, B, A);
      if (mat_equal(R, ab, ba)) {
        rep.splits = true;
        return rep;
      }
      if (!witness_set) {
        rep.witness_commutator = mat_mul(R, ab, ab);
        std::string s = "[[";
        s += R.str(rep.witness_commutator.at(0, 0)) + ", " +
             R.str(rep.witness_commutator.at(0, 1)) + "],[" +
             R.str(rep.witness_commutator.at(1, 0)) + ", " +
             R.str(rep.witness_commutator.at(1, 1)) + "]]";
        rep.witness = s;
        witness_set = true;
      }
    }
  return rep;
}

} // namespace jpmono
