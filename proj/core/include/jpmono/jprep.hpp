#ifndef JPMONO_JPREP_HPP
#define JPMONO_JPREP_HPP

#include <optional>

#include "jpmono/cyclo.hpp"
#include "jpmono/matrix.hpp"

namespace jpmono {

// The tuple g_1..g_{n+1} of n x n pseudo-reflections with g_1...g_{n+1} a
// scalar.  gens.size() == params.lambdas.size() == n+1.
template <class R> struct JPTuple {
  Params<R> params;
  std::vector<Mat<R>> gens;
  int n() const { return gens.empty() ? 0 : gens[0].n; }
};

struct JPOptions {
  uint64_t seed = 0;
  int max_retries = 64;
};

enum class IrrVerdict { Irreducible, Reducible, Inconclusive, NotApplicable };
const char *irr_name(IrrVerdict v);

template <class R> bool params_product_one(const R &K, const Params<R> &par) {
  auto p = par.lambda0;
  for (auto &l : par.lambdas) p = K.mul(p, l);
  return K.is_zero(K.sub(p, K.one()));
}

// All lambdas (lambda_0 included) are units different from 1.
template <class R> bool params_valid(const R &K, const Params<R> &par) {
  auto bad = [&](typename R::elem l) { return !K.is_unit(l) || K.is_zero(K.sub(l, K.one())); };
  if (bad(par.lambda0)) return false;
  for (auto &l : par.lambdas)
    if (bad(l)) return false;
  return true;
}

template <class R> typename R::elem random_elem(const R &K, Rng &rng) {
  return K.from_int((int64_t)rng.below(251));
}
inline fel random_elem(const Fq &K, Rng &rng) { return (fel)rng.below(K.q); }

// Random lambdas over F_q, all different from 0 and 1, product 1.
std::optional<Params<Fq>> random_valid_params(const Fq &K, int n, Rng &rng, int tries = 256);

namespace detail {

template <class R> bool has_unit_entry(const R &K, const std::vector<typename R::elem> &v) {
  for (auto &x : v)
    if (K.is_unit(x)) return true;
  return false;
}

} // namespace detail

// Build the tuple for the given parameters.  Scheme: g_j = I + u_j e_j^T for
// j <= n with the u_j solved column by column so that g_1...g_n = lambda_0 I
// + w z^T for a fixed direction w, which leaves g_{n+1} = I - Lambda^{-1} w
// z^T with Lambda = lambda_0 lambda_1...lambda_n.  Any output passing
// jp_verify is THE representation up to conjugacy, so the retry loop over w
// is harmless.
template <class R>
JPTuple<R> jp_construct(const R &K, const Params<R> &par, const JPOptions &opt = {}) {
  int n = par.n();
  if (n < 1) fail(errc::bad_input, "need at least three parameters");
  auto one = K.one();
  auto is_one = [&](typename R::elem x) { return K.is_zero(K.sub(x, one)); };
  if (is_one(par.lambda0)) fail(errc::degenerate_params, "lambda_0 = 1");
  for (int i = 0; i <= n; ++i)
    if (is_one(par.lambdas[i]))
      fail(errc::degenerate_params, "lambda_" + std::to_string(i + 1) + " = 1");
  if (!K.is_unit(par.lambda0)) fail(errc::non_unit, "lambda_0");
  for (auto &l : par.lambdas)
    if (!K.is_unit(l)) fail(errc::non_unit, "parameter");

  JPTuple<R> t;
  t.params = par;
  if (n == 1) {
    Mat<R> g1(1, 1), g2(1, 1);
    auto d = K.mul(par.lambda0, par.lambdas[0]);
    g1.at(0, 0) = d;
    g2.at(0, 0) = K.mul(par.lambda0, K.inv(d));
    t.gens = {g1, g2};
    return t;
  }

  Rng rng(opt.seed);
  for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
    std::vector<typename R::elem> w(n, one);
    if (attempt > 0)
      for (auto &x : w) {
        for (int d = 0; d < 100; ++d) {
          x = K.from_int((int64_t)(1 + rng.below(251)));
          if (K.is_unit(x)) break;
        }
        if (!K.is_unit(x)) x = one;
      }

    Mat<R> M = mat_identity(K, n);
    std::vector<typename R::elem> z(n, K.zero());
    std::vector<Mat<R>> gens;
    auto l0m1 = K.sub(par.lambda0, one);
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      auto d = K.mul(par.lambda0, par.lambdas[j]);
      auto b = mat_vec(K, M, w);
      if (!K.is_unit(b[j])) { ok = false; break; }
      auto zj = K.div(K.sub(K.sub(d, one), K.mul(l0m1, M.at(j, j))), b[j]);
      std::vector<typename R::elem> u(n);
      for (int i = 0; i < n; ++i) u[i] = K.add(K.mul(l0m1, M.at(i, j)), K.mul(zj, b[i]));
      if (!detail::has_unit_entry(K, u)) { ok = false; break; }
      z[j] = zj;
      Mat<R> g = mat_identity(K, n);
      for (int i = 0; i < n; ++i) g.at(i, j) = K.add(g.at(i, j), u[i]);
      gens.push_back(std::move(g));
      auto dinv = K.inv(d);
      std::vector<typename R::elem> rowj(n);
      for (int c = 0; c < n; ++c) rowj[c] = M.at(j, c);
      for (int i = 0; i < n; ++i) {
        auto f = K.mul(u[i], dinv);
        if (K.is_zero(f)) continue;
        for (int c = 0; c < n; ++c) M.at(i, c) = K.sub(M.at(i, c), K.mul(f, rowj[c]));
      }
    }
    if (!ok || !detail::has_unit_entry(K, z)) continue;

    auto Lam = par.lambda0;
    for (int j = 0; j < n; ++j) Lam = K.mul(Lam, par.lambdas[j]);
    auto c = K.neg(K.inv(Lam));
    Mat<R> g = mat_identity(K, n);
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj) g.at(i, jj) = K.add(g.at(i, jj), K.mul(c, K.mul(w[i], z[jj])));
    gens.push_back(std::move(g));
    t.gens = std::move(gens);
    return t;
  }
  fail(errc::no_solution, "no usable direction vector after retries");
}

template <class R>
Mat<R> random_algebra_element(const R &K, const std::vector<Mat<R>> &gens, Rng &rng) {
  int n = gens[0].n;
  Mat<R> Z(n, n);
  int terms = 2 + (int)rng.below(3);
  for (int t = 0; t < terms; ++t) {
    Mat<R> W = gens[rng.below(gens.size())];
    int len = (int)rng.below(3);
    for (int s = 0; s < len; ++s) W = mat_mul(K, W, gens[rng.below(gens.size())]);
    Z = mat_add(K, Z, mat_scale(K, random_elem(K, rng), W));
  }
  return mat_add(K, Z, mat_scalar(K, n, random_elem(K, rng)));
}

template <class R>
int spin_dim(const R &K, const std::vector<Mat<R>> &gens, const std::vector<typename R::elem> &v) {
  int n = (int)v.size();
  SiftBasis<R> B(K, n);
  if (!B.add(v)) return 0;
  std::vector<std::vector<typename R::elem>> queue = {v};
  while (!queue.empty() && B.dim() < n) {
    auto x = std::move(queue.back());
    queue.pop_back();
    for (auto &g : gens) {
      auto y = mat_vec(K, g, x);
      if (B.add(y)) queue.push_back(std::move(y));
      if (B.dim() == n) break;
    }
  }
  return B.dim();
}

// Norton's test with random algebra elements.  A nullity-one element decides
// both ways; otherwise any proper spin proves reducibility.
template <class R>
IrrVerdict meataxe_irreducible(const R &K, const std::vector<Mat<R>> &gens, uint64_t seed = 0) {
  static_assert(R::is_field);
  if (gens.empty()) fail(errc::bad_input, "no generators");
  int n = gens[0].n;
  if (n == 1) return IrrVerdict::Irreducible;
  std::vector<Mat<R>> tgens;
  for (auto &g : gens) tgens.push_back(mat_transpose(K, g));
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x6d78ULL);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<R> theta = random_algebra_element(K, gens, rng);
    auto ker = kernel_basis(K, theta);
    if (ker.empty() || (int)ker.size() == n) continue;
    for (size_t i = 0; i < ker.size() && i < 4; ++i)
      if (spin_dim(K, gens, ker[i]) < n) return IrrVerdict::Reducible;
    if (ker.size() == 1) {
      auto kerT = kernel_basis(K, mat_transpose(K, theta));
      if (spin_dim(K, tgens, kerT[0]) < n) return IrrVerdict::Reducible;
      return IrrVerdict::Irreducible;
    }
  }
  return IrrVerdict::Inconclusive;
}

struct VerifyReport {
  std::vector<bool> pseudoreflections;
  std::vector<bool> determinants;
  bool scalar_product = false;
  bool params_valid = false;
  IrrVerdict irreducible = IrrVerdict::NotApplicable;
  bool all_ok() const {
    for (bool b : pseudoreflections)
      if (!b) return false;
    for (bool b : determinants)
      if (!b) return false;
    return scalar_product;
  }
};

template <class R>
VerifyReport jp_verify(const R &K, const JPTuple<R> &t, uint64_t seed = 0) {
  if (t.gens.size() != t.params.lambdas.size())
    fail(errc::bad_input, "generator/parameter count mismatch");
  VerifyReport rep;
  int n = t.n();
  auto I = mat_identity(K, n);
  Mat<R> P = I;
  for (size_t j = 0; j < t.gens.size(); ++j) {
    const auto &g = t.gens[j];
    auto gm1 = mat_sub(K, g, I);
    rep.pseudoreflections.push_back(mat_rank_le1(K, gm1) && !mat_is_zero(K, gm1));
    auto expect = K.mul(t.params.lambda0, t.params.lambdas[j]);
    rep.determinants.push_back(K.is_zero(K.sub(mat_det(K, g), expect)));
    P = mat_mul(K, P, g);
  }
  rep.scalar_product = mat_equal(K, P, mat_scalar(K, n, t.params.lambda0));
  rep.params_valid = params_valid(K, t.params);
  if constexpr (R::is_field) rep.irreducible = meataxe_irreducible(K, t.gens, seed);
  return rep;
}

template <class R> struct SpectrumReport {
  std::vector<int> S;
  bool scalar = false;
  int dim_ker_1 = 0;
  int dim_ker_lambda0 = 0;
  typename R::elem extra_eigenvalue{};
  bool matches_expected = false;
};

namespace detail {

inline void check_subset(const std::vector<int> &S, int n_plus_1) {
  if (S.empty()) fail(errc::bad_input, "empty index set");
  for (size_t i = 0; i < S.size(); ++i) {
    if (S[i] < 1 || S[i] > n_plus_1) fail(errc::bad_input, "index out of range");
    if (i && S[i] <= S[i - 1]) fail(errc::bad_input, "indices must increase");
  }
}

} // namespace detail

template <class R>
SpectrumReport<R> subset_spectrum(const R &K, const JPTuple<R> &t, const std::vector<int> &S) {
  static_assert(R::is_field);
  int n = t.n();
  detail::check_subset(S, n + 1);
  SpectrumReport<R> rep;
  rep.S = S;
  Mat<R> gS = mat_identity(K, n);
  auto lamS = K.one();
  for (int i : S) {
    gS = mat_mul(K, gS, t.gens[i - 1]);
    lamS = K.mul(lamS, t.params.lambdas[i - 1]);
  }
  auto l0 = t.params.lambda0;
  rep.extra_eigenvalue = K.mul(l0, lamS);
  rep.dim_ker_1 = eigenspace_dim(K, gS, K.one());
  rep.dim_ker_lambda0 = eigenspace_dim(K, gS, l0);
  if ((int)S.size() == n + 1) {
    rep.scalar = true;
    auto sc = mat_scalar_of(K, gS);
    rep.matches_expected = sc && K.is_zero(K.sub(*sc, l0));
    return rep;
  }
  int s = (int)S.size();
  rep.matches_expected = rep.dim_ker_1 == n - s && rep.dim_ker_lambda0 == s - 1;
  bool extra_distinct = !K.is_zero(K.sub(rep.extra_eigenvalue, K.one())) &&
                        !K.is_zero(K.sub(rep.extra_eigenvalue, l0));
  if (rep.matches_expected && extra_distinct)
    rep.matches_expected = eigenspace_dim(K, gS, rep.extra_eigenvalue) >= 1;
  return rep;
}

// Restriction of (g_i : i in S, lambda_0 g_S^{-1}) to im(g_S - 1); parameters
// become (lambda_0; lambda_i : i in S, (lambda_0 lambda_S)^{-1}).
template <class R>
JPTuple<R> jp_restrict(const R &K, const JPTuple<R> &t, const std::vector<int> &S) {
  static_assert(R::is_field);
  int n = t.n();
  detail::check_subset(S, n + 1);
  if ((int)S.size() > n) fail(errc::bad_input, "index set too large");

  Mat<R> gS = mat_identity(K, n);
  auto lamS = K.one();
  for (int i : S) {
    gS = mat_mul(K, gS, t.gens[i - 1]);
    lamS = K.mul(lamS, t.params.lambdas[i - 1]);
  }
  if (K.is_zero(K.sub(lamS, K.one())))
    fail(errc::degenerate_restriction, "lambda_S = 1");

  Mat<R> C = mat_sub(K, gS, mat_identity(K, n));
  Mat<R> Ccopy = C;
  std::vector<int> piv;
  rref_in_place(K, Ccopy, &piv);
  int r = (int)piv.size();
  if (r != (int)S.size()) fail(errc::no_solution, "im(g_S - 1) has unexpected dimension");
  Mat<R> B(n, r);
  for (int c = 0; c < r; ++c)
    for (int i = 0; i < n; ++i) B.at(i, c) = C.at(i, piv[c]);

  auto restrict_one = [&](const Mat<R> &g) {
    Mat<R> GB = mat_mul(K, g, B);
    Mat<R> Y(r, r);
    for (int c = 0; c < r; ++c) {
      std::vector<typename R::elem> col(n);
      for (int i = 0; i < n; ++i) col[i] = GB.at(i, c);
      auto y = solve_linear(K, B, col);
      if (!y) fail(errc::no_solution, "subspace not invariant");
      for (int i = 0; i < r; ++i) Y.at(i, c) = (*y)[i];
    }
    return Y;
  };

  JPTuple<R> out;
  out.params.lambda0 = t.params.lambda0;
  for (int i : S) {
    out.gens.push_back(restrict_one(t.gens[i - 1]));
    out.params.lambdas.push_back(t.params.lambdas[i - 1]);
  }
  Mat<R> extra = mat_scale(K, t.params.lambda0, mat_inverse(K, gS));
  out.gens.push_back(restrict_one(extra));
  out.params.lambdas.push_back(K.inv(K.mul(t.params.lambda0, lamS)));
  return out;
}

inline SymbolicParams braid_act(const SymbolicParams &sp, int i) {
  if (i < 1 || i > sp.n()) fail(errc::bad_input, "braid index out of range");
  SymbolicParams out = sp;
  std::swap(out.e[i - 1], out.e[i]);
  return out;
}

template <class R> Params<R> braid_act(const Params<R> &par, int i) {
  if (i < 1 || i > par.n()) fail(errc::bad_input, "braid index out of range");
  Params<R> out = par;
  std::swap(out.lambdas[i - 1], out.lambdas[i]);
  return out;
}

// sigma_i: (g_i, g_{i+1}) -> (g_{i+1}, g_{i+1}^{-1} g_i g_{i+1})
template <class R> JPTuple<R> braid_act(const R &K, const JPTuple<R> &t, int i) {
  if (i < 1 || i > t.params.n()) fail(errc::bad_input, "braid index out of range");
  JPTuple<R> out = t;
  out.params = braid_act(t.params, i);
  const Mat<R> &gi = t.gens[i - 1], &gj = t.gens[i];
  out.gens[i - 1] = gj;
  out.gens[i] = mat_mul(K, mat_inverse(K, gj), mat_mul(K, gi, gj));
  return out;
}

// Basis of {X : A_k X = X B_k for all k}.
template <class R>
std::vector<Mat<R>> intertwiner_space(const R &K, const std::vector<Mat<R>> &A,
                                      const std::vector<Mat<R>> &B) {
  static_assert(R::is_field);
  if (A.size() != B.size() || A.empty()) fail(errc::bad_input, "generator lists");
  int n = A[0].n, m = B[0].n;
  Mat<R> Sys((int)A.size() * n * m, n * m);
  int row = 0;
  for (size_t k = 0; k < A.size(); ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        for (int c = 0; c < n; ++c)
          Sys.at(row, c * m + j) = K.add(Sys.at(row, c * m + j), A[k].at(i, c));
        for (int l = 0; l < m; ++l)
          Sys.at(row, i * m + l) = K.sub(Sys.at(row, i * m + l), B[k].at(l, j));
        ++row;
      }
  }
  auto ker = kernel_basis(K, Sys);
  std::vector<Mat<R>> out;
  for (auto &v : ker) {
    Mat<R> X(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) X.at(i, j) = v[(size_t)i * m + j];
    out.push_back(std::move(X));
  }
  return out;
}

} // namespace jpmono

#endif
