#include "jpmono/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jpmono {

namespace {

// Kernel of the system g A sigma(g)^T = A over all generators.
std::vector<std::vector<fel>> form_space(const Fq &K, const std::vector<Mat<Fq>> &gens,
                                         bool half) {
  int n = gens[0].n;
  Mat<Fq> Sys((int)gens.size() * n * n, n * n);
  int row = 0;
  for (auto &g : gens) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          fel gik = g.at(i, k);
          if (!gik) continue;
          for (int l = 0; l < n; ++l) {
            fel gjl = half ? K.frob_half(g.at(j, l)) : g.at(j, l);
            if (!gjl) continue;
            Sys.at(row, k * n + l) = K.add(Sys.at(row, k * n + l), K.mul(gik, gjl));
          }
        }
        Sys.at(row, i * n + j) = K.sub(Sys.at(row, i * n + j), K.one());
        ++row;
      }
  }
  return kernel_basis(K, Sys);
}

Mat<Fq> reshape(const Fq &, const std::vector<fel> &v, int n) {
  Mat<Fq> A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.at(i, j) = v[(size_t)i * n + j];
  return A;
}

fel first_nonzero(const Mat<Fq> &A) {
  for (auto x : A.a)
    if (x) return x;
  return 0;
}

} // namespace

FormMatrix invariant_form(const Fq &K, const JPTuple<Fq> &t, InvolKind inv) {
  if (inv == InvolKind::SwapFactors)
    fail(errc::bad_input, "a SwapFactors form pairs two tuples; use pair_form");
  bool half = inv == InvolKind::FrobeniusHalf;
  if (half && (K.k % 2))
    fail(errc::bad_input, "FrobeniusHalf needs a quadratic extension field");

  auto ker = form_space(K, t.gens, half);
  if (ker.empty()) fail(errc::no_form, "no invariant form for involution " +
                                           std::string(invol_name(inv)));
  if (ker.size() > 1)
    fail(errc::non_unique, "form space has dimension " + std::to_string(ker.size()));

  int n = t.n();
  Mat<Fq> A = reshape(K, ker[0], n);
  FormMatrix fm;
  fm.invol = inv;

  if (!half) {
    Mat<Fq> At = mat_transpose(K, A);
    fel mu = 0;
    for (size_t i = 0; i < A.a.size(); ++i)
      if (A.a[i]) { mu = K.div(At.a[i], A.a[i]); break; }
    if (!mat_equal(K, At, mat_scale(K, mu, A)))
      fail(errc::no_solution, "bilinear form not (anti)symmetric");
    bool zero_diag = true;
    for (int i = 0; i < n; ++i)
      if (A.at(i, i)) zero_diag = false;
    fm.sign = (K.p == 2) ? (zero_diag ? -1 : 1) : (mu == K.one() ? 1 : -1);
    fm.A = mat_scale(K, K.inv(first_nonzero(A)), A);
  } else {
    Mat<Fq> Ad(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Ad.at(i, j) = K.frob_half(A.at(j, i));
    fel mu = 0;
    for (size_t i = 0; i < A.a.size(); ++i)
      if (A.a[i]) { mu = K.div(Ad.a[i], A.a[i]); break; }
    if (!mat_equal(K, Ad, mat_scale(K, mu, A)))
      fail(errc::no_solution, "conjugate transpose not proportional to the form");
    // c with c + mu*sigma(c) = 0 exists since mu has norm 1 (Hilbert 90)
    fel cfix = 0;
    for (fel c = 1; c < K.q; ++c)
      if (K.is_zero(K.add(c, K.mul(mu, K.frob_half(c))))) { cfix = c; break; }
    if (!cfix) fail(errc::no_solution, "proportionality factor has norm != 1");
    A = mat_scale(K, cfix, A);
    // canonical F_{q0}-scaling: smallest packed first entry
    fel x0 = first_nonzero(A);
    fel bestc = 1, bestv = x0;
    for (fel c = 2; c < K.q; ++c) {
      if (K.frob_half(c) != c) continue;
      fel v = K.mul(c, x0);
      if (v < bestv) { bestv = v; bestc = c; }
    }
    fm.A = mat_scale(K, bestc, A);
    fm.sign = -1;
  }
  fm.nondegenerate = !K.is_zero(mat_det(K, fm.A));
  return fm;
}

FormMatrix pair_form(const Fq &K, const JPTuple<Fq> &t1, const JPTuple<Fq> &t2) {
  if (t1.n() != t2.n() || t1.gens.size() != t2.gens.size())
    fail(errc::dimension_mismatch, "tuples of different shapes");
  std::vector<Mat<Fq>> duals;
  for (auto &g : t2.gens) duals.push_back(mat_inverse(K, mat_transpose(K, g)));
  auto iw = intertwiner_space(K, t1.gens, duals);
  if (iw.empty()) fail(errc::no_form, "no invariant pair across the embeddings");
  if (iw.size() > 1)
    fail(errc::non_unique, "pair space has dimension " + std::to_string(iw.size()));
  FormMatrix fm;
  fm.invol = InvolKind::SwapFactors;
  fm.sign = -1;
  fm.A = mat_scale(K, K.inv(first_nonzero(iw[0])), iw[0]);
  fm.nondegenerate = !K.is_zero(mat_det(K, fm.A));
  return fm;
}

namespace {

void validate_query(const SignatureQuery &q) {
  if (q.a.size() < 3) fail(errc::bad_input, "need at least three exponents");
  for (auto &r : q.a) {
    if (r.den < 2 || r.num <= 0 || r.num >= r.den)
      fail(errc::bad_input, "exponents must be proper fractions in (0,1)");
  }
}

__int128 igcd(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t integral_sum(const SignatureQuery &q) {
  __int128 sn = 0, sd = 1;
  for (auto &r : q.a) {
    int64_t g = std::gcd(r.num, r.den);
    __int128 num = r.num / g, den = r.den / g;
    sn = sn * den + num * sd;
    sd *= den;
    __int128 gg = igcd(sn, sd);
    if (gg > 1) { sn /= gg; sd /= gg; }
    if (sd > (__int128)INT64_MAX) fail(errc::too_large, "exponent denominators too large");
  }
  if (sn % sd) fail(errc::non_integral, "exponents do not sum to an integer");
  return (int64_t)(sn / sd);
}

} // namespace

Signature signature_formula(const SignatureQuery &q) {
  validate_query(q);
  int64_t S = integral_sum(q);
  int n = (int)q.a.size() - 2;
  Signature s;
  s.pos = (int)(S - 1);
  s.neg = (int)(n + 1 - S);
  return s;
}

std::vector<double> hermitian_eigen(const Cplx &C, Mat<Cplx> H, Mat<Cplx> *vecs) {
  int n = H.n;
  Mat<Cplx> V = mat_identity(C, n);
  double scale = 0;
  for (auto &x : H.a) scale += std::norm(x);
  scale = std::max(scale, 1.0);

  for (int sweep = 0; sweep < 80; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(H.at(p, q));
    if (off <= 1e-28 * scale) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        std::complex<double> apq = H.at(p, q);
        double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        std::complex<double> phase = apq / mag;
        double app = H.at(p, p).real(), aqq = H.at(q, q).real();
        double tau = (aqq - app) / (2 * mag);
        double tt = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        double c = 1.0 / std::sqrt(1 + tt * tt);
        double s = tt * c;
        // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on coordinates (p,q)
        std::complex<double> up0 = c, up1 = s;
        std::complex<double> uq0 = -s * std::conj(phase), uq1 = c * std::conj(phase);
        for (int i = 0; i < n; ++i) { // columns: H <- H U, V <- V U
          auto hp = H.at(i, p), hq = H.at(i, q);
          H.at(i, p) = hp * up0 + hq * uq0;
          H.at(i, q) = hp * up1 + hq * uq1;
          auto vp = V.at(i, p), vq = V.at(i, q);
          V.at(i, p) = vp * up0 + vq * uq0;
          V.at(i, q) = vp * up1 + vq * uq1;
        }
        for (int j = 0; j < n; ++j) { // rows: H <- U^H H
          auto hp = H.at(p, j), hq = H.at(q, j);
          H.at(p, j) = std::conj(up0) * hp + std::conj(uq0) * hq;
          H.at(q, j) = std::conj(up1) * hp + std::conj(uq1) * hq;
        }
        H.at(p, q) = 0;
        H.at(q, p) = 0;
        H.at(p, p) = H.at(p, p).real();
        H.at(q, q) = H.at(q, q).real();
      }
  }

  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return H.at(a, a).real() < H.at(b, b).real(); });
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = H.at(idx[i], idx[i]).real();
  if (vecs) {
    Mat<Cplx> W(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) W.at(i, j) = V.at(i, idx[j]);
    *vecs = std::move(W);
  }
  return ev;
}

Signature signature_numeric(const SignatureQuery &q, double tol) {
  if (tol <= 0) fail(errc::bad_input, "tolerance must be positive");
  validate_query(q);
  integral_sum(q);

  int n = (int)q.a.size() - 2;
  Cplx C;
  Params<Cplx> par;
  const double TWO_PI = 6.28318530717958647692528676655900577;
  auto lam = [&](const Rat &r) {
    return std::polar(1.0, TWO_PI * ((double)r.num / (double)r.den));
  };
  par.lambda0 = lam(q.a[0]);
  for (size_t i = 1; i < q.a.size(); ++i) par.lambdas.push_back(lam(q.a[i]));
  auto t = jp_construct(C, par, {0, 64});

  int N2 = n * n;
  Mat<Cplx> G(N2, N2);
  std::vector<std::complex<double>> row(N2);
  for (auto &g : t.gens) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            std::complex<double> v = g.at(i, k) * std::conj(g.at(j, l));
            if (k == i && l == j) v -= 1.0;
            row[(size_t)k * n + l] = v;
          }
        for (int a = 0; a < N2; ++a) {
          auto ca = std::conj(row[a]);
          if (std::abs(ca) <= 1e-300) continue;
          for (int b = 0; b < N2; ++b) G.at(a, b) += ca * row[b];
        }
      }
  }

  Mat<Cplx> V(N2, N2);
  auto ev = hermitian_eigen(C, G, &V);
  if (!(ev[0] < tol)) fail(errc::ill_conditioned, "stacked system has no numeric nullspace");
  if (N2 > 1 && ev[1] - ev[0] < tol)
    fail(errc::ill_conditioned, "nullspace gap below tolerance");

  Mat<Cplx> A(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) A.at(k, l) = V.at(k * n + l, 0);
  std::complex<double> num = 0;
  double den = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      num += std::conj(A.at(i, j)) * std::conj(A.at(j, i));
      den += std::norm(A.at(i, j));
    }
  std::complex<double> mu = num / den;
  std::complex<double> c = std::polar(1.0, std::arg(mu) / 2);
  Mat<Cplx> Hf(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      Hf.at(i, j) = 0.5 * (c * A.at(i, j) + std::conj(c * A.at(j, i)));

  auto hev = hermitian_eigen(C, Hf, nullptr);
  Signature s;
  for (double e : hev) {
    if (e > tol) ++s.pos;
    else if (e < -tol) ++s.neg;
    else fail(errc::ill_conditioned, "form eigenvalue within tolerance of zero");
  }
  return s;
}

} // namespace jpmono
