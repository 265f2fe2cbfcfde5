#include "jpmono/cyclo.hpp"

#include <algorithm>
#include <numeric>

namespace jpmono {

void validate_weights(const WeightVector &w) {
  if (w.N < 2) fail(errc::bad_weights, "cover order must be at least 2");
  if (w.m.size() < 2) fail(errc::bad_weights, "need at least two weights");
  uint64_t s = 0;
  uint32_t g = w.N;
  for (uint32_t mi : w.m) {
    s += mi;
    g = std::gcd(g, mi % w.N);
  }
  if (s % w.N) fail(errc::bad_weights, "weights do not sum to 0 mod N");
  if (g != 1) fail(errc::bad_weights, "weights and N share the factor " + std::to_string(g));
}

SymbolicParams params_from_weights(const WeightVector &w) {
  validate_weights(w);
  if (w.m.size() < 4)
    fail(errc::bad_weights, "rank n = " + std::to_string((int)w.m.size() - 2) + " below 2");
  SymbolicParams sp;
  sp.N = w.N;
  sp.e0 = w.m[0] % w.N;
  sp.e.assign(w.m.begin() + 1, w.m.end());
  for (auto &x : sp.e) x %= w.N;
  return sp;
}

const char *invol_name(InvolKind k) {
  switch (k) {
    case InvolKind::Identity: return "Identity";
    case InvolKind::FrobeniusHalf: return "FrobeniusHalf";
    case InvolKind::SwapFactors: return "SwapFactors";
  }
  return "?";
}

std::vector<ResidueData> split_prime(uint32_t N, uint32_t p) {
  if (!is_prime_u32(p)) fail(errc::non_prime, std::to_string(p));
  if (N < 1) fail(errc::bad_input, "N must be positive");

  ResidueData base;
  base.N = N;
  base.p = p;
  base.Nprime = N;
  while (base.Nprime % p == 0) {
    base.Nprime /= p;
    ++base.l;
  }
  uint32_t pl = 1;
  for (uint32_t i = 0; i < base.l; ++i) pl *= p;
  base.e = base.l ? pl - pl / p : 1;
  base.ramified = base.e >= 2;
  uint32_t Np = base.Nprime;
  base.f = Np <= 2 ? 1 : mul_order_mod(p, Np);
  base.g = phi_u32(Np) / base.f;

  uint64_t q = 1;
  bool fits = true;
  for (uint32_t i = 0; i < base.f; ++i) {
    if (q > UINT64_MAX / p) { fits = false; break; }
    q *= p;
  }
  base.q = fits ? q : 0;

  std::vector<ResidueData> out;
  if (Np <= 2) {
    base.invol = InvolKind::Identity;
    base.q0 = base.q;
    base.embeddings = {Np == 2 ? 1u : 0u};
    base.coset = base.embeddings;
    out.push_back(base);
    return out;
  }

  std::vector<uint32_t> pgrp;
  uint64_t x = p % Np;
  do {
    pgrp.push_back((uint32_t)x);
    x = x * p % Np;
  } while (x != p % Np);
  bool inert = std::find(pgrp.begin(), pgrp.end(), Np - 1) != pgrp.end();

  std::vector<char> seen(Np, 0);
  for (uint32_t a = 1; a < Np; ++a) {
    if (seen[a] || std::gcd(a, Np) != 1) continue;
    std::vector<uint32_t> coset;
    for (uint32_t h : pgrp) {
      coset.push_back((uint32_t)((uint64_t)a * h % Np));
      coset.push_back((uint32_t)((uint64_t)a * (Np - h) % Np));
    }
    std::sort(coset.begin(), coset.end());
    coset.erase(std::unique(coset.begin(), coset.end()), coset.end());
    for (uint32_t c : coset) seen[c] = 1;

    ResidueData rd = base;
    rd.coset = coset;
    uint32_t c = coset.front();
    if (inert) {
      rd.invol = InvolKind::FrobeniusHalf;
      rd.embeddings = {c};
      uint64_t q0 = 1;
      for (uint32_t i = 0; i < rd.f / 2; ++i) q0 *= p;
      rd.q0 = rd.q ? q0 : 0;
    } else {
      rd.invol = InvolKind::SwapFactors;
      rd.embeddings = {c, Np - c};
      rd.q0 = rd.q;
    }
    out.push_back(rd);
  }
  return out;
}

fel root_of_unity(const Fq &K, uint32_t n) {
  if (n == 0) fail(errc::bad_input, "order must be positive");
  if (n == 1) return K.one();
  if ((K.q - 1) % n) fail(errc::no_solution, "no element of order " + std::to_string(n) +
                                                " in " + K.desc());
  for (fel a = 2; a < K.q; ++a)
    if (K.mul_order(a) == n) return a;
  fail(errc::no_solution, "order scan exhausted");
}

namespace {

void check_embedding(const Fq &K, const SymbolicParams &sp, const ResidueData &rd, int which) {
  if (sp.N != rd.N) fail(errc::bad_input, "params are mod " + std::to_string(sp.N) +
                                              ", prime data is for N=" + std::to_string(rd.N));
  if (which < 0 || which >= (int)rd.embeddings.size())
    fail(errc::bad_input, "embedding index " + std::to_string(which));
  if (K.p != rd.p || K.k != rd.f)
    fail(errc::bad_input, "residue field should be F_" + std::to_string(rd.p) + "^" +
                              std::to_string(rd.f));
}

} // namespace

ReducedParams reduce_params(const Fq &K, const SymbolicParams &sp, const ResidueData &rd,
                            int which_embedding) {
  check_embedding(K, sp, rd, which_embedding);
  uint32_t Np = rd.Nprime;
  fel w = root_of_unity(K, Np);
  uint64_t c = rd.embeddings[which_embedding];

  ReducedParams out;
  auto push = [&](uint32_t m) {
    fel v = K.pow(w, c * (m % Np) % Np);
    out.degenerate.push_back(v == K.one());
    out.unit_flags.push_back(v != K.one());
    return v;
  };
  out.par.lambda0 = push(sp.e0);
  out.par.lambdas.reserve(sp.e.size());
  for (uint32_t m : sp.e) out.par.lambdas.push_back(push(m));
  out.any_degenerate =
      std::find(out.degenerate.begin(), out.degenerate.end(), true) != out.degenerate.end();
  return out;
}

ReducedDualParams reduce_params_dual(const DualFq &D, const SymbolicParams &sp,
                                     const ResidueData &rd, int which_embedding) {
  const Fq &K = *D.F;
  check_embedding(K, sp, rd, which_embedding);
  if (!rd.ramified)
    fail(errc::unsupported, "dual reduction is defined mod the square of a ramified prime");

  uint32_t Np = rd.Nprime;
  uint32_t pl = rd.N / Np;
  // zeta_N = zeta_{p^l}^u * zeta_{N'}^v with u*N' = 1 mod p^l; the eps part of
  // zeta_N^m is then u*m mod p.
  uint32_t u = 1;
  while ((uint64_t)u * Np % pl != 1 % pl) ++u;
  fel w = root_of_unity(K, Np);
  uint64_t c = rd.embeddings[which_embedding];

  ReducedDualParams out;
  auto push = [&](uint32_t m) {
    fel b = K.pow(w, c * (m % Np) % Np);
    uint32_t nu = (uint32_t)((uint64_t)u * m % rd.p);
    out.nu.push_back(nu);
    DualFq::elem v = D.make(b, K.mul(b, K.from_int(nu)));
    out.degenerate.push_back(v == D.one());
    out.unit_flags.push_back(b != K.one());
    return v;
  };
  out.par.lambda0 = push(sp.e0);
  out.par.lambdas.reserve(sp.e.size());
  for (uint32_t m : sp.e) out.par.lambdas.push_back(push(m));
  out.any_degenerate =
      std::find(out.degenerate.begin(), out.degenerate.end(), true) != out.degenerate.end();
  return out;
}

Fq residue_field(const ResidueData &rd) { return Fq(rd.p, rd.f); }

} // namespace jpmono
