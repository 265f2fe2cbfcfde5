#include "jpmono/rings.hpp"

#include <numeric>

namespace jpmono {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint32_t phi_u32(uint32_t n) {
  uint32_t r = n;
  for (uint32_t d = 2; (uint64_t)d * d <= n; ++d) {
    if (n % d) continue;
    r -= r / d;
    while (n % d == 0) n /= d;
  }
  if (n > 1) r -= r / n;
  return r;
}

uint64_t pow_mod_u64(uint64_t a, uint64_t e, uint64_t mod) {
  a %= mod;
  uint64_t r = 1 % mod;
  while (e) {
    if (e & 1) r = (uint64_t)((unsigned __int128)r * a % mod);
    a = (uint64_t)((unsigned __int128)a * a % mod);
    e >>= 1;
  }
  return r;
}

uint32_t mul_order_mod(uint32_t a, uint32_t n) {
  if (n <= 1) return 1;
  a %= n;
  if (std::gcd(a, n) != 1) fail(errc::non_unit, std::to_string(a) + " mod " + std::to_string(n));
  uint32_t r = 1;
  uint64_t x = a;
  while (x != 1) { x = x * a % n; ++r; }
  return r;
}

namespace {

// polynomial helpers on packed base-p values, coefficient vectors c_0..c_{d}
std::vector<uint32_t> unpack(uint64_t v, uint32_t p) {
  std::vector<uint32_t> c;
  while (v) { c.push_back((uint32_t)(v % p)); v /= p; }
  return c;
}

uint64_t pack(const std::vector<uint32_t> &c, uint32_t p) {
  uint64_t v = 0;
  for (size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

std::vector<uint32_t> poly_mulmod(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b,
                                  const std::vector<uint32_t> &mod, uint32_t p) {
  std::vector<uint32_t> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (uint32_t)((r[i + j] + (uint64_t)a[i] * b[j]) % p);
  }
  // reduce by monic mod of degree k
  size_t k = mod.size() - 1;
  for (size_t i = r.size(); i-- > k;) {
    if (!r[i]) continue;
    uint32_t c = r[i];
    r[i] = 0;
    for (size_t j = 0; j < k; ++j) {
      uint64_t sub = (uint64_t)c * mod[j] % p;
      r[i - k + j] = (uint32_t)((r[i - k + j] + p - sub) % p);
    }
  }
  r.resize(k ? k : 1);
  return r;
}

std::vector<uint32_t> poly_powmod(std::vector<uint32_t> base, uint64_t e,
                                  const std::vector<uint32_t> &mod, uint32_t p) {
  std::vector<uint32_t> r{1};
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

std::vector<uint32_t> poly_gcd(std::vector<uint32_t> a, std::vector<uint32_t> b, uint32_t p) {
  auto deg = [](const std::vector<uint32_t> &f) {
    for (size_t i = f.size(); i-- > 0;) if (f[i]) return (int)i;
    return -1;
  };
  while (deg(b) >= 0) {
    // a mod b
    int db = deg(b);
    uint32_t lead_inv = 1;
    { // inverse of leading coeff of b mod p
      uint32_t l = b[db];
      for (uint32_t t = 1; t < p; ++t) if ((uint64_t)l * t % p == 1) { lead_inv = t; break; }
    }
    while (deg(a) >= db) {
      int da = deg(a);
      uint64_t c = (uint64_t)a[da] * lead_inv % p;
      for (int j = 0; j <= db; ++j)
        a[da - db + j] = (uint32_t)((a[da - db + j] + p - c * b[j] % p) % p);
    }
    std::swap(a, b);
  }
  return a;
}

bool poly_irreducible(const std::vector<uint32_t> &f, uint32_t p, uint32_t k) {
  // f irreducible of degree k iff x^{p^k} = x (mod f) and
  // gcd(x^{p^{k/l}} - x, f) = 1 for each prime l | k
  std::vector<uint32_t> x{0, 1};
  uint64_t pk = 1;
  for (uint32_t i = 0; i < k; ++i) pk *= p;
  auto xpk = poly_powmod(x, pk, f, p);
  std::vector<uint32_t> xv(f.size() - 1, 0);
  if (xv.size() < 2) xv.resize(2, 0);
  xv[1] = 1;
  xpk.resize(xv.size(), 0);
  if (xpk != xv) return false;
  for (uint32_t l = 2; l <= k; ++l) {
    if (k % l || !is_prime_u32(l)) continue;
    uint64_t e = 1;
    for (uint32_t i = 0; i < k / l; ++i) e *= p;
    auto xe = poly_powmod(x, e, f, p);
    // xe - x
    xe.resize(std::max<size_t>(xe.size(), 2), 0);
    xe[1] = (xe[1] + p - 1) % p;
    auto g = poly_gcd(f, xe, p);
    int dg = -1;
    for (size_t i = g.size(); i-- > 0;) if (g[i]) { dg = (int)i; break; }
    if (dg != 0) return false;
  }
  return true;
}

} // namespace

Fq::Fq(uint32_t p_, uint32_t k_) : p(p_), k(k_) {
  if (!is_prime_u32(p)) fail(errc::non_prime, "characteristic " + std::to_string(p));
  if (k == 0 || k > 20) fail(errc::bad_modulus, "extension degree " + std::to_string(k));
  uint64_t qq = 1;
  for (uint32_t i = 0; i < k; ++i) {
    qq *= p;
    if (qq > (1u << 30)) fail(errc::bad_modulus, "field too large");
  }
  q = (uint32_t)qq;

  if (k > 1) {
    // smallest packed non-leading coefficient vector giving an irreducible monic
    bool found = false;
    for (uint64_t v = 0; v < qq; ++v) {
      auto c = unpack(v, p);
      c.resize(k + 1, 0);
      c[k] = 1;
      if (poly_irreducible(c, p, k)) { modulus = c; found = true; break; }
    }
    if (!found) fail(errc::bad_modulus, "no irreducible modulus found");
  }

  if (q <= table_limit) {
    tables = true;
    add_tab.resize((size_t)q * q);
    mul_tab.resize((size_t)q * q);
    inv_tab.assign(q, 0);
    for (uint32_t a = 0; a < q; ++a)
      for (uint32_t b = 0; b < q; ++b) {
        add_tab[(size_t)a * q + b] = add_poly(a, b);
        mul_tab[(size_t)a * q + b] = mul_poly(a, b);
      }
    for (uint32_t a = 1; a < q; ++a) {
      if (inv_tab[a]) continue;
      for (uint32_t b = 1; b < q; ++b)
        if (mul_tab[(size_t)a * q + b] == 1) { inv_tab[a] = b; inv_tab[b] = a; break; }
      if (!inv_tab[a]) fail(errc::bad_modulus, "modulus is not irreducible");
    }
  }
}

fel Fq::add_poly(fel a, fel b) const {
  if (k == 1) { uint64_t s = (uint64_t)a + b; return (fel)(s >= p ? s - p : s); }
  fel r = 0, mulp = 1;
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t da = a % p, db = b % p;
    a /= p; b /= p;
    uint32_t d = da + db;
    if (d >= p) d -= p;
    r += d * mulp;
    mulp *= p;
  }
  return r;
}

fel Fq::mul_poly(fel a, fel b) const {
  if (k == 1) return (fel)((uint64_t)a * b % p);
  auto ca = unpack(a, p), cb = unpack(b, p);
  if (ca.empty() || cb.empty()) return 0;
  auto r = poly_mulmod(ca, cb, modulus, p);
  return (fel)pack(r, p);
}

fel Fq::add(fel a, fel b) const { return tables ? add_tab[(size_t)a * q + b] : add_poly(a, b); }

fel Fq::sub(fel a, fel b) const { return add(a, neg(b)); }

fel Fq::neg(fel a) const {
  if (k == 1) return a ? p - a : 0;
  fel r = 0, mulp = 1;
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t d = a % p;
    a /= p;
    r += (d ? p - d : 0) * mulp;
    mulp *= p;
  }
  return r;
}

fel Fq::mul(fel a, fel b) const { return tables ? mul_tab[(size_t)a * q + b] : mul_poly(a, b); }

fel Fq::pow(fel a, uint64_t e) const {
  fel r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

fel Fq::inv(fel a) const {
  if (!a) fail(errc::non_unit, "inverse of zero");
  if (tables) return inv_tab[a];
  return pow(a, q - 2);
}

fel Fq::frob_half(fel a) const {
  if (k % 2) fail(errc::unsupported, "frob_half needs even extension degree");
  uint64_t e = 1;
  for (uint32_t i = 0; i < k / 2; ++i) e *= p;
  return pow(a, e);
}

fel Fq::from_int(int64_t v) const {
  int64_t r = v % (int64_t)p;
  if (r < 0) r += p;
  return (fel)r;
}

uint32_t Fq::mul_order(fel a) const {
  if (!a) fail(errc::non_unit, "order of zero");
  uint32_t o = 1;
  fel x = a;
  while (x != 1) {
    x = mul(x, a);
    ++o;
    if (o > q) fail(errc::bad_modulus, "element order exceeded field size");
  }
  return o;
}

fel Fq::coeff_get(fel a, uint32_t i) const {
  for (uint32_t j = 0; j < i; ++j) a /= p;
  return a % p;
}

std::string Fq::str(fel a) const {
  if (k == 1) return std::to_string(a);
  std::string s;
  fel v = a;
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t d = v % p;
    v /= p;
    if (!d) continue;
    if (!s.empty()) s += "+";
    if (i == 0) s += std::to_string(d);
    else {
      if (d != 1) s += std::to_string(d) + "*";
      s += (i == 1) ? "x" : ("x^" + std::to_string(i));
    }
  }
  return s.empty() ? "0" : s;
}

std::string Fq::desc() const {
  if (k == 1) return "F_" + std::to_string(p);
  std::string m;
  for (size_t i = modulus.size(); i-- > 0;) {
    if (!modulus[i]) continue;
    if (!m.empty()) m += "+";
    if (i == 0) m += std::to_string(modulus[i]);
    else {
      if (modulus[i] != 1) m += std::to_string(modulus[i]) + "*";
      m += (i == 1) ? "x" : ("x^" + std::to_string(i));
    }
  }
  return "F_" + std::to_string(q) + "=F_" + std::to_string(p) + "[x]/(" + m + ")";
}

// --- W2k -------------------------------------------------------------------

W2k::W2k(uint32_t k_) : k(k_) {
  if (k < 1 || k > 2) fail(errc::unsupported, "W2k only implemented for k in {1,2}");
  size = k == 1 ? 4 : 16;
}

bool W2k::is_unit(elem a) const { return reduce_mod2(a) != 0; }

W2k::elem W2k::add(elem a, elem b) const {
  elem r = 0;
  for (uint32_t i = 0; i < k; ++i) r |= (elem)(((dig(a, i) + dig(b, i)) & 3) << (2 * i));
  return r;
}

W2k::elem W2k::sub(elem a, elem b) const {
  elem r = 0;
  for (uint32_t i = 0; i < k; ++i) r |= (elem)(((dig(a, i) + 4 - dig(b, i)) & 3) << (2 * i));
  return r;
}

W2k::elem W2k::mul(elem a, elem b) const {
  if (k == 1) return (elem)((dig(a, 0) * dig(b, 0)) & 3);
  // Z/4[x]/(x^2+x+1), the monic lift of the F_4 modulus
  uint32_t a0 = dig(a, 0), a1 = dig(a, 1), b0 = dig(b, 0), b1 = dig(b, 1);
  uint32_t c0 = a0 * b0, c1 = a0 * b1 + a1 * b0, c2 = a1 * b1;
  // x^2 = -x - 1
  c0 = (c0 + 4 * 4 - c2) & 3;
  c1 = (c1 + 4 * 4 - c2) & 3;
  return (elem)(c0 | (c1 << 2));
}

W2k::elem W2k::inv(elem a) const {
  if (!is_unit(a)) fail(errc::non_unit, "non-unit in W2");
  for (uint32_t b = 0; b < size; ++b)
    if (mul(a, (elem)b) == 1) return (elem)b;
  fail(errc::bad_modulus, "unit without inverse");
}

W2k::elem W2k::from_int(int64_t v) const {
  int64_t r = v % 4;
  if (r < 0) r += 4;
  return (elem)r;
}

fel W2k::reduce_mod2(elem a) const {
  fel r = 0;
  for (uint32_t i = 0; i < k; ++i) r |= (fel)((dig(a, i) & 1) << i);
  return r;
}

W2k::elem W2k::lift(fel a) const {
  elem r = 0;
  for (uint32_t i = 0; i < k; ++i) r |= (elem)(((a >> i) & 1) << (2 * i));
  return r;
}

std::string W2k::str(elem a) const {
  if (k == 1) return std::to_string(dig(a, 0));
  std::string s = std::to_string(dig(a, 0));
  if (dig(a, 1)) s += "+" + std::to_string(dig(a, 1)) + "*x";
  return s;
}

const char *errc_name(errc c) {
  switch (c) {
    case errc::non_prime: return "NonPrime";
    case errc::bad_modulus: return "BadModulus";
    case errc::non_unit: return "NonUnit";
    case errc::not_a_field: return "NotAField";
    case errc::singular: return "Singular";
    case errc::bad_weights: return "BadWeights";
    case errc::bad_weight: return "BadWeight";
    case errc::degenerate_parameter: return "DegenerateParameter";
    case errc::degenerate_params: return "DegenerateParams";
    case errc::degenerate_restriction: return "DegenerateRestriction";
    case errc::no_solution: return "NoSolution";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::too_large: return "TooLarge";
    case errc::not_normal: return "NotNormal";
    case errc::no_form: return "NoForm";
    case errc::non_unique: return "NonUnique";
    case errc::ill_conditioned: return "IllConditioned";
    case errc::non_integral: return "NonIntegral";
    case errc::negative_rank: return "NegativeRank";
    case errc::rank_too_small: return "RankTooSmall";
    case errc::bad_target: return "BadTarget";
    case errc::unsupported: return "Unsupported";
    case errc::bad_input: return "BadInput";
    case errc::cap_exceeded: return "CapExceeded";
  }
  return "Error";
}

} // namespace jpmono
