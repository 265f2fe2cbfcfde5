#ifndef JPMONO_RINGS_HPP
#define JPMONO_RINGS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jpmono/error.hpp"

namespace jpmono {

// splitmix64, used everywhere a seeded deterministic stream is needed
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed) {}
  uint64_t next() {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return next() % n; }
};

using fel = uint32_t; // element of F_{p^k}, packed base-p digits, value < p^k

bool is_prime_u32(uint32_t n);
uint32_t phi_u32(uint32_t n);
uint64_t pow_mod_u64(uint64_t a, uint64_t e, uint64_t mod);
uint32_t mul_order_mod(uint32_t a, uint32_t n); // order of a in (Z/n)^x

// Finite field F_{p^k}.  The modulus is the monic irreducible polynomial of
// degree k over F_p whose packed non-leading coefficient value
// sum c_i p^i is smallest; this makes every F_{p^k} in every run identical.
// Elements are packed the same way: value = sum c_i p^i < q.
//
// Multiplication uses a q x q table when q <= table_limit, and on-the-fly
// polynomial reduction otherwise (large prime fields take a fast p-specific
// path).  There are no discrete-log tables.
class Fq {
public:
  static constexpr uint32_t table_limit = 1024;

  Fq(uint32_t p, uint32_t k = 1);

  uint32_t p, k, q;
  std::vector<uint32_t> modulus; // c_0..c_k with c_k = 1; empty when k == 1

  using elem = fel;
  static constexpr bool is_field = true;

  fel zero() const { return 0; }
  fel one() const { return 1; }
  bool is_zero(fel a) const { return a == 0; }
  bool is_unit(fel a) const { return a != 0; }

  fel add(fel a, fel b) const;
  fel sub(fel a, fel b) const;
  fel neg(fel a) const;
  fel mul(fel a, fel b) const;
  fel inv(fel a) const;
  fel div(fel a, fel b) const { return mul(a, inv(b)); }
  fel pow(fel a, uint64_t e) const;
  fel frob(fel a) const { return pow(a, p); }           // x -> x^p
  fel frob_half(fel a) const;                           // x -> x^{p^{k/2}}, k even
  fel from_int(int64_t v) const;                        // image of an integer
  uint32_t mul_order(fel a) const;                      // order in F_q^x

  fel coeff_get(fel a, uint32_t i) const; // i-th base-p digit
  std::string str(fel a) const;           // "c0+c1*x+..." or plain integer for k=1
  std::string desc() const;               // "F_q" or "F_q=F_p[x]/(...)"

private:
  std::vector<fel> mul_tab, inv_tab, add_tab;
  bool tables = false;
  fel mul_poly(fel a, fel b) const;
  fel add_poly(fel a, fel b) const;
};

// Dual numbers F_q[eps]/(eps^2): elements a + b eps packed as two 32-bit halves.
// A local ring; units are exactly the elements with unit base part.
class DualFq {
public:
  explicit DualFq(const Fq &base) : F(&base) {}
  const Fq *F;

  using elem = uint64_t;
  static constexpr bool is_field = false;

  static elem make(fel a, fel b) { return (uint64_t)a | ((uint64_t)b << 32); }
  static fel base(elem x) { return (fel)(x & 0xffffffffu); }
  static fel epspart(elem x) { return (fel)(x >> 32); }

  elem zero() const { return 0; }
  elem one() const { return 1; }
  bool is_zero(elem a) const { return a == 0; }
  bool is_unit(elem a) const { return base(a) != 0; }

  elem add(elem x, elem y) const { return make(F->add(base(x), base(y)), F->add(epspart(x), epspart(y))); }
  elem sub(elem x, elem y) const { return make(F->sub(base(x), base(y)), F->sub(epspart(x), epspart(y))); }
  elem neg(elem x) const { return make(F->neg(base(x)), F->neg(epspart(x))); }
  elem mul(elem x, elem y) const {
    return make(F->mul(base(x), base(y)),
                F->add(F->mul(base(x), epspart(y)), F->mul(epspart(x), base(y))));
  }
  elem inv(elem x) const {
    if (!is_unit(x)) fail(errc::non_unit, "dual number with nilpotent base has no inverse");
    fel ai = F->inv(base(x));
    // (a + b eps)^-1 = a^-1 - a^-2 b eps
    return make(ai, F->neg(F->mul(F->mul(ai, ai), epspart(x))));
  }
  elem div(elem x, elem y) const { return mul(x, inv(y)); }
  elem from_int(int64_t v) const { return make(F->from_int(v), 0); }
  elem embed(fel a) const { return make(a, 0); }
  std::string str(elem x) const { return F->str(base(x)) + "+(" + F->str(epspart(x)) + ")e"; }
  std::string desc() const { return F->desc() + "[e]/(e^2)"; }
};

// Length-2 Witt vectors of F_{2^k} for k <= 2, realized as the Galois ring
// Z/4[x]/(f) with f a monic lift of the F_{2^k} modulus.  Elements are packed
// as k base-4 digits.  Only what the SL2 lifting test needs.
class W2k {
public:
  explicit W2k(uint32_t k);

  uint32_t k;     // 1 or 2
  uint32_t size;  // 4^k

  using elem = uint8_t;
  static constexpr bool is_field = false;

  elem zero() const { return 0; }
  elem one() const { return 1; }
  bool is_zero(elem a) const { return a == 0; }
  bool is_unit(elem a) const; // unit iff reduction mod 2 is nonzero

  elem add(elem a, elem b) const;
  elem sub(elem a, elem b) const;
  elem neg(elem a) const { return sub(0, a); }
  elem mul(elem a, elem b) const;
  elem inv(elem a) const;
  elem div(elem a, elem b) const { return mul(a, inv(b)); }
  elem from_int(int64_t v) const;
  fel reduce_mod2(elem a) const; // image in F_{2^k}, packed base-2
  elem lift(fel a) const;        // digitwise 0/1 lift
  std::string str(elem a) const;
  std::string desc() const { return k == 1 ? "Z/4" : "GR(4,2)"; }

private:
  uint8_t dig(elem a, uint32_t i) const { return (a >> (2 * i)) & 3; }
};

} // namespace jpmono

#endif
