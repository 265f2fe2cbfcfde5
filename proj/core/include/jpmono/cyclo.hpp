#ifndef JPMONO_CYCLO_HPP
#define JPMONO_CYCLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jpmono/rings.hpp"

namespace jpmono {

// Weight vector m_0..m_{n+1} for the cyclic cover of order N.
struct WeightVector {
  uint32_t N = 0;
  std::vector<uint32_t> m;
};

// Throws BadWeights unless sum(m) = 0 mod N and gcd(m_0,...,m_{n+1},N) = 1.
void validate_weights(const WeightVector &w);

// Parameters as exponents of zeta_N: lambda_0 = zeta^{e0}, lambda_i = zeta^{e[i-1]}.
struct SymbolicParams {
  uint32_t N = 0;
  uint32_t e0 = 0;
  std::vector<uint32_t> e; // e_1..e_{n+1}
  int n() const { return (int)e.size() - 1; }
};

// Needs at least four weights (n >= 2); throws BadWeights otherwise.
SymbolicParams params_from_weights(const WeightVector &w);

enum class InvolKind { Identity, FrobeniusHalf, SwapFactors };
const char *invol_name(InvolKind k);

// One prime of the real subfield of Q(zeta_N) above p, together with the
// reduction data used downstream.  Write N = p^l * N' with p not dividing N'.
// Embeddings are exponents c with zeta_N -> w^c where w is the canonical
// element of order N' in F_q (lowest packed value); SwapFactors primes carry
// two exponents {c, N'-c}, the others one.
struct ResidueData {
  uint32_t N = 0, p = 0;
  uint32_t l = 0;
  uint32_t Nprime = 1;
  uint32_t e = 1, f = 1, g = 1; // ramification, residue degree, prime count in Q(zeta_N')
  bool ramified = false;        // e >= 2
  InvolKind invol = InvolKind::Identity;
  uint64_t q = 0;  // p^f, 0 if it does not fit in 64 bits
  uint64_t q0 = 0; // size of the involution-fixed subfield
  std::vector<uint32_t> embeddings;
  std::vector<uint32_t> coset; // the <p,-1>-coset in (Z/N')^* behind this prime
};

// One entry per prime of the real subfield above p, ordered by smallest coset
// representative.
std::vector<ResidueData> split_prime(uint32_t N, uint32_t p);

// Smallest packed element of multiplicative order exactly n.
fel root_of_unity(const Fq &K, uint32_t n);

// A parameter vector over a concrete ring; lambdas holds lambda_1..lambda_{n+1}.
template <class R> struct Params {
  typename R::elem lambda0{};
  std::vector<typename R::elem> lambdas;
  int n() const { return (int)lambdas.size() - 1; }
};

struct ReducedParams {
  Params<Fq> par;
  std::vector<bool> degenerate; // index 0 is lambda_0; true when the value is 1
  bool any_degenerate = false;
  std::vector<bool> unit_flags; // lambda_i - 1 invertible
};

// K must be F_{p^f} for the given prime.  Degeneracy is reported, not fatal.
ReducedParams reduce_params(const Fq &K, const SymbolicParams &sp, const ResidueData &rd,
                            int which_embedding);

struct ReducedDualParams {
  Params<DualFq> par;
  std::vector<uint32_t> nu;     // lambda_i = base * (1 + nu_i * eps), nu_i mod p
  std::vector<bool> degenerate; // exact 1 in the dual ring
  bool any_degenerate = false;
  std::vector<bool> unit_flags;
};

// Reduction mod the square of a ramified prime, through the identification of
// R/m^2 with F_q[eps] sending zeta_{p^l} to 1 + eps.  Requires rd.ramified.
ReducedDualParams reduce_params_dual(const DualFq &D, const SymbolicParams &sp,
                                     const ResidueData &rd, int which_embedding);

// F_{p^f} for this prime.
Fq residue_field(const ResidueData &rd);

} // namespace jpmono

#endif
