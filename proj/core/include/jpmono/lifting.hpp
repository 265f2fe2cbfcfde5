#ifndef JPMONO_LIFTING_HPP
#define JPMONO_LIFTING_HPP

#include <optional>

#include "jpmono/forms.hpp"
#include "jpmono/jprep.hpp"

namespace jpmono {

// Multiplicative Jordan decomposition g = s*u over a finite ring of
// characteristic p, via the CRT exponent e (e = 0 mod the p-part of ord(g),
// e = 1 mod the prime-to-p part), so s = g^e and u = g^(1-e).
template <class R> struct JordanParts {
  Mat<R> s, u;
  uint64_t order = 0;
  uint64_t e = 0;
};

template <class R>
JordanParts<R> jordan_parts(const R &K, uint32_t p, const Mat<R> &g,
                            uint64_t bound = uint64_t(1) << 22) {
  auto od = element_order(K, g, bound);
  if (!od) fail(errc::too_large, "element order exceeds the search bound");
  uint64_t m = *od, P = 1;
  while (m % p == 0) {
    m /= p;
    P *= p;
  }
  uint64_t e = 0;
  if (m > 1) {
    uint64_t t = 1;
    while (P % m * t % m != 1) ++t;
    e = P * t;
  }
  JordanParts<R> jp;
  jp.order = m * P;
  jp.e = e;
  jp.s = mat_pow(K, g, e);
  jp.u = mat_pow(K, g, (jp.order + 1 - e % jp.order) % jp.order);
  return jp;
}

// Parameters lambda_i(1 + eps nu_i) over F_q[eps], the reduction of the
// cyclotomic parameters mod the square of a ramified prime.
struct LiftParams {
  Params<DualFq> par;
  std::vector<fel> nu; // nu_0..nu_{n+1}, elements of the prime field
  int n() const { return (int)par.lambdas.size() - 1; }
};

LiftParams lift_params(const DualFq &D, const SymbolicParams &sp,
                       const ResidueData &rd, int which = 0);

enum class LieOrigin {
  UnipotentPart,    // unipotent Jordan part of a generator
  CharTwoSquare,    // g_i^2 in characteristic 2
  TripleWord,       // (g_i^K g_j^K g_i^K)^4 with K = (1-p)/2
  PairWord,         // (g_i^K g_j^K)^6, p > 3
  ConjugationWord,  // (h g_i h^-1) g_i with h inverting g_i mod eps
};
const char *origin_name(LieOrigin o);

struct LieElement {
  Mat<Fq> B; // the word evaluates to exactly I + eps B; B nonscalar
  std::string word;
  LieOrigin origin = LieOrigin::UnipotentPart;
};

// Tries the detectors in a fixed order and returns the first word whose
// evaluation is I + eps B with B nonzero and nonscalar.
std::optional<LieElement> lie_detect(const DualFq &D, const LiftParams &lp,
                                     const JPTuple<DualFq> &t,
                                     const JPOptions &opt = {});

Mat<Fq> mat_base(const Mat<DualFq> &A);
Mat<Fq> mat_eps(const Mat<DualFq> &A);

enum class LieTarget { SL, SU, SpGraded };
const char *target_name(LieTarget t);

struct SpanReport {
  bool full = false;
  int dim_span = 0;   // F_p-dimension of the closed span (scalars included)
  int dim_target = 0; // F_p-dimension of the target Lie algebra
};

// Closes the F_p-span of {B, scalars} under conjugation by the given
// generators and tests containment of the target: sl_n(F_q), the
// anti-invariants of the Hermitian form (su), or J^{-1}*(alternating
// matrices) in the graded symplectic case (containment mod scalars).
SpanReport span_full(const Fq &K, const Mat<Fq> &B,
                     const std::vector<Mat<Fq>> &gens, LieTarget target,
                     const Mat<Fq> *form = nullptr);

struct LiftReport {
  bool found = false;
  LieElement elem;
  LieTarget target = LieTarget::SL;
  bool full = false;
  int dim_span = 0, dim_target = 0;
};

// End-to-end: construct the tuple over F_q[eps], run the detectors, pick the
// target from the reduced tuple's invariant form, certify the span.
LiftReport lift_run(const DualFq &D, const LiftParams &lp,
                    const JPOptions &opt = {});

struct SplitReport {
  bool splits = false;
  bool order2_exists = false;
  Mat<W2k> witness_commutator; // ABAB for the first order-2 pair of lifts
  std::string witness;
};

// Enumerates all lifts of the 2-Sylow generators of SL_2 over the length-2
// Witt vectors (k = 2: F_4, two generators; k = 1: F_2, one generator) and
// looks for commuting order-2 lifts.
SplitReport sl2_w2_split_test(uint32_t k = 2);

} // namespace jpmono

#endif
