#ifndef JPMONO_GRPENGINE_HPP
#define JPMONO_GRPENGINE_HPP

#include <unordered_map>

#include "jpmono/biguint.hpp"
#include "jpmono/forms.hpp"
#include "jpmono/jprep.hpp"

namespace jpmono {

struct BsgsConfig {
  uint64_t seed = 0;
  uint64_t orbit_cap = uint64_t(1) << 24;
  uint32_t word_cap = 64;     // length of random words used during construction
  uint32_t clean_target = 24; // consecutive clean sifts before verification
  uint32_t verify_words = 32;
};

// Orbit lookup table: point -> packed (parent index << 8 | generator index),
// stored +1 so that 0 means absent.  Dense vector when the whole point space
// fits, hash map otherwise.
class PointIndex {
public:
  void init(uint64_t space);
  uint32_t get(uint64_t point) const;
  void put(uint64_t point, uint32_t value);

private:
  bool dense_ = false;
  std::vector<uint32_t> tab_;
  std::unordered_map<uint64_t, uint32_t> map_;
};

struct BsgsLevel {
  std::vector<fel> beta; // base point, a vector in F_q^n
  uint64_t beta_packed = 0;
  std::vector<Mat<Fq>> gens; // strong generators active at this level
  std::vector<uint64_t> points; // orbit of beta, in discovery order
  PointIndex transversal;
};

class Bsgs {
public:
  const Fq *K = nullptr;
  int n = 0;
  std::vector<BsgsLevel> levels;

  BigUint order() const;
  bool member(const Mat<Fq> &g) const;
  std::vector<Mat<Fq>> strong_gens() const;

  // internal, exposed for the builder
  uint64_t pack(const std::vector<fel> &v) const;
  std::vector<fel> unpack(uint64_t point) const;
  uint64_t apply(const Mat<Fq> &g, uint64_t point) const;
  Mat<Fq> representative(const BsgsLevel &lv, uint64_t point) const;
};

Bsgs bsgs_build(const Fq &K, const std::vector<Mat<Fq>> &gens,
                const BsgsConfig &cfg = {});

enum class GroupFamily { GL, SL, GU, SU, Sp };

// Exact order of the classical group by the standard product formulas.
// For GU/SU the argument is the base field size q0 (the group lives in
// GL_n(F_{q0^2})).  Sp requires n even.
BigUint classical_order(GroupFamily fam, int n, uint64_t q);

enum class GroupVerdict {
  LinearRange,   // SL_n(q) <= G <= GL_n(q), certified by order = |SL|*d
  UnitaryRange,  // SU_n(q0) <= G <= GU_n(q0)
  Symplectic,    // G = Sp_n(q)
  OrthogonalRange,
  ExtendedSL2,
  ComplexReflectionFinite,
  SymmetricSpn,
  Sporadic,
  Reducible,
  Unknown,
};
const char *verdict_name(GroupVerdict v);

struct ClassifyEvidence {
  BigUint group_order;
  BigUint classical_order; // reference order the verdict was matched against
  uint64_t det_image_order = 0;
  std::string form_kind;     // "hermitian", "alternating", "symmetric", "none"
  std::string exception_hit; // registry name when the verdict came from it
  std::vector<fel> kprime_traces; // n = 2 trace field report
  uint64_t kprime_q = 0;
};

struct ClassificationResult {
  GroupVerdict verdict = GroupVerdict::Unknown;
  ClassifyEvidence evidence;
};

// The finite pseudo-reflection exceptions for n in {3,4}, keyed by the
// parameter exponents mod N up to permutation of the lambda_i and a common
// Galois twist.
struct ExceptionEntry {
  int n;
  uint32_t N;
  uint32_t e0;
  std::vector<uint32_t> e; // sorted
  const char *name;
};
const std::vector<ExceptionEntry> &exception_registry();
std::string exception_lookup(const SymbolicParams &sp);

struct ClassifyOptions {
  BsgsConfig bsgs;
  JPOptions jp;
};

ClassificationResult classify(const Fq &K, const JPTuple<Fq> &t,
                              const SymbolicParams &sp, const ResidueData &rd,
                              const ClassifyOptions &opt = {});

enum class PairVerdict { Surjective, Graph, Degenerate };
const char *pair_name(PairVerdict v);

struct PairwiseReport {
  PairVerdict verdict = PairVerdict::Degenerate;
  bool certificate_graph = false; // decided by the intertwiner shortcut
  int twist_frob = -1;            // Frobenius power matching the two params
  bool twist_dual = false;        // lambda -> lambda^{-1} twist needed
  BigUint order1, order2, joint_order, expected;
  uint64_t det_pair_order = 0;
};

// Compares the image of the block-diagonal tuple at two embeddings with the
// center-corrected product of the single-embedding images.
PairwiseReport pairwise_test(const Fq &K, const SymbolicParams &sp,
                             const ResidueData &rd1, int which1,
                             const ResidueData &rd2, int which2,
                             const ClassifyOptions &opt = {});

} // namespace jpmono

#endif
