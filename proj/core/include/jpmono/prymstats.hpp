#ifndef JPMONO_PRYMSTATS_HPP
#define JPMONO_PRYMSTATS_HPP

#include "jpmono/error.hpp"
#include "jpmono/rings.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace jpmono {

// ---- differential weights ----

// Dimension of the weight-d eigenspace of differentials on the cyclic cover
// of the line with the given branch weights: -1 + sum_i {-d*m_i/N}.
int64_t weight_dim(uint32_t N, uint32_t d, const std::vector<uint32_t> &weights);

// Sum of weight_dim over d = 1..N-1.  For a connected cover this is the
// genus; the weight-0 layer adds the base genus, zero over the line.
int64_t weight_dim_sum(uint32_t N, const std::vector<uint32_t> &weights);

// Rank of the Prym as a module over the cyclotomic integers:
// num_ram_points - 2 + 2g.
int64_t prym_rank(uint32_t N, uint32_t num_ram_points, uint32_t g);

// ---- torus rank of seminormal covers ----

// Equivariant multicross curve through its branch incidence data:
// irreducible components, singular points ("nodes"), and branches (points of
// the normalization lying over the nodes).  sigma_* give the action of a
// fixed generator of Z/N on each index set.
struct EquivariantGraph {
  uint32_t N = 1;
  uint32_t components = 0;
  uint32_t nodes = 0;
  std::vector<uint32_t> branch_node;      // branch -> its node
  std::vector<uint32_t> branch_component; // branch -> component carrying it
  std::vector<uint32_t> sigma_components;
  std::vector<uint32_t> sigma_nodes;
  std::vector<uint32_t> sigma_branches;
  uint32_t branches() const { return (uint32_t)branch_node.size(); }
};

// Plain-text format documented in the README: header lines N / components /
// nodes / branches, one `branch i node comp` line per branch in index order,
// then `sigma components|nodes|branches ...` lines.  `#` comments and blank
// lines are skipped.
EquivariantGraph parse_equivariant_graph(std::istream &in);
EquivariantGraph parse_equivariant_graph_file(const std::string &path);

// Permutation consistency, equivariance of the incidence maps, sigma^N = id,
// and at least two branches per node.
void validate_equivariant_graph(const EquivariantGraph &gr);

struct CoverCombinatorics {
  uint32_t N = 1;
  std::vector<uint32_t> weights; // optional branch weights of the cover
  uint32_t g = 0;                // genus of the base
  int64_t free_branches = 0;     // free orbits on branches (node preimages)
  int64_t free_nodes = 0;        // free orbits on nodes
  int64_t free_connected = 0;    // free orbits on connected components
  int64_t free_irreducible = 0;  // free orbits on irreducible components
};

// Free-orbit bookkeeping for the torus formula, read off the graph action.
CoverCombinatorics cover_combinatorics(const EquivariantGraph &gr);

// Dimension of the torus factor of the Prym:
// phi(N) * (free_branches - free_nodes - free_irreducible + free_connected).
int64_t torus_rank(const CoverCombinatorics &cc);

// ---- wild ramification ----

// (g_cover - g_sub) / (p^l - p^{l-1}); NonIntegral signals genus data that is
// inconsistent with a single wild point of the given jump.
int64_t wild_multiplicity(int64_t g_cover, int64_t g_sub, uint32_t p, uint32_t l);

// ---- Burnside averages over cosets ----

using Perm = std::vector<uint32_t>;

struct Rational {
  int64_t num = 0;
  int64_t den = 1;
  Rational() = default;
  Rational(int64_t n, int64_t d = 1) : num(n), den(d) { reduce(); }
  void reduce();
  bool operator==(const Rational &o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational &o) const { return !(*this == o); }
  std::string str() const;
};

struct BurnsideReport {
  Rational average;               // mean fixed-point count over the coset
  int64_t preserved_orbits = 0;   // Nsub-orbits preserved by the coset
  bool equal = false;
};

// Averages fixed points of the coset Nsub * coset_rep and counts the
// Nsub-orbits the coset preserves; the two sides agree and both are
// returned.  G and Nsub are explicit permutation lists on the same points,
// Nsub normal in G.
BurnsideReport burnside_coset_average(const std::vector<Perm> &G,
                                      const std::vector<Perm> &Nsub,
                                      const Perm &coset_rep);

// ---- orbits of SL_n on V + V^* ----

struct SlOrbitReport {
  int64_t total = 0;
  int64_t nonzero_pairing = 0; // one orbit per nonzero value of lambda(v)
  int64_t zero_zero = 0;
  int64_t vector_only = 0;     // (v, 0) with v nonzero
  int64_t functional_only = 0; // (0, lambda) with lambda nonzero
  int64_t isotropic_pair = 0;  // both nonzero, lambda(v) = 0
};

// Closed-form count for n >= 3: l + 3 orbits, inventoried by the value of
// the evaluation pairing.
SlOrbitReport sl_orbit_count(uint32_t n, uint32_t l);

// Brute-force oracle: orbit count of the standard SL_n(F_l) generators on
// the l^(2n) points of V + V^*, by breadth-first closure.
int64_t sl_orbit_count_brute(uint32_t n, uint32_t l);

// ---- expected Selmer sizes ----

struct SelmerQuery {
  uint32_t n = 3;        // rank of the family, >= 3
  uint32_t l = 2;        // the Selmer prime
  int q_mod_3 = 1;       // arithmetic-monodromy coset selector: 1 or 2
  bool allow_l3 = false; // opt-in for l = 3, where the count needs the
                         // flagged extension of the argument
};

// l + 2 + legendre(l, 3) as the large-field limit.  The no-reducible-fiber
// hypothesis is the caller's responsibility; it is not re-checked here.
Rational expected_selmer(const SelmerQuery &sq);

struct SelmerBruteReport {
  Rational average;                     // over the whole arithmetic group
  std::vector<Rational> coset_averages; // per determinant coset
  uint64_t group_order = 0;
};

// Enumerates the arithmetic monodromy group of the l-torsion model and
// averages fixed-vector counts: GU_3(F_l) on the Hermitian space over
// F_{l^2} when l = 2 mod 3.  Groups past 10^7 elements raise CapExceeded,
// which today rules out every prime l = 1 mod 3 (the linear model needs all
// of GL_3(F_l)); l = 3 has no enumeration model and is Unsupported.
SelmerBruteReport selmer_brute_average(uint32_t l);

// Component groups of the five additive special fibers with j = 0, in the
// conventional order of the reduction types.
const std::array<const char *, 5> &j0_component_groups();

} // namespace jpmono

#endif
