#include "jpmono/prymstats.hpp"

#include "jpmono/grpengine.hpp"
#include "jpmono/matrix.hpp"

#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace jpmono {

// ---- differential weights ----

static void check_weights(uint32_t N, const std::vector<uint32_t> &weights) {
  if (N < 2) fail(errc::bad_input, "N must be at least 2");
  if (weights.empty()) fail(errc::bad_weights, "empty weight vector");
  uint64_t s = 0;
  for (uint32_t m : weights) {
    if (m % N == 0) fail(errc::bad_weights, "weight divisible by N");
    s += m;
  }
  if (s % N != 0) fail(errc::bad_weights, "weights do not sum to 0 mod N");
}

int64_t weight_dim(uint32_t N, uint32_t d, const std::vector<uint32_t> &weights) {
  check_weights(N, weights);
  if (d % N == 0) fail(errc::bad_weight, "weight class d must be nonzero mod N");
  d %= N;
  uint64_t s = 0; // N * sum of fractional parts {-d*m_i/N}
  for (uint32_t m : weights) s += (N - (uint64_t)d * m % N) % N;
  return -1 + (int64_t)(s / N);
}

int64_t weight_dim_sum(uint32_t N, const std::vector<uint32_t> &weights) {
  int64_t total = 0;
  for (uint32_t d = 1; d < N; ++d) total += weight_dim(N, d, weights);
  return total;
}

int64_t prym_rank(uint32_t N, uint32_t num_ram_points, uint32_t g) {
  if (N < 1) fail(errc::bad_input, "N must be positive");
  int64_t r = (int64_t)num_ram_points - 2 + 2 * (int64_t)g;
  if (r < 0) fail(errc::negative_rank, "rank formula is negative");
  return r;
}

// ---- equivariant graphs ----

namespace {

std::vector<std::string> graph_tokens(std::istream &in) {
  std::vector<std::string> toks;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) toks.push_back(t);
  }
  return toks;
}

uint32_t take_u32(const std::vector<std::string> &toks, size_t &pos,
                  const char *what) {
  if (pos >= toks.size()) fail(errc::bad_input, std::string("graph file ends before ") + what);
  const std::string &t = toks[pos++];
  uint64_t v = 0;
  for (char c : t) {
    if (c < '0' || c > '9') fail(errc::bad_input, "expected a number, got '" + t + "'");
    v = v * 10 + (uint64_t)(c - '0');
    if (v > 0xffffffffULL) fail(errc::bad_input, "number out of range: " + t);
  }
  return (uint32_t)v;
}

void take_word(const std::vector<std::string> &toks, size_t &pos, const char *w) {
  if (pos >= toks.size() || toks[pos] != w)
    fail(errc::bad_input, std::string("expected keyword '") + w + "'");
  ++pos;
}

} // namespace

EquivariantGraph parse_equivariant_graph(std::istream &in) {
  auto toks = graph_tokens(in);
  size_t pos = 0;
  EquivariantGraph gr;
  take_word(toks, pos, "N");
  gr.N = take_u32(toks, pos, "N");
  take_word(toks, pos, "components");
  gr.components = take_u32(toks, pos, "components");
  take_word(toks, pos, "nodes");
  gr.nodes = take_u32(toks, pos, "nodes");
  take_word(toks, pos, "branches");
  uint32_t nb = take_u32(toks, pos, "branches");
  gr.branch_node.resize(nb);
  gr.branch_component.resize(nb);
  for (uint32_t i = 0; i < nb; ++i) {
    take_word(toks, pos, "branch");
    uint32_t idx = take_u32(toks, pos, "branch index");
    if (idx != i) fail(errc::bad_input, "branch lines must appear in index order");
    gr.branch_node[i] = take_u32(toks, pos, "branch node");
    gr.branch_component[i] = take_u32(toks, pos, "branch component");
  }
  auto sigma = [&](const char *what, uint32_t count, std::vector<uint32_t> &out) {
    take_word(toks, pos, "sigma");
    take_word(toks, pos, what);
    out.resize(count);
    for (uint32_t i = 0; i < count; ++i) out[i] = take_u32(toks, pos, "sigma image");
  };
  sigma("components", gr.components, gr.sigma_components);
  sigma("nodes", gr.nodes, gr.sigma_nodes);
  sigma("branches", nb, gr.sigma_branches);
  if (pos != toks.size()) fail(errc::bad_input, "trailing tokens in graph file");
  validate_equivariant_graph(gr);
  return gr;
}

EquivariantGraph parse_equivariant_graph_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_input, "cannot open graph file: " + path);
  return parse_equivariant_graph(in);
}

namespace {

void check_perm(const std::vector<uint32_t> &s, uint32_t n, uint32_t N,
                const char *what) {
  if (s.size() != n) fail(errc::bad_input, std::string(what) + ": wrong length");
  std::vector<bool> seen(n, false);
  for (uint32_t v : s) {
    if (v >= n || seen[v]) fail(errc::bad_input, std::string(what) + ": not a permutation");
    seen[v] = true;
  }
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t x = i;
    for (uint32_t k = 0; k < N; ++k) x = s[x];
    if (x != i) fail(errc::bad_input, std::string(what) + ": order does not divide N");
  }
}

} // namespace

void validate_equivariant_graph(const EquivariantGraph &gr) {
  if (gr.N < 1) fail(errc::bad_input, "graph N must be positive");
  check_perm(gr.sigma_components, gr.components, gr.N, "sigma components");
  check_perm(gr.sigma_nodes, gr.nodes, gr.N, "sigma nodes");
  check_perm(gr.sigma_branches, gr.branches(), gr.N, "sigma branches");
  std::vector<uint32_t> per_node(gr.nodes, 0);
  for (uint32_t b = 0; b < gr.branches(); ++b) {
    if (gr.branch_node[b] >= gr.nodes) fail(errc::bad_input, "branch points at a missing node");
    if (gr.branch_component[b] >= gr.components)
      fail(errc::bad_input, "branch points at a missing component");
    per_node[gr.branch_node[b]]++;
  }
  for (uint32_t v : per_node)
    if (v < 2) fail(errc::bad_input, "every node needs at least two branches");
  for (uint32_t b = 0; b < gr.branches(); ++b) {
    uint32_t sb = gr.sigma_branches[b];
    if (gr.sigma_nodes[gr.branch_node[b]] != gr.branch_node[sb])
      fail(errc::bad_input, "sigma does not commute with the node incidence");
    if (gr.sigma_components[gr.branch_component[b]] != gr.branch_component[sb])
      fail(errc::bad_input, "sigma does not commute with the component incidence");
  }
}

namespace {

// orbits of the cyclic action are the cycles of sigma; free = length N
int64_t free_orbits(const std::vector<uint32_t> &sigma, uint32_t N) {
  int64_t cnt = 0;
  std::vector<bool> seen(sigma.size(), false);
  for (uint32_t i = 0; i < sigma.size(); ++i) {
    if (seen[i]) continue;
    uint32_t len = 0, x = i;
    do {
      seen[x] = true;
      x = sigma[x];
      ++len;
    } while (x != i);
    if (len == N) ++cnt;
  }
  return cnt;
}

} // namespace

CoverCombinatorics cover_combinatorics(const EquivariantGraph &gr) {
  validate_equivariant_graph(gr);
  CoverCombinatorics cc;
  cc.N = gr.N;
  cc.free_branches = free_orbits(gr.sigma_branches, gr.N);
  cc.free_nodes = free_orbits(gr.sigma_nodes, gr.N);
  cc.free_irreducible = free_orbits(gr.sigma_components, gr.N);

  // connected components of the bipartite incidence graph, via union-find
  uint32_t total = gr.components + gr.nodes;
  std::vector<uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (uint32_t b = 0; b < gr.branches(); ++b)
    parent[find(gr.branch_component[b])] = find(gr.components + gr.branch_node[b]);
  std::unordered_map<uint32_t, uint32_t> label;
  std::vector<uint32_t> comp_of(total);
  for (uint32_t v = 0; v < total; ++v) {
    uint32_t r = find(v);
    auto it = label.find(r);
    if (it == label.end()) it = label.emplace(r, (uint32_t)label.size()).first;
    comp_of[v] = it->second;
  }
  std::vector<uint32_t> sigma_cc(label.size());
  for (uint32_t v = 0; v < gr.components; ++v)
    sigma_cc[comp_of[v]] = comp_of[gr.sigma_components[v]];
  for (uint32_t v = 0; v < gr.nodes; ++v)
    sigma_cc[comp_of[gr.components + v]] = comp_of[gr.components + gr.sigma_nodes[v]];
  cc.free_connected = free_orbits(sigma_cc, gr.N);
  return cc;
}

int64_t torus_rank(const CoverCombinatorics &cc) {
  if (cc.N < 1) fail(errc::bad_input, "N must be positive");
  if (cc.free_branches < 0 || cc.free_nodes < 0 || cc.free_connected < 0 ||
      cc.free_irreducible < 0)
    fail(errc::bad_input, "orbit counts must be nonnegative");
  return (int64_t)phi_u32(cc.N) *
         (cc.free_branches - cc.free_nodes - cc.free_irreducible + cc.free_connected);
}

// ---- wild ramification ----

int64_t wild_multiplicity(int64_t g_cover, int64_t g_sub, uint32_t p, uint32_t l) {
  if (!is_prime_u32(p)) fail(errc::bad_input, "p must be prime");
  if (l < 1) fail(errc::bad_input, "l must be at least 1");
  uint64_t den = p - 1;
  for (uint32_t i = 1; i < l; ++i) {
    if (den > (uint64_t)1 << 62) fail(errc::too_large, "p^l overflows");
    den *= p;
  }
  int64_t diff = g_cover - g_sub;
  if (diff < 0 || diff % (int64_t)den != 0)
    fail(errc::non_integral, "genus drop is not a multiple of p^l - p^(l-1)");
  return diff / (int64_t)den;
}

// ---- Burnside coset averages ----

void Rational::reduce() {
  if (den == 0) fail(errc::bad_input, "zero denominator");
  if (den < 0) {
    den = -den;
    num = -num;
  }
  int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

void check_one_perm(const Perm &s, size_t m, const char *what) {
  if (s.size() != m) fail(errc::bad_input, std::string(what) + ": mixed point counts");
  std::vector<bool> seen(m, false);
  for (uint32_t v : s) {
    if (v >= m || seen[v]) fail(errc::bad_input, std::string(what) + ": not a permutation");
    seen[v] = true;
  }
}

Perm perm_mul(const Perm &a, const Perm &b) { // x -> a[b[x]]
  Perm r(a.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm perm_inv(const Perm &a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = (uint32_t)i;
  return r;
}

struct PermHash {
  size_t operator()(const Perm &p) const {
    size_t h = 0xcbf29ce484222325ULL;
    for (uint32_t v : p) h = (h ^ v) * 0x100000001b3ULL;
    return h;
  }
};

} // namespace

BurnsideReport burnside_coset_average(const std::vector<Perm> &G,
                                      const std::vector<Perm> &Nsub,
                                      const Perm &coset_rep) {
  if (G.empty() || Nsub.empty()) fail(errc::bad_input, "empty group");
  size_t m = coset_rep.size();
  check_one_perm(coset_rep, m, "coset representative");
  for (auto &g : G) check_one_perm(g, m, "G element");
  for (auto &g : Nsub) check_one_perm(g, m, "N element");

  std::unordered_set<Perm, PermHash> gset(G.begin(), G.end());
  std::unordered_set<Perm, PermHash> nset(Nsub.begin(), Nsub.end());
  if (!gset.count(coset_rep)) fail(errc::bad_input, "coset representative not in G");
  for (auto &g : Nsub)
    if (!gset.count(g)) fail(errc::not_normal, "N is not a subset of G");
  Perm id(m);
  std::iota(id.begin(), id.end(), 0u);
  if (!nset.count(id)) fail(errc::bad_input, "N must contain the identity");
  for (auto &a : Nsub)
    for (auto &b : Nsub)
      if (!nset.count(perm_mul(a, b))) fail(errc::bad_input, "N is not closed");
  for (auto &g : G) {
    Perm gi = perm_inv(g);
    for (auto &nel : Nsub)
      if (!nset.count(perm_mul(perm_mul(g, nel), gi)))
        fail(errc::not_normal, "N is not normal in G");
  }

  BurnsideReport rep;
  uint64_t fixed_total = 0;
  for (auto &nel : Nsub) {
    Perm w = perm_mul(nel, coset_rep);
    for (size_t i = 0; i < m; ++i)
      if (w[i] == (uint32_t)i) ++fixed_total;
  }
  rep.average = Rational((int64_t)fixed_total, (int64_t)Nsub.size());

  std::vector<int> orbit(m, -1);
  int norb = 0;
  for (size_t s = 0; s < m; ++s) {
    if (orbit[s] >= 0) continue;
    std::vector<uint32_t> stack{(uint32_t)s};
    orbit[s] = norb;
    while (!stack.empty()) {
      uint32_t x = stack.back();
      stack.pop_back();
      for (auto &nel : Nsub) {
        uint32_t y = nel[x];
        if (orbit[y] < 0) {
          orbit[y] = norb;
          stack.push_back(y);
        }
      }
    }
    ++norb;
  }
  std::vector<uint32_t> image(norb);
  for (size_t i = 0; i < m; ++i) image[orbit[i]] = (uint32_t)orbit[coset_rep[i]];
  for (int o = 0; o < norb; ++o)
    if (image[o] == (uint32_t)o) ++rep.preserved_orbits;
  rep.equal = rep.average == Rational(rep.preserved_orbits);
  return rep;
}

// ---- SL_n orbits on V + V^* ----

SlOrbitReport sl_orbit_count(uint32_t n, uint32_t l) {
  if (n < 3) fail(errc::rank_too_small, "orbit count needs rank at least 3");
  if (!is_prime_u32(l)) fail(errc::bad_input, "l must be prime");
  SlOrbitReport rep;
  rep.nonzero_pairing = (int64_t)l - 1;
  rep.zero_zero = 1;
  rep.vector_only = 1;
  rep.functional_only = 1;
  rep.isotropic_pair = 1;
  rep.total = rep.nonzero_pairing + 4;
  return rep;
}

namespace {

constexpr uint64_t brute_cap = 10000000;

// standard generators of SL_n: the elementary transvection and the signed
// cycle (determinant one)
std::vector<Mat<Fq>> sl_generators(const Fq &K, uint32_t n) {
  Mat<Fq> T = mat_identity(K, (int)n);
  T.at(0, 1) = K.one();
  Mat<Fq> C((int)n, (int)n);
  for (uint32_t i = 0; i + 1 < n; ++i) C.at((int)i + 1, (int)i) = K.one();
  C.at(0, (int)n - 1) = (n % 2 == 0) ? K.neg(K.one()) : K.one();
  return {T, C};
}

} // namespace

int64_t sl_orbit_count_brute(uint32_t n, uint32_t l) {
  if (n < 3) fail(errc::rank_too_small, "orbit count needs rank at least 3");
  if (!is_prime_u32(l)) fail(errc::bad_input, "l must be prime");
  uint64_t half = 1;
  for (uint32_t i = 0; i < n; ++i) {
    half *= l;
    if (half > brute_cap) fail(errc::cap_exceeded, "point set exceeds the brute cap");
  }
  if (half * half > brute_cap) fail(errc::cap_exceeded, "point set exceeds the brute cap");
  uint64_t npts = half * half;

  Fq K(l);
  auto gens = sl_generators(K, n);
  std::vector<Mat<Fq>> ginv;
  for (auto &g : gens) ginv.push_back(mat_inverse(K, g));

  std::vector<uint32_t> v(n), w(n);
  auto unpack = [&](uint64_t idx, std::vector<uint32_t> &out) {
    for (uint32_t i = 0; i < n; ++i) {
      out[i] = (uint32_t)(idx % l);
      idx /= l;
    }
  };
  auto pack = [&](const std::vector<uint32_t> &in) {
    uint64_t idx = 0;
    for (uint32_t i = n; i-- > 0;) idx = idx * l + in[i];
    return idx;
  };

  std::vector<bool> seen(npts, false);
  int64_t orbits = 0;
  std::vector<uint64_t> stack;
  std::vector<uint32_t> img(n);
  for (uint64_t s = 0; s < npts; ++s) {
    if (seen[s]) continue;
    ++orbits;
    seen[s] = true;
    stack.assign(1, s);
    while (!stack.empty()) {
      uint64_t x = stack.back();
      stack.pop_back();
      unpack(x % half, v);
      unpack(x / half, w);
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        // (v, w) -> (g v, w g^-1)
        for (uint32_t i = 0; i < n; ++i) {
          uint64_t acc = 0;
          for (uint32_t j = 0; j < n; ++j)
            acc += (uint64_t)gens[gi].at((int)i, (int)j) * v[j];
          img[i] = (uint32_t)(acc % l);
        }
        uint64_t vi = pack(img);
        for (uint32_t j = 0; j < n; ++j) {
          uint64_t acc = 0;
          for (uint32_t i = 0; i < n; ++i)
            acc += (uint64_t)w[i] * ginv[gi].at((int)i, (int)j);
          img[j] = (uint32_t)(acc % l);
        }
        uint64_t y = pack(img) * half + vi;
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
  }
  return orbits;
}

// ---- expected Selmer sizes ----

Rational expected_selmer(const SelmerQuery &sq) {
  if (sq.n < 3) fail(errc::rank_too_small, "the count needs rank at least 3");
  if (!is_prime_u32(sq.l)) fail(errc::bad_input, "l must be prime");
  if (sq.q_mod_3 != 1 && sq.q_mod_3 != 2)
    fail(errc::bad_input, "q_mod_3 selects a class mod 3, so 1 or 2");
  int leg;
  if (sq.l % 3 == 1)
    leg = 1;
  else if (sq.l % 3 == 2)
    leg = -1;
  else {
    if (!sq.allow_l3)
      fail(errc::bad_input, "l = 3 needs the explicit opt-in flag");
    leg = 0;
  }
  return Rational((int64_t)sq.l + 2 + leg);
}

namespace {

// pack a 3x3 matrix over F_{l^2} into a 64-bit key (entries < 32)
uint64_t pack_mat3(const Mat<Fq> &A) {
  uint64_t key = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) key = (key << 5) | A.at(i, j);
  return key;
}

Mat<Fq> unpack_mat3(uint64_t key) {
  Mat<Fq> A(3, 3);
  for (int i = 2; i >= 0; --i)
    for (int j = 2; j >= 0; --j) {
      A.at(i, j) = (fel)(key & 31);
      key >>= 5;
    }
  return A;
}

Mat<Fq> sigma_t3(const Fq &K, const Mat<Fq> &A) {
  Mat<Fq> R(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) R.at(i, j) = K.frob(A.at(j, i));
  return R;
}

bool unitary3(const Fq &K, const Mat<Fq> &A) {
  Mat<Fq> P = mat_mul(K, A, sigma_t3(K, A));
  return P == mat_identity(K, 3);
}

} // namespace

SelmerBruteReport selmer_brute_average(uint32_t l) {
  if (!is_prime_u32(l)) fail(errc::bad_input, "l must be prime");
  if (l % 3 == 0)
    fail(errc::unsupported, "l = 3 has no enumeration model");
  if (l % 3 == 1) {
    // the split model needs all of GL_3(F_l), which is past the cap for
    // every prime in this class; the smallest, l = 7, has 3.4e7 elements
    BigUint ord = classical_order(GroupFamily::GL, 3, l);
    if (!ord.fits_u64() || ord.as_u64() > brute_cap)
      fail(errc::cap_exceeded, "GL_3(F_" + std::to_string(l) +
                                   ") exceeds the enumeration cap");
    fail(errc::unsupported, "unreachable split enumeration");
  }

  Fq K(l, 2);
  BigUint ord_b = classical_order(GroupFamily::GU, 3, l);
  if (!ord_b.fits_u64() || ord_b.as_u64() > brute_cap)
    fail(errc::cap_exceeded, "GU_3(F_" + std::to_string(l) +
                                 ") exceeds the enumeration cap");
  uint64_t expected_order = ord_b.as_u64();

  fel prim = 0;
  for (fel a = 2; a < K.q; ++a)
    if (K.mul_order(a) == K.q - 1) {
      prim = a;
      break;
    }
  fel zeta = K.pow(prim, l - 1); // generator of the norm-one scalars

  std::vector<Mat<Fq>> gens;
  {
    Mat<Fq> cyc(3, 3);
    cyc.at(1, 0) = K.one();
    cyc.at(2, 1) = K.one();
    cyc.at(0, 2) = K.one();
    gens.push_back(cyc);
    Mat<Fq> swp = mat_identity(K, 3);
    swp.at(0, 0) = swp.at(1, 1) = 0;
    swp.at(0, 1) = swp.at(1, 0) = K.one();
    gens.push_back(swp);
    Mat<Fq> dia = mat_identity(K, 3);
    dia.at(0, 0) = zeta;
    gens.push_back(dia);
    // unitary reflections along a few anisotropic vectors
    std::vector<std::array<fel, 3>> vecs = {
        {K.one(), K.one(), 0},          {0, K.one(), K.one()},
        {K.one(), K.one(), K.one()},    {K.one(), prim, 0},
        {K.one(), 0, prim},             {K.one(), K.one(), prim}};
    for (auto &v : vecs) {
      fel norm = 0;
      for (fel x : v) norm = K.add(norm, K.mul(x, K.frob(x)));
      if (K.is_zero(norm)) continue;
      fel c = K.mul(K.sub(K.one(), zeta), K.inv(norm));
      Mat<Fq> R = mat_identity(K, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          R.at(i, j) = K.sub(R.at(i, j), K.mul(c, K.mul(v[i], K.frob(v[j]))));
      if (unitary3(K, R)) gens.push_back(R);
    }
  }
  for (auto &g : gens)
    if (!unitary3(K, g)) fail(errc::no_solution, "generator fails the form check");

  Bsgs bs = bsgs_build(K, gens);
  if (!(bs.order() == ord_b))
    fail(errc::no_solution, "generators do not span the unitary group");

  // full enumeration by closure, tallying fixed vectors per determinant coset
  std::vector<fel> coset_labels; // powers of zeta
  {
    fel z = K.one();
    do {
      coset_labels.push_back(z);
      z = K.mul(z, zeta);
    } while (z != K.one());
  }
  auto coset_index = [&](fel d) {
    for (size_t i = 0; i < coset_labels.size(); ++i)
      if (coset_labels[i] == d) return i;
    fail(errc::no_solution, "determinant outside the norm-one scalars");
  };

  std::vector<uint64_t> fixed_sum(coset_labels.size(), 0);
  std::vector<uint64_t> coset_size(coset_labels.size(), 0);
  std::unordered_set<uint64_t> seen;
  std::vector<uint64_t> stack;
  uint64_t id_key = pack_mat3(mat_identity(K, 3));
  seen.insert(id_key);
  stack.push_back(id_key);
  Mat<Fq> I3 = mat_identity(K, 3);
  while (!stack.empty()) {
    uint64_t key = stack.back();
    stack.pop_back();
    Mat<Fq> A = unpack_mat3(key);
    size_t ci = coset_index(mat_det(K, A));
    coset_size[ci]++;
    uint64_t nullity = (uint64_t)(3 - mat_rank(K, mat_sub(K, A, I3)));
    uint64_t fix = 1;
    for (uint64_t i = 0; i < nullity; ++i) fix *= K.q;
    fixed_sum[ci] += fix;
    for (auto &g : gens) {
      uint64_t nk = pack_mat3(mat_mul(K, A, g));
      if (seen.insert(nk).second) stack.push_back(nk);
    }
  }

  SelmerBruteReport rep;
  rep.group_order = 0;
  uint64_t total = 0;
  for (size_t i = 0; i < coset_labels.size(); ++i) {
    rep.group_order += coset_size[i];
    total += fixed_sum[i];
    rep.coset_averages.push_back(
        Rational((int64_t)fixed_sum[i], (int64_t)coset_size[i]));
  }
  if (rep.group_order != expected_order)
    fail(errc::no_solution, "enumeration disagrees with the group order");
  rep.average = Rational((int64_t)total, (int64_t)rep.group_order);
  return rep;
}

const std::array<const char *, 5> &j0_component_groups() {
  static const std::array<const char *, 5> table = {"1", "C3", "C2xC2", "C3", "1"};
  return table;
}

} // namespace jpmono
