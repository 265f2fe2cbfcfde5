#include "jpmono/grpengine.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace jpmono {

namespace {

constexpr uint64_t kDenseLimit = uint64_t(1) << 26;
constexpr uint32_t kRootMark = 0xff;

uint64_t point_space(const Fq &K, int n) {
  uint64_t space = 1;
  for (int i = 0; i < n; ++i) {
    if (space > (uint64_t(1) << 60) / K.q) return UINT64_MAX;
    space *= K.q;
  }
  return space;
}

} // namespace

void PointIndex::init(uint64_t space) {
  dense_ = space <= kDenseLimit;
  if (dense_) tab_.assign((size_t)space, 0);
  map_.clear();
}

uint32_t PointIndex::get(uint64_t point) const {
  if (dense_) return tab_[(size_t)point];
  auto it = map_.find(point);
  return it == map_.end() ? 0 : it->second;
}

void PointIndex::put(uint64_t point, uint32_t value) {
  if (dense_) tab_[(size_t)point] = value;
  else map_[point] = value;
}

uint64_t Bsgs::pack(const std::vector<fel> &v) const {
  uint64_t r = 0;
  for (int i = n - 1; i >= 0; --i) r = r * K->q + v[i];
  return r;
}

std::vector<fel> Bsgs::unpack(uint64_t point) const {
  std::vector<fel> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = (fel)(point % K->q);
    point /= K->q;
  }
  return v;
}

uint64_t Bsgs::apply(const Mat<Fq> &g, uint64_t point) const {
  return pack(mat_vec(*K, g, unpack(point)));
}

Mat<Fq> Bsgs::representative(const BsgsLevel &lv, uint64_t point) const {
  Mat<Fq> U = mat_identity(*K, n);
  uint64_t cur = point;
  for (;;) {
    uint32_t val = lv.transversal.get(cur);
    if (val == 0) fail(errc::no_solution, "point outside the stored orbit");
    --val;
    uint32_t gi = val & 0xff;
    if (gi == kRootMark) return U;
    U = mat_mul(*K, U, lv.gens[gi]);
    cur = lv.points[val >> 8];
  }
}

BigUint Bsgs::order() const {
  BigUint r(1);
  for (auto &lv : levels) r.mul_u64(lv.points.size());
  return r;
}

bool Bsgs::member(const Mat<Fq> &g) const {
  if (levels.empty()) return mat_is_identity(*K, g);
  Mat<Fq> h = g;
  for (auto &lv : levels) {
    uint64_t gamma = apply(h, lv.beta_packed);
    if (lv.transversal.get(gamma) == 0) return false;
    h = mat_mul(*K, mat_inverse(*K, representative(lv, gamma)), h);
  }
  return mat_is_identity(*K, h);
}

std::vector<Mat<Fq>> Bsgs::strong_gens() const {
  std::vector<Mat<Fq>> out;
  for (auto &lv : levels)
    out.insert(out.end(), lv.gens.begin(), lv.gens.end());
  return out;
}

namespace {

void orbit_extend(Bsgs &B, BsgsLevel &lv, int gi, const BsgsConfig &cfg) {
  uint64_t cap = std::min<uint64_t>(cfg.orbit_cap, (uint64_t(1) << 24) - 2);
  auto try_add = [&](uint64_t point, size_t parent, int g) {
    if (lv.transversal.get(point) != 0) return;
    if (lv.points.size() >= cap) fail(errc::too_large, "orbit exceeds the configured cap");
    lv.transversal.put(point, (uint32_t((parent << 8) | (uint32_t)g)) + 1);
    lv.points.push_back(point);
  };
  size_t old = lv.points.size();
  for (size_t t = 0; t < old; ++t)
    try_add(B.apply(lv.gens[gi], lv.points[t]), t, gi);
  for (size_t t = old; t < lv.points.size(); ++t)
    for (int g = 0; g < (int)lv.gens.size(); ++g)
      try_add(B.apply(lv.gens[g], lv.points[t]), t, g);
}

void add_gen_at(Bsgs &B, size_t li, const Mat<Fq> &g, const BsgsConfig &cfg) {
  BsgsLevel &lv = B.levels[li];
  if (lv.gens.size() >= 254) fail(errc::too_large, "strong generator overflow");
  lv.gens.push_back(g);
  orbit_extend(B, lv, (int)lv.gens.size() - 1, cfg);
}

bool start_new_level(const Fq &K, Bsgs &B, const Mat<Fq> &g,
                     const BsgsConfig &cfg) {
  int moved = -1;
  for (int j = 0; j < B.n && moved < 0; ++j)
    for (int i = 0; i < B.n; ++i) {
      fel want = i == j ? K.one() : K.zero();
      if (!K.is_zero(K.sub(g.at(i, j), want))) {
        moved = j;
        break;
      }
    }
  if (moved < 0) return false;
  BsgsLevel lv;
  lv.beta.assign(B.n, K.zero());
  lv.beta[moved] = K.one();
  B.levels.push_back(std::move(lv));
  BsgsLevel &nl = B.levels.back();
  nl.beta_packed = B.pack(nl.beta);
  nl.transversal.init(point_space(K, B.n));
  nl.transversal.put(nl.beta_packed, kRootMark + 1);
  nl.points.push_back(nl.beta_packed);
  add_gen_at(B, B.levels.size() - 1, g, cfg);
  return true;
}

bool incorporate(const Fq &K, Bsgs &B, Mat<Fq> h, const BsgsConfig &cfg) {
  bool changed = false;
  for (size_t i = 0; i < B.levels.size(); ++i) {
    BsgsLevel &lv = B.levels[i];
    uint64_t gamma = B.apply(h, lv.beta_packed);
    if (lv.transversal.get(gamma) == 0) {
      add_gen_at(B, i, h, cfg);
      changed = true;
    }
    h = mat_mul(K, mat_inverse(K, B.representative(lv, gamma)), h);
  }
  if (!mat_is_identity(K, h)) changed = start_new_level(K, B, h, cfg) || changed;
  return changed;
}

} // namespace

Bsgs bsgs_build(const Fq &K, const std::vector<Mat<Fq>> &gens,
                const BsgsConfig &cfg) {
  Bsgs B;
  B.K = &K;
  std::vector<Mat<Fq>> O;
  for (auto &g : gens) {
    if (g.n != g.m) fail(errc::dimension_mismatch, "generators must be square");
    if (!mat_is_identity(K, g)) O.push_back(g);
  }
  B.n = O.empty() ? (gens.empty() ? 0 : gens[0].n) : O[0].n;
  for (auto &g : O) {
    if (g.n != B.n) fail(errc::dimension_mismatch, "generators of mixed sizes");
    mat_inverse(K, g); // surfaces Singular before any orbit work
  }
  if (O.empty()) return B;

  for (auto &g : O) incorporate(K, B, g, cfg);

  Rng rng(cfg.seed ^ 0xd1b54a32d192ed03ULL);
  auto word = [&]() {
    Mat<Fq> h = O[rng.below(O.size())];
    uint64_t len = 1 + rng.below(cfg.word_cap);
    for (uint64_t i = 1; i < len; ++i) h = mat_mul(K, h, O[rng.below(O.size())]);
    return h;
  };

  for (;;) {
    uint32_t clean = 0;
    while (clean < cfg.clean_target) {
      if (incorporate(K, B, word(), cfg)) clean = 0;
      else ++clean;
    }
    bool ok = true;
    for (auto &g : O)
      if (!B.member(g)) {
        incorporate(K, B, g, cfg);
        ok = false;
      }
    for (uint32_t i = 0; i < cfg.verify_words; ++i) {
      Mat<Fq> w = word();
      if (!B.member(w)) {
        incorporate(K, B, w, cfg);
        ok = false;
      }
    }
    if (ok) return B;
  }
}

BigUint classical_order(GroupFamily fam, int n, uint64_t q) {
  if (n < 1) fail(errc::bad_input, "classical_order: n must be positive");
  if (q < 2) fail(errc::bad_input, "classical_order: q must be at least 2");
  auto qpow = [&](int e) {
    unsigned __int128 v = 1;
    for (int i = 0; i < e; ++i) {
      v *= q;
      if (v > (unsigned __int128)UINT64_MAX / 2) fail(errc::too_large, "classical_order");
    }
    return (uint64_t)v;
  };
  BigUint r(1);
  switch (fam) {
  case GroupFamily::GL:
  case GroupFamily::SL: {
    for (int i = 0; i < n * (n - 1) / 2; ++i) r.mul_u64(q);
    for (int i = 1; i <= n; ++i) r.mul_u64(qpow(i) - 1);
    if (fam == GroupFamily::SL && r.divmod_u64(q - 1) != 0)
      fail(errc::bad_input, "classical_order: SL division");
    return r;
  }
  case GroupFamily::GU:
  case GroupFamily::SU: {
    for (int i = 0; i < n * (n - 1) / 2; ++i) r.mul_u64(q);
    for (int i = 1; i <= n; ++i) r.mul_u64(i % 2 ? qpow(i) + 1 : qpow(i) - 1);
    if (fam == GroupFamily::SU && r.divmod_u64(q + 1) != 0)
      fail(errc::bad_input, "classical_order: SU division");
    return r;
  }
  case GroupFamily::Sp: {
    if (n % 2) fail(errc::bad_input, "classical_order: Sp needs even n");
    int m = n / 2;
    for (int i = 0; i < m * m; ++i) r.mul_u64(q);
    for (int i = 1; i <= m; ++i) r.mul_u64(qpow(2 * i) - 1);
    return r;
  }
  }
  fail(errc::bad_input, "classical_order: unknown family");
}

const char *verdict_name(GroupVerdict v) {
  switch (v) {
  case GroupVerdict::LinearRange: return "LinearRange";
  case GroupVerdict::UnitaryRange: return "UnitaryRange";
  case GroupVerdict::Symplectic: return "Symplectic";
  case GroupVerdict::OrthogonalRange: return "OrthogonalRange";
  case GroupVerdict::ExtendedSL2: return "ExtendedSL2";
  case GroupVerdict::ComplexReflectionFinite: return "ComplexReflectionFinite";
  case GroupVerdict::SymmetricSpn: return "SymmetricSpn";
  case GroupVerdict::Sporadic: return "Sporadic";
  case GroupVerdict::Reducible: return "Reducible";
  case GroupVerdict::Unknown: return "Unknown";
  }
  return "?";
}

const char *pair_name(PairVerdict v) {
  switch (v) {
  case PairVerdict::Surjective: return "Surjective";
  case PairVerdict::Graph: return "Graph";
  case PairVerdict::Degenerate: return "Degenerate";
  }
  return "?";
}

const std::vector<ExceptionEntry> &exception_registry() {
  static const std::vector<ExceptionEntry> reg = {
      {3, 6, 2, {1, 1, 1, 1}, "3^{1+2}.2"},
      {3, 6, 1, {1, 1, 1, 2}, "ST26"},
      {4, 6, 1, {1, 1, 1, 1, 1}, "ST32"},
  };
  return reg;
}

std::string exception_lookup(const SymbolicParams &sp) {
  int n = (int)sp.e.size() - 1;
  for (auto &ent : exception_registry()) {
    if (ent.N != sp.N || ent.n != n || (int)ent.e.size() != n + 1) continue;
    for (uint32_t t = 1; t < sp.N; ++t) {
      if (std::gcd(t, sp.N) != 1u) continue;
      if ((uint64_t)sp.e0 * t % sp.N != ent.e0) continue;
      std::vector<uint32_t> tw;
      for (auto e : sp.e) tw.push_back((uint32_t)((uint64_t)e * t % sp.N));
      std::sort(tw.begin(), tw.end());
      if (tw == ent.e) return ent.name;
    }
  }
  return {};
}

namespace {

uint64_t det_image_order(const Fq &K, const Params<Fq> &par) {
  uint64_t d = 1;
  for (auto l : par.lambdas)
    d = std::lcm(d, (uint64_t)K.mul_order(K.mul(par.lambda0, l)));
  return d;
}

std::optional<FormMatrix> try_form(const Fq &K, const JPTuple<Fq> &t, InvolKind iv) {
  try {
    return invariant_form(K, t, iv);
  } catch (const Error &e) {
    if (e.code == errc::no_form || e.code == errc::non_unique) return std::nullopt;
    throw;
  }
}

} // namespace

ClassificationResult classify(const Fq &K, const JPTuple<Fq> &t,
                              const SymbolicParams &sp, const ResidueData &rd,
                              const ClassifyOptions &opt) {
  ClassificationResult res;
  ClassifyEvidence &ev = res.evidence;
  int n = t.n();

  std::string hit = exception_lookup(sp);
  if (!hit.empty()) {
    Bsgs B = bsgs_build(K, t.gens, opt.bsgs);
    ev.group_order = B.order();
    ev.classical_order = ev.group_order;
    ev.det_image_order = det_image_order(K, t.params);
    ev.exception_hit = hit;
    res.verdict = GroupVerdict::ComplexReflectionFinite;
    return res;
  }

  if (meataxe_irreducible(K, t.gens, opt.jp.seed) == IrrVerdict::Reducible) {
    ev.form_kind = "none";
    res.verdict = GroupVerdict::Reducible;
    return res;
  }

  ev.det_image_order = det_image_order(K, t.params);
  std::optional<FormMatrix> herm, bil;
  if (K.k % 2 == 0) herm = try_form(K, t, InvolKind::FrobeniusHalf);
  bil = try_form(K, t, InvolKind::Identity);
  if (herm) ev.form_kind = "hermitian";
  else if (bil) ev.form_kind = bil->sign < 0 ? "alternating" : "symmetric";
  else ev.form_kind = "none";

  Bsgs B = bsgs_build(K, t.gens, opt.bsgs);
  ev.group_order = B.order();

  if (rd.invol == InvolKind::FrobeniusHalf && herm) {
    uint64_t q0 = 1;
    for (uint32_t i = 0; i < K.k / 2; ++i) q0 *= K.p;
    if ((q0 + 1) % ev.det_image_order == 0) {
      BigUint su = classical_order(GroupFamily::SU, n, q0);
      ev.classical_order = su;
      BigUint expect = su;
      expect.mul_u64(ev.det_image_order);
      if (expect == ev.group_order) {
        res.verdict = GroupVerdict::UnitaryRange;
        return res;
      }
    }
    res.verdict = GroupVerdict::Unknown;
    return res;
  }

  fel m1 = K.neg(K.one());
  bool allm1 = K.is_zero(K.sub(t.params.lambda0, m1));
  for (auto l : t.params.lambdas)
    allm1 = allm1 && K.is_zero(K.sub(l, m1));
  if (allm1 && n % 2 == 0 && bil && bil->sign < 0) {
    BigUint spo = classical_order(GroupFamily::Sp, n, K.q);
    ev.classical_order = spo;
    res.verdict = spo == ev.group_order ? GroupVerdict::Symplectic
                                        : GroupVerdict::Unknown;
    return res;
  }

  if (((uint64_t)K.q - 1) % ev.det_image_order == 0) {
    BigUint sl = classical_order(GroupFamily::SL, n, K.q);
    ev.classical_order = sl;
    BigUint expect = sl;
    expect.mul_u64(ev.det_image_order);
    if (expect == ev.group_order) {
      res.verdict = GroupVerdict::LinearRange;
      return res;
    }
  }

  if (n == 2) {
    std::vector<Mat<Fq>> ws = t.gens;
    for (size_t i = 0; i < t.gens.size(); ++i)
      for (size_t j = i + 1; j < t.gens.size(); ++j)
        ws.push_back(mat_mul(K, t.gens[i], t.gens[j]));
    Mat<Fq> all = t.gens[0];
    for (size_t i = 1; i < t.gens.size(); ++i) all = mat_mul(K, all, t.gens[i]);
    ws.push_back(all);
    uint32_t deg = 1;
    for (auto &w : ws) {
      fel tr = mat_trace(K, w);
      ev.kprime_traces.push_back(tr);
      uint32_t d = 1;
      fel x = K.frob(tr);
      while (!K.is_zero(K.sub(x, tr))) {
        ++d;
        x = K.frob(x);
      }
      deg = std::lcm(deg, d);
    }
    uint64_t qp = 1;
    for (uint32_t i = 0; i < deg; ++i) qp *= K.p;
    ev.kprime_q = qp;
    uint64_t sl2 = qp * (qp * qp - 1);
    ev.classical_order = BigUint(sl2);
    if (ev.group_order.fits_u64()) {
      uint64_t go = ev.group_order.as_u64();
      if (go % sl2 == 0 && ((uint64_t)(K.q - 1) * sl2) % go == 0) {
        res.verdict = GroupVerdict::ExtendedSL2;
        return res;
      }
    }
  }

  res.verdict = GroupVerdict::Unknown;
  return res;
}

namespace {

Mat<Fq> block_diag(const Mat<Fq> &A, const Mat<Fq> &B) {
  Mat<Fq> C(A.n + B.n, A.m + B.m);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.m; ++j) C.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.n; ++i)
    for (int j = 0; j < B.m; ++j) C.at(A.n + i, A.m + j) = B.at(i, j);
  return C;
}

} // namespace

PairwiseReport pairwise_test(const Fq &K, const SymbolicParams &sp,
                             const ResidueData &rd1, int which1,
                             const ResidueData &rd2, int which2,
                             const ClassifyOptions &opt) {
  PairwiseReport rep;
  ReducedParams r1 = reduce_params(K, sp, rd1, which1);
  ReducedParams r2 = reduce_params(K, sp, rd2, which2);
  if (r1.any_degenerate || r2.any_degenerate) {
    rep.verdict = PairVerdict::Degenerate;
    return rep;
  }
  const Params<Fq> &p1 = r1.par, &p2 = r2.par;

  auto twist = [&](fel a, uint32_t j, bool dual) {
    fel x = dual ? K.inv(a) : a;
    for (uint32_t i = 0; i < j; ++i) x = K.frob(x);
    return x;
  };
  int match_j = -1;
  bool match_dual = false;
  for (int dual = 0; dual < 2 && match_j < 0; ++dual)
    for (uint32_t j = 0; j < K.k && match_j < 0; ++j) {
      bool ok = K.is_zero(K.sub(twist(p1.lambda0, j, dual), p2.lambda0));
      for (size_t i = 0; ok && i < p1.lambdas.size(); ++i)
        ok = K.is_zero(K.sub(twist(p1.lambdas[i], j, dual), p2.lambdas[i]));
      if (ok) {
        match_j = (int)j;
        match_dual = dual;
      }
    }

  JPTuple<Fq> t1 = jp_construct(K, p1, opt.jp);
  JPTuple<Fq> t2 = jp_construct(K, p2, opt.jp);

  if (match_j >= 0) {
    std::vector<Mat<Fq>> tw;
    for (auto g : t1.gens) {
      for (auto &x : g.a)
        for (int s = 0; s < match_j; ++s) x = K.frob(x);
      if (match_dual) g = mat_transpose(K, mat_inverse(K, g));
      tw.push_back(g);
    }
    auto X = intertwiner_space(K, t2.gens, tw);
    if (X.size() == 1 && mat_rank(K, X[0]) == t2.n()) {
      rep.verdict = PairVerdict::Graph;
      rep.certificate_graph = true;
      rep.twist_frob = match_j;
      rep.twist_dual = match_dual;
      return rep;
    }
  }

  Bsgs B1 = bsgs_build(K, t1.gens, opt.bsgs);
  Bsgs B2 = bsgs_build(K, t2.gens, opt.bsgs);
  std::vector<Mat<Fq>> joint;
  for (size_t i = 0; i < t1.gens.size(); ++i)
    joint.push_back(block_diag(t1.gens[i], t2.gens[i]));
  Bsgs B12 = bsgs_build(K, joint, opt.bsgs);
  rep.order1 = B1.order();
  rep.order2 = B2.order();
  rep.joint_order = B12.order();

  uint64_t d1 = det_image_order(K, p1), d2 = det_image_order(K, p2);
  std::unordered_set<uint64_t> closure;
  std::vector<uint64_t> queue;
  auto pk = [](fel a, fel b) { return (uint64_t)a << 32 | b; };
  closure.insert(pk(1, 1));
  queue.push_back(pk(1, 1));
  std::vector<std::pair<fel, fel>> dgens;
  for (size_t i = 0; i < p1.lambdas.size(); ++i)
    dgens.emplace_back(K.mul(p1.lambda0, p1.lambdas[i]),
                       K.mul(p2.lambda0, p2.lambdas[i]));
  for (size_t t = 0; t < queue.size(); ++t) {
    fel a = (fel)(queue[t] >> 32), b = (fel)(queue[t] & 0xffffffffu);
    for (auto &[c, d] : dgens) {
      uint64_t nx = pk(K.mul(a, c), K.mul(b, d));
      if (closure.insert(nx).second) queue.push_back(nx);
    }
  }
  rep.det_pair_order = closure.size();

  BigUint e1 = rep.order1;
  if (e1.divmod_u64(d1) != 0)
    fail(errc::no_solution, "determinant image does not divide the group order");
  BigUint e2 = rep.order2;
  if (e2.divmod_u64(d2) != 0)
    fail(errc::no_solution, "determinant image does not divide the group order");
  BigUint expect = e1 * e2;
  expect.mul_u64(rep.det_pair_order);
  rep.expected = expect;
  rep.verdict = rep.joint_order == rep.expected ? PairVerdict::Surjective
                                                : PairVerdict::Graph;
  return rep;
}

} // namespace jpmono
