// jpmono: command-line front end for the exact monodromy toolkit.
//
// Every subcommand prints one JSON document on stdout (or TSV with
// --output tsv); `sweep` prints one JSON line per grid cell.  Exit codes:
// 0 success, 1 domain error (reported as an {"error": ...} document),
// 2 usage error (stderr only, never partial JSON).

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jpmono/cyclo.hpp"
#include "jpmono/forms.hpp"
#include "jpmono/grpengine.hpp"
#include "jpmono/jprep.hpp"
#include "jpmono/lifting.hpp"
#include "jpmono/prymstats.hpp"

using nlohmann::json;
using namespace jpmono;

namespace {

const char *kVersion = "jpmono-0.1.0";

// Flag-level problems discovered after CLI11 parsing; mapped to exit 2.
struct Usage {
  std::string msg;
};

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

uint32_t parse_u32(const std::string &tok, const std::string &flag) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw Usage{flag + ": expected an unsigned integer, got '" + tok + "'"};
  unsigned long v = std::stoul(tok);
  if (v > 0xffffffffUL) throw Usage{flag + ": value out of range"};
  return (uint32_t)v;
}

std::vector<uint32_t> parse_u32_list(const std::string &s, const std::string &flag) {
  std::vector<uint32_t> out;
  for (auto &tok : split(s, ',')) out.push_back(parse_u32(tok, flag));
  return out;
}

std::vector<Rat> parse_rats(const std::string &s) {
  std::vector<Rat> out;
  for (auto &tok : split(s, ',')) {
    auto pos = tok.find('/');
    if (pos == std::string::npos || pos == 0 || pos + 1 == tok.size())
      throw Usage{"--exponents: entries must look like 3/7"};
    Rat r;
    r.num = (int64_t)parse_u32(tok.substr(0, pos), "--exponents");
    r.den = (int64_t)parse_u32(tok.substr(pos + 1), "--exponents");
    out.push_back(r);
  }
  return out;
}

std::pair<uint32_t, uint32_t> parse_at(const std::string &s, const std::string &flag) {
  auto pos = s.find(':');
  if (pos == std::string::npos)
    throw Usage{flag + ": expected prime:embedding, e.g. 0:0"};
  return {parse_u32(s.substr(0, pos), flag), parse_u32(s.substr(pos + 1), flag)};
}

json error_json(const Error &e) {
  std::string what = e.what();
  std::string name = errc_name(e.code);
  std::string detail =
      what.rfind(name + ": ", 0) == 0 ? what.substr(name.size() + 2) : what;
  return json{{"error", {{"kind", name}, {"detail", detail}}}};
}

json rational_json(const Rational &r) {
  if (r.den == 1) return json(r.num);
  return json(r.str());
}

json mat_json(const Mat<Fq> &A) {
  json rows = json::array();
  for (int i = 0; i < A.n; ++i) {
    json row = json::array();
    for (int j = 0; j < A.m; ++j) row.push_back(A.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

json checks_json(const VerifyReport &rep) {
  auto all = [](const std::vector<bool> &v) {
    for (bool b : v)
      if (!b) return false;
    return true;
  };
  return json{{"pseudoreflections", all(rep.pseudoreflections)},
              {"determinants", all(rep.determinants)},
              {"scalar_product", rep.scalar_product},
              {"params_valid", rep.params_valid}};
}

void flatten(const json &j, const std::string &key,
             std::vector<std::pair<std::string, std::string>> &out) {
  if (j.is_object()) {
    for (auto &el : j.items())
      flatten(el.value(), key.empty() ? el.key() : key + "." + el.key(), out);
  } else if (j.is_array()) {
    size_t i = 0;
    for (auto &v : j) flatten(v, key + "[" + std::to_string(i++) + "]", out);
  } else {
    out.emplace_back(key, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void emit(const json &doc, const std::string &format) {
  if (format == "tsv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    std::sort(rows.begin(), rows.end());
    for (auto &[k, v] : rows) std::cout << k << "\t" << v << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

uint64_t fnv1a(const std::string &s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// ---- symbolic pipeline shared by most subcommands ----

struct SymFlags {
  uint32_t N = 0;
  std::string weights;
  uint32_t prime = 0;
  uint32_t prime_index = 0;
  uint32_t embedding = 0;
  uint64_t seed = 0;
};

struct SymbolicRun {
  SymbolicParams sp;
  std::vector<ResidueData> primes;
  ResidueData rd;
  Fq K{2};
  ReducedParams red;
};

SymbolicRun symbolic_run(uint32_t N, const std::vector<uint32_t> &weights,
                         uint32_t prime, uint32_t prime_index, uint32_t embedding) {
  WeightVector w;
  w.N = N;
  w.m = weights;
  validate_weights(w);
  SymbolicRun r;
  r.sp = params_from_weights(w);
  r.primes = split_prime(N, prime);
  if (prime_index >= r.primes.size())
    fail(errc::bad_input, "prime index " + std::to_string(prime_index) + " out of range (" +
                              std::to_string(r.primes.size()) + " primes above p)");
  r.rd = r.primes[prime_index];
  if (embedding >= r.rd.embeddings.size())
    fail(errc::bad_input, "embedding index out of range");
  r.K = residue_field(r.rd);
  r.red = reduce_params(r.K, r.sp, r.rd, (int)embedding);
  return r;
}

json sym_meta(const SymFlags &f, const SymbolicRun &r) {
  return json{{"N", f.N},
              {"weights", json(parse_u32_list(f.weights, "--weights"))},
              {"prime", f.prime},
              {"prime_index", f.prime_index},
              {"embedding", f.embedding},
              {"q", r.K.q},
              {"involution", invol_name(r.rd.invol)},
              {"ramified", r.rd.ramified}};
}

// ---- jp build / jp verify ----

struct DirectFlags {
  std::string lambdas; // packed field values, comma separated
  uint32_t lambda0 = 0;
  uint32_t k = 1;
};

struct BuiltTuple {
  Fq K;
  JPTuple<Fq> t;
  json meta;
  explicit BuiltTuple(Fq f) : K(std::move(f)) {}
};

BuiltTuple acquire_tuple(const SymFlags &sf, const DirectFlags &df) {
  if (!df.lambdas.empty()) {
    if (sf.prime == 0) throw Usage{"direct mode needs --prime"};
    BuiltTuple b{Fq(sf.prime, df.k)};
    Params<Fq> par;
    auto check = [&](uint32_t v) {
      if (v >= b.K.q) fail(errc::bad_input, "packed value " + std::to_string(v) + " is not below q");
      return (fel)v;
    };
    par.lambda0 = check(df.lambda0);
    for (uint32_t v : parse_u32_list(df.lambdas, "--lambdas")) par.lambdas.push_back(check(v));
    if (par.lambdas.size() < 2) fail(errc::bad_input, "need at least two lambdas (n >= 1)");
    if (!params_product_one(b.K, par))
      fail(errc::bad_input, "lambda_0 * lambda_1 * ... * lambda_{n+1} must equal 1");
    b.t = jp_construct(b.K, par, JPOptions{sf.seed, 64});
    b.meta = json{{"p", sf.prime}, {"k", df.k}, {"q", b.K.q}};
    return b;
  }
  if (sf.N == 0 || sf.weights.empty() || sf.prime == 0)
    throw Usage{"pass --N/--weights/--prime, or --lambdas/--lambda0/--prime for direct mode"};
  auto r = symbolic_run(sf.N, parse_u32_list(sf.weights, "--weights"), sf.prime,
                        sf.prime_index, sf.embedding);
  BuiltTuple b{r.K};
  b.t = jp_construct(b.K, r.red.par, JPOptions{sf.seed, 64});
  b.meta = sym_meta(sf, r);
  return b;
}

json cmd_jp(const SymFlags &sf, const DirectFlags &df, bool verify_mode, bool spectrum) {
  BuiltTuple b = acquire_tuple(sf, df);
  json j = b.meta;
  j["n"] = b.t.n();
  j["params"] = json{{"lambda0", b.t.params.lambda0}, {"lambdas", json(b.t.params.lambdas)}};
  if (!verify_mode) {
    j["op"] = "jp.build";
    json gens = json::array();
    for (auto &g : b.t.gens) gens.push_back(mat_json(g));
    j["gens"] = gens;
    return j;
  }
  j["op"] = "jp.verify";
  auto rep = jp_verify(b.K, b.t, sf.seed);
  j["checks"] = checks_json(rep);
  j["irreducible"] = irr_name(rep.irreducible);
  j["all_ok"] = rep.all_ok();
  if (spectrum) {
    int n = b.t.n();
    if (n + 1 > 16) fail(errc::too_large, "subset sweep needs n <= 15");
    uint32_t full = (1u << (n + 1)) - 1;
    int checked = 0, mismatched = 0;
    for (uint32_t m = 1; m <= full; ++m) {
      std::vector<int> S;
      for (int i = 0; i <= n; ++i)
        if (m & (1u << i)) S.push_back(i + 1);
      auto srep = subset_spectrum(b.K, b.t, S);
      ++checked;
      if (!srep.matches_expected) ++mismatched;
    }
    j["spectrum"] = json{{"subsets", checked}, {"mismatched", mismatched}, {"all_match", mismatched == 0}};
  }
  return j;
}

// ---- forms ----

json cmd_forms_find(const SymFlags &sf, const std::string &involution) {
  auto r = symbolic_run(sf.N, parse_u32_list(sf.weights, "--weights"), sf.prime,
                        sf.prime_index, sf.embedding);
  auto t = jp_construct(r.K, r.red.par, JPOptions{sf.seed, 64});
  InvolKind inv = InvolKind::Identity;
  if (involution == "frobenius") inv = InvolKind::FrobeniusHalf;
  else if (involution == "auto" && r.rd.invol == InvolKind::FrobeniusHalf) inv = InvolKind::FrobeniusHalf;
  FormMatrix fm = invariant_form(r.K, t, inv);
  json j = sym_meta(sf, r);
  j["op"] = "forms.find";
  j["form"] = mat_json(fm.A);
  j["sign"] = fm.sign;
  j["form_involution"] = invol_name(fm.invol);
  j["nondegenerate"] = fm.nondegenerate;
  j["unique"] = true; // a bigger solution space throws NonUnique instead
  return j;
}

json cmd_forms_signature(const std::string &exponents, double tol) {
  SignatureQuery q;
  q.a = parse_rats(exponents);
  Signature f = signature_formula(q);
  Signature num = signature_numeric(q, tol);
  bool agree = (f.pos == num.pos && f.neg == num.neg) ||
               (f.pos == num.neg && f.neg == num.pos);
  int n = (int)q.a.size() - 2;
  return json{{"op", "forms.signature"},
              {"n", n},
              {"pos", f.pos},
              {"neg", f.neg},
              {"numeric", {{"pos", num.pos}, {"neg", num.neg}}},
              {"numeric_agree", agree},
              {"sum_is_n", f.pos + f.neg == n}};
}

// ---- classify / pairwise ----

json classify_result_json(const ClassificationResult &res) {
  return json{{"verdict", verdict_name(res.verdict)},
              {"name", res.evidence.exception_hit},
              {"order", res.evidence.group_order.str()},
              {"reference_order", res.evidence.classical_order.str()},
              {"det_image_order", res.evidence.det_image_order},
              {"form_kind", res.evidence.form_kind}};
}

json cmd_classify(const SymFlags &sf) {
  auto r = symbolic_run(sf.N, parse_u32_list(sf.weights, "--weights"), sf.prime,
                        sf.prime_index, sf.embedding);
  auto t = jp_construct(r.K, r.red.par, JPOptions{sf.seed, 64});
  ClassifyOptions opt;
  opt.bsgs.seed = sf.seed;
  opt.jp.seed = sf.seed;
  auto res = classify(r.K, t, r.sp, r.rd, opt);
  json j = sym_meta(sf, r);
  j["op"] = "classify";
  j.update(classify_result_json(res));
  return j;
}

json cmd_pairwise(const SymFlags &sf, const std::string &at1, const std::string &at2) {
  WeightVector w;
  w.N = sf.N;
  w.m = parse_u32_list(sf.weights, "--weights");
  validate_weights(w);
  SymbolicParams sp = params_from_weights(w);
  auto primes = split_prime(sf.N, sf.prime);
  uint32_t i1, e1, i2, e2;
  if (!at1.empty() || !at2.empty()) {
    if (at1.empty() || at2.empty()) throw Usage{"--at1 and --at2 go together"};
    std::tie(i1, e1) = parse_at(at1, "--at1");
    std::tie(i2, e2) = parse_at(at2, "--at2");
  } else if (primes.size() >= 2) {
    i1 = 0; e1 = 0; i2 = 1; e2 = 0;
  } else if (primes[0].embeddings.size() >= 2) {
    i1 = 0; e1 = 0; i2 = 0; e2 = 1;
  } else {
    fail(errc::bad_input, "only one embedding above this prime; nothing to pair");
  }
  if (i1 >= primes.size() || i2 >= primes.size())
    fail(errc::bad_input, "prime index out of range");
  const ResidueData &rd1 = primes[i1], &rd2 = primes[i2];
  if (e1 >= rd1.embeddings.size() || e2 >= rd2.embeddings.size())
    fail(errc::bad_input, "embedding index out of range");
  Fq K = residue_field(rd1);
  ClassifyOptions opt;
  opt.bsgs.seed = sf.seed;
  opt.jp.seed = sf.seed;
  auto pr = pairwise_test(K, sp, rd1, (int)e1, rd2, (int)e2, opt);
  return json{{"op", "pairwise"},
              {"N", sf.N},
              {"weights", json(w.m)},
              {"prime", sf.prime},
              {"q", K.q},
              {"at1", std::to_string(i1) + ":" + std::to_string(e1)},
              {"at2", std::to_string(i2) + ":" + std::to_string(e2)},
              {"verdict", pair_name(pr.verdict)},
              {"certificate_graph", pr.certificate_graph},
              {"twist_frob", pr.twist_frob},
              {"twist_dual", pr.twist_dual},
              {"order1", pr.order1.str()},
              {"order2", pr.order2.str()},
              {"joint_order", pr.joint_order.str()},
              {"expected", pr.expected.str()},
              {"equal", pr.joint_order == pr.expected},
              {"det_pair_order", pr.det_pair_order}};
}

// ---- lifting ----

json lift_result_json(const LiftReport &rep) {
  json j;
  j["found"] = rep.found;
  if (rep.found) {
    j["origin"] = origin_name(rep.elem.origin);
    j["word"] = rep.elem.word;
    j["target"] = target_name(rep.target);
    j["span_full"] = rep.full;
    j["dim_span"] = rep.dim_span;
    j["dim_target"] = rep.dim_target;
  }
  return j;
}

json cmd_lift_detect(const SymFlags &sf) {
  auto r = symbolic_run(sf.N, parse_u32_list(sf.weights, "--weights"), sf.prime,
                        sf.prime_index, sf.embedding);
  if (!r.rd.ramified)
    fail(errc::bad_input, "lifting needs a ramified prime (p dividing N)");
  DualFq D(r.K);
  LiftParams lp = lift_params(D, r.sp, r.rd, (int)sf.embedding);
  LiftReport rep = lift_run(D, lp, JPOptions{sf.seed, 64});
  json j = sym_meta(sf, r);
  j["op"] = "lift.detect";
  j["nu"] = json(lp.nu);
  j.update(lift_result_json(rep));
  return j;
}

json cmd_lift_sl2w2(uint32_t k) {
  SplitReport s = sl2_w2_split_test(k);
  W2k W(k);
  json j{{"op", "lift.sl2w2"},
         {"k", k},
         {"splits", s.splits},
         {"order2_exists", s.order2_exists},
         {"witness", s.witness}};
  if (s.witness_commutator.n > 0) {
    json rows = json::array(), srows = json::array();
    for (int i = 0; i < s.witness_commutator.n; ++i) {
      json row = json::array(), srow = json::array();
      for (int jj = 0; jj < s.witness_commutator.m; ++jj) {
        row.push_back((int)s.witness_commutator.at(i, jj));
        srow.push_back(W.str(s.witness_commutator.at(i, jj)));
      }
      rows.push_back(row);
      srows.push_back(srow);
    }
    j["witness_commutator"] = rows;
    j["witness_commutator_str"] = srows;
  }
  return j;
}

// ---- prym / selmer ----

json cmd_prym_dims(uint32_t N, const std::string &weights, int64_t d) {
  auto m = parse_u32_list(weights, "--weights");
  json j{{"op", "prym.dims"}, {"N", N}, {"weights", json(m)}};
  if (d >= 0) {
    j["d"] = d;
    j["dim"] = weight_dim(N, (uint32_t)d, m);
    return j;
  }
  json dims = json::array();
  for (uint32_t dd = 1; dd < N; ++dd) dims.push_back(weight_dim(N, dd, m));
  j["dims"] = dims;
  j["sum"] = weight_dim_sum(N, m);
  return j;
}

json cmd_prym_torus(const std::string &path) {
  EquivariantGraph gr = parse_equivariant_graph_file(path);
  CoverCombinatorics cc = cover_combinatorics(gr);
  return json{{"op", "prym.torus"},
              {"N", gr.N},
              {"components", gr.components},
              {"nodes", gr.nodes},
              {"branches", gr.branches()},
              {"free",
               {{"branches", cc.free_branches},
                {"nodes", cc.free_nodes},
                {"connected", cc.free_connected},
                {"irreducible", cc.free_irreducible}}},
              {"torus_rank", torus_rank(cc)}};
}

json cmd_prym_rank(uint32_t N, uint32_t points, uint32_t genus) {
  return json{{"op", "prym.rank"},
              {"N", N},
              {"points", points},
              {"genus", genus},
              {"rank", prym_rank(N, points, genus)}};
}

json cmd_prym_wildmult(int64_t g_cover, int64_t g_sub, uint32_t p, uint32_t l) {
  return json{{"op", "prym.wildmult"},
              {"g_cover", g_cover},
              {"g_sub", g_sub},
              {"p", p},
              {"l", l},
              {"multiplicity", wild_multiplicity(g_cover, g_sub, p, l)}};
}

json cmd_selmer_avg(uint32_t l, uint32_t n, int q_mod_3, bool allow_l3, bool brute) {
  SelmerQuery q;
  q.n = n;
  q.l = l;
  q.q_mod_3 = q_mod_3;
  q.allow_l3 = allow_l3;
  Rational expected = expected_selmer(q);
  json j{{"op", "selmer.avg"},
         {"l", l},
         {"n", n},
         {"q_mod_3", q_mod_3},
         {"expected", rational_json(expected)}};
  if (brute) {
    SelmerBruteReport br = selmer_brute_average(l);
    json cosets = json::array();
    for (auto &c : br.coset_averages) cosets.push_back(rational_json(c));
    j["brute"] = json{{"average", rational_json(br.average)},
                      {"coset_averages", cosets},
                      {"group_order", br.group_order},
                      {"agrees", br.average == expected}};
  }
  return j;
}

json cmd_selmer_burnside(const std::string &path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_input, "cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception &e) {
    fail(errc::bad_input, std::string("json parse: ") + e.what());
  }
  auto perms = [&](const char *key) {
    if (!doc.contains(key) || !doc[key].is_array())
      fail(errc::bad_input, std::string("missing permutation list '") + key + "'");
    std::vector<Perm> out;
    for (auto &p : doc[key]) out.push_back(p.get<Perm>());
    return out;
  };
  if (!doc.contains("coset_rep")) fail(errc::bad_input, "missing 'coset_rep'");
  std::vector<Perm> G = perms("group"), Nsub = perms("subgroup");
  Perm c = doc["coset_rep"].get<Perm>();
  BurnsideReport rep = burnside_coset_average(G, Nsub, c);
  return json{{"op", "selmer.burnside"},
              {"group_size", G.size()},
              {"subgroup_size", Nsub.size()},
              {"average", rational_json(rep.average)},
              {"preserved_orbits", rep.preserved_orbits},
              {"equal", rep.equal}};
}

// ---- sweep ----

struct SweepFlags {
  std::string op;
  std::string Ns;
  std::string weights; // semicolon-separated weight vectors
  std::string primes;
  uint64_t seed = 0;
  uint32_t jobs = 1;
  std::string cache_dir;
};

struct Cell {
  uint32_t N = 0, prime = 0;
  std::vector<uint32_t> w;
};

json eval_cell(const std::string &op, const Cell &c, uint64_t seed) {
  if (op == "verify") {
    auto r = symbolic_run(c.N, c.w, c.prime, 0, 0);
    auto t = jp_construct(r.K, r.red.par, JPOptions{seed, 64});
    auto rep = jp_verify(r.K, t, seed);
    return json{{"q", r.K.q},
                {"checks", checks_json(rep)},
                {"irreducible", irr_name(rep.irreducible)},
                {"all_ok", rep.all_ok()}};
  }
  if (op == "classify") {
    auto r = symbolic_run(c.N, c.w, c.prime, 0, 0);
    auto t = jp_construct(r.K, r.red.par, JPOptions{seed, 64});
    ClassifyOptions opt;
    opt.bsgs.seed = seed;
    opt.jp.seed = seed;
    auto res = classify(r.K, t, r.sp, r.rd, opt);
    json j = classify_result_json(res);
    j["q"] = r.K.q;
    return j;
  }
  if (op == "lift") {
    auto r = symbolic_run(c.N, c.w, c.prime, 0, 0);
    if (!r.rd.ramified)
      fail(errc::bad_input, "lifting needs a ramified prime (p dividing N)");
    DualFq D(r.K);
    LiftParams lp = lift_params(D, r.sp, r.rd, 0);
    LiftReport rep = lift_run(D, lp, JPOptions{seed, 64});
    json j = lift_result_json(rep);
    j["q"] = r.K.q;
    return j;
  }
  fail(errc::bad_input, "unknown sweep op '" + op + "'");
}

void cache_store(const std::string &path, const std::string &line) {
  std::string tmp = path + ".tmp" +
                    std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  std::ofstream out(tmp, std::ios::binary);
  if (!out) return;
  out << line << "\n";
  out.close();
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

int cmd_sweep(const SweepFlags &f) {
  auto Nlist = parse_u32_list(f.Ns, "--N");
  std::vector<std::vector<uint32_t>> wlist;
  for (auto &tok : split(f.weights, ';')) wlist.push_back(parse_u32_list(tok, "--weights"));
  auto plist = parse_u32_list(f.primes, "--primes");
  if (Nlist.empty() || wlist.empty() || plist.empty())
    throw Usage{"sweep needs nonempty --N, --weights and --primes"};

  std::string cache = f.cache_dir;
  if (cache.empty())
    if (const char *env = std::getenv("JPMONO_CACHE_DIR")) cache = env;
  if (!cache.empty()) std::filesystem::create_directories(cache);

  std::vector<Cell> cells;
  for (uint32_t N : Nlist)
    for (auto &w : wlist)
      for (uint32_t p : plist) cells.push_back(Cell{N, p, w});

  auto cell_json = [&](const Cell &c) {
    return json{{"op", f.op}, {"N", c.N}, {"weights", json(c.w)}, {"prime", c.prime}, {"seed", f.seed}};
  };
  auto cell_key = [&](const Cell &c) {
    std::string s = "op=" + f.op + "|N=" + std::to_string(c.N) + "|weights=";
    for (size_t i = 0; i < c.w.size(); ++i) s += (i ? "," : "") + std::to_string(c.w[i]);
    s += "|prime=" + std::to_string(c.prime) + "|seed=" + std::to_string(f.seed) + "|" + kVersion;
    return s;
  };
  auto cell_line = [&](const Cell &c) -> std::string {
    std::string path;
    if (!cache.empty()) {
      char hex[17];
      std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)fnv1a(cell_key(c)));
      path = cache + "/" + hex + ".json";
      std::ifstream in(path, std::ios::binary);
      if (in) {
        std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
        if (!s.empty()) return s;
      }
    }
    json out;
    out["cell"] = cell_json(c);
    try {
      out.update(eval_cell(f.op, c, f.seed));
    } catch (const Error &e) {
      out["error"] = error_json(e)["error"];
    }
    std::string line = out.dump();
    if (!path.empty()) cache_store(path, line);
    return line;
  };

  uint32_t jobs = std::max<uint32_t>(1, std::min<uint32_t>(f.jobs, (uint32_t)cells.size()));
  std::vector<std::string> lines(cells.size());
  std::vector<char> ready(cells.size(), 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      std::string ln;
      try {
        ln = cell_line(cells[i]);
      } catch (const std::exception &e) {
        json out;
        out["cell"] = cell_json(cells[i]);
        out["error"] = json{{"kind", "internal"}, {"detail", e.what()}};
        ln = out.dump();
      }
      {
        std::lock_guard<std::mutex> lk(mu);
        lines[i] = std::move(ln);
        ready[i] = 1;
      }
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (uint32_t j = 0; j < jobs; ++j) pool.emplace_back(work);
  for (size_t i = 0; i < cells.size(); ++i) {
    std::unique_lock<std::mutex> lk(mu);
    cv.wait(lk, [&] { return ready[i] != 0; });
    std::string ln = std::move(lines[i]);
    lk.unlock();
    std::cout << ln << "\n" << std::flush;
  }
  for (auto &t : pool) t.join();
  return 0;
}

void add_symbolic(CLI::App *s, SymFlags &f, bool required = true) {
  auto *n = s->add_option("--N", f.N, "cyclic order of the cover");
  auto *w = s->add_option("--weights", f.weights, "weights m_0,...,m_{n+1}");
  auto *p = s->add_option("--prime", f.prime, "rational prime to reduce at");
  if (required) {
    n->required();
    w->required();
    p->required();
  }
  s->add_option("--prime-index", f.prime_index, "which prime above p (default 0)");
  s->add_option("--embedding", f.embedding, "embedding index within the prime (default 0)");
  s->add_option("--seed", f.seed, "deterministic seed (default 0)");
}

} // namespace

int main(int argc, char **argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"exact arithmetic toolkit for pseudo-reflection monodromy"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string output = "json";
  app.add_option("--output", output, "report format: json or tsv")
      ->check(CLI::IsMember({"json", "tsv"}));

  std::function<json()> action;
  std::function<int()> stream_action;

  auto group = [&](const char *name, const char *desc) {
    auto *g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App *parent, const char *name, const char *desc) {
    auto *s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  // jp build | jp verify
  auto *jp = group("jp", "construct and check pseudo-reflection tuples");
  static SymFlags jp_sf;
  static DirectFlags jp_df;
  static bool jp_spectrum = false;
  for (bool verify : {false, true}) {
    auto *s = leaf(jp, verify ? "verify" : "build",
                   verify ? "construct a tuple and run every check"
                          : "construct a tuple and print it");
    add_symbolic(s, jp_sf, false);
    s->get_option("--prime")->required();
    auto *lam = s->add_option("--lambdas", jp_df.lambdas,
                              "direct mode: packed values of lambda_1..lambda_{n+1}");
    auto *l0 = s->add_option("--lambda0", jp_df.lambda0, "direct mode: packed value of lambda_0");
    auto *kk = s->add_option("--k", jp_df.k, "direct mode: extension degree of F_{p^k}");
    lam->needs(l0);
    l0->needs(lam);
    kk->needs(lam);
    lam->excludes(s->get_option("--N"));
    lam->excludes(s->get_option("--weights"));
    if (verify) {
      s->add_flag("--spectrum", jp_spectrum, "also check the subset spectra of every subsequence");
      s->callback([&] { action = [&] { return cmd_jp(jp_sf, jp_df, true, jp_spectrum); }; });
    } else {
      s->callback([&] { action = [&] { return cmd_jp(jp_sf, jp_df, false, false); }; });
    }
  }

  // forms find | forms signature
  auto *forms = group("forms", "invariant forms and signatures");
  static SymFlags forms_sf;
  static std::string forms_invol = "auto";
  {
    auto *s = leaf(forms, "find", "solve for the invariant (sesqui)linear form");
    add_symbolic(s, forms_sf);
    s->add_option("--involution", forms_invol, "identity, frobenius or auto")
        ->check(CLI::IsMember({"auto", "identity", "frobenius"}));
    s->callback([&] { action = [&] { return cmd_forms_find(forms_sf, forms_invol); }; });
  }
  static std::string sig_exponents;
  static double sig_tol = 1e-8;
  {
    auto *s = leaf(forms, "signature", "signature of the invariant Hermitian form over C");
    s->add_option("--exponents", sig_exponents, "rationals a_0,...,a_{n+1} as num/den, each in (0,1)")
        ->required();
    s->add_option("--tol", sig_tol, "numeric singular gap (default 1e-8)");
    s->callback([&] { action = [&] { return cmd_forms_signature(sig_exponents, sig_tol); }; });
  }

  // classify
  static SymFlags cls_sf;
  {
    auto *s = app.add_subcommand("classify", "identify the monodromy image at one prime");
    s->fallthrough();
    add_symbolic(s, cls_sf);
    s->callback([&] { action = [&] { return cmd_classify(cls_sf); }; });
  }

  // pairwise
  static SymFlags pw_sf;
  static std::string pw_at1, pw_at2;
  {
    auto *s = app.add_subcommand("pairwise", "compare the joint image at two embeddings");
    s->fallthrough();
    add_symbolic(s, pw_sf);
    s->add_option("--at1", pw_at1, "first embedding as prime:index (default 0:0)");
    s->add_option("--at2", pw_at2, "second embedding as prime:index");
    s->callback([&] { action = [&] { return cmd_pairwise(pw_sf, pw_at1, pw_at2); }; });
  }

  // lift detect | lift sl2w2
  auto *lift = group("lift", "detectors mod the square of a ramified prime");
  static SymFlags lift_sf;
  {
    auto *s = leaf(lift, "detect", "find a Lie algebra element and certify its span");
    add_symbolic(s, lift_sf);
    s->callback([&] { action = [&] { return cmd_lift_detect(lift_sf); }; });
  }
  static uint32_t sl2k = 2;
  {
    auto *s = leaf(lift, "sl2w2", "2-Sylow splitting test in SL_2 over length-2 Witt vectors");
    s->add_option("--k", sl2k, "residue field F_{2^k}, k = 1 or 2")->check(CLI::IsMember({1, 2}));
    s->callback([&] { action = [&] { return cmd_lift_sl2w2(sl2k); }; });
  }

  // prym dims | torus | rank | wildmult
  auto *prym = group("prym", "dimension and rank bookkeeping of cyclic covers");
  static uint32_t pd_N = 0;
  static std::string pd_weights;
  static int64_t pd_d = -1;
  {
    auto *s = leaf(prym, "dims", "isotypic dimensions of the cover from the weights");
    s->add_option("--N", pd_N, "cyclic order")->required();
    s->add_option("--weights", pd_weights, "weights m_0,...,m_{n+1}")->required();
    s->add_option("--d", pd_d, "single character index (default: all of 1..N-1)");
    s->callback([&] { action = [&] { return cmd_prym_dims(pd_N, pd_weights, pd_d); }; });
  }
  static std::string pt_graph;
  {
    auto *s = leaf(prym, "torus", "torus rank of a seminormal equivariant cover");
    s->add_option("--graph", pt_graph, "path to the incidence graph file")->required();
    s->callback([&] { action = [&] { return cmd_prym_torus(pt_graph); }; });
  }
  static uint32_t pr_N = 0, pr_points = 0, pr_genus = 0;
  {
    auto *s = leaf(prym, "rank", "cyclotomic module rank from point count and base genus");
    s->add_option("--N", pr_N, "cyclic order")->required();
    s->add_option("--points", pr_points, "number of ramification points")->required();
    s->add_option("--genus", pr_genus, "genus of the base curve")->required();
    s->callback([&] { action = [&] { return cmd_prym_rank(pr_N, pr_points, pr_genus); }; });
  }
  static int64_t wm_gcover = 0, wm_gsub = 0;
  static uint32_t wm_p = 0, wm_l = 1;
  {
    auto *s = leaf(prym, "wildmult", "multiplicity of a wild point from a genus jump");
    s->add_option("--g-cover", wm_gcover, "genus upstairs")->required();
    s->add_option("--g-sub", wm_gsub, "genus of the subcover")->required();
    s->add_option("--p", wm_p, "residue characteristic")->required();
    s->add_option("--l", wm_l, "level of the jump (default 1)");
    s->callback([&] { action = [&] { return cmd_prym_wildmult(wm_gcover, wm_gsub, wm_p, wm_l); }; });
  }

  // selmer avg | burnside
  auto *selmer = group("selmer", "arithmetic statistics checks");
  static uint32_t sa_l = 2, sa_n = 3;
  static int sa_qmod = 1;
  static bool sa_allow3 = false, sa_brute = false;
  {
    auto *s = leaf(selmer, "avg", "expected Selmer size, optionally with the enumeration oracle");
    s->add_option("--l", sa_l, "Selmer prime")->required();
    s->add_option("--n", sa_n, "rank of the family (default 3)");
    s->add_option("--q-mod-3", sa_qmod, "arithmetic coset selector, 1 or 2");
    s->add_flag("--allow-l3", sa_allow3, "opt in to the flagged l = 3 count");
    s->add_flag("--brute", sa_brute, "also enumerate the unitary model and compare");
    s->callback([&] { action = [&] { return cmd_selmer_avg(sa_l, sa_n, sa_qmod, sa_allow3, sa_brute); }; });
  }
  static std::string sb_file;
  {
    auto *s = leaf(selmer, "burnside", "coset-averaged fixed points vs preserved orbits");
    s->add_option("--file", sb_file, "JSON file with group, subgroup, coset_rep")->required();
    s->callback([&] { action = [&] { return cmd_selmer_burnside(sb_file); }; });
  }

  // sweep
  static SweepFlags sw;
  {
    auto *s = app.add_subcommand("sweep", "evaluate an operation over a parameter grid");
    s->fallthrough();
    s->add_option("--op", sw.op, "verify, classify or lift")
        ->required()
        ->check(CLI::IsMember({"verify", "classify", "lift"}));
    s->add_option("--N", sw.Ns, "comma-separated cyclic orders")->required();
    s->add_option("--weights", sw.weights, "semicolon-separated weight vectors")->required();
    s->add_option("--primes", sw.primes, "comma-separated primes")->required();
    s->add_option("--seed", sw.seed, "deterministic seed (default 0)");
    s->add_option("--jobs", sw.jobs, "concurrent cells (default 1)");
    s->add_option("--cache-dir", sw.cache_dir, "result cache directory (or JPMONO_CACHE_DIR)");
    s->callback([&] { stream_action = [&] { return cmd_sweep(sw); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (stream_action) return stream_action();
    json doc = action();
    emit(doc, output);
    return 0;
  } catch (const Usage &u) {
    std::cerr << u.msg << "\n";
    return 2;
  } catch (const Error &e) {
    emit(error_json(e), output);
    return 1;
  } catch (const std::exception &e) {
    emit(json{{"error", {{"kind", "internal"}, {"detail", e.what()}}}}, output);
    return 1;
  }
}
