#include "doctest.h"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int status = -1;
  std::string out, err;
};

static std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

static fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("jpmono_cli_test_" + std::to_string(getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

static RunResult run_cli(const std::string &args, const std::string &env = "") {
  static int counter = 0;
  fs::path o = scratch_dir() / ("out" + std::to_string(++counter));
  fs::path e = scratch_dir() / ("err" + std::to_string(counter));
  std::string cmd = env + (env.empty() ? "" : " ") + JPMONO_CLI_PATH + " " + args + " >" +
                    o.string() + " 2>" + e.string();
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

TEST_CASE("version and help") {
  auto v = run_cli("--version");
  CHECK(v.status == 0);
  CHECK(v.out.find("jpmono-0.1.0") != std::string::npos);
  CHECK(run_cli("--help").status == 0);
}

TEST_CASE("verify reports every check true on the minimal instance") {
  auto r = run_cli("jp verify --N 2 --weights 1,1,1,1 --prime 5");
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["op"] == "jp.verify");
  CHECK(j["checks"]["pseudoreflections"] == true);
  CHECK(j["checks"]["determinants"] == true);
  CHECK(j["checks"]["scalar_product"] == true);
  CHECK(j["checks"]["params_valid"] == true);
  CHECK(j["all_ok"] == true);
  CHECK(j["irreducible"] == "Irreducible");
  CHECK(j["n"] == 2);
  CHECK(j["q"] == 5);
}

TEST_CASE("verify can sweep every subset spectrum") {
  auto r = run_cli("jp verify --N 2 --weights 1,1,1,1 --prime 5 --spectrum");
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["spectrum"]["subsets"] == 7);
  CHECK(j["spectrum"]["mismatched"] == 0);
  CHECK(j["spectrum"]["all_match"] == true);
}

TEST_CASE("classify lands on the finite exception") {
  auto r = run_cli("classify --N 6 --weights 1,1,1,1,1,1 --prime 7");
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["verdict"] == "ComplexReflectionFinite");
  CHECK(j["name"] == "ST32");
  CHECK(j["order"] == "155520");
}

TEST_CASE("selmer average prints the closed form") {
  auto r = run_cli("selmer avg --l 7");
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["expected"] == 10);

  auto rb = run_cli("selmer avg --l 2 --brute");
  REQUIRE(rb.status == 0);
  auto jb = json::parse(rb.out);
  CHECK(jb["expected"] == 3);
  CHECK(jb["brute"]["average"] == 3);
  CHECK(jb["brute"]["group_order"] == 648);
  CHECK(jb["brute"]["agrees"] == true);
}

TEST_CASE("identical flags give byte-identical output") {
  std::string args = "classify --N 6 --weights 2,1,1,1,1 --prime 13";
  auto a = run_cli(args), b = run_cli(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["name"] == "3^{1+2}.2");
}

TEST_CASE("domain errors exit 1 with a structured report") {
  auto r = run_cli("jp verify --N 5 --weights 1,1,1,1 --prime 11");
  CHECK(r.status == 1);
  auto j = json::parse(r.out);
  CHECK(j["error"]["kind"] == "BadWeights");
  CHECK(j["error"]["detail"].get<std::string>().size() > 0);

  auto r2 = run_cli("lift detect --N 5 --weights 1,1,1,1,1 --prime 11");
  CHECK(r2.status == 1);
  CHECK(json::parse(r2.out)["error"]["kind"] == "BadInput");
}

TEST_CASE("usage errors exit 2 and never print partial json") {
  auto r = run_cli("jp verify --N 2 --weights 1,1,1,1");
  CHECK(r.status == 2);
  CHECK(r.out.empty());
  CHECK(!r.err.empty());

  auto r2 = run_cli("jp verify --N 2 --weights 1,1,x --prime 5");
  CHECK(r2.status == 2);
  CHECK(r2.out.empty());
  CHECK(!r2.err.empty());

  auto r3 = run_cli("no-such-command");
  CHECK(r3.status == 2);
  CHECK(r3.out.empty());
}

TEST_CASE("direct and symbolic modes agree on the same parameters") {
  auto a = run_cli("jp build --prime 7 --lambda0 6 --lambdas 6,6,6");
  auto b = run_cli("jp build --N 2 --weights 1,1,1,1 --prime 7");
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  auto ja = json::parse(a.out), jb = json::parse(b.out);
  CHECK(ja["gens"] == jb["gens"]);
  CHECK(ja["params"] == jb["params"]);

  auto bad = run_cli("jp build --prime 7 --lambda0 6 --lambdas 6,6,5");
  CHECK(bad.status == 1);
  CHECK(json::parse(bad.out)["error"]["kind"] == "BadInput");

  auto usage = run_cli("jp build --prime 7 --lambdas 6,6,6");
  CHECK(usage.status == 2);
}

TEST_CASE("tsv output is a sorted flat table") {
  auto r = run_cli("--output tsv selmer avg --l 7");
  REQUIRE(r.status == 0);
  CHECK(r.out == "expected\t10\nl\t7\nn\t3\nop\tselmer.avg\nq_mod_3\t1\n");
}

TEST_CASE("forms subcommands") {
  auto r = run_cli("forms find --N 2 --weights 1,1,1,1 --prime 7");
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["sign"] == -1);
  CHECK(j["nondegenerate"] == true);
  CHECK(j["form_involution"] == "Identity");

  auto s = run_cli("forms signature --exponents 1/2,1/2,1/2,1/2");
  REQUIRE(s.status == 0);
  auto js = json::parse(s.out);
  CHECK(js["pos"] == 1);
  CHECK(js["neg"] == 1);
  CHECK(js["numeric_agree"] == true);
  CHECK(js["sum_is_n"] == true);
}

TEST_CASE("pairwise same-embedding control is a graph") {
  auto r = run_cli("pairwise --N 5 --weights 1,1,1,1,1 --prime 11 --at1 0:0 --at2 0:0");
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["verdict"] == "Graph");
  CHECK(j["certificate_graph"] == true);
}

TEST_CASE("lift subcommands") {
  auto r = run_cli("lift detect --N 6 --weights 1,1,1,5,5,5 --prime 3");
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["found"] == true);
  CHECK(j["span_full"] == true);

  auto miss = run_cli("lift detect --N 6 --weights 1,1,1,1,1,1 --prime 3");
  REQUIRE(miss.status == 0);
  CHECK(json::parse(miss.out)["found"] == false);

  auto w = run_cli("lift sl2w2 --k 2");
  REQUIRE(w.status == 0);
  auto jw = json::parse(w.out);
  CHECK(jw["splits"] == false);
  CHECK(jw["order2_exists"] == true);
  CHECK(jw["witness_commutator"] == json::parse("[[1,10],[0,1]]"));
}

TEST_CASE("prym subcommands") {
  auto r = run_cli("prym dims --N 4 --weights 1,1,1,1,1,1,2");
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["dims"] == json::parse("[4,2,1]"));
  CHECK(j["sum"] == 7);

  fs::path g = scratch_dir() / "banana.graph";
  {
    std::ofstream out(g);
    out << "N 2\ncomponents 2\nnodes 2\nbranches 4\n"
           "branch 0 0 0\nbranch 1 0 1\nbranch 2 1 0\nbranch 3 1 1\n"
           "sigma components 0 1\nsigma nodes 1 0\nsigma branches 2 3 0 1\n";
  }
  auto t = run_cli("prym torus --graph " + g.string());
  REQUIRE(t.status == 0);
  auto jt = json::parse(t.out);
  CHECK(jt["torus_rank"] == 1);
  CHECK(jt["free"]["branches"] == 2);

  auto missing = run_cli("prym torus --graph " + (scratch_dir() / "nope.graph").string());
  CHECK(missing.status == 1);

  auto pr = run_cli("prym rank --N 7 --points 7 --genus 0");
  REQUIRE(pr.status == 0);
  CHECK(json::parse(pr.out)["rank"] == 5);

  auto wm = run_cli("prym wildmult --g-cover 24 --g-sub 6 --p 3 --l 2");
  REQUIRE(wm.status == 0);
  CHECK(json::parse(wm.out)["multiplicity"] == 3);
}

TEST_CASE("burnside reads its instance from a json file") {
  fs::path f = scratch_dir() / "s3.json";
  {
    std::ofstream out(f);
    out << R"({"group": [[0,1,2],[1,2,0],[2,0,1],[1,0,2],[0,2,1],[2,1,0]],)"
        << R"("subgroup": [[0,1,2],[1,2,0],[2,0,1]],)"
        << R"("coset_rep": [1,0,2]})";
  }
  auto r = run_cli("selmer burnside --file " + f.string());
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["average"] == 1);
  CHECK(j["preserved_orbits"] == 1);
  CHECK(j["equal"] == true);
}

TEST_CASE("sweep streams one line per cell and caches by content") {
  fs::path cache = scratch_dir() / "cache";
  std::string args = "sweep --op classify --N 6 --weights \"2,1,1,1,1;1,1,1,1,2\" "
                     "--primes 7,13 --cache-dir " +
                     cache.string();
  auto a = run_cli(args);
  REQUIRE(a.status == 0);
  std::vector<std::string> lines;
  {
    std::istringstream ss(a.out);
    std::string ln;
    while (std::getline(ss, ln)) lines.push_back(ln);
  }
  REQUIRE(lines.size() == 4);
  CHECK(json::parse(lines[0])["name"] == "3^{1+2}.2");
  CHECK(json::parse(lines[1])["name"] == "3^{1+2}.2");
  CHECK(json::parse(lines[2])["name"] == "ST26");
  CHECK(json::parse(lines[3])["name"] == "ST26");
  CHECK(json::parse(lines[0])["cell"]["prime"] == 7);
  CHECK(json::parse(lines[1])["cell"]["prime"] == 13);
  CHECK(json::parse(lines[2])["cell"]["prime"] == 7);

  size_t files = 0;
  for (auto &e : fs::directory_iterator(cache))
    if (e.path().extension() == ".json") ++files;
  CHECK(files == 4);

  // second run is served from the cache, byte for byte
  auto b = run_cli(args);
  REQUIRE(b.status == 0);
  CHECK(a.out == b.out);

  // prove the cache is really consulted: poison one entry and watch it
  // surface verbatim
  fs::path victim;
  for (auto &e : fs::directory_iterator(cache))
    if (e.path().extension() == ".json") {
      victim = e.path();
      break;
    }
  REQUIRE(!victim.empty());
  {
    std::ofstream out(victim, std::ios::binary);
    out << "{\"sentinel\":true}\n";
  }
  auto c = run_cli(args);
  REQUIRE(c.status == 0);
  CHECK(c.out.find("sentinel") != std::string::npos);

  // the environment variable names the same cache
  fs::path cache2 = scratch_dir() / "cache2";
  auto d = run_cli("sweep --op verify --N 2 --weights 1,1,1,1 --primes 5",
                   "JPMONO_CACHE_DIR=" + cache2.string());
  REQUIRE(d.status == 0);
  size_t files2 = 0;
  for (auto &e : fs::directory_iterator(cache2))
    if (e.path().extension() == ".json") ++files2;
  CHECK(files2 == 1);
}

TEST_CASE("sweep embeds per-cell domain errors and keeps going") {
  auto r = run_cli("sweep --op verify --N 5,6 --weights 1,1,1,1,2 --primes 7");
  REQUIRE(r.status == 0);
  std::vector<std::string> lines;
  {
    std::istringstream ss(r.out);
    std::string ln;
    while (std::getline(ss, ln)) lines.push_back(ln);
  }
  REQUIRE(lines.size() == 2);
  auto bad = json::parse(lines[0]);
  CHECK(bad["cell"]["N"] == 5);
  CHECK(bad["error"]["kind"] == "BadWeights");
  auto good = json::parse(lines[1]);
  CHECK(good["cell"]["N"] == 6);
  CHECK(good["all_ok"] == true);
}

TEST_CASE("sweep with jobs keeps grid order") {
  std::string args = "sweep --op verify --N 2 --weights \"1,1,1,1;1,1,1,1,1,1\" --primes 5,7,11";
  auto seq = run_cli(args + " --jobs 1");
  auto par = run_cli(args + " --jobs 4");
  REQUIRE(seq.status == 0);
  REQUIRE(par.status == 0);
  CHECK(seq.out == par.out);
}
