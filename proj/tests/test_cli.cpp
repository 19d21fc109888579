#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "p2moduli/cli.hpp"
#include "p2moduli/json_io.hpp"

using namespace p2moduli;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int rc = run(args, out, err);
  return {rc, out.str(), err.str()};
}

struct CacheEnv {
  CacheEnv(const std::string& path) {
    setenv("MODULI_CACHE", path.c_str(), 1);
    epsilon_cache().clear();
  }
  ~CacheEnv() {
    unsetenv("MODULI_CACHE");
    epsilon_cache().clear();
  }
};

}  // namespace

TEST_CASE("classify --json round-trips through reassemble") {
  CacheEnv env("/tmp/p2moduli_test_cache1.json");
  std::remove("/tmp/p2moduli_test_cache1.json");
  RunResult r = run_cli({"classify", "8", "-4", "11", "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["variant"] == "exceptional_plus");
  CHECK(j["residual"] == Json::array({4, -2, 4}));
  CHECK(j["p"] == 2);
  Classification c = classification_from_json(j);
  CHECK(reassemble(c) == ChernData{8, -4, 11});

  RunResult r2 = run_cli({"classify", "2", "-1", "0", "--json"});
  REQUIRE(r2.code == 0);
  Classification c2 = classification_from_json(Json::parse(r2.out));
  CHECK(reassemble(c2) == ChernData{2, -1, 0});

  RunResult r3 = run_cli({"classify", "1", "0", "0", "--json"});
  REQUIRE(r3.code == 0);
  CHECK(Json::parse(r3.out)["variant"] == "semistable_exists");
}

TEST_CASE("exceptional locate and eps") {
  CacheEnv env("/tmp/p2moduli_test_cache2.json");
  RunResult r = run_cli({"exceptional", "locate", "-59/100"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("slope -3/5") != std::string::npos);
  CHECK(r.out.find("rank 5") != std::string::npos);

  RunResult e = run_cli({"exceptional", "eps", "-3/4", "--json"});
  REQUIRE(e.code == 0);
  Json j = Json::parse(e.out);
  CHECK(j["slope"] == "-3/5");
  CHECK(j["rank"] == 5);

  CHECK(run_cli({"exceptional", "eps", "1/3"}).code == 1);  // not dyadic
}

TEST_CASE("series, delta, delta-prime, chi") {
  CacheEnv env("/tmp/p2moduli_test_cache3.json");
  RunResult s = run_cli({"series", "--slope", "0", "--count", "4", "--json"});
  REQUIRE(s.code == 0);
  Json arr = Json::parse(s.out);
  REQUIRE(arr.size() == 4);
  CHECK(arr[0]["slope"] == "-2");
  CHECK(arr[3]["slope"] == "-2/5");
  CHECK(run_cli({"series", "--slope", "-1/3", "--count", "2"}).code == 2);  // not exceptional

  CHECK(run_cli({"delta", "-1/2"}).out == "5/8\n");
  CHECK(run_cli({"delta", "0"}).out == "1\n");
  RunResult dp = run_cli({"delta-prime", "-9/20", "--json"});
  Json dj = Json::parse(dp.out);
  CHECK(dj["delta_prime"]["a"] == "301/800");
  CHECK(dj["delta_prime"]["b"] == "1/80");
  CHECK(dj["delta_prime"]["d"] == 32);

  CHECK(run_cli({"chi", "2,-1,1", "2,-1,1"}).out == "1\n");
  CHECK(run_cli({"chi", "4,1,3", "1,0,0"}).out == "0\n");
  CHECK(run_cli({"chi", "nonsense"}).code == 1);
}

TEST_CASE("curves csv matches the worked three-row sample") {
  CacheEnv env("/tmp/p2moduli_test_cache4.json");
  RunResult r = run_cli({"curves", "--min", "-1", "--max", "0", "--steps", "3"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "mu,delta,delta_prime_approx,exceptional_slope");
  std::getline(lines, line);
  CHECK(line.rfind("-1,1,", 0) == 0);
  CHECK(line.find(",-1") != std::string::npos);
  std::getline(lines, line);
  CHECK(line.rfind("-1/2,5/8,", 0) == 0);
  CHECK(line.find("-1/2,5/8,0.375000000000,-1/2") == 0);
  std::getline(lines, line);
  CHECK(line.rfind("0,1,", 0) == 0);
}

TEST_CASE("curves svg contains exactly two polylines") {
  CacheEnv env("/tmp/p2moduli_test_cache5.json");
  RunResult r = run_cli({"curves", "--min", "-1", "--max", "0", "--steps", "9", "--format", "svg"});
  REQUIRE(r.code == 0);
  std::size_t count = 0, pos = 0;
  while ((pos = r.out.find("<polyline", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  CHECK(count == 2);
  CHECK(r.out.find("<svg") != std::string::npos);
}

TEST_CASE("curves marks rows absent when the depth budget runs out") {
  CacheEnv env("/tmp/p2moduli_test_cache11.json");
  // -13/34 is the center of a rank-34 interval, out of reach at depth 2
  RunResult r = run_cli({"curves", "--min", "-13/34", "--max", "0", "--steps", "2", "--depth", "2"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(first == "-13/34,,,");
}

TEST_CASE("kronecker check over the rationals") {
  CacheEnv env("/tmp/p2moduli_test_cache12.json");
  const char* path = "/tmp/p2moduli_test_module_q.json";
  {
    std::ofstream mf(path);
    mf << R"({"q":3,"m":2,"n":3,"field":"Q","entries":[)"
       << R"([[0,0,0],[0,0,0]],[[0,0,0],[0,0,0]],[[0,0,0],[0,0,0]]]})";
  }
  RunResult k = run_cli({"kronecker", "check", "--file", path, "--json"});
  REQUIRE(k.code == 0);
  Json j = Json::parse(k.out);
  CHECK(j["status"] == "unstable");
  CHECK(j["certificate"]["image_dim"] == 0);
}

TEST_CASE("curves usage errors and io failures") {
  CacheEnv env("/tmp/p2moduli_test_cache6.json");
  CHECK(run_cli({"curves", "--min", "0", "--max", "0", "--steps", "3"}).code == 1);
  CHECK(run_cli({"curves", "--min", "-1", "--max", "0", "--steps", "1"}).code == 1);
  CHECK(run_cli({"curves", "--min", "-1", "--max", "0", "--steps", "3", "--out",
                 "/nonexistent_dir_zz/x.csv"}).code == 4);
}

TEST_CASE("kronecker subcommands") {
  CacheEnv env("/tmp/p2moduli_test_cache7.json");
  CHECK(run_cli({"kronecker", "dim", "3", "3", "4"}).out == "12\n");
  CHECK(run_cli({"kronecker", "dim", "2", "1", "1"}).code == 2);

  RunResult w = run_cli({"kronecker", "walls", "--m", "2", "--n", "1", "--p", "7", "--json"});
  REQUIRE(w.code == 0);
  Json arr = Json::parse(w.out);
  bool has7 = false;
  for (const auto& e : arr)
    if (e["triple"] == Json::array({1, 1, 0}) && e["lambda"] == "1/2" && e["rho"] == "7") has7 = true;
  CHECK(has7);

  RunResult f = run_cli({"kronecker", "family", "--kind", "rankn2", "--n", "4", "--json"});
  REQUIRE(f.code == 0);
  Json fj = Json::parse(f.out);
  CHECK(fj["cokernel"] == Json::array({2, 1, 4}));
  CHECK(fj["dim_match"] == true);

  const char* path = "/tmp/p2moduli_test_module.json";
  {
    std::ofstream mf(path);
    mf << R"({"q":3,"m":1,"n":1,"field":{"p":2},"entries":[[[1]],[[0]],[[0]]]})";
  }
  RunResult k = run_cli({"kronecker", "check", "--file", path, "--json"});
  REQUIRE(k.code == 0);
  CHECK(Json::parse(k.out)["status"] == "stable");
  CHECK(run_cli({"kronecker", "check", "--file", "/nonexistent_zz.json"}).code == 4);
}

TEST_CASE("usage and error exit codes") {
  CacheEnv env("/tmp/p2moduli_test_cache8.json");
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"classify", "0", "0", "0"}).code == 2);          // ZeroRank
  CHECK(run_cli({"exceptional", "locate", "-1/2", "--depth", "0"}).code == 1);
  CHECK(run_cli({"exceptional", "eps", "-1/1024", "--depth", "3"}).code == 3);  // DepthExceeded
}

TEST_CASE("cache on and off produce byte-identical output") {
  const std::string cache_path = "/tmp/p2moduli_test_cache9.json";
  std::remove(cache_path.c_str());
  CacheEnv env(cache_path);

  std::vector<std::vector<std::string>> commands = {
      {"exceptional", "locate", "-59/100"},
      {"classify", "8", "-4", "11", "--json"},
      {"curves", "--min", "-1", "--max", "0", "--steps", "5"},
      {"series", "--slope", "-1/2", "--count", "5", "--json"},
  };
  for (const auto& cmd : commands) {
    std::vector<std::string> nocache = cmd;
    nocache.push_back("--no-cache");
    RunResult off = run_cli(nocache);
    epsilon_cache().clear();
    RunResult cold = run_cli(cmd);  // populates the file
    epsilon_cache().clear();
    RunResult warm = run_cli(cmd);  // reads it back
    CHECK(off.code == 0);
    CHECK(off.out == cold.out);
    CHECK(cold.out == warm.out);
  }
  std::ifstream check(cache_path);
  CHECK(check.good());  // the cache file was written
}

TEST_CASE("corrupt cache entries are dropped") {
  const std::string cache_path = "/tmp/p2moduli_test_cache10.json";
  {
    std::ofstream f(cache_path);
    f << R"({"version":1,"entries":[
      {"p":-1,"q":1,"bundle":{"slope":"-1/2","rank":2,"chern":[2,-1,1],"delta":"3/8","radicand":32}},
      {"p":-1,"q":1,"bundle":{"slope":"-1/3","rank":3,"chern":[3,-1,1],"delta":"4/9","radicand":77}},
      {"p":-3,"q":2,"bundle":"garbage"}]})";
  }
  CacheEnv env(cache_path);
  RunResult r = run_cli({"exceptional", "locate", "-59/100"});
  CHECK(r.code == 0);
  CHECK(r.out.find("slope -3/5") != std::string::npos);
}
