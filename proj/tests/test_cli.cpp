// Runs the hk binary given as the first argument.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

std::string g_hk;

struct Run {
  int code = -1;
  std::string out;
  json doc() const { return json::parse(out); }
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" + g_hk + "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const char* name) { return std::string(HK_SOURCE_DIR) + "/data/" + name; }

}  // namespace

TEST_CASE("lattice commands") {
  const auto r = run("lattice signature --lattice name:K3");
  REQUIRE(r.code == 0);
  const auto j = r.doc();
  CHECK(j["status"] == "ok");
  CHECK(j["payload"]["signature"] == json{"3", "19", "0"});
  CHECK(j["provenance"]["seed"] == "0");

  CHECK(run("lattice signature --file " + data("k3.json")).doc()["payload"] == j["payload"]);
  CHECK(run("lattice evaluate --lattice diag:1,-1 --v 1,2 --w 3,4").doc()["payload"]["value"] == "-5");
  CHECK(run("lattice signature --lattice diag:1,x").code == 2);
  CHECK(run("lattice signature --file /nonexistent.json").code == 2);
}

TEST_CASE("errors are reported as JSON") {
  const auto r = run("lattice signature --lattice diag:1,x");
  const auto j = r.doc();
  CHECK(j["status"] == "rejected");
  CHECK(j.contains("error"));
  CHECK(run("lattice frobnicate").code == 2);
  CHECK(run("--format yaml lattice signature --lattice diag:1").code == 2);
}

TEST_CASE("table format") {
  const auto r = run("--format table count goettsche --e 24 --order 3");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("payload.coeffs\t1 24 324 3200") != std::string::npos);
}

TEST_CASE("counting") {
  CHECK(run("count hrr --c1sq 9 --c2 3").doc()["payload"]["chi"] == "1");
  const auto bad = run("count hrr --c1sq 9 --c2 3 --literal-square");
  CHECK(bad.code == 3);
  CHECK(bad.doc()["status"] == "inconsistent");
  CHECK(run("count bitangents --d 4").doc()["payload"]["bitangents"] == "28");
  CHECK(run("count sextic").doc()["payload"]["count"] == "324");
}

TEST_CASE("period commands") {
  const auto in = run("period check --lattice diag:1,1,1,-1 --re 1,0,0,0 --im 0,1,0,0");
  CHECK(in.doc()["payload"]["in_domain"] == true);
  const auto out = run("period check --lattice diag:1,1,1,-1 --re 1,0,0,0 --im 0,0,0,1");
  CHECK(out.code == 0);
  CHECK(out.doc()["payload"]["in_domain"] == false);

  const std::string path =
      "period path --lattice diag:1,1,1,-1,-1 --re 1,0,0,0,0 --im 0,1,0,0,0 --target-re 0,0,1,0,0 "
      "--target-im 0,5/3,0,4/3,0";
  CHECK(run(path).code == 0);
  const auto gave_up = run(path + " --max-steps 0");
  CHECK(gave_up.code == 4);
  CHECK(gave_up.doc()["status"] == "inconclusive");
}

TEST_CASE("riemann commands") {
  const auto c = run("riemann curvature --metric " + data("sphere.json") + " --at 1.0,0.5");
  REQUIRE(c.code == 0);
  CHECK(std::stod(c.doc()["payload"]["scalar"].get<std::string>()) == doctest::Approx(2.0).epsilon(1e-6));

  const auto h = run("riemann holonomy --metric " + data("sphere.json") +
                     " --base 1.0471975511965976,0 --loop '{\"latitude\": \"1.0471975511965976\"}'");
  REQUIRE(h.code == 0);
  const double a = std::stod(h.doc()["payload"]["angles"][0].get<std::string>());
  CHECK(std::abs(std::abs(a) - M_PI) < 1e-4);

  CHECK(run("riemann curvature --metric '{\"dim\": 2, \"catalog\": \"cone\"}' --at 0,0").code == 2);
}

TEST_CASE("seed handling is deterministic") {
  const std::string conic = "period conic --lattice diag:1,1,1,-1 --w1 1,0,0,0 --w2 0,1,0,0 --w3 0,0,1,1/2 --samples 5";
  const auto a = run("--seed 11 " + conic), b = run("--seed 11 " + conic), c = run(conic, "HK_SEED=11");
  CHECK(a.out == b.out);
  auto ja = a.doc(), jc = c.doc();
  ja["provenance"].erase("argv");
  jc["provenance"].erase("argv");
  CHECK(ja == jc);
  CHECK(ja["provenance"]["seed"] == "11");
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path to hk> [doctest options]\n");
    return 2;
  }
  g_hk = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}
