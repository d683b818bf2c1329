// Exercises the shared library through the C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "hkgeom/hkgeom.h"

namespace {

// Takes ownership of a library string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string r(s);
  hk_string_free(s);
  return r;
}

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(hk_version()).size() > 0);
  hk_lattice* l = nullptr;
  CHECK(hk_lattice_load("diag:1,x", &l) == HK_REJECTED);
  CHECK(l == nullptr);
  CHECK(std::string(hk_last_error()).size() > 0);
  CHECK(hk_lattice_from_json("{not json", &l) == HK_REJECTED);
  CHECK(hk_lattice_rank(nullptr) == 0);
  hk_lattice_free(nullptr);
  hk_string_free(nullptr);
}

TEST_CASE("lattices") {
  hk_lattice* k3 = nullptr;
  REQUIRE(hk_lattice_load("name:K3", &k3) == HK_OK);
  CHECK(hk_lattice_rank(k3) == 22);
  size_t p = 0, n = 0, z = 0;
  REQUIRE(hk_lattice_signature(k3, &p, &n, &z) == HK_OK);
  CHECK(p == 3);
  CHECK(n == 19);
  CHECK(z == 0);

  hk_lattice* u = nullptr;
  REQUIRE(hk_lattice_from_json(R"({"rank": 2, "gram": [[0, 1], [1, 0]]})", &u) == HK_OK);
  char* out = nullptr;
  REQUIRE(hk_lattice_evaluate(u, "1,2", "3,4", &out) == HK_OK);
  CHECK(has(take(out), "\"10\""));
  CHECK(hk_lattice_evaluate(u, "1,2,3", "3,4", &out) == HK_REJECTED);

  hk_lattice* s = nullptr;
  REQUIRE(hk_lattice_direct_sum(k3, u, &s) == HK_OK);
  CHECK(hk_lattice_rank(s) == 24);
  hk_lattice* e = nullptr;
  REQUIRE(hk_lattice_extend(k3, "-2", &e) == HK_OK);
  REQUIRE(hk_lattice_signature(e, &p, &n, &z) == HK_OK);
  CHECK(n == 20);
  hk_lattice* r = nullptr;
  CHECK(hk_lattice_rescale(u, "0", &r) == HK_REJECTED);

  hk_lattice_free(e);
  hk_lattice_free(s);
  hk_lattice_free(u);
  hk_lattice_free(k3);
}

TEST_CASE("Beauville-Bogomolov") {
  hk_fujiki* f = nullptr;
  REQUIRE(hk_fujiki_from_json(R"({"n": 2, "c": 3, "gram": [[2, 0], [0, -2]]})", &f) == HK_OK);
  char* out = nullptr;
  REQUIRE(hk_bb_top(f, "1,0", &out) == HK_OK);
  CHECK(has(take(out), "\"12\""));
  CHECK(hk_bb_polarized(f, "[[1,0],[1,0],[1,0]]", &out) == HK_REJECTED);
  hk_fujiki_free(f);
  CHECK(hk_fujiki_from_json(R"({"n": 1, "c": 0, "gram": [[1]]})", &f) == HK_REJECTED);

  REQUIRE(hk_bb_recover(R"({"n": 2, "c": 3, "dim": 2, "reference": [1, 0], "form": [[2, 0], [0, -2]]})", &out) ==
          HK_OK);
  CHECK(has(take(out), "\"-2\""));
}

TEST_CASE("period domain and twistor lines") {
  hk_lattice* l = nullptr;
  REQUIRE(hk_lattice_load("diag:1,1,1,-1,-1", &l) == HK_OK);
  char* out = nullptr;
  REQUIRE(hk_period_check(l, R"({"re": [1,0,0,0,0], "im": [0,1,0,0,0]})", &out) == HK_OK);
  CHECK(has(take(out), "\"in_domain\":true"));
  REQUIRE(hk_period_check(l, R"({"re": [1,0,0,0,0], "im": [0,0,0,1,0]})", &out) == HK_OK);
  CHECK(has(take(out), "\"in_domain\":false"));

  REQUIRE(hk_twistor_conic(l, "[[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0]]", 4, 1, 1e-9, &out) == HK_OK);
  CHECK(has(take(out), "samples"));
  CHECK(hk_twistor_conic(l, "[[1,0,0,0,0],[0,1,0,0,0],[0,0,0,1,0]]", 4, 1, 1e-9, &out) == HK_REJECTED);

  const char* a = R"({"re": [1,0,0,0,0], "im": [0,1,0,0,0]})";
  const char* b = R"({"re": [0,0,1,0,0], "im": [0,"5/3",0,"4/3",0]})";
  REQUIRE(hk_twistor_path(l, a, b, 16, 0, 1e-9, &out) == HK_OK);
  CHECK(has(take(out), "success"));
  out = nullptr;
  CHECK(hk_twistor_path(l, a, b, 0, 0, 1e-9, &out) == HK_INCONCLUSIVE);
  CHECK(has(take(out), "inconclusive"));
  hk_lattice_free(l);
}

TEST_CASE("curvature") {
  hk_chart* c = nullptr;
  REQUIRE(hk_chart_from_json(R"({"dim": 2, "catalog": "sphere"})", &c) == HK_OK);
  CHECK(hk_chart_dim(c) == 2);
  char* out = nullptr;
  REQUIRE(hk_riemann_curvature(c, "1.0,0.5", &out) == HK_OK);
  CHECK(has(take(out), "metric"));
  REQUIRE(hk_riemann_einstein(c, "[[1.0,0.5],[0.7,2.0]]", 1e-6, &out) == HK_OK);
  CHECK(has(take(out), "\"einstein\":true"));
  REQUIRE(hk_riemann_holonomy(c, "1.0471975511965976,0", R"([{"latitude": "1.0471975511965976"}])", 2000, &out) ==
          HK_OK);
  CHECK(has(take(out), "angle"));
  CHECK(hk_riemann_curvature(c, "1.0", &out) == HK_REJECTED);
  hk_chart_free(c);

  REQUIRE(hk_riemann_berger(4, 1, 1, 1, &out) == HK_OK);
  CHECK(has(take(out), "groups"));
}

TEST_CASE("series and counts") {
  hk_series* s = nullptr;
  REQUIRE(hk_series_goettsche("24", 4, &s) == HK_OK);
  char* out = nullptr;
  REQUIRE(hk_series_coeff(s, 3, &out) == HK_OK);
  CHECK(has(take(out), "\"3200\""));
  hk_series* sq = nullptr;
  REQUIRE(hk_series_multiply(s, s, &sq) == HK_OK);
  REQUIRE(hk_series_coeff(sq, 1, &out) == HK_OK);
  CHECK(has(take(out), "\"48\""));
  hk_series_free(sq);
  hk_series_free(s);

  REQUIRE(hk_hrr_chi(R"({"c1_sq": 9, "c2": 3})", nullptr, 0, &out) == HK_OK);
  CHECK(has(take(out), "\"chi\":\"1\""));
  CHECK(hk_hrr_chi(R"({"c1_sq": 9, "c2": 3})", nullptr, 1, &out) == HK_INCONSISTENT);
  REQUIRE(hk_solve_c2("2", "0", &out) == HK_OK);
  CHECK(has(take(out), "\"24\""));
  REQUIRE(hk_bitangents("4", &out) == HK_OK);
  CHECK(has(take(out), "\"28\""));
  REQUIRE(hk_bitangents_sextic(&out) == HK_OK);
  CHECK(has(take(out), "\"324\""));
  CHECK(hk_elliptic_fibers("24", "5", &out) == HK_INCONSISTENT);
  REQUIRE(hk_stability("1", "2", "0,1/4", &out) == HK_OK);
  CHECK(has(take(out), "\"stable\":true"));
  REQUIRE(hk_k3_hodge(&out) == HK_OK);
  CHECK(has(take(out), "20"));
}

TEST_CASE("verify suite") {
  char* out = nullptr;
  REQUIRE(hk_verify_suite(0, 0, 0, nullptr, 3, &out) == HK_OK);
  CHECK(has(take(out), "\"all_pass\":true"));
  CHECK(hk_verify_suite(0, 1, 0, nullptr, 3, &out) == HK_INCONSISTENT);
  take(out);
}
