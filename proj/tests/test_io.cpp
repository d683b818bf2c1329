#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hkgeom/io.hpp"

using namespace hk;
using io::json;

TEST_CASE("scalars") {
  CHECK(io::rational_from(json(3)) == 3);
  CHECK(io::rational_from(json("-7/14")) == Rational(-1, 2));
  CHECK(io::rational_from(json("0.25")) == Rational(1, 4));
  CHECK_THROWS_AS(io::rational_from(json(0.5)), RejectedInput);
  CHECK_THROWS_AS(io::rational_from(json("1/0")), RejectedInput);
  CHECK_THROWS_AS(io::rational_from(json::array()), RejectedInput);
  CHECK(io::integer_from(json("123456789012345678901234567890")) == Integer("123456789012345678901234567890"));
  CHECK_THROWS_AS(io::integer_from(json("1/2")), RejectedInput);
  CHECK(io::real_from(json("0.125")) == 0.125);
  CHECK(io::real_from(json(2)) == 2.0);
  CHECK_THROWS_AS(io::real_from(json("1.5x")), RejectedInput);

  CHECK(io::exact(Rational(6, 4)) == json("3/2"));
  CHECK(io::real(0.1) == "0.10000000000000001");
  CHECK(std::stod(io::real(M_PI)) == M_PI);
}

TEST_CASE("malformed JSON") {
  CHECK_THROWS_AS(io::parse("{\"rank\": "), RejectedInput);
  CHECK_THROWS_AS(io::read_file("/nonexistent/lattice.json"), RejectedInput);
}

TEST_CASE("lattice round trip") {
  const auto k3 = k3_lattice();
  CHECK(io::lattice_from_json(io::lattice_to_json(k3)) == k3);
  const auto j = io::parse(R"({"rank": 2, "gram": [[0, 1], [1, "-2"]]})");
  CHECK(io::lattice_from_json(j).determinant() == -1);
  CHECK_THROWS_AS(io::lattice_from_json(io::parse(R"({"rank": 3, "gram": [[0, 1], [1, 0]]})")), RejectedInput);
  CHECK_THROWS_AS(io::lattice_from_json(io::parse(R"({"rank": 2, "gram": [[0, 1], [2, 0]]})")), RejectedInput);
  CHECK_THROWS_AS(io::lattice_from_json(io::parse(R"({"gram": [[1]]})")), RejectedInput);

  const std::string path = "test_io_lattice.json";
  {
    std::ofstream out(path);
    out << io::lattice_to_json(standard_lattice("U")).dump();
  }
  CHECK(io::load_lattice(path) == standard_lattice("U"));
  CHECK(io::load_lattice("diag:1,-1") == parse_lattice_spec("diag:1,-1"));
  std::remove(path.c_str());
}

TEST_CASE("Fujiki data") {
  const auto fd = io::fujiki_from_json(io::parse(R"({"n": 2, "c": "3", "gram": [[2, 0], [0, "-1/2"]]})"));
  CHECK(fd.n() == 2);
  CHECK(fd.c() == 3);
  const auto back = io::fujiki_from_json(io::fujiki_to_json(fd));
  CHECK(back.q() == fd.q());
  CHECK_THROWS_AS(io::fujiki_from_json(io::parse(R"({"n": 0, "c": 1, "gram": [[1]]})")), RejectedInput);
  CHECK_THROWS_AS(io::fujiki_from_json(io::parse(R"({"n": 1, "c": 1, "gram": [[1, 0]]})")), RejectedInput);
}

TEST_CASE("period points") {
  const auto p = io::period_from_json(io::parse(R"({"re": [1, 0, "1/2"], "im": [0, 1, 0]})"));
  CHECK(p.re[2] == Rational(1, 2));
  CHECK(io::period_from_json(io::period_to_json(p)).re == p.re);
  CHECK_THROWS_AS(io::period_from_json(io::parse(R"({"re": [1, 0]})")), RejectedInput);
}

TEST_CASE("series") {
  const auto s = goettsche_series(24, 3);
  const auto j = io::series_to_json(s);
  CHECK(j.dump().find("\"3200\"") != std::string::npos);
}

TEST_CASE("metric charts") {
  const auto sphere = io::chart_from_json(io::parse(R"({"dim": 2, "catalog": "sphere", "params": {"r": "2"}})"));
  CHECK(sphere.dim() == 2);
  riemann::Vec x(2);
  x << 1.0, 0.5;
  CHECK(sphere.metric(x)(0, 0) == doctest::Approx(4.0));

  const auto poly = io::chart_from_json(
      io::parse(R"({"dim": 2, "poly_entries": [[{"0,0": "1", "2,0": "0.1"}, {}], [{}, {"0,0": 1}]], "h": "1e-3"})"));
  x << 0.5, 0.0;
  CHECK(poly.metric(x)(0, 0) == doctest::Approx(1.025));
  CHECK(poly.metric(x)(0, 1) == 0.0);

  CHECK_THROWS_AS(io::chart_from_json(io::parse(R"({"dim": 2, "catalog": "hyperbolic"})")), RejectedInput);
  CHECK_THROWS_AS(io::chart_from_json(io::parse(R"({"dim": 2})")), RejectedInput);
  CHECK_THROWS_AS(io::chart_from_json(io::parse(R"({"dim": 3, "catalog": "fubini_study"})")), RejectedInput);
  CHECK_THROWS_AS(io::chart_from_json(io::parse(R"({"dim": 2, "poly_entries": [[{"1": 1}, {}], [{}, {}]]})")),
                  RejectedInput);
  CHECK_THROWS_AS(
      io::chart_from_json(io::parse(R"({"dim": 2, "catalog": "flat", "derivatives": "symbolic"})")), RejectedInput);
}

TEST_CASE("paths") {
  const auto p = io::path_from_json(io::parse(R"({"points": [[0, 0], [1, "0.5"]]})"));
  CHECK(p.end()(1) == 0.5);
  const auto lat = io::path_from_json(io::parse(R"({"latitude": "1.0"})"));
  CHECK(lat.start()(0) == 1.0);
  CHECK_THROWS_AS(io::path_from_json(io::parse(R"({"pts": []})")), RejectedInput);
}
