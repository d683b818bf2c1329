#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hkgeom/lattice.hpp"

using namespace hk;

namespace {

IntegralLattice diag(std::initializer_list<long> d) {
  IntVector v;
  for (long x : d) v.emplace_back(x);
  return diagonal_lattice(v);
}

IntVector iv(std::initializer_list<long> d) {
  IntVector v;
  for (long x : d) v.emplace_back(x);
  return v;
}

// Signature by counting sign changes of leading minors, valid when none vanish.
Signature minor_signature(const IntegralLattice& l) {
  const std::size_t n = l.rank();
  std::vector<Rational> minors{1};
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = l.gram()(i, j);
    minors.push_back(linalg::determinant(m));
  }
  Signature s;
  for (std::size_t k = 1; k <= n; ++k) {
    REQUIRE(minors[k] != 0);
    (minors[k] * minors[k - 1] > 0 ? s.positive : s.negative)++;
  }
  return s;
}

}  // namespace

TEST_CASE("evaluate") {
  const auto u = standard_lattice("U");
  CHECK(u.evaluate(iv({1, 0}), iv({0, 1})) == 1);
  CHECK(u.evaluate(iv({1, 0}), iv({1, 0})) == 0);
  CHECK(diag({1, 1, 1, -1}).evaluate(iv({1, 1, 1, 1}), iv({1, 1, 1, 1})) == 2);
  CHECK_THROWS_AS(u.evaluate(iv({1, 0, 0}), iv({1, 0})), RejectedInput);
}

TEST_CASE("gram validation") {
  CHECK_THROWS_AS(IntegralLattice(IntMatrix{{1, 2}, {3, 1}}), RejectedInput);
  CHECK_THROWS_AS(IntegralLattice(IntMatrix{}), RejectedInput);
  CHECK_THROWS_AS(IntegralLattice(IntMatrix{{1, 1}, {1, 1}}, true), RejectedInput);
}

TEST_CASE("signature") {
  CHECK(signature(diag({1, 1, 1, -1})) == Signature{3, 1, 0});
  CHECK(signature(standard_lattice("U")) == Signature{1, 1, 0});
  CHECK(signature(k3_lattice()) == Signature{3, 19, 0});
  CHECK(signature(IntegralLattice(IntMatrix{{1, 1}, {1, 1}})) == Signature{1, 0, 1});
  CHECK(signature(direct_sum(standard_lattice("U"), diag({-2}))) == Signature{1, 2, 0});
}

TEST_CASE("signature agrees with leading minors") {
  const IntegralLattice a(IntMatrix{{2, 1, 0}, {1, -3, 1}, {0, 1, 5}});
  CHECK(signature(a) == minor_signature(a));
  const IntegralLattice b(IntMatrix{{-2, 1, 0, 0}, {1, -2, 1, 0}, {0, 1, -2, 1}, {0, 0, 1, 3}});
  CHECK(signature(b) == minor_signature(b));
}

TEST_CASE("constructions") {
  const auto u = standard_lattice("U");
  CHECK(direct_sum(u, u).rank() == 4);
  CHECK(rescale(diag({1}), Integer(-2)) == diag({-2}));
  CHECK_THROWS_AS(rescale(u, Integer(0)), RejectedInput);
  CHECK(extend_by_rank_one(u, Integer(-2)).rank() == 3);
  CHECK(signature(extend_by_rank_one(diag({1}), Integer(-4))) == Signature{1, 1, 0});
  CHECK(extend_by_rank_one(k3_lattice(), Integer(-2)).rank() == 23);
  CHECK(extend_by_rank_one(k3_lattice(), Integer(7)).rank() == 23);
}

TEST_CASE("standard lattices") {
  const auto u = standard_lattice("U");
  CHECK(u.rank() == 2);
  CHECK(u.determinant() == -1);

  const auto e8 = standard_lattice("E8_minus");
  CHECK(e8.rank() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(e8.gram()(i, i) % 2 == 0);
  CHECK(e8.is_even());
  CHECK(e8.determinant() == 1);
  CHECK(signature(e8) == Signature{0, 8, 0});

  const auto k3 = k3_lattice();
  CHECK(k3.rank() == 22);
  CHECK(k3.is_even());
  CHECK(abs(k3.determinant()) == 1);
  CHECK_THROWS_AS(standard_lattice("E7"), RejectedInput);
}

TEST_CASE("inline specs") {
  CHECK(parse_lattice_spec("diag:1,1,1,-1") == diag({1, 1, 1, -1}));
  CHECK(parse_lattice_spec("name:K3") == k3_lattice());
  CHECK_THROWS_AS(parse_lattice_spec("diag:"), RejectedInput);
  CHECK_THROWS_AS(parse_lattice_spec("diag:1,x"), RejectedInput);
  CHECK_THROWS_AS(parse_lattice_spec("gram:1"), RejectedInput);
}
