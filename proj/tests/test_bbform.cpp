#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hkgeom/bbform.hpp"
#include "hkgeom/random.hpp"

using namespace hk;

namespace {

const RatMatrix kU{{0, 1}, {1, 0}};

Rational q(const RatMatrix& m, const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += m(i, j) * a[i] * b[j];
  return s;
}

}  // namespace

TEST_CASE("bb_eval on Hodge-decomposed classes") {
  HodgeDecomposedClass sigma{{1, 0}, {0, 0}, {}, RatMatrix(0, 0), true};
  CHECK(bb_eval(sigma, 3) == ComplexRational{0, 0});
  HodgeDecomposedClass both{{1, 0}, {1, 0}, {}, RatMatrix(0, 0), true};
  CHECK(bb_eval(both, 1) == ComplexRational{1, 0});
  CHECK(bb_eval(both, 4) == ComplexRational{1, 0});
  HodgeDecomposedClass beta{{0, 0}, {0, 0}, {1}, RatMatrix{{3}}, true};
  CHECK(bb_eval(beta, 2) == ComplexRational{3, 0});
  HodgeDecomposedClass bad{{0, 0}, {0, 0}, {1, 2}, RatMatrix{{3}}, true};
  CHECK_THROWS_AS(bb_eval(bad, 2), RejectedInput);
}

TEST_CASE("fujiki_top") {
  CHECK(fujiki_top(FujikiData(1, kU, 1), RatVector{1, 1}) == 2);
  // q(alpha) = 2 with q = diag(2)
  CHECK(fujiki_top(FujikiData(2, RatMatrix{{2}}, 3), RatVector{1}) == 12);
  CHECK(fujiki_top(FujikiData(3, kU, Rational(7, 2)), RatVector{0, 0}) == 0);
  CHECK_THROWS_AS(FujikiData(1, kU, 0), RejectedInput);
  CHECK_THROWS_AS(FujikiData(0, kU, 1), RejectedInput);
  CHECK_THROWS_AS(fujiki_top(FujikiData(1, kU, 1), RatVector{1}), RejectedInput);
}

TEST_CASE("fujiki_polarized") {
  const RatMatrix m{{2, 1, 0}, {1, -1, 3}, {0, 3, 4}};
  const RatVector a{1, Rational(1, 2), -2}, b{0, 3, Rational(-1, 3)};
  const FujikiData f1(1, m, 5), f2(2, m, 5);
  CHECK(fujiki_polarized(f1, {a, a}) == fujiki_top(f1, a));
  CHECK(fujiki_polarized(f2, {a, a, a, a}) == fujiki_top(f2, a));
  CHECK(fujiki_polarized(f1, {a, b}) == 5 * q(m, a, b));
  CHECK(fujiki_polarized(f2, {a, a, b, b}) == Rational(5, 3) * (q(m, a, a) * q(m, b, b) + 2 * q(m, a, b) * q(m, a, b)));
  CHECK(fujiki_polarized(f2, {a, b, a, b}) == fujiki_polarized(f2, {b, b, a, a}));
  CHECK_THROWS_AS(fujiki_polarized(f2, {a, a, a}), RejectedInput);
}

TEST_CASE("isotropic power vanishing") {
  const FujikiData f1(1, kU, 1);
  CHECK(isotropic_power_vanishing(f1, RatVector{1, 0}, {}, 2) == 0);
  const FujikiData f2(2, kU, 3);
  CHECK(isotropic_power_vanishing(f2, RatVector{1, 0}, {RatVector{5, -7}}, 3) == 0);
  // n = 2, two copies of beta and two copies of gamma with q(beta, gamma) = 1, q(gamma) = 0
  CHECK(isotropic_power_vanishing(f2, RatVector{1, 0}, {RatVector{0, 1}, RatVector{0, 1}}, 2) == 2);
  CHECK_THROWS_AS(isotropic_power_vanishing(f2, RatVector{1, 1}, {RatVector{0, 1}}, 3), RejectedInput);
  CHECK_THROWS_AS(isotropic_power_vanishing(f2, RatVector{1, 0}, {}, 3), RejectedInput);
}

TEST_CASE("matsushita_expand") {
  CHECK(matsushita_expand({0, 2, 1, 1, 1}) == std::vector<Rational>{2, 1, 0});
  CHECK(matsushita_expand({0, 2, 1, 2, 3}) == std::vector<Rational>{12, 6, 2, 0, 0});
  const auto z = matsushita_expand({0, 5, 0, 3, 2});
  CHECK(z[0] == 2 * 125);
  for (std::size_t m = 1; m < z.size(); ++m) CHECK(z[m] == 0);
}

TEST_CASE("numerically_trivial_test") {
  CHECK(numerically_trivial_test({0, 2, 0, 2, 3}, 0, 0).numerically_trivial);
  // E.A^3 = c q(E,A) q(A) = 3 * 1 * 2
  const auto r = numerically_trivial_test({0, 2, 1, 2, 3}, 0, 6);
  CHECK_FALSE(r.numerically_trivial);
  CHECK(r.qEA == 1);
  CHECK_THROWS_AS(numerically_trivial_test({0, 2, 1, 2, 3}, 1, 6), InconsistentData);
  CHECK_THROWS_AS(numerically_trivial_test({0, 2, 1, 2, 3}, 0, 5), InconsistentData);
  CHECK_THROWS_AS(numerically_trivial_test({0, -1, 1, 2, 3}, 0, 0), RejectedInput);
}

TEST_CASE("bb_recover round trips") {
  SUBCASE("n = 1, U") {
    const FujikiData fd(1, kU, 1);
    const auto r = bb_recover(1, 1, 2, top_intersection_from_form(fd), RatVector{1, 1});
    REQUIRE(r.exact);
    CHECK(r.q == kU);
  }
  SUBCASE("n = 2, diag(2, -2), c = 3") {
    const RatMatrix d{{2, 0}, {0, -2}};
    const auto r = bb_recover(2, 3, 2, top_intersection_from_form(FujikiData(2, d, 3)), RatVector{1, 0});
    REQUIRE(r.exact);
    CHECK(r.q == d);
    CHECK(r.residual == 0.0);
  }
  SUBCASE("n = 2, reference negative for the input sign") {
    const RatMatrix d{{-2, 0}, {0, 2}};
    const auto r = bb_recover(2, 3, 2, top_intersection_from_form(FujikiData(2, d, 3)), RatVector{1, 0});
    REQUIRE(r.exact);
    CHECK(r.q == RatMatrix{{2, 0}, {0, -2}});
  }
  SUBCASE("random forms") {
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
      RatMatrix m(3, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) m(i, j) = m(j, i) = rng.uniform_int(-4, 4);
      m(0, 0) = rng.uniform_int(1, 4);
      const auto r = bb_recover(2, 1, 3, top_intersection_from_form(FujikiData(2, m, 1)), RatVector{1, 0, 0},
                                {true, 1e-12});
      CHECK(r.residual < 1e-9);
      for (std::size_t i = 0; i < 9; ++i) CHECK(r.q_numeric[i] == doctest::Approx(m(i / 3, i % 3).get_d()));
    }
  }
}

TEST_CASE("bb_recover rejects") {
  // Table built with c = 2 but declared with c = 1: T(r,r,r,r)/c = 2 q(r)^2.
  const RatMatrix d{{1, 0}, {0, -1}};
  const auto table = top_intersection_from_form(FujikiData(2, d, 2));
  CHECK_THROWS_AS(bb_recover(2, 1, 2, table, RatVector{1, 0}), RejectedInput);
  const auto fallback = bb_recover(2, 1, 2, table, RatVector{1, 0}, {true, 1e-12});
  CHECK_FALSE(fallback.exact);
  CHECK(fallback.q_numeric[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(fallback.q_numeric[3] == doctest::Approx(-std::sqrt(2.0)));
  CHECK_THROWS_AS(bb_recover(3, 1, 2, table, RatVector{1, 0}), RejectedInput);

  // Not a polarized square: T(e0,e0,e1,e1) disagrees with the rest.
  auto broken = [&](std::span<const std::size_t> idx) {
    std::size_t ones = 0;
    for (auto i : idx) ones += i;
    return ones == 2 ? Rational(5) : table(idx);
  };
  CHECK_THROWS_AS(bb_recover(2, 1, 2, broken, RatVector{1, 1}, {true, 1e-12}), InconsistentData);
}

TEST_CASE("helpers") {
  CHECK(double_factorial_odd(1) == 1);
  CHECK(double_factorial_odd(3) == 15);
  CHECK(binomial(6, 2) == 15);
  CHECK(rational_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK_FALSE(rational_sqrt(Rational(2)).has_value());
}
