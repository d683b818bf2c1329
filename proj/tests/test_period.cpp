#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hkgeom/period.hpp"
#include "hkgeom/verify.hpp"

using namespace hk;

namespace {

const IntegralLattice L4 = parse_lattice_spec("diag:1,1,1,-1");
const IntegralLattice L5 = parse_lattice_spec("diag:1,1,1,-1,-1");

RatVector e(std::size_t n, std::size_t i) {
  RatVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("period domain membership") {
  CHECK(in_period_domain(L4, make_period_point(e(4, 0), e(4, 1))));
  CHECK_FALSE(in_period_domain(L4, make_period_point(e(4, 0), RatVector(4, Rational(0)))));
  CHECK_FALSE(in_period_domain(L4, make_period_point(e(4, 0), e(4, 3))));
  CHECK_THROWS_AS(in_period_domain(L4, make_period_point(e(3, 0), e(3, 1))), RejectedInput);
  CHECK_THROWS_AS(make_period_point(RatVector(4, Rational(0)), RatVector(4, Rational(0))), RejectedInput);
}

TEST_CASE("projective invariance") {
  const auto p = make_period_point(RatVector{1, 0, 1, 1}, RatVector{0, 1, 0, 0});
  REQUIRE(in_period_domain(L4, p));
  for (const ComplexRational& z : {ComplexRational{3, 0}, ComplexRational{0, 1}, ComplexRational{Rational(-2, 5), 7}}) {
    const auto s = scaled(p, z);
    CHECK(in_period_domain(L4, s));
    CHECK(projectively_equal(s, p));
    CHECK(canonical(s).re == canonical(p).re);
  }
  CHECK(in_period_domain(L4, conjugate(p)));
  CHECK_FALSE(projectively_equal(conjugate(p), p));
}

TEST_CASE("numeric membership") {
  const auto p = to_numeric(make_period_point(e(4, 0), e(4, 1)));
  CHECK(period_residual(L4, p) == 0.0);
  NumericPeriodPoint off = p;
  off.im[1] += 1e-6;
  CHECK(in_period_domain(L4, off, 1e-5));
  CHECK_FALSE(in_period_domain(L4, off, 1e-8));
}

TEST_CASE("Hodge structure") {
  const auto h = hodge_structure_from_period(L4, make_period_point(e(4, 0), e(4, 1)));
  CHECK(h.h20 == 1);
  CHECK(h.h02 == 1);
  CHECK(h.h11 == 2);
  REQUIRE(h.h11_basis.size() == 2);
  for (const auto& v : h.h11_basis) {
    CHECK(v[0] == 0);
    CHECK(v[1] == 0);
  }

  RatVector x(22, Rational(0)), y(22, Rational(0));
  x[0] = x[1] = 1;
  y[2] = y[3] = 1;
  const auto k3 = hodge_structure_from_period(k3_lattice(), make_period_point(x, y));
  CHECK(k3.h11 == 20);

  const auto l3 = parse_lattice_spec("diag:1,1,-1");
  CHECK(hodge_structure_from_period(l3, make_period_point(e(3, 0), e(3, 1))).h11 == 1);
  CHECK_THROWS_AS(hodge_structure_from_period(L4, make_period_point(e(4, 0), e(4, 3))), RejectedInput);
}

TEST_CASE("twistor conics") {
  const PositiveThreePlane w(L4, {e(4, 0), e(4, 1), e(4, 2)});
  const auto c = conic_point(L4, w, RatMatrix::identity(3));
  REQUIRE(c.exact);
  CHECK(projectively_equal(*c.exact, make_period_point(e(4, 1), e(4, 2))));

  // lambda -> -lambda
  const RatMatrix flip{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  const auto d = conic_point(L4, w, flip);
  REQUIRE(d.exact);
  CHECK(projectively_equal(*d.exact, conjugate(*c.exact)));

  const PositiveThreePlane skew(L4, {RatVector{1, 0, 0, 0}, RatVector{0, 2, 0, 1}, RatVector{0, 0, 3, 1}});
  for (const auto& p : twistor_conic(L4, skew, 24, 5)) {
    if (p.exact) CHECK(verify::independent_membership(L4, *p.exact));
    CHECK(verify::independent_membership(L4, p.numeric) < 1e-12);
  }
  const auto a = twistor_conic(L4, skew, 6, 9), b = twistor_conic(L4, skew, 6, 9);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].numeric.re == b[i].numeric.re);

  CHECK_THROWS_AS(PositiveThreePlane(L4, {e(4, 0), e(4, 1), e(4, 3)}), RejectedInput);
  CHECK_THROWS_AS(PositiveThreePlane(L4, {e(4, 0), e(4, 1), e(4, 1)}), RejectedInput);
}

TEST_CASE("rational rotations") {
  const auto r = rotation_from_quaternion(1, 2, 3, 4);
  const auto t = r.transposed();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < 3; ++k) s += t(i, k) * r(k, j);
      CHECK(s == (i == j ? 1 : 0));
    }
}

TEST_CASE("conic_through") {
  const auto p = make_period_point(e(4, 0), e(4, 1));
  const auto w = conic_through(L4, p, e(4, 2));
  CHECK(w.gram() == RatMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK_THROWS_AS(conic_through(L4, p, e(4, 3)), RejectedInput);
  CHECK_THROWS_AS(conic_through(L4, p, RatVector{0, 0, 1, 1}), RejectedInput);
}

TEST_CASE("twistor path search") {
  const auto p = make_period_point(e(5, 0), e(5, 1));

  SUBCASE("same point") {
    const auto r = twistor_path_search(L5, p, scaled(p, {2, 1}));
    CHECK(r.status == SearchStatus::success);
    CHECK(r.chain.empty());
  }
  SUBCASE("common conic") {
    const auto r = twistor_path_search(L5, p, make_period_point(e(5, 1), e(5, 2)));
    CHECK(r.status == SearchStatus::success);
    CHECK(r.chain.size() == 1);
  }
  SUBCASE("random pairs re-verify") {
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto a = verify::random_period_point(L5, 2 * k), b = verify::random_period_point(L5, 2 * k + 1);
      PathSearchOptions opt;
      opt.seed = 0;
      const auto r = twistor_path_search(L5, a, b, opt);
      REQUIRE(r.status == SearchStatus::success);
      CHECK(r.chain.size() <= 16);
      CHECK(verify_twistor_chain(L5, a, b, r.chain).ok);
    }
  }
  SUBCASE("too few steps is inconclusive") {
    const auto a = verify::random_period_point(L5, 100), b = verify::random_period_point(L5, 101);
    PathSearchOptions opt;
    opt.max_steps = 0;
    const auto r = twistor_path_search(L5, a, b, opt);
    CHECK(r.status == SearchStatus::inconclusive);
    CHECK(r.chain.empty());
  }
  SUBCASE("tampered chain fails verification") {
    const auto a = verify::random_period_point(L5, 7), b = verify::random_period_point(L5, 8);
    auto r = twistor_path_search(L5, a, b);
    REQUIRE(r.status == SearchStatus::success);
    CHECK_FALSE(verify_twistor_chain(L5, a, make_period_point(e(5, 0), e(5, 2)), r.chain).ok);
  }
  SUBCASE("lattice preconditions") {
    const auto l = parse_lattice_spec("diag:1,1,-1,-1");
    CHECK_THROWS_AS(twistor_path_search(l, make_period_point(e(4, 0), e(4, 1)),
                                        make_period_point(e(4, 1), e(4, 0))),
                    RejectedInput);
    CHECK_THROWS_AS(twistor_path_search(L4, make_period_point(e(4, 0), e(4, 3)),
                                        make_period_point(e(4, 0), e(4, 1))),
                    RejectedInput);
  }
}
