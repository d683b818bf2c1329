#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hkgeom/hrr.hpp"

using namespace hk;

namespace {

const SurfaceChernData kP2{9, 3};
const SurfaceChernData kK3{0, 24};

// Partition counts by the pentagonal-number recurrence.
std::vector<long> partitions(std::size_t n) {
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (std::size_t m = 1; m <= n; ++m)
    for (long k = 1;; ++k) {
      const long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > static_cast<long>(m)) break;
      const long s = k % 2 ? 1 : -1;
      p[m] += s * p[m - g1];
      if (g2 <= static_cast<long>(m)) p[m] += s * p[m - g2];
    }
  return p;
}

}  // namespace

TEST_CASE("Riemann-Roch on surfaces") {
  CHECK(hrr_chi_surface(kP2, {}) == 1);
  CHECK(hrr_chi_surface(kK3, {}) == 2);
  // O(d) on P^2: (d+1)(d+2)/2
  for (long d = -2; d <= 4; ++d)
    CHECK(hrr_chi_surface(kP2, {1, d * d, 3 * d, 0}) == (d + 1) * (d + 2) / 2);
  // line bundle L on K3: 2 + L^2/2
  CHECK(hrr_chi_surface(kK3, {1, 4, 0, 0}) == 4);
  CHECK(hrr_chi_surface(kK3, {2, 0, 0, 0}) == 4);
  CHECK_THROWS_AS(hrr_chi_surface(kP2, {0, 0, 0, 0}), RejectedInput);
  CHECK_THROWS_AS(hrr_chi_surface({1, 3}, {}), InconsistentData);
}

TEST_CASE("literal-square Todd term breaks P^2") {
  CHECK_THROWS_AS(hrr_chi_surface(kP2, {}, ToddConvention::literal_square), InconsistentData);
}

TEST_CASE("solve_c2 and the K3 diamond") {
  CHECK(solve_c2(2, 0) == 24);
  CHECK(solve_c2(1, 9) == 3);
  const auto d = k3_hodge_diamond();
  CHECK(d.h[0][0] == 1);
  CHECK(d.h[1][0] == 0);
  CHECK(d.h[2][0] == 1);
  CHECK(d.h[1][1] == 20);
  CHECK(d.betti() == std::array<Integer, 5>{1, 0, 22, 0, 1});
  CHECK(d.euler() == 24);
}

TEST_CASE("second Betti numbers") {
  CHECK(hilb_h2_rank(0, 22) == 23);
  CHECK(sym_power_h2_rank(4, 6) == 12);
  CHECK(hilb_h2_rank(4, 6) == 13);
  CHECK(kummer_b2(6) == 7);
  CHECK_THROWS_AS(hilb_h2_rank(-1, 2), RejectedInput);
}

TEST_CASE("generating series") {
  const auto g = goettsche_series(24, 5);
  const std::vector<long> k3{1, 24, 324, 3200, 25650, 176256};
  for (std::size_t i = 0; i < k3.size(); ++i) CHECK(g.coeff(i) == k3[i]);

  const auto p = partitions(30);
  const auto one = goettsche_series(1, 30);
  for (std::size_t i = 0; i <= 30; ++i) CHECK(one.coeff(i) == p[i]);

  CHECK(hilb2_euler(24) == g.coeff(2));
  CHECK(hilb2_euler(3) == goettsche_series(3, 2).coeff(2));
}

TEST_CASE("curve counts") {
  CHECK(nodal_rational_euler() == 1);
  CHECK(elliptic_fiber_count(24, nodal_rational_euler()) == 24);
  CHECK(elliptic_fiber_count(24, 2) == 12);
  CHECK_THROWS_AS(elliptic_fiber_count(24, 5), InconsistentData);
  CHECK(jacobian_euler(0, 3) == 1);
  CHECK(jacobian_euler(1, 1) == 0);
  CHECK(plane_curve_bitangents(4) == 28);
  CHECK(plane_curve_bitangents(6) == 324);
  CHECK(bitangent_count_sextic() == 324);
  const auto m = moduli_dims(2);
  CHECK(m.dim_hilb == 4);
  CHECK(m.dim_jacobian == 4);
}

TEST_CASE("decompositions by chi") {
  const auto four = chi_decomposition_enumerate(4, 3);
  REQUIRE(four.candidates.size() == 1);
  CHECK(four.candidates[0] == std::vector<DecompositionFactor>{hyperkahler_factor(4)});
  CHECK_FALSE(four.ambiguous);

  const auto k3k3 = chi_decomposition_enumerate(4, 4);
  bool found = false;
  for (const auto& c : k3k3.candidates)
    found |= c == std::vector<DecompositionFactor>{hyperkahler_factor(2), hyperkahler_factor(2)};
  CHECK(found);

  CHECK(chi_decomposition_enumerate(3, 0).ambiguous);
  CHECK(chi_decomposition_enumerate(2, 7).candidates.empty());
  CHECK(strict_cy_factor(3).chi == 0);
  CHECK(strict_cy_factor(4).chi == 2);
  CHECK_THROWS_AS(hyperkahler_factor(3), RejectedInput);
}

TEST_CASE("slope stability") {
  CHECK(slope(3, 2) == Rational(3, 2));
  const auto s = is_stable(1, {Rational(1, 2), 0});
  CHECK(s.stable);
  CHECK(s.semistable);
  const auto t = is_stable(1, {1});
  CHECK_FALSE(t.stable);
  CHECK(t.semistable);
  CHECK_FALSE(is_stable(1, {2}).semistable);
  CHECK_THROWS_AS(slope(1, 0), RejectedInput);
}
