#include "hkgeom/hrr.hpp"

#include <algorithm>
#include <functional>

#include "hkgeom/bbform.hpp"

namespace hk {

namespace {

Rational frac(const Integer& a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace

Integer hrr_chi_surface(const SurfaceChernData& x, const BundleChernData& f, ToddConvention todd) {
  if (f.rank < 1) throw RejectedInput("hrr_chi_surface: rank must be >= 1");
  const Rational ch2 = frac(f.c1_sq - 2 * f.c2, 2);
  Rational chi;
  if (todd == ToddConvention::standard) {
    chi = frac(f.rank * (x.c1_sq + x.c2), 12) + frac(f.c1_dot_c1X, 2) + ch2;
  } else {
    // c1(F) pairs with a degree-two class here and drops out on a surface.
    chi = Rational(f.rank) * (frac(x.c1_sq, 2) + frac(x.c1_sq + x.c2, 12)) + ch2;
  }
  if (chi.get_den() != 1)
    throw InconsistentData("hrr_chi_surface: chi = " + to_string(chi) + " is not an integer; Chern data inconsistent");
  return chi.get_num();
}

Integer solve_c2(const Integer& chi_o, const Integer& c1_sq) { return 12 * chi_o - c1_sq; }

std::array<Integer, 5> HodgeDiamond::betti() const {
  std::array<Integer, 5> b;
  for (auto& x : b) x = 0;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) b[p + q] += h[p][q];
  return b;
}

Integer HodgeDiamond::euler() const {
  auto b = betti();
  return b[0] - b[1] + b[2] - b[3] + b[4];
}

HodgeDiamond k3_hodge_diamond() {
  // Omega^2 = O and H^1(O) = 0 give h00 = 1, h01 = 0, h02 = h00 = 1.
  const Integer chi_o = 2;
  const Integer c2 = solve_c2(chi_o, 0);
  const SurfaceChernData k3{0, c2};
  if (hrr_chi_surface(k3, BundleChernData{1, 0, 0, 0}) != chi_o)
    throw InconsistentData("k3_hodge_diamond: Riemann-Roch does not reproduce chi(O) = 2");
  // Omega^1 has rank 2, c1 = -c1(X) = 0 and c2 = c2(X).
  const Integer chi_omega = hrr_chi_surface(k3, BundleChernData{2, 0, 0, c2});

  HodgeDiamond d;
  auto& h = d.h;
  h[0][0] = 1;
  h[0][1] = 0;                             // b1 = 0
  h[0][2] = chi_o - h[0][0] + h[0][1];     // chi(O) = h00 - h01 + h02
  h[1][0] = h[0][1];                       // conjugation
  h[2][0] = h[0][2];
  h[1][2] = h[1][0];                       // Serre duality
  h[2][1] = h[0][1];
  h[2][2] = h[0][0];
  h[1][1] = h[1][0] + h[1][2] - chi_omega;  // chi(Omega) = h10 - h11 + h12
  if (d.euler() != c2) throw InconsistentData("k3_hodge_diamond: e(X) differs from c2(X)");
  return d;
}

Integer sym_power_h2_rank(const Integer& b1, const Integer& b2) {
  if (b1 < 0 || b2 < 0) throw RejectedInput("Betti numbers must be nonnegative");
  return b2 + b1 * (b1 - 1) / 2;
}

Integer hilb_h2_rank(const Integer& b1, const Integer& b2) { return sym_power_h2_rank(b1, b2) + 1; }

Integer kummer_b2(const Integer& b2_torus) {
  if (b2_torus < 0) throw RejectedInput("Betti numbers must be nonnegative");
  return b2_torus + 1;
}

IntegerSeries goettsche_series(const Integer& e, std::size_t order) {
  // Log-derivative recurrence: n a_n = e * sum_{k=1..n} sigma(k) a_{n-k}.
  std::vector<Integer> sigma(order + 1, Integer(0));
  for (std::size_t d = 1; d <= order; ++d)
    for (std::size_t m = d; m <= order; m += d) sigma[m] += d;
  std::vector<Integer> a(order + 1, Integer(0));
  a[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    Integer s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += sigma[k] * a[n - k];
    s *= e;
    Integer q, r;
    mpz_tdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t(), n);
    if (r != 0) throw InconsistentData("goettsche_series: recurrence lost integrality");
    a[n] = q;
  }
  return IntegerSeries(order, std::move(a));
}

Integer hilb2_euler(const Integer& e) {
  // e(S^(2)) = (e^2 + e)/2; the diagonal (e) is replaced by a P^1-bundle (2e).
  Integer sym2_twice = e * e + e;
  return (sym2_twice - 2 * e + 4 * e) / 2;
}

Integer nodal_rational_euler() { return Integer(2) - Integer(1); }

Integer elliptic_fiber_count(const Integer& e_total, const Integer& e_singular_fiber) {
  if (e_singular_fiber < 1) throw RejectedInput("elliptic_fiber_count: singular fibre Euler number must be >= 1");
  if (e_total % e_singular_fiber != 0)
    throw InconsistentData("elliptic_fiber_count: " + to_string(e_singular_fiber) + " does not divide " +
                           to_string(e_total));
  return e_total / e_singular_fiber;
}

Integer jacobian_euler(long normalization_genus, long nodes) {
  if (normalization_genus < 0 || nodes < 0) throw RejectedInput("jacobian_euler: arguments must be >= 0");
  // Positive normalization genus: free actions of Z/m for every m force 0.
  // Rational nodal: every stratum but the deepest carries a (C*)^k factor.
  return normalization_genus >= 1 ? Integer(0) : Integer(1);
}

ModuliDims moduli_dims(const Integer& n_or_g) {
  if (n_or_g < 0) throw RejectedInput("moduli_dims: argument must be >= 0");
  ModuliDims d;
  d.dim_hilb = 2 * n_or_g;
  d.dim_jacobian = 2 * n_or_g;
  d.note =
      "dim S^[n] = 2n (n points on a surface); the compactified Jacobian is birational to S^[g], hence 2g "
      "(directly: g-dimensional fibres over the (g)-dimensional linear system)";
  return d;
}

Integer plane_curve_bitangents(const Integer& d) { return d * (d - 2) * (d - 3) * (d + 3) / 2; }

Integer bitangent_count_sextic() {
  Integer count = goettsche_series(24, 2).coeff(2);
  if (count != plane_curve_bitangents(6))
    throw InconsistentData("bitangent_count_sextic: curve count and plane-curve formula disagree");
  return count;
}

std::string DecompositionFactor::label() const {
  switch (kind) {
    case FactorKind::torus: return "Torus(" + std::to_string(complex_dim) + ")";
    case FactorKind::strict_cy: return "StrictCY(" + std::to_string(complex_dim) + ")";
    case FactorKind::hyperkahler: return "HK(" + std::to_string(complex_dim) + ")";
  }
  return "?";
}

DecompositionFactor torus_factor(int dim) {
  if (dim < 1) throw RejectedInput("torus factor: dimension must be >= 1");
  return {FactorKind::torus, dim, 0};
}

DecompositionFactor strict_cy_factor(int dim) {
  if (dim < 3) throw RejectedInput("strict Calabi-Yau factor: dimension must be >= 3");
  return {FactorKind::strict_cy, dim, dim % 2 == 0 ? 2 : 0};
}

DecompositionFactor hyperkahler_factor(int dim) {
  if (dim < 2 || dim % 2 != 0) throw RejectedInput("hyperkahler factor: dimension must be even and >= 2");
  return {FactorKind::hyperkahler, dim, dim / 2 + 1};
}

DecompositionEnumeration chi_decomposition_enumerate(int complex_dim, const Integer& chi) {
  if (complex_dim < 1) throw RejectedInput("chi_decomposition_enumerate: dimension must be >= 1");
  std::vector<DecompositionFactor> types;
  for (int d = 1; d <= complex_dim; ++d) types.push_back(torus_factor(d));
  for (int d = 2; d <= complex_dim; d += 2) types.push_back(hyperkahler_factor(d));
  for (int d = 3; d <= complex_dim; ++d) types.push_back(strict_cy_factor(d));

  DecompositionEnumeration out;
  std::vector<DecompositionFactor> current;
  std::function<void(std::size_t, int, int, Integer)> rec = [&](std::size_t first, int remaining, int tori,
                                                                Integer product) {
    if (remaining == 0) {
      if (product == chi) out.candidates.push_back(current);
      return;
    }
    for (std::size_t t = first; t < types.size(); ++t) {
      const auto& f = types[t];
      if (f.complex_dim > remaining) continue;
      const bool torus = f.kind == FactorKind::torus;
      // A product of tori is a torus.
      if (torus && tori > 0) continue;
      current.push_back(f);
      rec(t, remaining - f.complex_dim, tori + (torus ? 1 : 0), product * f.chi);
      current.pop_back();
    }
  };
  rec(0, complex_dim, 0, Integer(1));
  out.ambiguous = chi == 0 && !out.candidates.empty();
  return out;
}

Rational slope(const Rational& degree, const Integer& rank) {
  if (rank < 1) throw RejectedInput("slope: rank must be >= 1");
  return degree / Rational(rank);
}

StabilityVerdict is_stable(const Rational& slope_f, const std::vector<Rational>& sub_slopes) {
  StabilityVerdict v{true, true};
  for (const auto& s : sub_slopes) {
    if (!(s < slope_f)) v.stable = false;
    if (!(s <= slope_f)) v.semistable = false;
  }
  return v;
}

}  // namespace hk
