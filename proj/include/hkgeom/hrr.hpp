#ifndef HKGEOM_HRR_HPP
#define HKGEOM_HRR_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hkgeom/series.hpp"
#include "hkgeom/types.hpp"

namespace hk {

// ---------------------------------------------------------------------------
// Riemann-Roch on surfaces

struct SurfaceChernData {
  Integer c1_sq;  // c1(X)^2
  Integer c2;     // c2(X) = e(X)
};

struct BundleChernData {
  Integer rank = 1;
  Integer c1_sq = 0;       // c1(F)^2
  Integer c1_dot_c1X = 0;  // c1(F).c1(X)
  Integer c2 = 0;          // c2(F)
};

// Which degree-one Todd term to use. `literal_square` reproduces the
// misprinted expansion 1 + c1^2/2 + ... and exists only so tests can show
// that it breaks known Euler characteristics.
enum class ToddConvention { standard, literal_square };

// chi(X, F) = rank (c1^2 + c2)/12 + c1(F).c1(X)/2 + (c1(F)^2 - 2 c2(F))/2.
// A non-integral value means the Chern data are inconsistent.
Integer hrr_chi_surface(const SurfaceChernData& x, const BundleChernData& f,
                        ToddConvention todd = ToddConvention::standard);

// Solves chi(O_X) = (c1^2 + c2)/12 for c2.
Integer solve_c2(const Integer& chi_o, const Integer& c1_sq);

struct HodgeDiamond {
  // h[p][q] = dim H^q(X, Omega^p)
  std::array<std::array<Integer, 3>, 3> h;

  std::array<Integer, 5> betti() const;
  Integer euler() const;
};

// Derived from chi(O) = 2 and chi(Omega^1) = -20 (both by Riemann-Roch),
// b1 = 0, Serre duality and Hodge symmetry.
HodgeDiamond k3_hodge_diamond();

// ---------------------------------------------------------------------------
// Second Betti numbers

Integer sym_power_h2_rank(const Integer& b1, const Integer& b2);  // b2 + C(b1, 2)
Integer hilb_h2_rank(const Integer& b1, const Integer& b2);       // + [E]
Integer kummer_b2(const Integer& b2_torus);                        // b2(A) + 1

// ---------------------------------------------------------------------------
// Generating functions and Euler characteristics

// prod_{k>=1} (1 - q^k)^{-e} through q^N. Coefficient g is e(S^[g]) for a
// surface with e(S) = e, and the genus-g rational curve count when e = 24.
IntegerSeries goettsche_series(const Integer& e, std::size_t order);

// e(S^[2]) from the blow-up of S^(2) along the diagonal: (e^2 + 3e)/2.
Integer hilb2_euler(const Integer& e);

// e(P^1) - e(point): a nodal rational curve is P^1 with two points glued.
Integer nodal_rational_euler();

// Rational fibres of an elliptic fibration: smooth genus-one fibres add
// nothing, so the count is e(total) / e(singular fibre).
Integer elliptic_fiber_count(const Integer& e_total, const Integer& e_singular_fiber);

// Euler characteristic of the compactified Jacobian of an integral curve:
// 0 when the normalization has positive genus, otherwise 1.
Integer jacobian_euler(long normalization_genus, long nodes);

struct ModuliDims {
  Integer dim_hilb;      // dim S^[n] = 2n
  Integer dim_jacobian;  // dim of the compactified Jacobian = 2g
  std::string note;
};

ModuliDims moduli_dims(const Integer& n_or_g);

// Number of bitangents of a smooth plane curve of degree d:
// d(d-2)(d-3)(d+3)/2.
Integer plane_curve_bitangents(const Integer& d);

// Genus-two rational curve count on a K3, cross-checked against the
// plane-curve formula at d = 6.
Integer bitangent_count_sextic();

// ---------------------------------------------------------------------------
// Decomposition enumeration by chi(O)

enum class FactorKind { torus, strict_cy, hyperkahler };

struct DecompositionFactor {
  FactorKind kind;
  int complex_dim;
  Integer chi;

  std::string label() const;
  friend bool operator==(const DecompositionFactor&, const DecompositionFactor&) = default;
};

DecompositionFactor torus_factor(int dim);
DecompositionFactor strict_cy_factor(int dim);    // dim >= 3, chi = 1 + (-1)^dim
DecompositionFactor hyperkahler_factor(int dim);  // dim = 2r, chi = r + 1

struct DecompositionEnumeration {
  std::vector<std::vector<DecompositionFactor>> candidates;
  // chi = 0: torus factors and odd-dimensional Calabi-Yau factors cannot be
  // told apart by chi alone.
  bool ambiguous = false;
};

// All factor multisets with dimensions summing to complex_dim and product of
// chi(O) equal to chi. At most one torus factor, and only when chi = 0.
DecompositionEnumeration chi_decomposition_enumerate(int complex_dim, const Integer& chi);

// ---------------------------------------------------------------------------
// Slope stability

Rational slope(const Rational& degree, const Integer& rank);

struct StabilityVerdict {
  bool stable = false;
  bool semistable = false;
};

StabilityVerdict is_stable(const Rational& slope_f, const std::vector<Rational>& sub_slopes);

}  // namespace hk

#endif  // HKGEOM_HRR_HPP
