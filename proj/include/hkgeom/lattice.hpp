#ifndef HKGEOM_LATTICE_HPP
#define HKGEOM_LATTICE_HPP

#include <cstddef>
#include <span>
#include <string_view>

#include "hkgeom/linalg.hpp"
#include "hkgeom/types.hpp"

namespace hk {

// A free Z-module of finite rank with a symmetric integer bilinear form,
// given by its Gram matrix in a fixed basis. Immutable once built.
class IntegralLattice {
 public:
  // Throws RejectedInput when the Gram matrix is empty, non-square or
  // non-symmetric, and when `nondegenerate` is requested but det = 0.
  explicit IntegralLattice(IntMatrix gram, bool nondegenerate = false);

  std::size_t rank() const noexcept { return gram_.rows(); }
  const IntMatrix& gram() const noexcept { return gram_; }
  RatMatrix rational_gram() const { return to_rational(gram_); }

  // b(v, w) = v^T G w. evaluate(v, v) is the quadratic value q(v).
  Integer evaluate(std::span<const Integer> v, std::span<const Integer> w) const;
  Rational evaluate(std::span<const Rational> v, std::span<const Rational> w) const;

  Integer determinant() const;
  bool is_even() const;

  friend bool operator==(const IntegralLattice&, const IntegralLattice&) = default;

 private:
  IntMatrix gram_;
};

Signature signature(const IntegralLattice& lattice);

IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b);
IntegralLattice rescale(const IntegralLattice& lattice, const Integer& factor);

// Orthogonal sum with the rank-one lattice <square>. The square is always
// explicit; no default is assumed for an adjoined exceptional class.
IntegralLattice extend_by_rank_one(const IntegralLattice& lattice, const Integer& square);

IntegralLattice diagonal_lattice(std::span<const Integer> entries);

// "U" (hyperbolic plane), "E8_minus" (negative definite E8) or "K3"
// (U^3 + E8_minus^2). Unknown names are rejected.
IntegralLattice standard_lattice(std::string_view name);

inline IntegralLattice k3_lattice() { return standard_lattice("K3"); }

// Inline lattice syntax used by the CLI: "diag:a,b,..." or "name:<standard>".
IntegralLattice parse_lattice_spec(std::string_view spec);

}  // namespace hk

#endif  // HKGEOM_LATTICE_HPP
