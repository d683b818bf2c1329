#ifndef HKGEOM_LINALG_HPP
#define HKGEOM_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "hkgeom/types.hpp"

namespace hk {

// Inertia of a real symmetric form: counts of positive, negative and zero
// squares in any diagonalization.
struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  std::size_t rank() const noexcept { return positive + negative + zero; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature operator+(const Signature& a, const Signature& b);

namespace linalg {

// Exact symmetric congruence diagonalization over Q. Nonzero diagonal
// pivots are taken when available; otherwise a nonzero off-diagonal entry
// is split off as a hyperbolic 2x2 block contributing (1,1).
Signature inertia(const RatMatrix& symmetric);

Rational determinant(RatMatrix m);
std::size_t rank(RatMatrix m);

// Basis of {v : m v = 0}, one vector per free column of the reduced
// row-echelon form.
std::vector<RatVector> nullspace(RatMatrix m);

// det of the top-left k x k block for k = 1..n.
std::vector<Rational> leading_minors(const RatMatrix& m);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational bilinear(const RatMatrix& gram, std::span<const Rational> v, std::span<const Rational> w);

RatVector add(std::span<const Rational> a, std::span<const Rational> b);
RatVector scaled(std::span<const Rational> a, const Rational& s);
// a + s * b
RatVector axpy(std::span<const Rational> a, const Rational& s, std::span<const Rational> b);
bool is_zero(std::span<const Rational> v);

// Gram matrix of the given vectors under `gram`.
RatMatrix gram_of(const RatMatrix& gram, const std::vector<RatVector>& vectors);

// Rows of the matrix are the given vectors.
RatMatrix stack_rows(const std::vector<RatVector>& vectors);

// True iff `v` lies in the rational span of `basis`.
bool in_span(const std::vector<RatVector>& basis, std::span<const Rational> v);

}  // namespace linalg
}  // namespace hk

#endif  // HKGEOM_LINALG_HPP
