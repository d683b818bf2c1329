#ifndef HKGEOM_BBFORM_HPP
#define HKGEOM_BBFORM_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkgeom/types.hpp"

namespace hk {

// Exact element of Q(i).
struct ComplexRational {
  Rational re = 0;
  Rational im = 0;

  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

ComplexRational operator+(const ComplexRational& a, const ComplexRational& b);
ComplexRational operator-(const ComplexRational& a, const ComplexRational& b);
ComplexRational operator*(const ComplexRational& a, const ComplexRational& b);
ComplexRational operator/(const ComplexRational& a, const ComplexRational& b);
ComplexRational conj(const ComplexRational& z);
bool is_zero(const ComplexRational& z);
std::string to_string(const ComplexRational& z);

// Half-dimension n, Fujiki constant c and the quadratic form q on a basis of
// H^2. The constant c plays the role of d_X in the diagonal relation
//   integral of alpha^{2n} = c * q(alpha)^n,
// and r_X = c^{1/n} is kept as the exact pair (c, n).
class FujikiData {
 public:
  FujikiData(int n, RatMatrix q, Rational c);

  int n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return q_.rows(); }
  const RatMatrix& q() const noexcept { return q_; }
  const Rational& c() const noexcept { return c_; }

  Rational pairing(std::span<const Rational> a, std::span<const Rational> b) const;
  Rational square(std::span<const Rational> a) const { return pairing(a, a); }

  // Positive real n-th root of c, evaluated on demand.
  double root_constant() const;

 private:
  int n_;
  RatMatrix q_;
  Rational c_;
};

// alpha = lambda * sigma + beta + mu * conj(sigma), with beta in an H^{1,1}
// model carrying the pairing q11. The model assumes the volume
// normalization of (sigma conj(sigma))^n to 1.
struct HodgeDecomposedClass {
  ComplexRational lambda;
  ComplexRational mu;
  RatVector beta;
  RatMatrix q11;
  bool normalized_volume = true;
};

// lambda*mu + (n/2) * q11(beta, beta).
ComplexRational bb_eval(const HodgeDecomposedClass& alpha, int n);

// c * q(alpha)^n.
Rational fujiki_top(const FujikiData& fd, std::span<const Rational> alpha);

// c / (2n-1)!! times the sum over perfect matchings of {1..2n} of the
// product of pairings: the symmetric 2n-linear form whose diagonal is
// fujiki_top.
Rational fujiki_polarized(const FujikiData& fd, const std::vector<RatVector>& alphas);

// The polarized form evaluated on `copies` copies of an isotropic beta
// followed by the fillers. Rejects q(beta) != 0 and slot counts other
// than 2n.
Rational isotropic_power_vanishing(const FujikiData& fd, std::span<const Rational> beta,
                                   const std::vector<RatVector>& fillers, int copies);

// q(E), q(A), q(E,A) for a pair of divisors together with n and c.
struct DivisorPairData {
  Rational qE;
  Rational qA;
  Rational qEA;
  int n = 1;
  Rational c = 1;
};

// E^m . A^{2n-m} for m = 0..2n, read off from
//   (tE + A)^{2n} = c (t^2 q(E) + 2t q(E,A) + q(A))^n
// as coefficient(t^m) / binomial(2n, m).
std::vector<Rational> matsushita_expand(const DivisorPairData& d);

struct TrivialityReport {
  bool numerically_trivial = false;
  Rational qE;
  Rational qEA;
};

// Given E^{2n} (`top_e`) and E.A^{2n-1} (`mixed`), checks them against the
// expansion and reports whether q(E) = q(E,A) = 0 is forced. Requires
// q(A) > 0; mismatching intersection numbers raise InconsistentData.
TrivialityReport numerically_trivial_test(const DivisorPairData& d, const Rational& top_e, const Rational& mixed);

// Top-intersection numbers on basis vectors; indices has length 2n.
using TopIntersection = std::function<Rational(std::span<const std::size_t> indices)>;

// Builds the table T(e_i1, ..., e_i2n) = fujiki_polarized(e_i1, ..., e_i2n).
TopIntersection top_intersection_from_form(const FujikiData& fd);

struct Recovery {
  bool exact = true;
  RatMatrix q;                    // filled when exact
  std::vector<double> q_numeric;  // row-major, always filled
  double residual = 0.0;          // max |T - T(q)| over the table
};

struct RecoveryOptions {
  bool allow_float = false;
  double tolerance = 1e-12;
};

// Inverts the Fujiki relation for n in {1, 2}. For n = 2 the single square
// root is q(reference) = sqrt(T(r,r,r,r)/c), taken positive; every other
// entry then follows linearly from T(r,r,r,x) and T(r,r,x,y).
Recovery bb_recover(int n, const Rational& c, std::size_t dim, const TopIntersection& table,
                    std::span<const Rational> reference, const RecoveryOptions& options = {});

// Exact rational square root when one exists.
std::optional<Rational> rational_sqrt(const Rational& r);

Integer double_factorial_odd(int n);  // (2n-1)!!
Integer binomial(long n, long k);

}  // namespace hk

#endif  // HKGEOM_BBFORM_HPP
