#ifndef HKGEOM_PERIOD_HPP
#define HKGEOM_PERIOD_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkgeom/bbform.hpp"
#include "hkgeom/lattice.hpp"

namespace hk {

// alpha = re + i*im in Gamma (x) C, up to a nonzero complex scalar.
struct PeriodPoint {
  RatVector re;
  RatVector im;
};

// Validates lengths and (re, im) != (0, 0).
PeriodPoint make_period_point(RatVector re, RatVector im);

PeriodPoint scaled(const PeriodPoint& p, const ComplexRational& z);
PeriodPoint conjugate(const PeriodPoint& p);

// Divides by the first coordinate with nonzero modulus.
PeriodPoint canonical(const PeriodPoint& p);
bool projectively_equal(const PeriodPoint& a, const PeriodPoint& b);

// Membership in Q_Gamma: q(alpha) = q(x) - q(y) + 2i b(x,y) = 0 and
// q(alpha + conj alpha) = 4 q(x) > 0.
bool in_period_domain(const IntegralLattice& lattice, const PeriodPoint& p);

struct NumericPeriodPoint {
  std::vector<double> re;
  std::vector<double> im;
};

// Relative residual max(|q(x)-q(y)|, 2|b(x,y)|) / q(x); +inf when q(x) <= 0.
double period_residual(const IntegralLattice& lattice, const NumericPeriodPoint& p);
bool in_period_domain(const IntegralLattice& lattice, const NumericPeriodPoint& p, double tol);
NumericPeriodPoint to_numeric(const PeriodPoint& p);

// Weight-two Hodge structure determined by a period point: h^{2,0} and
// h^{0,2} are the lines of alpha and its conjugate, h^{1,1} their common
// orthogonal complement.
struct HodgeStructureW2 {
  std::size_t h20 = 1;
  std::size_t h11 = 0;
  std::size_t h02 = 1;
  std::vector<RatVector> h11_basis;
};

HodgeStructureW2 hodge_structure_from_period(const IntegralLattice& lattice, const PeriodPoint& p);

// Three rational vectors spanning a q-positive definite 3-space.
class PositiveThreePlane {
 public:
  // Rejects a basis whose Gram matrix is not positive definite, naming the
  // first non-positive leading principal minor.
  PositiveThreePlane(const IntegralLattice& lattice, std::array<RatVector, 3> basis);

  const std::array<RatVector, 3>& basis() const noexcept { return basis_; }
  const RatMatrix& gram() const noexcept { return gram_; }

 private:
  std::array<RatVector, 3> basis_;
  RatMatrix gram_;
};

// A point of the twistor conic P(W (x) C) cap Q_Gamma. `lambda` is the unit
// vector of the right-handed orthonormal frame (lambda, v, w) of W the point
// v + i w came from, in q-orthonormal coordinates of W.
struct ConicPoint {
  std::array<Rational, 3> lambda;
  std::optional<PeriodPoint> exact;
  NumericPeriodPoint numeric;
  double residual = 0.0;
};

// `frame` is a rational rotation (orthogonal, det +1) whose columns are
// (lambda, v, w) in q-orthonormal coordinates of W.
ConicPoint conic_point(const IntegralLattice& lattice, const PositiveThreePlane& plane, const RatMatrix& frame);

// Rational rotation from the quaternion (a, b, c, d).
RatMatrix rotation_from_quaternion(const Integer& a, const Integer& b, const Integer& c, const Integer& d);

// `samples` points for frames drawn from rational quaternions under `seed`.
// Throws InconsistentData when a floating point misses membership by more
// than `tol`.
std::vector<ConicPoint> twistor_conic(const IntegralLattice& lattice, const PositiveThreePlane& plane,
                                      std::size_t samples, std::uint64_t seed, double tol = 1e-10);

// W = span(x, y, w3') with w3' the q-orthogonal projection of w3 off
// span(x, y).
PositiveThreePlane conic_through(const IntegralLattice& lattice, const PeriodPoint& p, const RatVector& w3);

// --- twistor paths ---------------------------------------------------------

// A point shared by two consecutive conics, given by the positive 2-plane
// containing its real and imaginary parts.
struct JunctionPoint {
  std::array<RatVector, 2> plane;
  std::optional<PeriodPoint> exact;
  NumericPeriodPoint numeric;
};

struct ChainLink {
  PositiveThreePlane conic;
  // Point shared with the next conic; for the last link, the target.
  JunctionPoint point;
};

enum class SearchStatus { success, inconclusive };

struct PathSearchOptions {
  std::size_t max_steps = 16;
  std::uint64_t seed = 0;
  std::size_t restarts = 4;
  std::size_t trials_per_step = 48;
  double tol = 1e-10;
};

struct ChainVerification {
  bool ok = true;
  double max_residual = 0.0;
  std::vector<std::string> failures;
};

struct PathReport {
  SearchStatus status = SearchStatus::inconclusive;
  std::vector<ChainLink> chain;  // empty when inconclusive
  std::size_t restart_used = 0;
  ChainVerification verification;
};

// Chain of twistor conics from p to target: one conic when the two planes
// span a positive 3-plane, else a randomized two-conic bridge, else a
// three-conic chain through graphs over a positive 3-plane containing p.
// Each restart uses its own random stream and the shortest chain wins.
// Requires both points in the period domain and a lattice with exactly three
// positive squares. Inconclusive (max_steps too small, or no positive
// complement found) is not a proof that no chain exists.
PathReport twistor_path_search(const IntegralLattice& lattice, const PeriodPoint& p, const PeriodPoint& target,
                               const PathSearchOptions& options = {});

// Re-checks every incidence of a chain with its own arithmetic.
ChainVerification verify_twistor_chain(const IntegralLattice& lattice, const PeriodPoint& start,
                                       const PeriodPoint& target, const std::vector<ChainLink>& chain,
                                       double tol = 1e-10);

}  // namespace hk

#endif  // HKGEOM_PERIOD_HPP
