#include "hkgeom/period.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hkgeom/linalg.hpp"
#include "hkgeom/random.hpp"

namespace hk {

PeriodPoint make_period_point(RatVector re, RatVector im) {
  if (re.size() != im.size()) throw RejectedInput("period point: real and imaginary parts differ in length");
  if (re.empty()) throw RejectedInput("period point: empty coordinates");
  if (linalg::is_zero(re) && linalg::is_zero(im)) throw RejectedInput("period point: alpha = 0");
  return {std::move(re), std::move(im)};
}

PeriodPoint scaled(const PeriodPoint& p, const ComplexRational& z) {
  PeriodPoint out{RatVector(p.re.size()), RatVector(p.im.size())};
  for (std::size_t i = 0; i < p.re.size(); ++i) {
    auto c = ComplexRational{p.re[i], p.im[i]} * z;
    out.re[i] = c.re;
    out.im[i] = c.im;
  }
  return out;
}

PeriodPoint conjugate(const PeriodPoint& p) { return {p.re, linalg::scaled(p.im, Rational(-1))}; }

PeriodPoint canonical(const PeriodPoint& p) {
  for (std::size_t i = 0; i < p.re.size(); ++i) {
    ComplexRational z{p.re[i], p.im[i]};
    if (!is_zero(z)) return scaled(p, ComplexRational{1, 0} / z);
  }
  throw RejectedInput("period point: alpha = 0");
}

bool projectively_equal(const PeriodPoint& a, const PeriodPoint& b) {
  if (a.re.size() != b.re.size()) return false;
  auto ca = canonical(a);
  auto cb = canonical(b);
  return ca.re == cb.re && ca.im == cb.im;
}

namespace {

void check_length(const IntegralLattice& lattice, std::size_t n) {
  if (n != lattice.rank())
    throw RejectedInput("period point has " + std::to_string(n) + " coordinates, lattice rank is " +
                        std::to_string(lattice.rank()));
}

double numeric_form(const IntegralLattice& lattice, const std::vector<double>& v, const std::vector<double>& w) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) {
      const auto& g = lattice.gram()(i, j);
      if (g != 0) s += v[i] * g.get_d() * w[j];
    }
  return s;
}

}  // namespace

bool in_period_domain(const IntegralLattice& lattice, const PeriodPoint& p) {
  check_length(lattice, p.re.size());
  check_length(lattice, p.im.size());
  Rational qx = lattice.evaluate(p.re, p.re);
  Rational qy = lattice.evaluate(p.im, p.im);
  Rational bxy = lattice.evaluate(p.re, p.im);
  return qx == qy && bxy == 0 && qx > 0;
}

NumericPeriodPoint to_numeric(const PeriodPoint& p) {
  NumericPeriodPoint out;
  for (const auto& x : p.re) out.re.push_back(x.get_d());
  for (const auto& y : p.im) out.im.push_back(y.get_d());
  return out;
}

double period_residual(const IntegralLattice& lattice, const NumericPeriodPoint& p) {
  check_length(lattice, p.re.size());
  check_length(lattice, p.im.size());
  double qx = numeric_form(lattice, p.re, p.re);
  double qy = numeric_form(lattice, p.im, p.im);
  double bxy = numeric_form(lattice, p.re, p.im);
  if (!(qx > 0) || !(qy > 0)) return std::numeric_limits<double>::infinity();
  return std::max(std::abs(qx - qy), 2 * std::abs(bxy)) / std::max(qx, qy);
}

bool in_period_domain(const IntegralLattice& lattice, const NumericPeriodPoint& p, double tol) {
  return period_residual(lattice, p) < tol;
}

HodgeStructureW2 hodge_structure_from_period(const IntegralLattice& lattice, const PeriodPoint& p) {
  if (!in_period_domain(lattice, p)) throw RejectedInput("hodge_structure_from_period: point is not in the period domain");
  const auto g = lattice.rational_gram();
  RatMatrix conditions(2, lattice.rank());
  for (std::size_t j = 0; j < lattice.rank(); ++j) {
    Rational cx = 0, cy = 0;
    for (std::size_t i = 0; i < lattice.rank(); ++i) {
      cx += p.re[i] * g(i, j);
      cy += p.im[i] * g(i, j);
    }
    conditions(0, j) = cx;
    conditions(1, j) = cy;
  }
  HodgeStructureW2 hs;
  hs.h11_basis = linalg::nullspace(conditions);
  hs.h11 = hs.h11_basis.size();
  if (hs.h20 + hs.h11 + hs.h02 != lattice.rank())
    throw InconsistentData("hodge_structure_from_period: orthogonal complement has dimension " +
                           std::to_string(hs.h11) + ", expected rank - 2 (degenerate lattice?)");
  return hs;
}

PositiveThreePlane::PositiveThreePlane(const IntegralLattice& lattice, std::array<RatVector, 3> basis)
    : basis_(std::move(basis)) {
  for (const auto& v : basis_) check_length(lattice, v.size());
  gram_ = linalg::gram_of(lattice.rational_gram(), {basis_[0], basis_[1], basis_[2]});
  auto minors = linalg::leading_minors(gram_);
  for (std::size_t k = 0; k < minors.size(); ++k)
    if (minors[k] <= 0)
      throw RejectedInput("plane is not positive definite: leading minor " + std::to_string(k + 1) + " = " +
                          to_string(minors[k]));
}

namespace {

struct Orthogonalized {
  std::array<RatVector, 3> u;
  std::array<Rational, 3> sq;
};

Orthogonalized gram_schmidt(const IntegralLattice& lattice, const PositiveThreePlane& plane) {
  Orthogonalized o;
  for (std::size_t k = 0; k < 3; ++k) {
    RatVector v = plane.basis()[k];
    for (std::size_t j = 0; j < k; ++j) v = linalg::axpy(v, -lattice.evaluate(v, o.u[j]) / o.sq[j], o.u[j]);
    o.sq[k] = lattice.evaluate(v, v);
    o.u[k] = std::move(v);
  }
  return o;
}

bool is_rotation(const RatMatrix& r) {
  if (r.rows() != 3 || r.cols() != 3) return false;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < 3; ++k) s += r(k, i) * r(k, j);
      if (s != (i == j ? 1 : 0)) return false;
    }
  return linalg::determinant(r) == 1;
}

}  // namespace

RatMatrix rotation_from_quaternion(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  Rational n = Rational(a * a + b * b + c * c + d * d);
  if (n == 0) throw RejectedInput("rotation_from_quaternion: zero quaternion");
  RatMatrix r{{Rational(a * a + b * b - c * c - d * d), Rational(2 * (b * c - a * d)), Rational(2 * (b * d + a * c))},
              {Rational(2 * (b * c + a * d)), Rational(a * a - b * b + c * c - d * d), Rational(2 * (c * d - a * b))},
              {Rational(2 * (b * d - a * c)), Rational(2 * (c * d + a * b)), Rational(a * a - b * b - c * c + d * d)}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) /= n;
  return r;
}

ConicPoint conic_point(const IntegralLattice& lattice, const PositiveThreePlane& plane, const RatMatrix& frame) {
  if (!is_rotation(frame)) throw RejectedInput("conic_point: frame is not a rational rotation");
  auto o = gram_schmidt(lattice, plane);
  const std::size_t n = lattice.rank();

  ConicPoint pt;
  for (std::size_t k = 0; k < 3; ++k) pt.lambda[k] = frame(k, 0);

  std::array<std::optional<Rational>, 3> roots;
  bool exact = true;
  for (std::size_t k = 0; k < 3; ++k) {
    roots[k] = rational_sqrt(o.sq[k]);
    exact = exact && roots[k].has_value();
  }

  if (exact) {
    RatVector v(n, Rational(0)), w(n, Rational(0));
    for (std::size_t k = 0; k < 3; ++k) {
      v = linalg::axpy(v, frame(k, 1) / *roots[k], o.u[k]);
      w = linalg::axpy(w, frame(k, 2) / *roots[k], o.u[k]);
    }
    PeriodPoint p{std::move(v), std::move(w)};
    if (!in_period_domain(lattice, p)) throw InconsistentData("conic_point: exact frame point left the period domain");
    pt.numeric = to_numeric(p);
    pt.exact = std::move(p);
    pt.residual = 0.0;
    return pt;
  }

  pt.numeric.re.assign(n, 0.0);
  pt.numeric.im.assign(n, 0.0);
  for (std::size_t k = 0; k < 3; ++k) {
    const double inv = 1.0 / std::sqrt(o.sq[k].get_d());
    const double fv = frame(k, 1).get_d() * inv;
    const double fw = frame(k, 2).get_d() * inv;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = o.u[k][i].get_d();
      pt.numeric.re[i] += fv * u;
      pt.numeric.im[i] += fw * u;
    }
  }
  pt.residual = period_residual(lattice, pt.numeric);
  return pt;
}

std::vector<ConicPoint> twistor_conic(const IntegralLattice& lattice, const PositiveThreePlane& plane,
                                      std::size_t samples, std::uint64_t seed, double tol) {
  if (samples == 0) throw RejectedInput("twistor_conic: samples must be positive");
  Rng rng(seed);
  std::vector<ConicPoint> points;
  points.reserve(samples);
  while (points.size() < samples) {
    Integer q[4];
    for (auto& x : q) x = rng.uniform_int(-6, 6);
    if (q[0] == 0 && q[1] == 0 && q[2] == 0 && q[3] == 0) continue;
    auto pt = conic_point(lattice, plane, rotation_from_quaternion(q[0], q[1], q[2], q[3]));
    if (!pt.exact && !(pt.residual < tol))
      throw InconsistentData("twistor_conic: floating point misses the period domain by " + std::to_string(pt.residual));
    points.push_back(std::move(pt));
  }
  return points;
}

PositiveThreePlane conic_through(const IntegralLattice& lattice, const PeriodPoint& p, const RatVector& w3) {
  if (!in_period_domain(lattice, p)) throw RejectedInput("conic_through: point is not in the period domain");
  check_length(lattice, w3.size());
  const Rational s = lattice.evaluate(p.re, p.re);
  RatVector w = linalg::axpy(w3, -lattice.evaluate(w3, p.re) / s, p.re);
  w = linalg::axpy(w, -lattice.evaluate(w3, p.im) / s, p.im);
  if (linalg::is_zero(w)) throw RejectedInput("conic_through: w3 lies in span(x, y); the span is degenerate");
  return PositiveThreePlane(lattice, {p.re, p.im, std::move(w)});
}

}  // namespace hk
