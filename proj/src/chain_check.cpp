// Verifier for twistor chains. Uses its own small exact routines (cofactor
// determinants, Cramer solves) rather than the elimination helpers the
// search is built on.

#include <algorithm>
#include <cmath>
#include <string>

#include "hkgeom/period.hpp"

namespace hk {
namespace {

using Vec = RatVector;

Rational form(const IntegralLattice& lattice, const Vec& v, const Vec& w) {
  const auto& g = lattice.gram();
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (g(i, j) != 0) s += v[i] * w[j] * g(i, j);
  return s;
}

Rational det2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) { return a * d - b * c; }

Rational det3(const Rational m[3][3]) {
  return m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) - m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2]) +
         m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
}

bool positive_definite(const IntegralLattice& lattice, const std::vector<Vec>& basis) {
  const std::size_t k = basis.size();
  Rational g[3][3];
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g[i][j] = form(lattice, basis[i], basis[j]);
  if (g[0][0] <= 0) return false;
  if (k >= 2 && det2(g[0][0], g[0][1], g[1][0], g[1][1]) <= 0) return false;
  if (k == 3 && det3(g) <= 0) return false;
  return true;
}

// v in span(basis) for a q-positive basis: v equals its q-projection.
bool in_positive_span(const IntegralLattice& lattice, const std::vector<Vec>& basis, const Vec& v) {
  const std::size_t k = basis.size();
  Rational g[3][3], rhs[3];
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = form(lattice, basis[i], v);
    for (std::size_t j = 0; j < k; ++j) g[i][j] = form(lattice, basis[i], basis[j]);
  }
  Rational coeff[3];
  if (k == 2) {
    Rational d = det2(g[0][0], g[0][1], g[1][0], g[1][1]);
    coeff[0] = det2(rhs[0], g[0][1], rhs[1], g[1][1]) / d;
    coeff[1] = det2(g[0][0], rhs[0], g[1][0], rhs[1]) / d;
  } else {
    Rational d = det3(g);
    for (std::size_t c = 0; c < 3; ++c) {
      Rational m[3][3];
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m[i][j] = j == c ? rhs[i] : g[i][j];
      coeff[c] = det3(m) / d;
    }
  }
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    Rational s = 0;
    for (std::size_t i = 0; i < k; ++i) s += coeff[i] * basis[i][idx];
    if (s != v[idx]) return false;
  }
  return true;
}

bool exact_member(const IntegralLattice& lattice, const PeriodPoint& p) {
  Rational qx = form(lattice, p.re, p.re);
  return qx > 0 && qx == form(lattice, p.im, p.im) && form(lattice, p.re, p.im) == 0;
}

// All 2x2 minors of (alpha, beta) vanish over Q(i).
bool same_point(const PeriodPoint& a, const PeriodPoint& b) {
  if (a.re.size() != b.re.size()) return false;
  for (std::size_t i = 0; i < a.re.size(); ++i)
    for (std::size_t j = i + 1; j < a.re.size(); ++j) {
      // (a_i b_j - a_j b_i) with complex entries
      Rational re = a.re[i] * b.re[j] - a.im[i] * b.im[j] - (a.re[j] * b.re[i] - a.im[j] * b.im[i]);
      Rational im = a.re[i] * b.im[j] + a.im[i] * b.re[j] - (a.re[j] * b.im[i] + a.im[j] * b.re[i]);
      if (re != 0 || im != 0) return false;
    }
  return true;
}

double numeric_form(const IntegralLattice& lattice, const std::vector<double>& v, const std::vector<double>& w) {
  const auto& g = lattice.gram();
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (g(i, j) != 0) s += v[i] * w[j] * g(i, j).get_d();
  return s;
}

// Relative distance of v from the q-positive plane (a, b).
double plane_distance(const IntegralLattice& lattice, const std::array<Vec, 2>& plane, const std::vector<double>& v) {
  std::vector<double> a, b;
  for (const auto& x : plane[0]) a.push_back(x.get_d());
  for (const auto& x : plane[1]) b.push_back(x.get_d());
  double g00 = numeric_form(lattice, a, a), g01 = numeric_form(lattice, a, b), g11 = numeric_form(lattice, b, b);
  double r0 = numeric_form(lattice, a, v), r1 = numeric_form(lattice, b, v);
  double d = g00 * g11 - g01 * g01;
  double c0 = (r0 * g11 - g01 * r1) / d, c1 = (g00 * r1 - g01 * r0) / d;
  double err = 0, scale = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    err = std::max(err, std::abs(v[i] - c0 * a[i] - c1 * b[i]));
    scale = std::max(scale, std::abs(v[i]));
  }
  return scale > 0 ? err / scale : err;
}

double numeric_membership(const IntegralLattice& lattice, const NumericPeriodPoint& p) {
  double qx = numeric_form(lattice, p.re, p.re), qy = numeric_form(lattice, p.im, p.im);
  double bxy = numeric_form(lattice, p.re, p.im);
  if (!(qx > 0) || !(qy > 0)) return INFINITY;
  return std::max(std::abs(qx - qy), 2 * std::abs(bxy)) / std::max(qx, qy);
}

}  // namespace

ChainVerification verify_twistor_chain(const IntegralLattice& lattice, const PeriodPoint& start,
                                       const PeriodPoint& target, const std::vector<ChainLink>& chain, double tol) {
  ChainVerification v;
  auto fail = [&](std::string msg) {
    v.ok = false;
    v.failures.push_back(std::move(msg));
  };

  if (!exact_member(lattice, start)) fail("start point is not in the period domain");
  if (!exact_member(lattice, target)) fail("target point is not in the period domain");
  if (chain.empty()) {
    if (!same_point(start, target)) fail("empty chain but start and target differ");
    return v;
  }

  for (std::size_t k = 0; k < chain.size(); ++k) {
    const std::string where = "link " + std::to_string(k + 1);
    const auto& basis = chain[k].conic.basis();
    const std::vector<Vec> w{basis[0], basis[1], basis[2]};
    if (!positive_definite(lattice, w)) {
      fail(where + ": plane is not positive definite");
      continue;
    }
    if (k == 0 && !(in_positive_span(lattice, w, start.re) && in_positive_span(lattice, w, start.im)))
      fail(where + ": start point is not on this conic");

    const auto& jp = chain[k].point;
    const std::vector<Vec> plane{jp.plane[0], jp.plane[1]};
    if (!positive_definite(lattice, plane)) {
      fail(where + ": junction plane is not positive definite");
      continue;
    }
    if (!in_positive_span(lattice, w, plane[0]) || !in_positive_span(lattice, w, plane[1]))
      fail(where + ": junction plane is not contained in the conic's plane");
    if (k + 1 < chain.size()) {
      const auto& nb = chain[k + 1].conic.basis();
      const std::vector<Vec> next{nb[0], nb[1], nb[2]};
      if (positive_definite(lattice, next) &&
          (!in_positive_span(lattice, next, plane[0]) || !in_positive_span(lattice, next, plane[1])))
        fail(where + ": junction point is not on the next conic");
    } else if (!jp.exact || !same_point(*jp.exact, target)) {
      fail(where + ": last point is not the target");
    }

    if (jp.exact) {
      if (!exact_member(lattice, *jp.exact)) fail(where + ": junction point is not in the period domain");
      if (!in_positive_span(lattice, plane, jp.exact->re) || !in_positive_span(lattice, plane, jp.exact->im))
        fail(where + ": junction point is not spanned by its plane");
    } else {
      double r = std::max({numeric_membership(lattice, jp.numeric), plane_distance(lattice, jp.plane, jp.numeric.re),
                           plane_distance(lattice, jp.plane, jp.numeric.im)});
      v.max_residual = std::max(v.max_residual, r);
      if (!(r < tol)) fail(where + ": junction point residual " + std::to_string(r) + " exceeds tolerance");
    }
  }
  return v;
}

}  // namespace hk
