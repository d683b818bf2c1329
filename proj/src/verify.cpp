#include "hkgeom/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "hkgeom/bbform.hpp"
#include "hkgeom/io.hpp"
#include "hkgeom/random.hpp"
#include "hkgeom/riemann.hpp"
#include "hkgeom/series.hpp"

namespace hk::verify {

// ---------------------------------------------------------------------------
// Oracles

std::vector<Integer> colored_partitions(long e, std::size_t order) {
  std::vector<Integer> a(order + 1, Integer(0));
  a[0] = 1;
  const long copies = e < 0 ? -e : e;
  for (std::size_t k = 1; k <= order; ++k)
    for (long c = 0; c < copies; ++c) {
      if (e > 0) {
        for (std::size_t n = k; n <= order; ++n) a[n] += a[n - k];
      } else {
        for (std::size_t n = order; n >= k; --n) a[n] -= a[n - k];
      }
    }
  return a;
}

namespace {

Integer power(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

Integer jacobian_stratification_euler(long normalization_genus, long nodes) {
  const Integer e_cstar = Integer(2) - 2;                               // e(P^1) minus two points
  const Integer e_abelian = power(Integer(0), 2 * normalization_genus);  // (S^1)^{2h}
  Integer total = 0;
  for (long k = 0; k <= nodes; ++k) {
    // k nodes where the sheaf is locally free: a (C*)^k factor.
    Integer strata;
    mpz_bin_uiui(strata.get_mpz_t(), static_cast<unsigned long>(nodes), static_cast<unsigned long>(k));
    total += strata * e_abelian * power(e_cstar, static_cast<unsigned long>(k));
  }
  return total;
}

Integer pluecker_bitangents(long d) {
  const Integer deg(d);
  const Integer dual_degree = deg * (deg - 1);
  const Integer genus = (deg - 1) * (deg - 2) / 2;
  const Integer flexes = 3 * deg * (deg - 2);  // cusps of the dual curve
  // genus(dual) = (d* - 1)(d* - 2)/2 - nodes(dual) - cusps(dual)
  return (dual_degree - 1) * (dual_degree - 2) / 2 - genus - flexes;
}

namespace {

Rational form(const IntegralLattice& lattice, const RatVector& v, const RatVector& w) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) {
      const Integer& g = lattice.gram()(i, j);
      if (g != 0) s += v[i] * w[j] * g;
    }
  return s;
}

}  // namespace

bool independent_membership(const IntegralLattice& lattice, const PeriodPoint& p) {
  if (p.re.size() != lattice.rank() || p.im.size() != lattice.rank()) return false;
  const Rational qx = form(lattice, p.re, p.re);
  return qx > 0 && form(lattice, p.im, p.im) == qx && form(lattice, p.re, p.im) == 0;
}

double independent_membership(const IntegralLattice& lattice, const NumericPeriodPoint& p) {
  const std::size_t r = lattice.rank();
  if (p.re.size() != r || p.im.size() != r) return INFINITY;
  double qx = 0, qy = 0, b = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const double g = lattice.gram()(i, j).get_d();
      qx += g * p.re[i] * p.re[j];
      qy += g * p.im[i] * p.im[j];
      b += g * p.re[i] * p.im[j];
    }
  if (!(qx > 0)) return INFINITY;
  return std::max(std::abs(qx - qy), 2 * std::abs(b)) / qx;
}

PeriodPoint random_period_point(const IntegralLattice& lattice, std::uint64_t seed, int reflections) {
  const auto& g = lattice.gram();
  if (lattice.rank() < 2 || g(0, 0) <= 0 || g(0, 0) != g(1, 1) || g(0, 1) != 0)
    throw RejectedInput("random_period_point: e1 and e2 must be orthogonal with equal positive squares");
  const std::size_t r = lattice.rank();
  Rng rng(seed);
  RatVector x(r, Rational(0)), y(r, Rational(0));
  x[0] = 1;
  y[1] = 1;
  for (int k = 0; k < reflections; ++k) {
    RatVector v(r);
    Rational qv;
    do {
      for (auto& c : v) c = rng.uniform_int(-2, 2);
      qv = form(lattice, v, v);
    } while (qv == 0);
    for (RatVector* u : {&x, &y}) {
      const Rational c = 2 * form(lattice, *u, v) / qv;
      for (std::size_t i = 0; i < r; ++i) (*u)[i] -= c * v[i];
    }
  }
  return make_period_point(std::move(x), std::move(y));
}

// ---------------------------------------------------------------------------
// Criteria

namespace {

using Clock = std::chrono::steady_clock;

class Report {
 public:
  void expect(bool cond, const std::string& what) {
    ++checks_;
    if (!cond) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_.empty(); }
  std::string detail() const {
    std::ostringstream os;
    if (!failures_.empty()) {
      os << failures_.size() << " of " << checks_ << " checks failed: ";
      for (std::size_t i = 0; i < std::min<std::size_t>(failures_.size(), 4); ++i) os << (i ? "; " : "") << failures_[i];
      if (failures_.size() > 4) os << "; ...";
    } else {
      os << checks_ << " checks";
    }
    for (const auto& n : notes_) os << "; " << n;
    return os.str();
  }

 private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Rational random_rational(Rng& rng, long num = 6, long den = 4) {
  Rational r(Integer(rng.uniform_int(-num, num)), Integer(rng.uniform_int(1, den)));
  r.canonicalize();
  return r;
}

Rational random_positive(Rng& rng, long num = 6, long den = 4) {
  Rational r(Integer(rng.uniform_int(1, num)), Integer(rng.uniform_int(1, den)));
  r.canonicalize();
  return r;
}

std::uint64_t stream(const SuiteOptions& o, int id) { return o.seed * 1000003ULL + static_cast<std::uint64_t>(id); }

void criterion1(Report& r, const SuiteOptions&) {
  const auto t0 = Clock::now();
  const auto s = goettsche_series(24, 10);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const auto oracle = colored_partitions(24, 10);
  r.expect(s.coeffs() == oracle, "coefficients through q^10 differ from the 24-colored partition counts");
  r.expect(s.coeff(1) == 24 && s.coeff(2) == 324 && s.coeff(3) == 3200, "orders 1-3 are not 24, 324, 3200");
  r.expect(secs < 1.0, "runtime over 1 s");
  r.note("q^10 coefficient " + to_string(s.coeff(10)));
}

void criterion2(Report& r, const SuiteOptions&) {
  const auto t0 = Clock::now();
  for (long e = -10; e <= 30; ++e) {
    const Integer blowup = hilb2_euler(e);
    const Integer series = goettsche_series(e, 2).coeff(2);
    r.expect(blowup == series, "e = " + std::to_string(e) + ": " + to_string(blowup) + " vs " + to_string(series));
    r.expect(colored_partitions(e, 2)[2] == series, "partition oracle disagrees at e = " + std::to_string(e));
  }
  r.expect(std::chrono::duration<double>(Clock::now() - t0).count() < 1.0, "runtime over 1 s");
}

void criterion3(Report& r, const SuiteOptions& o) {
  try {
    const Integer c2 = solve_c2(2, 0);
    r.expect(c2 == 24, "c2 = " + to_string(c2));
    const SurfaceChernData k3{0, c2};
    const Integer chi_o = hrr_chi_surface(k3, {1, 0, 0, 0}, o.todd);
    r.expect(chi_o == 2, "chi(O) = " + to_string(chi_o));
    const Integer chi_omega = hrr_chi_surface(k3, {2, 0, 0, c2}, o.todd);
    r.expect(chi_omega == -20, "chi(Omega^1) = " + to_string(chi_omega));
    // The same Todd expansion on P^2 (c1^2 = 9, c2 = 3) must give chi(O) = 1.
    const Integer chi_p2 = hrr_chi_surface({9, 3}, {1, 0, 0, 0}, o.todd);
    r.expect(chi_p2 == 1, "chi(O_P2) = " + to_string(chi_p2));
  } catch (const InconsistentData& e) {
    r.expect(false, e.what());
  }
  const HodgeDiamond d = k3_hodge_diamond();
  const int expected[3][3] = {{1, 0, 1}, {0, 20, 0}, {1, 0, 1}};
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      r.expect(d.h[p][q] == expected[p][q], "h^{" + std::to_string(p) + std::to_string(q) + "} = " + to_string(d.h[p][q]));
  r.expect(d.betti()[2] == 22, "b2 = " + to_string(d.betti()[2]));
  r.expect(d.euler() == 24, "e = " + to_string(d.euler()));
}

void criterion4(Report& r, const SuiteOptions&) {
  const auto u = standard_lattice("U");
  const auto e8 = standard_lattice("E8_minus");
  const auto l = direct_sum(direct_sum(direct_sum(u, u), u), direct_sum(e8, e8));
  const auto sig = signature(l);
  r.expect(sig == Signature{3, 19, 0}, "signature (" + std::to_string(sig.positive) + "," +
                                           std::to_string(sig.negative) + "," + std::to_string(sig.zero) + ")");
  const Integer b2 = k3_hodge_diamond().betti()[2];
  r.expect(Integer(sig.positive) == 3 && Integer(sig.negative) == b2 - 3, "signature is not (3, b2 - 3)");
  r.expect(l == k3_lattice(), "name:K3 differs from U^3 + E8(-1)^2");
  r.expect(l.is_even() && abs(l.determinant()) == 1, "not even unimodular");
}

void criterion5(Report& r, const SuiteOptions& o) {
  Rng rng(stream(o, 5));
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 4));
      RatMatrix q(d, d, Rational(0));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) q(i, j) = q(j, i) = random_rational(rng);
      const Rational c = random_positive(rng);
      RatVector alpha(d);
      for (auto& x : alpha) x = random_rational(rng);
      const FujikiData fd(n, q, c);
      Rational qa = 0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) qa += q(i, j) * alpha[i] * alpha[j];
      Rational expected = c;
      for (int k = 0; k < n; ++k) expected *= qa;
      const Rational got = fujiki_polarized(fd, std::vector<RatVector>(static_cast<std::size_t>(2 * n), alpha));
      r.expect(got == expected, "n = " + std::to_string(n) + ": matching sum " + to_string(got) + " vs c q^n " +
                                    to_string(expected));

      // Isotropic beta: adjust q(0,0) so that q(beta) = 0.
      RatVector beta(d);
      for (auto& x : beta) x = random_rational(rng);
      if (beta[0] == 0) beta[0] = 1;
      Rational qb = 0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) qb += q(i, j) * beta[i] * beta[j];
      RatMatrix qi = q;
      qi(0, 0) -= qb / (beta[0] * beta[0]);
      const FujikiData fi(n, qi, c);
      for (int copies = n + 1; copies <= 2 * n; ++copies) {
        std::vector<RatVector> fillers;
        for (int k = 0; k < 2 * n - copies; ++k) {
          RatVector f(d);
          for (auto& x : f) x = random_rational(rng);
          fillers.push_back(std::move(f));
        }
        const Rational v = isotropic_power_vanishing(fi, beta, fillers, copies);
        r.expect(v == 0, "isotropic power with " + std::to_string(copies) + " copies is " + to_string(v));
      }
    }
}

void criterion6(Report& r, const SuiteOptions& o) {
  Rng rng(stream(o, 6));
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    DivisorPairData d{0, random_positive(rng), random_positive(rng), n, random_positive(rng)};
    const auto v = matsushita_expand(d);
    r.expect(v.size() == static_cast<std::size_t>(2 * n + 1), "wrong length");
    for (int m = 0; m <= 2 * n; ++m) {
      const Rational& x = v[static_cast<std::size_t>(m)];
      if (m > n) r.expect(x == 0, "E^" + std::to_string(m) + " A^" + std::to_string(2 * n - m) + " = " + to_string(x));
      else r.expect(x > 0, "E^" + std::to_string(m) + " A^" + std::to_string(2 * n - m) + " = " + to_string(x));
    }
  }
  const auto w = matsushita_expand({0, 2, 1, 2, 3});
  const std::vector<Rational> by_e_power{w[4], w[3], w[2], w[1], w[0]};
  r.expect(by_e_power == std::vector<Rational>{0, 0, 2, 6, 12}, "worked n = 2 instance is not (0, 0, 2, 6, 12)");
}

void criterion7(Report& r, const SuiteOptions& o) {
  // diag(1,1,1,-1)
  const auto l4 = parse_lattice_spec("diag:1,1,1,-1");
  const PeriodPoint p4 = make_period_point({1, 0, 0, 0}, {0, 1, 0, 0});
  r.expect(in_period_domain(l4, p4) && independent_membership(l4, p4), "e1 + i e2 not in the domain");
  r.expect(!in_period_domain(l4, make_period_point({1, 0, 0, 0}, {0, 0, 0, 1})), "e1 + i e4 accepted");
  for (const ComplexRational& z : {ComplexRational{2, 0}, ComplexRational{1, 1}, ComplexRational{0, Rational(-3, 2)},
                                   ComplexRational{Rational(5, 7), -2}}) {
    const PeriodPoint s = scaled(p4, z);
    r.expect(in_period_domain(l4, s) && projectively_equal(s, p4), "projective invariance fails for z = " + to_string(z));
  }
  r.expect(in_period_domain(l4, conjugate(p4)), "conjugate point not in the domain");
  const auto h4 = hodge_structure_from_period(l4, p4);
  r.expect(h4.h20 == 1 && h4.h02 == 1 && h4.h11 == 2, "h11 on diag(1,1,1,-1) is " + std::to_string(h4.h11));

  // K3
  const auto k3 = k3_lattice();
  RatVector x(22, Rational(0)), y(22, Rational(0)), z(22, Rational(0));
  x[0] = x[1] = 1;
  y[2] = y[3] = 1;
  z[4] = z[5] = 1;
  const PeriodPoint pk = make_period_point(x, y);
  r.expect(in_period_domain(k3, pk) && independent_membership(k3, pk), "K3 point not in the domain");
  const auto hk3 = hodge_structure_from_period(k3, pk);
  r.expect(hk3.h11 == 20 && hk3.h11_basis.size() == 20, "h11 on K3 is " + std::to_string(hk3.h11));

  // Conic samples
  std::size_t samples = 0, exact = 0;
  double worst = 0;
  auto check_conic = [&](const IntegralLattice& l, const PositiveThreePlane& w, std::uint64_t seed) {
    for (const auto& cp : twistor_conic(l, w, 32, seed)) {
      ++samples;
      if (cp.exact) {
        ++exact;
        r.expect(independent_membership(l, *cp.exact), "exact conic sample fails membership");
      } else {
        const double res = independent_membership(l, cp.numeric);
        worst = std::max(worst, res);
        r.expect(res < 1e-10, "numeric conic sample residual " + sci(res));
      }
    }
  };
  check_conic(l4, PositiveThreePlane(l4, {RatVector{1, 0, 0, 0}, RatVector{0, 1, 0, 0}, RatVector{0, 0, 1, 0}}),
              stream(o, 7));
  check_conic(l4, PositiveThreePlane(l4, {RatVector{1, 0, 0, 0}, RatVector{0, 2, 0, 1}, RatVector{0, 0, 3, 1}}),
              stream(o, 7) + 1);
  check_conic(k3, PositiveThreePlane(k3, {x, y, z}), stream(o, 7) + 2);
  r.note(std::to_string(samples) + " conic samples (" + std::to_string(exact) + " exact, worst numeric residual " +
         sci(worst) + ")");

  // Path search in signature (3,2)
  const auto l5 = parse_lattice_spec("diag:1,1,1,-1,-1");
  std::size_t found = 0, inconclusive = 0, longest = 0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const PeriodPoint a = random_period_point(l5, stream(o, 7) * 64 + 2 * k);
    const PeriodPoint b = random_period_point(l5, stream(o, 7) * 64 + 2 * k + 1);
    PathSearchOptions opt;
    opt.seed = stream(o, 7) + k;
    opt.max_steps = 16;
    try {
      const auto rep = twistor_path_search(l5, a, b, opt);
      if (rep.status == SearchStatus::inconclusive) {
        ++inconclusive;
        continue;
      }
      const auto again = verify_twistor_chain(l5, a, b, rep.chain, opt.tol);
      r.expect(again.ok && rep.chain.size() <= 16, "pair " + std::to_string(k) + ": chain fails re-verification");
      ++found;
      longest = std::max(longest, rep.chain.size());
    } catch (const InconsistentData& e) {
      r.expect(false, "pair " + std::to_string(k) + ": " + e.what());
    }
  }
  r.note("path search: " + std::to_string(found) + " verified chains (longest " + std::to_string(longest) + "), " +
         std::to_string(inconclusive) + " inconclusive");
}

riemann::Vec vec(std::initializer_list<double> v) {
  riemann::Vec x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

// Flat metric on R^3 plus a fixed polynomial perturbation.
riemann::MetricChart perturbed_flat(Rng& rng, double h) {
  using riemann::Polynomial;
  std::vector<std::vector<Polynomial>> e(3, std::vector<Polynomial>(3, Polynomial(3)));
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Polynomial p = i == j ? Polynomial::constant(3, 1.0) : Polynomial(3);
      for (int t = 0; t < 3; ++t) {
        Polynomial::Exponents ex(3);
        for (auto& k : ex) k = static_cast<int>(rng.uniform_int(0, 2));
        if (ex[0] + ex[1] + ex[2] < 2) ex[static_cast<std::size_t>(t)] += 2;
        p.add_term(ex, 0.1 * (rng.uniform01() - 0.5));
      }
      e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p;
      e[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = p;
    }
  return riemann::polynomial_chart(e, riemann::Vec::Constant(3, -1), riemann::Vec::Constant(3, 1)).with_step(h);
}

void criterion8(Report& r, const SuiteOptions& o) {
  using namespace riemann;
  const auto t0 = Clock::now();
  Rng rng(stream(o, 8));

  // Flat
  double flat = 0;
  for (const auto& chart : {flat_chart(3), flat_torus_chart(2)}) {
    for (int k = 0; k < 5; ++k) {
      Vec x(chart.dim());
      for (int i = 0; i < chart.dim(); ++i) x[i] = rng.uniform01();
      const auto cp = curvature(chart, x);
      flat = std::max({flat, cp.christoffel.max_abs(), cp.riemann.max_abs(), cp.ricci.cwiseAbs().maxCoeff()});
    }
  }
  r.expect(flat < 1e-9, "flat residual " + sci(flat));

  // Unit sphere
  const auto s2 = sphere_chart(2, 1.0);
  double sec = 0, ric = 0;
  for (const Vec& x : {vec({1.0, 0.3}), vec({0.4, -2.0}), vec({2.5, 4.0}), vec({M_PI / 2, 0})}) {
    const auto cp = curvature(s2, x);
    sec = std::max(sec, std::abs(cp.sectional(0, 1) - 1));
    ric = std::max(ric, (cp.ricci - cp.metric).cwiseAbs().maxCoeff());
  }
  r.expect(sec < 1e-4, "sectional curvature error " + sci(sec));
  r.expect(ric < 1e-4, "Ric - g error " + sci(ric));
  const double s2_bianchi = bianchi_residuals(curvature(s2, vec({1.0, 0.3}))).first;
  r.expect(s2_bianchi < 1e-6, "S^2 first-Bianchi residual " + sci(s2_bianchi));

  // Latitude holonomy at colatitude 60 degrees
  const double theta = M_PI / 3;
  const Mat P = transport_matrix(s2, latitude_loop(theta), 4096);
  Mat frame = Mat::Identity(2, 2);
  frame(1, 1) = std::sin(theta);
  const Mat rot = frame * P * frame.inverse();
  const double angle = std::atan2(rot(1, 0), rot(0, 0));
  const double angle_err = std::abs(M_PI - std::abs(angle));
  r.expect(angle_err < 1e-4, "holonomy angle error " + sci(angle_err));

  // Geodesic speed drift
  const auto tr = geodesic(s2, vec({1.0, 0.3}), vec({0.3, 0.7}), 10.0, 10000);
  r.expect(!tr.exited && tr.speed_drift < 1e-8, "geodesic speed drift " + sci(tr.speed_drift));

  // First Bianchi identity under h -> h/2
  Rng prng(stream(o, 8) + 1);
  const auto base = perturbed_flat(prng, 1e-2);
  const Vec x = vec({0.3, -0.2, 0.4});
  const auto c1 = curvature(base, x), c2 = curvature(base.with_step(5e-3), x);
  const auto b1 = bianchi_residuals(c1), b2 = bianchi_residuals(c2);
  const double floor = 1e-10 * (1 + c1.lowered.max_abs());
  const double ratio = b1.first / b2.first;
  const bool measurable = b1.first > floor;
  r.expect(measurable && ratio >= 3.5,
           "first-Bianchi residual " + sci(b1.first) + " at h = 1e-2 and " + sci(b2.first) +
               " at h = 5e-3: " + (measurable ? "ratio " + sci(ratio) : std::string("at rounding level, no decay to measure")));
  r.note("pair-symmetry residual ratio under h -> h/2: " + sci(b1.pair_sym / b2.pair_sym));

  if (o.profile == Profile::full) {
    // Holonomy composition and inverse laws on S^2 at the base (pi/3, 0).
    const Vec b = vec({theta, 0});
    const Path l1 = Path::polyline({b, vec({theta - 0.5, 0.8}), vec({theta + 0.3, 1.5}), b});
    const Path l2 = Path::polyline({b, vec({theta + 0.4, 0.3}), vec({theta + 0.1, 0.9}), b});
    const auto hs = holonomy_sample(s2, b, {l1, l2, l1.then(l2), l2.reversed()});
    double iso = 0;
    for (double v : hs.isometry_residuals) iso = std::max(iso, v);
    r.expect(iso < 1e-8, "holonomy isometry residual " + sci(iso));
    const double comp = (hs.matrices[2] - hs.matrices[1] * hs.matrices[0]).cwiseAbs().maxCoeff();
    r.expect(comp < 1e-6, "composition law residual " + sci(comp));
    const double inv = (hs.matrices[3] - hs.matrices[1].inverse()).cwiseAbs().maxCoeff();
    r.expect(inv < 1e-6, "inverse law residual " + sci(inv));

    // Norm conservation on random loops
    double drift = 0;
    for (int k = 0; k < 4; ++k) {
      std::vector<Vec> pts{b};
      for (int i = 0; i < 3; ++i) pts.push_back(vec({0.6 + 1.8 * rng.uniform01(), 6 * rng.uniform01() - 3}));
      pts.push_back(b);
      const auto t = parallel_transport(s2, Path::polyline(pts), vec({rng.uniform01(), rng.uniform01()}), 2048);
      drift = std::max(drift, t.norm_drift);
    }
    r.expect(drift < 1e-8, "transport norm drift " + sci(drift));

    // Kaehler residuals: Fubini-Study and a polynomial potential under h -> h/2
    const auto fs = kahler_residuals(fubini_study_chart(), {vec({0.3, -0.4}), vec({1.2, 0.5})});
    r.expect(fs.d_omega < 1e-5 && fs.nabla_j < 1e-5, "Fubini-Study Kaehler residuals too large");
    Polynomial phi(4);
    for (int i = 0; i < 4; ++i) {
      Polynomial::Exponents e(4, 0);
      e[static_cast<std::size_t>(i)] = 2;
      phi.add_term(e, 0.5);
    }
    phi.add_term({6, 0, 0, 0}, 0.05);
    phi.add_term({2, 2, 1, 1}, 0.08);
    phi.add_term({1, 0, 3, 2}, -0.04);
    const auto kc = kahler_potential_chart(phi, Vec::Constant(4, -1), Vec::Constant(4, 1));
    const Vec w = vec({0.4, -0.3, 0.5, 0.2});
    const auto k1 = kahler_residuals(kc.with_step(1e-2), {w}), k2 = kahler_residuals(kc.with_step(5e-3), {w});
    r.expect(k1.d_omega / k2.d_omega > 3.5 && k1.nabla_j / k2.nabla_j > 3.5, "Kaehler residuals are not second order");
  }

  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  r.expect(secs < 180, "runtime over 3 minutes");
}

void criterion9(Report& r, const SuiteOptions&) {
  r.expect(elliptic_fiber_count(24, 1) == 24, "elliptic_fiber_count(24, 1) != 24");
  r.expect(nodal_rational_euler() == 1, "e(nodal rational curve) != 1");
  for (long g = 0; g <= 20; ++g) {
    const Integer v = jacobian_euler(0, g);
    r.expect(v == 1 && v == jacobian_stratification_euler(0, g), "jacobian_euler(0, " + std::to_string(g) + ")");
  }
  for (long h = 1; h <= 6; ++h)
    for (long nodes = 0; nodes <= 6; ++nodes) {
      const Integer v = jacobian_euler(h, nodes);
      r.expect(v == 0 && v == jacobian_stratification_euler(h, nodes),
               "jacobian_euler(" + std::to_string(h) + ", " + std::to_string(nodes) + ")");
    }
  r.expect(pluecker_bitangents(4) == 28 && plane_curve_bitangents(4) == 28, "quartic bitangents != 28");
  r.expect(pluecker_bitangents(6) == plane_curve_bitangents(6), "Pluecker oracle disagrees at d = 6");
  try {
    r.expect(bitangent_count_sextic() == 324, "bitangent_count_sextic() != 324");
  } catch (const InconsistentData& e) {
    r.expect(false, e.what());
  }
}

std::vector<std::string> labels(const std::vector<DecompositionFactor>& c) {
  std::vector<std::string> l;
  for (const auto& f : c) l.push_back(f.label());
  std::sort(l.begin(), l.end());
  return l;
}

void criterion10(Report& r, const SuiteOptions&) {
  const auto a = chi_decomposition_enumerate(4, 3);
  r.expect(a.candidates.size() == 1 && labels(a.candidates[0]) == std::vector<std::string>{"HK(4)"},
           "(4, 3) is not exactly {HK(4)}");
  const auto b = chi_decomposition_enumerate(6, 4);
  std::vector<std::vector<std::string>> got;
  for (const auto& c : b.candidates) got.push_back(labels(c));
  std::sort(got.begin(), got.end());
  std::vector<std::vector<std::string>> want{{"HK(2)", "StrictCY(4)"}, {"HK(6)"}};
  r.expect(got == want, "(6, 4) is not exactly {HK(6)}, {HK(2) + StrictCY(4)}");

  for (int dim = 1; dim <= 8; ++dim)
    for (long chi = -1; chi <= 6; ++chi) {
      const auto e = chi_decomposition_enumerate(dim, chi);
      for (const auto& c : e.candidates) {
        int total = 0;
        Integer product = 1;
        for (const auto& f : c) {
          total += f.complex_dim;
          product *= f.chi;
          Integer expected;
          switch (f.kind) {
            case FactorKind::torus: expected = 0; break;
            case FactorKind::strict_cy: expected = f.complex_dim % 2 == 0 ? 2 : 0; break;
            case FactorKind::hyperkahler: expected = f.complex_dim / 2 + 1; break;
          }
          r.expect(f.chi == expected, f.label() + " has chi " + to_string(f.chi));
        }
        r.expect(total == dim && product == chi, "candidate with wrong dimension or chi");
      }
      r.expect(e.ambiguous == (chi == 0 && !e.candidates.empty()), "ambiguity flag");
    }
}

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

std::pair<std::string, int> run_command(const std::string& cmd) {
  std::string out;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return {"", -1};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  int status = pclose(f);
  return {out, status};
}

std::string commas(const RatVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

void criterion11(Report& r, const SuiteOptions& o) {
  const auto l5 = parse_lattice_spec("diag:1,1,1,-1,-1");
  const PeriodPoint a = random_period_point(l5, stream(o, 11));
  const PeriodPoint b = random_period_point(l5, stream(o, 11) + 1);

  if (!o.cli_path.empty()) {
    const std::string seed = std::to_string(stream(o, 11) % 100000);
    const std::vector<std::string> commands{
        "period conic --lattice diag:1,1,1,-1 --w1 1,0,0,0 --w2 0,1,0,0 --w3 0,0,1,0 --samples 16 --seed " + seed,
        "period path --lattice diag:1,1,1,-1,-1 --re " + commas(a.re) + " --im " + commas(a.im) + " --target-re " +
            commas(b.re) + " --target-im " + commas(b.im) + " --seed " + seed,
        "count goettsche --e 24 --order 12 --seed " + seed,
        "lattice signature --lattice name:K3 --seed " + seed,
        "riemann holonomy --metric " + shell_quote(R"({"dim":2,"catalog":"sphere"})") +
            " --base 1.0471975511965976,0 --loop " + shell_quote(R"({"latitude":1.0471975511965976})") +
            " --steps 512 --seed " + seed,
        "period conic --lattice diag:1,1,1,-1 --w1 1,0,0,0 --w2 0,1,0,0 --w3 0,0,1,0 --samples 4 --format table --seed " +
            seed,
    };
    for (const auto& c : commands) {
      const std::string full = shell_quote(o.cli_path) + " " + c + " 2>&1";
      const auto first = run_command(full), second = run_command(full);
      r.expect(first.first == second.first && first.second == second.second, "output differs between runs: " + c);
      r.expect(first.second == 0, "command failed: " + c);
    }
    // HK_SEED supplies the default seed.
    const std::string base = "period conic --lattice diag:1,1,1,-1 --w1 1,0,0,0 --w2 0,1,0,0 --w3 0,0,1,0 --samples 8";
    const auto env = run_command("HK_SEED=" + seed + " " + shell_quote(o.cli_path) + " " + base + " 2>&1");
    const auto flag = run_command(shell_quote(o.cli_path) + " " + base + " --seed " + seed + " 2>&1");
    // argv differs between the two invocations; compare everything else.
    auto strip = [](const std::string& text) {
      io::json j = io::json::parse(text, nullptr, false);
      if (j.is_object() && j.contains("provenance")) j["provenance"].erase("argv");
      return j.dump();
    };
    r.expect(env.second == 0 && strip(env.first) == strip(flag.first), "HK_SEED and --seed give different output");
    r.note(std::to_string(commands.size()) + " CLI commands run twice");
    return;
  }

  auto once = [&] {
    io::json j;
    const PositiveThreePlane w(parse_lattice_spec("diag:1,1,1,-1"),
                               {RatVector{1, 0, 0, 0}, RatVector{0, 1, 0, 0}, RatVector{0, 0, 1, 0}});
    for (const auto& p : twistor_conic(parse_lattice_spec("diag:1,1,1,-1"), w, 16, stream(o, 11)))
      j["conic"].push_back(io::conic_point_to_json(p));
    PathSearchOptions opt;
    opt.seed = stream(o, 11);
    j["path"] = io::path_report_to_json(twistor_path_search(l5, a, b, opt));
    return j.dump();
  };
  r.expect(once() == once(), "repeated in-process runs differ");
  r.note("in-process comparison (no CLI path given)");
}

const char* const kNames[criterion_count] = {
    "Goettsche / Yau-Zaslow counts",
    "Two-route Euler characteristic of S^[2]",
    "K3 characteristic numbers",
    "Lattice / BB signature consistency",
    "Fujiki polarization",
    "Matsushita sign pattern",
    "Period domain and twistor paths",
    "Riemannian numerics",
    "Counting exercises",
    "Decomposition enumeration",
    "Determinism",
};

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  if (id < 1 || id > criterion_count) throw RejectedInput("no acceptance criterion " + std::to_string(id));
  static const std::function<void(Report&, const SuiteOptions&)> fns[criterion_count] = {
      criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11};
  CriterionResult res;
  res.id = id;
  res.name = kNames[id - 1];
  Report r;
  const auto t0 = Clock::now();
  try {
    fns[id - 1](r, options);
  } catch (const std::exception& e) {
    r.expect(false, std::string("unexpected error: ") + e.what());
  }
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  res.pass = r.ok();
  res.detail = r.detail();
  return res;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count; ++id) out.push_back(run_criterion(id, options));
  return out;
}

}  // namespace hk::verify
