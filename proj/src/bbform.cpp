#include "hkgeom/bbform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hkgeom/linalg.hpp"

namespace hk {

ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) { return {a.re + b.re, a.im + b.im}; }
ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) { return {a.re - b.re, a.im - b.im}; }
ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  Rational norm = b.re * b.re + b.im * b.im;
  if (norm == 0) throw RejectedInput("complex division by zero");
  ComplexRational num = a * conj(b);
  return {num.re / norm, num.im / norm};
}
ComplexRational conj(const ComplexRational& z) { return {z.re, -z.im}; }
bool is_zero(const ComplexRational& z) { return z.re == 0 && z.im == 0; }

std::string to_string(const ComplexRational& z) {
  if (z.im == 0) return to_string(z.re);
  std::string im = to_string(abs(z.im));
  if (z.re == 0) return (z.im < 0 ? "-" : "") + im + "i";
  return to_string(z.re) + (z.im < 0 ? "-" : "+") + im + "i";
}

FujikiData::FujikiData(int n, RatMatrix q, Rational c) : n_(n), q_(std::move(q)), c_(std::move(c)) {
  if (n_ < 1) throw RejectedInput("Fujiki data: n must be >= 1");
  if (c_ <= 0) throw RejectedInput("Fujiki data: constant c must be positive");
  if (q_.rows() == 0 || !q_.is_symmetric()) throw RejectedInput("Fujiki data: q must be a nonempty symmetric matrix");
}

Rational FujikiData::pairing(std::span<const Rational> a, std::span<const Rational> b) const {
  if (a.size() != dim() || b.size() != dim())
    throw RejectedInput("Fujiki data: class has length " + std::to_string(a.size()) + ", expected " +
                        std::to_string(dim()));
  return linalg::bilinear(q_, a, b);
}

double FujikiData::root_constant() const { return std::pow(c_.get_d(), 1.0 / n_); }

ComplexRational bb_eval(const HodgeDecomposedClass& alpha, int n) {
  if (n < 1) throw RejectedInput("bb_eval: n must be >= 1");
  if (alpha.q11.rows() != alpha.beta.size() || !alpha.q11.is_symmetric())
    throw RejectedInput("bb_eval: beta does not match the H^{1,1} pairing");
  Rational beta_sq = alpha.beta.empty() ? Rational(0) : linalg::bilinear(alpha.q11, alpha.beta, alpha.beta);
  Rational half_n(n, 2);
  half_n.canonicalize();
  return alpha.lambda * alpha.mu + ComplexRational{half_n * beta_sq, 0};
}

Integer double_factorial_odd(int n) {
  Integer r = 1;
  for (int k = 2 * n - 1; k > 1; k -= 2) r *= k;
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational fujiki_top(const FujikiData& fd, std::span<const Rational> alpha) {
  Rational q = fd.square(alpha);
  Rational power = 1;
  for (int i = 0; i < fd.n(); ++i) power *= q;
  return fd.c() * power;
}

namespace {

// Sum over perfect matchings of the still-unused slots.
Rational matching_sum(const RatMatrix& pair, std::vector<bool>& used) {
  std::size_t first = 0;
  while (first < used.size() && used[first]) ++first;
  if (first == used.size()) return 1;
  used[first] = true;
  Rational total = 0;
  for (std::size_t j = first + 1; j < used.size(); ++j) {
    if (used[j] || pair(first, j) == 0) continue;
    used[j] = true;
    total += pair(first, j) * matching_sum(pair, used);
    used[j] = false;
  }
  used[first] = false;
  return total;
}

}  // namespace

Rational fujiki_polarized(const FujikiData& fd, const std::vector<RatVector>& alphas) {
  const std::size_t slots = 2 * static_cast<std::size_t>(fd.n());
  if (alphas.size() != slots)
    throw RejectedInput("fujiki_polarized: expected " + std::to_string(slots) + " classes, got " +
                        std::to_string(alphas.size()));
  RatMatrix pair(slots, slots);
  for (std::size_t i = 0; i < slots; ++i)
    for (std::size_t j = i + 1; j < slots; ++j) pair(i, j) = pair(j, i) = fd.pairing(alphas[i], alphas[j]);
  std::vector<bool> used(slots, false);
  return fd.c() * matching_sum(pair, used) / Rational(double_factorial_odd(fd.n()));
}

Rational isotropic_power_vanishing(const FujikiData& fd, std::span<const Rational> beta,
                                   const std::vector<RatVector>& fillers, int copies) {
  if (fd.square(beta) != 0) throw RejectedInput("isotropic_power_vanishing: q(beta) must be 0");
  if (copies < 0 || static_cast<std::size_t>(copies) + fillers.size() != 2 * static_cast<std::size_t>(fd.n()))
    throw RejectedInput("isotropic_power_vanishing: copies + fillers must fill exactly 2n slots");
  std::vector<RatVector> args(static_cast<std::size_t>(copies), RatVector(beta.begin(), beta.end()));
  args.insert(args.end(), fillers.begin(), fillers.end());
  Rational value = fujiki_polarized(fd, args);
  // Every matching pairs two copies of beta once copies > n.
  if (copies >= fd.n() + 1 && value != 0)
    throw InconsistentData("isotropic_power_vanishing: nonzero value with copies >= n+1");
  return value;
}

std::vector<Rational> matsushita_expand(const DivisorPairData& d) {
  if (d.n < 1) throw RejectedInput("matsushita_expand: n must be >= 1");
  const std::vector<Rational> base{d.qA, 2 * d.qEA, d.qE};
  std::vector<Rational> poly{Rational(1)};
  for (int k = 0; k < d.n; ++k) {
    std::vector<Rational> next(poly.size() + 2, Rational(0));
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < base.size(); ++j) next[i + j] += poly[i] * base[j];
    poly = std::move(next);
  }
  const long top = 2L * d.n;
  std::vector<Rational> out(static_cast<std::size_t>(top + 1));
  for (long m = 0; m <= top; ++m) out[m] = d.c * poly[m] / Rational(binomial(top, m));
  return out;
}

TrivialityReport numerically_trivial_test(const DivisorPairData& d, const Rational& top_e, const Rational& mixed) {
  if (d.n < 1) throw RejectedInput("numerically_trivial_test: n must be >= 1");
  if (d.c <= 0) throw RejectedInput("numerically_trivial_test: c must be positive");
  if (d.qA <= 0) throw RejectedInput("numerically_trivial_test: q(A) must be positive for an ample A");
  auto numbers = matsushita_expand(d);
  const auto top = static_cast<std::size_t>(2 * d.n);
  if (numbers[top] != top_e)
    throw InconsistentData("E^{2n} = " + to_string(top_e) + " but c q(E)^n = " + to_string(numbers[top]));
  if (numbers[1] != mixed)
    throw InconsistentData("E.A^{2n-1} = " + to_string(mixed) + " but c q(E,A) q(A)^{n-1} = " + to_string(numbers[1]));

  Rational qa_power = 1;
  for (int i = 0; i < d.n - 1; ++i) qa_power *= d.qA;
  TrivialityReport report;
  report.qEA = mixed / (d.c * qa_power);
  report.qE = top_e == 0 ? Rational(0) : d.qE;
  report.numerically_trivial = top_e == 0 && mixed == 0;
  return report;
}

TopIntersection top_intersection_from_form(const FujikiData& fd) {
  return [fd](std::span<const std::size_t> indices) {
    std::vector<RatVector> args;
    args.reserve(indices.size());
    for (auto i : indices) {
      RatVector e(fd.dim(), Rational(0));
      e.at(i) = 1;
      args.push_back(std::move(e));
    }
    return fujiki_polarized(fd, args);
  };
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const Integer& num = r.get_num();
  const Integer& den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  Integer a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  Rational out(a, b);
  out.canonicalize();
  return out;
}

namespace {

double table_scale(const std::vector<double>& values) {
  double s = 0;
  for (double v : values) s = std::max(s, std::abs(v));
  return std::max(s, 1.0);
}

}  // namespace

Recovery bb_recover(int n, const Rational& c, std::size_t dim, const TopIntersection& table,
                    std::span<const Rational> reference, const RecoveryOptions& options) {
  if (n != 1 && n != 2) throw RejectedInput("bb_recover: only n = 1 and n = 2 are supported");
  if (c <= 0) throw RejectedInput("bb_recover: c must be positive");
  if (dim == 0 || reference.size() != dim) throw RejectedInput("bb_recover: reference must have length dim");

  Recovery out;
  if (n == 1) {
    RatMatrix q(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        std::size_t idx[2] = {i, j};
        q(i, j) = table(idx) / c;
      }
    if (!q.is_symmetric()) throw InconsistentData("bb_recover: intersection table is not symmetric");
    if (linalg::bilinear(q, reference, reference) == 0) throw RejectedInput("bb_recover: q(reference) = 0");
    out.q_numeric.reserve(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) out.q_numeric.push_back(q(i, j).get_d());
    out.q = std::move(q);
    return out;
  }

  // Cache the full 4-linear table once.
  const std::size_t d2 = dim * dim;
  std::vector<Rational> t4(d2 * d2);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t x = 0; x < dim; ++x)
        for (std::size_t y = 0; y < dim; ++y) {
          std::size_t idx[4] = {a, b, x, y};
          t4[((a * dim + b) * dim + x) * dim + y] = table(idx);
        }
  auto at = [&](std::size_t a, std::size_t b, std::size_t x, std::size_t y) -> const Rational& {
    return t4[((a * dim + b) * dim + x) * dim + y];
  };

  // T(r, r, x, y) and T(r, r, r, x) by multilinearity.
  RatMatrix rr(dim, dim, Rational(0));
  for (std::size_t a = 0; a < dim; ++a) {
    if (reference[a] == 0) continue;
    for (std::size_t b = 0; b < dim; ++b) {
      if (reference[b] == 0) continue;
      Rational w = reference[a] * reference[b];
      for (std::size_t x = 0; x < dim; ++x)
        for (std::size_t y = 0; y < dim; ++y) rr(x, y) += w * at(a, b, x, y);
    }
  }
  RatVector rrr(dim, Rational(0));
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) rrr[x] += reference[y] * rr(y, x);
  Rational rrrr = linalg::dot(reference, rrr);

  const Rational s = rrrr / c;  // q(reference)^2
  if (s == 0) throw RejectedInput("bb_recover: q(reference) = 0");
  if (s < 0) throw InconsistentData("bb_recover: T(r,r,r,r)/c is negative, not a square");

  // q(x, y) = M(x, y) / sqrt(s) with M rational.
  RatVector k(dim);
  for (std::size_t x = 0; x < dim; ++x) k[x] = rrr[x] / c;
  RatMatrix m(dim, dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) m(x, y) = 3 * rr(x, y) / c - 2 * k[x] * k[y] / s;

  auto root = rational_sqrt(s);
  const double root_d = root ? root->get_d() : std::sqrt(s.get_d());
  if (!root && !options.allow_float)
    throw RejectedInput("bb_recover: T(r,r,r,r)/c = " + to_string(s) +
                        " is not a rational square; enable the floating fallback");

  out.exact = root.has_value();
  out.q_numeric.resize(d2);
  if (out.exact) {
    out.q = RatMatrix(dim, dim);
    for (std::size_t x = 0; x < dim; ++x)
      for (std::size_t y = 0; y < dim; ++y) out.q(x, y) = m(x, y) / *root;
    for (std::size_t i = 0; i < d2; ++i) out.q_numeric[i] = out.q(i / dim, i % dim).get_d();

    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b)
        for (std::size_t x = 0; x < dim; ++x)
          for (std::size_t y = 0; y < dim; ++y) {
            const auto& q = out.q;
            Rational expect = c / 3 * (q(a, b) * q(x, y) + q(a, x) * q(b, y) + q(a, y) * q(b, x));
            if (expect != at(a, b, x, y))
              throw InconsistentData("bb_recover: table is not of the form (c/3) * polarized q^2");
          }
    return out;
  }

  for (std::size_t i = 0; i < d2; ++i) out.q_numeric[i] = m(i / dim, i % dim).get_d() / root_d;
  std::vector<double> flat_table(t4.size());
  for (std::size_t i = 0; i < t4.size(); ++i) flat_table[i] = t4[i].get_d();
  const double cd = c.get_d();
  auto qn = [&](std::size_t i, std::size_t j) { return out.q_numeric[i * dim + j]; };
  double residual = 0;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t x = 0; x < dim; ++x)
        for (std::size_t y = 0; y < dim; ++y) {
          double expect = cd / 3 * (qn(a, b) * qn(x, y) + qn(a, x) * qn(b, y) + qn(a, y) * qn(b, x));
          residual = std::max(residual, std::abs(expect - at(a, b, x, y).get_d()));
        }
  out.residual = residual;
  if (residual > options.tolerance * table_scale(flat_table))
    throw InconsistentData("bb_recover: table is not of the form (c/3) * polarized q^2 (residual " +
                           std::to_string(residual) + ")");
  return out;
}

}  // namespace hk
