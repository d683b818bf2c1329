#include <cmath>
#include <limits>
#include <sstream>

#include "hkgeom/riemann.hpp"
#include "hkgeom/types.hpp"

namespace hk::riemann {

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  Polynomial p(nvars);
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(i)] = 1;
  p.add_term(e, 1.0);
  return p;
}

void Polynomial::add_term(const Exponents& e, double coeff) {
  if (static_cast<int>(e.size()) != nvars_) throw RejectedInput("polynomial term has the wrong number of exponents");
  for (int k : e)
    if (k < 0) throw RejectedInput("polynomial exponents must be nonnegative");
  if (coeff == 0) return;
  double& c = terms_[e];
  c += coeff;
  if (c == 0) terms_.erase(e);
}

double Polynomial::operator()(const Vec& x) const {
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[static_cast<Eigen::Index>(i)];
    s += t;
  }
  return s;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial d(nvars_);
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<std::size_t>(var)];
    if (k == 0) continue;
    Exponents f = e;
    f[static_cast<std::size_t>(var)] = k - 1;
    d.add_term(f, c * k);
  }
  return d;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

Polynomial operator*(double s, const Polynomial& p) {
  Polynomial r(p.nvars_);
  for (const auto& [e, c] : p.terms_) r.add_term(e, s * c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MetricChart::MetricChart(std::string name, int dim, MetricFn g, DerivativeFn dg, Vec lo, Vec hi,
                         std::vector<bool> periodic)
    : name_(std::move(name)), dim_(dim), g_(std::move(g)), dg_(std::move(dg)), lo_(std::move(lo)),
      hi_(std::move(hi)), periodic_(std::move(periodic)) {
  if (dim_ < 1) throw RejectedInput("metric chart: dimension must be >= 1");
  if (lo_.size() != dim_ || hi_.size() != dim_) throw RejectedInput("metric chart: domain box has the wrong size");
  if (periodic_.empty()) periodic_.assign(static_cast<std::size_t>(dim_), false);
  if (static_cast<int>(periodic_.size()) != dim_) throw RejectedInput("metric chart: periodic flags have the wrong size");
  for (int i = 0; i < dim_; ++i)
    if (!(lo_[i] < hi_[i])) throw RejectedInput("metric chart: empty domain box");
  if (!dg_) mode_ = Derivatives::central_difference;
}

MetricChart MetricChart::with_step(double h) const {
  if (!(h > 0) || !std::isfinite(h)) throw RejectedInput("metric chart: step must be a positive real");
  MetricChart c = *this;
  c.h_ = h;
  return c;
}

MetricChart MetricChart::with_derivatives(Derivatives mode) const {
  if (mode == Derivatives::analytic && !dg_)
    throw RejectedInput("metric chart '" + name_ + "' has no closed-form derivatives");
  MetricChart c = *this;
  c.mode_ = mode;
  return c;
}

MetricChart MetricChart::with_complex_structure(Mat j) const {
  if (j.rows() != dim_ || j.cols() != dim_) throw RejectedInput("complex structure has the wrong size");
  MetricChart c = *this;
  c.j_ = std::move(j);
  return c;
}

MetricChart MetricChart::with_domain(Vec lo, Vec hi) const {
  MetricChart c(name_, dim_, g_, dg_, std::move(lo), std::move(hi), periodic_);
  c.h_ = h_;
  c.mode_ = mode_;
  c.j_ = j_;
  return c;
}

bool MetricChart::contains(const Vec& x, double margin) const {
  if (x.size() != dim_) return false;
  for (int i = 0; i < dim_; ++i) {
    if (!std::isfinite(x[i])) return false;
    if (periodic_[static_cast<std::size_t>(i)]) continue;
    if (x[i] < lo_[i] + margin || x[i] > hi_[i] - margin) return false;
  }
  return true;
}

Vec MetricChart::wrap(const Vec& x) const {
  Vec y = x;
  for (int i = 0; i < dim_; ++i) {
    if (!periodic_[static_cast<std::size_t>(i)]) continue;
    double L = hi_[i] - lo_[i];
    y[i] = lo_[i] + (x[i] - lo_[i]) - L * std::floor((x[i] - lo_[i]) / L);
  }
  return y;
}

Mat MetricChart::metric(const Vec& x) const {
  if (x.size() != dim_) throw RejectedInput("point has the wrong dimension for chart '" + name_ + "'");
  if (!contains(x)) throw RejectedInput("point outside the domain of chart '" + name_ + "'");
  Mat g = g_(wrap(x));
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if (std::abs(g(i, j) - g(j, i)) > 1e-12 * (1 + std::abs(g(i, j))))
        throw RejectedInput("metric is not symmetric at the given point");
  for (int k = 1; k <= dim_; ++k) {
    double m = g.topLeftCorner(k, k).determinant();
    if (!(m > 0)) {
      std::ostringstream os;
      os << "metric is not positive definite: leading minor " << k << " = " << m;
      throw RejectedInput(os.str());
    }
  }
  return g;
}

std::vector<Mat> MetricChart::metric_derivatives(const Vec& x) const {
  if (mode_ == Derivatives::analytic) {
    metric(x);
    return dg_(wrap(x));
  }
  if (!contains(x, h_)) throw RejectedInput("point closer than one step to the boundary of chart '" + name_ + "'");
  std::vector<Mat> dg;
  for (int k = 0; k < dim_; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h_;
    xm[k] -= h_;
    dg.push_back((metric(xp) - metric(xm)) / (2 * h_));
  }
  return dg;
}

namespace {

constexpr double kBig = 1e6;

Vec filled(int n, double v) { return Vec::Constant(n, v); }

std::vector<Mat> zero_derivatives(int n) { return std::vector<Mat>(static_cast<std::size_t>(n), Mat::Zero(n, n)); }

}  // namespace

MetricChart flat_chart(int n) {
  return MetricChart(
      "flat", n, [n](const Vec&) { return Mat(Mat::Identity(n, n)); }, [n](const Vec&) { return zero_derivatives(n); },
      filled(n, -kBig), filled(n, kBig));
}

MetricChart flat_torus_chart(int n, double period) {
  if (!(period > 0)) throw RejectedInput("flat torus: period must be positive");
  return MetricChart(
      "flat_torus", n, [n](const Vec&) { return Mat(Mat::Identity(n, n)); },
      [n](const Vec&) { return zero_derivatives(n); }, filled(n, 0), filled(n, period),
      std::vector<bool>(static_cast<std::size_t>(n), true));
}

MetricChart sphere_chart(int n, double r) {
  if (n < 1) throw RejectedInput("sphere: dimension must be >= 1");
  if (!(r > 0)) throw RejectedInput("sphere: radius must be positive");
  const double r2 = r * r;
  // g_kk = r^2 prod_{j<k} sin^2(theta_j); the last coordinate is phi.
  auto g = [n, r2](const Vec& x) {
    Mat m = Mat::Zero(n, n);
    double p = r2;
    for (int k = 0; k < n; ++k) {
      m(k, k) = p;
      if (k < n - 1) p *= std::sin(x[k]) * std::sin(x[k]);
    }
    return m;
  };
  auto dg = [n, r2](const Vec& x) {
    std::vector<Mat> d = zero_derivatives(n);
    for (int j = 0; j < n - 1; ++j)
      for (int k = j + 1; k < n; ++k) {
        double p = r2;
        for (int i = 0; i < k; ++i)
          p *= i == j ? 2 * std::sin(x[i]) * std::cos(x[i]) : std::sin(x[i]) * std::sin(x[i]);
        d[static_cast<std::size_t>(j)](k, k) = p;
      }
    return d;
  };
  Vec lo(n), hi(n);
  for (int k = 0; k < n - 1; ++k) {
    lo[k] = 0;
    hi[k] = M_PI;
  }
  lo[n - 1] = 0;
  hi[n - 1] = 2 * M_PI;
  std::vector<bool> periodic(static_cast<std::size_t>(n), false);
  periodic.back() = true;
  return MetricChart("sphere", n, g, dg, lo, hi, periodic);
}

MetricChart fubini_study_chart() {
  auto g = [](const Vec& x) {
    double f = 1 + x[0] * x[0] + x[1] * x[1];
    return Mat(Mat::Identity(2, 2) / (f * f));
  };
  auto dg = [](const Vec& x) {
    double f = 1 + x[0] * x[0] + x[1] * x[1];
    std::vector<Mat> d;
    for (int k = 0; k < 2; ++k) d.push_back(Mat::Identity(2, 2) * (-4 * x[k] / (f * f * f)));
    return d;
  };
  return MetricChart("fubini_study", 2, g, dg, filled(2, -kBig), filled(2, kBig))
      .with_complex_structure(standard_complex_structure(2));
}

MetricChart product_chart(const MetricChart& a, const MetricChart& b) {
  const int na = a.dim(), nb = b.dim(), n = na + nb;
  auto g = [a, b, na, nb, n](const Vec& x) {
    Mat m = Mat::Zero(n, n);
    m.topLeftCorner(na, na) = a.raw_metric(x.head(na));
    m.bottomRightCorner(nb, nb) = b.raw_metric(x.tail(nb));
    return m;
  };
  MetricChart::DerivativeFn dg;
  if (a.derivatives() == Derivatives::analytic && b.derivatives() == Derivatives::analytic) {
    dg = [a, b, na, nb, n](const Vec& x) {
      std::vector<Mat> d = zero_derivatives(n);
      auto da = a.metric_derivatives(x.head(na));
      auto db = b.metric_derivatives(x.tail(nb));
      for (int k = 0; k < na; ++k) d[static_cast<std::size_t>(k)].topLeftCorner(na, na) = da[static_cast<std::size_t>(k)];
      for (int k = 0; k < nb; ++k)
        d[static_cast<std::size_t>(na + k)].bottomRightCorner(nb, nb) = db[static_cast<std::size_t>(k)];
      return d;
    };
  }
  Vec lo(n), hi(n);
  lo << a.lower(), b.lower();
  hi << a.upper(), b.upper();
  std::vector<bool> periodic = a.periodic();
  periodic.insert(periodic.end(), b.periodic().begin(), b.periodic().end());
  MetricChart c(a.name() + "*" + b.name(), n, g, dg, lo, hi, periodic);
  c = c.with_step(std::min(a.step(), b.step()));
  if (a.complex_structure() && b.complex_structure()) {
    Mat j = Mat::Zero(n, n);
    j.topLeftCorner(na, na) = *a.complex_structure();
    j.bottomRightCorner(nb, nb) = *b.complex_structure();
    c = c.with_complex_structure(j);
  }
  return c;
}

MetricChart scaled_chart(const MetricChart& chart, double s) {
  if (!(s > 0)) throw RejectedInput("scaled chart: factor must be positive");
  auto g = [chart, s](const Vec& x) { return Mat(s * chart.raw_metric(x)); };
  MetricChart::DerivativeFn dg;
  if (chart.derivatives() == Derivatives::analytic)
    dg = [chart, s](const Vec& x) {
      auto d = chart.metric_derivatives(x);
      for (auto& m : d) m *= s;
      return d;
    };
  MetricChart c(chart.name(), chart.dim(), g, dg, chart.lower(), chart.upper(), chart.periodic());
  c = c.with_step(chart.step());
  if (chart.complex_structure()) c = c.with_complex_structure(*chart.complex_structure());
  return c;
}

MetricChart polynomial_chart(std::vector<std::vector<Polynomial>> entries, Vec lo, Vec hi) {
  const int n = static_cast<int>(entries.size());
  for (const auto& row : entries)
    if (static_cast<int>(row.size()) != n) throw RejectedInput("polynomial metric: entries must form a square matrix");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& p = entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (p.nvars() != n) throw RejectedInput("polynomial metric: entries must use dim variables");
      if (p.terms() != entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].terms())
        throw RejectedInput("polynomial metric: entries are not symmetric");
    }
  std::vector<std::vector<std::vector<Polynomial>>> deriv(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    auto& dk = deriv[static_cast<std::size_t>(k)];
    dk.assign(static_cast<std::size_t>(n), std::vector<Polynomial>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dk[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].derivative(k);
  }
  auto eval = [n](const std::vector<std::vector<Polynomial>>& e, const Vec& x) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](x);
    return m;
  };
  auto g = [entries, eval](const Vec& x) { return eval(entries, x); };
  auto dg = [deriv, eval](const Vec& x) {
    std::vector<Mat> d;
    for (const auto& dk : deriv) d.push_back(eval(dk, x));
    return d;
  };
  return MetricChart("polynomial", n, g, dg, std::move(lo), std::move(hi));
}

Mat standard_complex_structure(int n) {
  if (n % 2 != 0) throw RejectedInput("complex structure needs even dimension");
  Mat j = Mat::Zero(n, n);
  for (int k = 0; k < n; k += 2) {
    j(k + 1, k) = 1;  // J d/dx = d/dy
    j(k, k + 1) = -1;
  }
  return j;
}

MetricChart kahler_potential_chart(const Polynomial& phi, Vec lo, Vec hi) {
  const int n = phi.nvars();
  const Mat j = standard_complex_structure(n);
  std::vector<std::vector<Polynomial>> hess(static_cast<std::size_t>(n), std::vector<Polynomial>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      hess[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = phi.derivative(a).derivative(b);
  // g = (H + J^T H J) / 2
  std::vector<std::vector<Polynomial>> g(static_cast<std::size_t>(n), std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Polynomial p = 0.5 * hess[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          if (j(c, a) != 0 && j(d, b) != 0)
            p = p + (0.5 * j(c, a) * j(d, b)) * hess[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
      g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = p;
    }
  MetricChart c = polynomial_chart(std::move(g), std::move(lo), std::move(hi)).with_complex_structure(j);
  return c;
}

}  // namespace hk::riemann
