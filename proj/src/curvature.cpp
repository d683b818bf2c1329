#include <algorithm>
#include <cmath>
#include <sstream>

#include "hkgeom/riemann.hpp"
#include "hkgeom/types.hpp"

namespace hk::riemann {

double Christoffel::max_abs() const {
  double m = 0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Tensor4::max_abs() const {
  double m = 0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

void require_interior(const MetricChart& chart, const Vec& x, double margin) {
  if (x.size() != chart.dim()) throw RejectedInput("point has the wrong dimension for chart '" + chart.name() + "'");
  if (!chart.contains(x, margin)) {
    std::ostringstream os;
    os << "point is not interior to chart '" << chart.name() << "' with margin " << margin;
    throw RejectedInput(os.str());
  }
}

Mat inverse_checked(const Mat& g) {
  Eigen::JacobiSVD<Mat> svd(g);
  const auto& s = svd.singularValues();
  double cond = s(0) / s(s.size() - 1);
  if (!(cond < 1e12)) {
    std::ostringstream os;
    os << "metric is numerically singular (condition number " << cond << ")";
    throw RejectedInput(os.str());
  }
  return g.inverse();
}

}  // namespace

Christoffel christoffel(const MetricChart& chart, const Vec& x) {
  require_interior(chart, x, chart.step());
  const int n = chart.dim();
  const Mat g = chart.metric(x);
  const Mat ginv = inverse_checked(g);
  const auto dg = chart.metric_derivatives(x);
  auto d = [&](int k, int i, int j) { return dg[static_cast<std::size_t>(k)](i, j); };
  Christoffel G(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) {
          double t = d(i, j, l) + d(j, i, l) - d(l, i, j);
          if (t != 0) s += ginv(k, l) * t;
        }
        G(k, i, j) = 0.5 * s;
        G(k, j, i) = G(k, i, j);
      }
  return G;
}

double CurvatureAtPoint::sectional(int i, int j) const {
  double area = metric(i, i) * metric(j, j) - metric(i, j) * metric(i, j);
  return lowered(i, j, i, j) / area;
}

CurvatureAtPoint curvature(const MetricChart& chart, const Vec& x) {
  const double h = chart.step();
  require_interior(chart, x, 2 * h);
  const int n = chart.dim();
  CurvatureAtPoint cp{chart.metric(x), christoffel(chart, x), Tensor4(n), Tensor4(n), Mat::Zero(n, n)};
  const Christoffel& G = cp.christoffel;

  // dG[i](a, j, b) = d_i Gamma^a_{jb}
  std::vector<Christoffel> dG;
  for (int i = 0; i < n; ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    Christoffel gp = christoffel(chart, xp), gm = christoffel(chart, xm), di(n);
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < n; ++b) di(a, j, b) = (gp(a, j, b) - gm(a, j, b)) / (2 * h);
    dG.push_back(std::move(di));
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double r = dG[static_cast<std::size_t>(i)](a, j, b) - dG[static_cast<std::size_t>(j)](a, i, b);
          for (int c = 0; c < n; ++c) r += G(a, i, c) * G(c, j, b) - G(a, j, c) * G(c, i, b);
          cp.riemann(a, b, i, j) = r;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0;
          for (int e = 0; e < n; ++e) s += cp.metric(a, e) * cp.riemann(e, b, c, d);
          cp.lowered(a, b, c, d) = s;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0;
      for (int c = 0; c < n; ++c) s += cp.riemann(c, a, c, b);
      cp.ricci(a, b) = s;
    }
  return cp;
}

BianchiResiduals bianchi_residuals(const CurvatureAtPoint& cp) {
  const Tensor4& R = cp.lowered;
  const int n = R.dim();
  BianchiResiduals r;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          r.first = std::max(r.first, std::abs(R(a, b, c, d) + R(a, c, d, b) + R(a, d, b, c)));
          r.pair_sym = std::max(r.pair_sym, std::abs(R(a, b, c, d) - R(c, d, a, b)));
          r.antisym = std::max(r.antisym, std::abs(R(a, b, c, d) + R(a, b, d, c)));
        }
  return r;
}

Mat ricci(const MetricChart& chart, const Vec& x) { return curvature(chart, x).ricci; }

EinsteinFit is_einstein(const MetricChart& chart, const std::vector<Vec>& points, double tol) {
  if (points.empty()) throw RejectedInput("is_einstein: no sample points");
  std::vector<Mat> ric, g;
  double num = 0, den = 0;
  for (const auto& x : points) {
    auto cp = curvature(chart, x);
    num += (cp.ricci.array() * cp.metric.array()).sum();
    den += cp.metric.squaredNorm();
    ric.push_back(cp.ricci);
    g.push_back(cp.metric);
  }
  EinsteinFit fit;
  fit.constant = num / den;
  for (std::size_t i = 0; i < ric.size(); ++i)
    fit.residual = std::max(fit.residual, (ric[i] - fit.constant * g[i]).cwiseAbs().maxCoeff());
  fit.einstein = fit.residual < tol;
  return fit;
}

bool is_ricci_flat(const MetricChart& chart, const std::vector<Vec>& points, double tol) {
  if (points.empty()) throw RejectedInput("is_ricci_flat: no sample points");
  for (const auto& x : points)
    if (!(ricci(chart, x).cwiseAbs().maxCoeff() < tol)) return false;
  return true;
}

KahlerResiduals kahler_residuals(const MetricChart& chart, const std::vector<Vec>& points) {
  if (!chart.complex_structure()) throw RejectedInput("kahler_residuals: chart has no complex structure");
  const int n = chart.dim();
  if (n % 2 != 0) throw RejectedInput("kahler_residuals: dimension must be even");
  const Mat& J = *chart.complex_structure();
  if (!((J * J + Mat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12))
    throw RejectedInput("kahler_residuals: J^2 is not -Id");

  const MetricChart fd = chart.with_derivatives(Derivatives::central_difference);
  const double h = fd.step();
  auto omega = [&](const Vec& x) { return Mat(J.transpose() * fd.metric(x)); };

  KahlerResiduals res;
  for (const auto& x : points) {
    require_interior(fd, x, 2 * h);
    std::vector<Mat> dw;
    for (int a = 0; a < n; ++a) {
      Vec xp = x, xm = x;
      xp[a] += h;
      xm[a] -= h;
      dw.push_back((omega(xp) - omega(xm)) / (2 * h));
    }
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          double v = dw[static_cast<std::size_t>(a)](b, c) + dw[static_cast<std::size_t>(b)](c, a) +
                     dw[static_cast<std::size_t>(c)](a, b);
          res.d_omega = std::max(res.d_omega, std::abs(v));
        }

    // (nabla_a J)^b_c = Gamma^b_{ad} J^d_c - Gamma^d_{ac} J^b_d
    const Christoffel G = christoffel(fd, x);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double v = 0;
          for (int d = 0; d < n; ++d) v += G(b, a, d) * J(d, c) - G(d, a, c) * J(b, d);
          res.nabla_j = std::max(res.nabla_j, std::abs(v));
        }
  }
  return res;
}

BergerResult berger_lookup(int n, const BergerFlags& flags) {
  if (n < 1) throw RejectedInput("berger_lookup: dimension must be >= 1");
  struct Row {
    std::string label;
    bool allowed;
    bool kahler;
    bool ricci_flat;
  };
  const bool even = n % 2 == 0 && n >= 4;
  const bool quaternionic = n % 4 == 0 && n >= 4;
  const int m = n / 2, r = n / 4;
  const std::vector<Row> rows{
      {"SO(" + std::to_string(n) + ")", n >= 2, false, false},
      {"U(" + std::to_string(m) + ")", even, true, false},
      {"SU(" + std::to_string(m) + ")", even, true, true},
      {"Sp(" + std::to_string(r) + ")", quaternionic, true, true},
      {"Sp(" + std::to_string(r) + ")Sp(1)", quaternionic && n >= 8, false, false},
      {"G2", n == 7, false, true},
      {"Spin(7)", n == 8, false, true},
  };
  BergerResult out;
  for (const auto& row : rows) {
    if (!row.allowed) continue;
    if (flags.kahler && !row.kahler) continue;
    if (flags.ricci_flat && !row.ricci_flat) continue;
    out.groups.push_back(row.label);
  }
  auto has = [&](const std::string& g) { return std::find(out.groups.begin(), out.groups.end(), g) != out.groups.end(); };
  if (has("SU(2)") && has("Sp(1)")) out.notes.push_back("Sp(1) is abstractly isomorphic to the group SU(2)");
  if (!flags.symmetric_excluded)
    out.notes.push_back("locally symmetric metrics are not covered by this table");
  return out;
}

}  // namespace hk::riemann
