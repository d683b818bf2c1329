#ifndef HKGEOM_RIEMANN_HPP
#define HKGEOM_RIEMANN_HPP

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hk::riemann {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Real polynomial in `nvars` chart coordinates.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
  static Polynomial constant(int nvars, double c);
  static Polynomial variable(int nvars, int i);

  int nvars() const noexcept { return nvars_; }
  const std::map<Exponents, double>& terms() const noexcept { return terms_; }

  void add_term(const Exponents& e, double coeff);
  double operator()(const Vec& x) const;
  Polynomial derivative(int var) const;
  int degree() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  int nvars_;
  std::map<Exponents, double> terms_;
};

enum class Derivatives { analytic, central_difference };

// Riemannian metric on a coordinate box. g is evaluated pointwise; first
// derivatives come from closed forms (catalog), exact differentiation
// (polynomial entries) or central differences of step h.
class MetricChart {
 public:
  using MetricFn = std::function<Mat(const Vec&)>;
  using DerivativeFn = std::function<std::vector<Mat>(const Vec&)>;

  MetricChart(std::string name, int dim, MetricFn g, DerivativeFn dg, Vec lo, Vec hi,
              std::vector<bool> periodic = {});

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  double step() const noexcept { return h_; }
  Derivatives derivatives() const noexcept { return mode_; }
  const Vec& lower() const noexcept { return lo_; }
  const Vec& upper() const noexcept { return hi_; }
  const std::vector<bool>& periodic() const noexcept { return periodic_; }
  const std::optional<Mat>& complex_structure() const noexcept { return j_; }

  MetricChart with_step(double h) const;
  MetricChart with_derivatives(Derivatives mode) const;
  MetricChart with_complex_structure(Mat j) const;
  MetricChart with_domain(Vec lo, Vec hi) const;

  // Inside the box with distance >= margin from every non-periodic face.
  bool contains(const Vec& x, double margin = 0) const;
  Vec wrap(const Vec& x) const;

  // Symmetric positive definite check by leading minors; RejectedInput with
  // the offending minor otherwise.
  Mat metric(const Vec& x) const;
  // dg[k] = d g / dx^k
  std::vector<Mat> metric_derivatives(const Vec& x) const;

  // Raw evaluation, no domain or definiteness checks.
  Mat raw_metric(const Vec& x) const { return g_(wrap(x)); }

 private:
  std::string name_;
  int dim_;
  MetricFn g_;
  DerivativeFn dg_;
  Vec lo_, hi_;
  std::vector<bool> periodic_;
  double h_ = 1e-4;
  Derivatives mode_ = Derivatives::analytic;
  std::optional<Mat> j_;
};

// Catalog
MetricChart flat_chart(int n);
MetricChart flat_torus_chart(int n, double period = 1.0);
// Round sphere of radius r, polar chart (theta_1..theta_{n-1}, phi).
MetricChart sphere_chart(int n, double r = 1.0);
// (dx^2 + dy^2)/(1 + x^2 + y^2)^2 on CP^1 minus a point, standard J.
MetricChart fubini_study_chart();
MetricChart product_chart(const MetricChart& a, const MetricChart& b);
MetricChart scaled_chart(const MetricChart& chart, double c);
MetricChart polynomial_chart(std::vector<std::vector<Polynomial>> entries, Vec lo, Vec hi);
// J-invariant part of the real Hessian of phi on C^m = R^{2m}
// (coordinates x1, y1, x2, y2, ...), with the standard J attached.
MetricChart kahler_potential_chart(const Polynomial& phi, Vec lo, Vec hi);
Mat standard_complex_structure(int n);

// Gamma^k_{ij} stored at (k, i, j).
class Christoffel {
 public:
  explicit Christoffel(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n), 0.0) {}
  int dim() const noexcept { return n_; }
  double& operator()(int k, int i, int j) { return data_[static_cast<std::size_t>((k * n_ + i) * n_ + j)]; }
  double operator()(int k, int i, int j) const { return data_[static_cast<std::size_t>((k * n_ + i) * n_ + j)]; }
  double max_abs() const;

 private:
  int n_;
  std::vector<double> data_;
};

class Tensor4 {
 public:
  explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n * n), 0.0) {}
  int dim() const noexcept { return n_; }
  double& operator()(int a, int b, int c, int d) { return data_[idx(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const { return data_[idx(a, b, c, d)]; }
  double max_abs() const;

 private:
  std::size_t idx(int a, int b, int c, int d) const {
    return static_cast<std::size_t>(((a * n_ + b) * n_ + c) * n_ + d);
  }
  int n_;
  std::vector<double> data_;
};

Christoffel christoffel(const MetricChart& chart, const Vec& x);

struct CurvatureAtPoint {
  Mat metric;
  Christoffel christoffel;
  Tensor4 riemann;  // R^a_{bcd}
  Tensor4 lowered;  // R~_{abcd} = g_{ae} R^e_{bcd}
  Mat ricci;        // Ric_{ab} = sum_c R^c_{acb}

  double sectional(int i, int j) const;
};

CurvatureAtPoint curvature(const MetricChart& chart, const Vec& x);

struct BianchiResiduals {
  double first = 0;     // max |R~_{abcd} + R~_{acdb} + R~_{adbc}|
  double pair_sym = 0;  // max |R~_{abcd} - R~_{cdab}|
  double antisym = 0;   // max |R~_{abcd} + R~_{abdc}|
};

BianchiResiduals bianchi_residuals(const CurvatureAtPoint& cp);

Mat ricci(const MetricChart& chart, const Vec& x);

struct EinsteinFit {
  bool einstein = false;
  double constant = 0;
  double residual = 0;
};

EinsteinFit is_einstein(const MetricChart& chart, const std::vector<Vec>& points, double tol = 1e-4);
bool is_ricci_flat(const MetricChart& chart, const std::vector<Vec>& points, double tol = 1e-8);

struct Trajectory {
  std::vector<Vec> points;
  std::vector<Vec> velocities;
  bool exited = false;
  double speed_drift = 0;  // max | |v|_g - |v0|_g |
};

Trajectory geodesic(const MetricChart& chart, const Vec& x0, const Vec& v0, double T, int steps);

// Piecewise smooth curve; each segment is parametrized by [0, 1].
class Path {
 public:
  struct Segment {
    std::function<Vec(double)> position;
    std::function<Vec(double)> velocity;
  };

  Path() = default;
  explicit Path(std::vector<Segment> segments) : segments_(std::move(segments)) {}
  static Path polyline(const std::vector<Vec>& vertices);
  static Path smooth(std::function<Vec(double)> position, std::function<Vec(double)> velocity);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  Vec start() const;
  Vec end() const;
  bool closed(double tol = 1e-12) const;

  // This path followed by `next`.
  Path then(const Path& next) const;
  Path reversed() const;

 private:
  std::vector<Segment> segments_;
};

// (theta0, 2 pi t) on the 2-sphere chart.
Path latitude_loop(double colatitude);

struct Transport {
  Vec vector;
  bool exited = false;
  double norm_drift = 0;
};

// RK4 with `steps` steps per segment.
Transport parallel_transport(const MetricChart& chart, const Path& path, const Vec& v0, int steps = 4096);
Mat transport_matrix(const MetricChart& chart, const Path& path, int steps = 4096);

struct HolonomySample {
  std::vector<Mat> matrices;
  std::vector<double> isometry_residuals;  // max |P^T G P - G|
};

HolonomySample holonomy_sample(const MetricChart& chart, const Vec& basepoint, const std::vector<Path>& loops,
                               int steps = 4096);

struct KahlerResiduals {
  double d_omega = 0;
  double nabla_j = 0;
};

// omega(v, w) = g(Jv, w). d omega by central differences of omega, nabla J
// from central-difference Christoffels, both with the chart's step.
KahlerResiduals kahler_residuals(const MetricChart& chart, const std::vector<Vec>& points);

struct BergerFlags {
  bool kahler = false;
  bool ricci_flat = false;
  bool symmetric_excluded = true;
};

struct BergerResult {
  std::vector<std::string> groups;
  std::vector<std::string> notes;
};

BergerResult berger_lookup(int n, const BergerFlags& flags);

}  // namespace hk::riemann

#endif  // HKGEOM_RIEMANN_HPP
