#include <algorithm>
#include <cmath>

#include "hkgeom/riemann.hpp"
#include "hkgeom/types.hpp"

namespace hk::riemann {

Path Path::polyline(const std::vector<Vec>& vertices) {
  if (vertices.size() < 2) throw RejectedInput("polyline needs at least two vertices");
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    Vec a = vertices[i], d = vertices[i + 1] - vertices[i];
    if (a.size() != d.size()) throw RejectedInput("polyline vertices have different dimensions");
    segs.push_back({[a, d](double t) { return Vec(a + t * d); }, [d](double) { return d; }});
  }
  return Path(std::move(segs));
}

Path Path::smooth(std::function<Vec(double)> position, std::function<Vec(double)> velocity) {
  return Path({Segment{std::move(position), std::move(velocity)}});
}

Vec Path::start() const {
  if (segments_.empty()) throw RejectedInput("empty path");
  return segments_.front().position(0.0);
}

Vec Path::end() const {
  if (segments_.empty()) throw RejectedInput("empty path");
  return segments_.back().position(1.0);
}

bool Path::closed(double tol) const { return (start() - end()).cwiseAbs().maxCoeff() <= tol; }

Path Path::then(const Path& next) const {
  if (!segments_.empty() && !next.segments_.empty() && (end() - next.start()).cwiseAbs().maxCoeff() > 1e-9)
    throw RejectedInput("paths do not join");
  std::vector<Segment> segs = segments_;
  segs.insert(segs.end(), next.segments_.begin(), next.segments_.end());
  return Path(std::move(segs));
}

Path Path::reversed() const {
  std::vector<Segment> segs;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    auto pos = it->position;
    auto vel = it->velocity;
    segs.push_back({[pos](double t) { return pos(1.0 - t); }, [vel](double t) { return Vec(-vel(1.0 - t)); }});
  }
  return Path(std::move(segs));
}

Path latitude_loop(double colatitude) {
  return Path::smooth([colatitude](double t) { return Vec(Vec::Map(std::array<double, 2>{colatitude, 2 * M_PI * t}.data(), 2)); },
                      [](double) { return Vec(Vec::Map(std::array<double, 2>{0.0, 2 * M_PI}.data(), 2)); });
}

namespace {

// Gamma(x)(u, .) applied to each column of S.
Mat contract(const Christoffel& G, const Vec& u, const Mat& S) {
  const int n = G.dim();
  Mat A = Mat::Zero(n, n);  // A(k, j) = sum_i Gamma^k_{ij} u^i
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (u[i] == 0) continue;
      for (int j = 0; j < n; ++j) A(k, j) += G(k, i, j) * u[i];
    }
  return A * S;
}

double g_norm(const Mat& g, const Vec& v) { return std::sqrt(std::max(0.0, v.dot(g * v))); }

struct MatrixTransport {
  Mat S;
  bool exited = false;
  double drift = 0;
};

MatrixTransport transport_columns(const MetricChart& chart, const Path& path, Mat S, int steps) {
  if (steps < 1) throw RejectedInput("transport: step count must be >= 1");
  const Vec x0 = path.start();
  if (x0.size() != chart.dim() || S.rows() != chart.dim()) throw RejectedInput("transport: dimension mismatch");
  const Mat g0 = chart.metric(x0);
  std::vector<double> n0;
  for (int c = 0; c < S.cols(); ++c) n0.push_back(g_norm(g0, S.col(c)));

  MatrixTransport out;
  const double dt = 1.0 / steps;
  try {
    for (const auto& seg : path.segments()) {
      auto rhs = [&](double t, const Mat& s) {
        return Mat(-contract(christoffel(chart, seg.position(t)), seg.velocity(t), s));
      };
      for (int k = 0; k < steps; ++k) {
        const double t = k * dt;
        Mat k1 = rhs(t, S);
        Mat k2 = rhs(t + dt / 2, S + dt / 2 * k1);
        Mat k3 = rhs(t + dt / 2, S + dt / 2 * k2);
        Mat k4 = rhs(t + dt, S + dt * k3);
        S += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        const Mat g = chart.metric(seg.position(t + dt));
        for (int c = 0; c < S.cols(); ++c)
          out.drift = std::max(out.drift, std::abs(g_norm(g, S.col(c)) - n0[static_cast<std::size_t>(c)]));
      }
    }
  } catch (const RejectedInput&) {
    out.exited = true;
  }
  out.S = std::move(S);
  return out;
}

}  // namespace

Trajectory geodesic(const MetricChart& chart, const Vec& x0, const Vec& v0, double T, int steps) {
  if (steps < 1) throw RejectedInput("geodesic: step count must be >= 1");
  if (x0.size() != chart.dim() || v0.size() != chart.dim()) throw RejectedInput("geodesic: dimension mismatch");
  const Mat g0 = chart.metric(x0);
  const double s0 = g_norm(g0, v0);
  Trajectory tr;
  tr.points.push_back(x0);
  tr.velocities.push_back(v0);

  auto accel = [&](const Vec& x, const Vec& v) {
    return Vec(-contract(christoffel(chart, x), v, v));
  };
  const double dt = T / steps;
  Vec x = x0, v = v0;
  for (int k = 0; k < steps; ++k) {
    try {
      Vec a1 = accel(x, v);
      Vec x2 = x + dt / 2 * v, v2 = v + dt / 2 * a1;
      Vec a2 = accel(x2, v2);
      Vec x3 = x + dt / 2 * v2, v3 = v + dt / 2 * a2;
      Vec a3 = accel(x3, v3);
      Vec x4 = x + dt * v3, v4 = v + dt * a3;
      Vec a4 = accel(x4, v4);
      Vec xn = x + dt / 6 * (v + 2 * v2 + 2 * v3 + v4);
      Vec vn = v + dt / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
      if (!chart.contains(xn, chart.step())) throw RejectedInput("left the chart");
      tr.speed_drift = std::max(tr.speed_drift, std::abs(g_norm(chart.metric(xn), vn) - s0));
      x = xn;
      v = vn;
    } catch (const RejectedInput&) {
      tr.exited = true;
      break;
    }
    tr.points.push_back(x);
    tr.velocities.push_back(v);
  }
  return tr;
}

Transport parallel_transport(const MetricChart& chart, const Path& path, const Vec& v0, int steps) {
  auto r = transport_columns(chart, path, Mat(v0), steps);
  return {r.S.col(0), r.exited, r.drift};
}

Mat transport_matrix(const MetricChart& chart, const Path& path, int steps) {
  auto r = transport_columns(chart, path, Mat::Identity(chart.dim(), chart.dim()), steps);
  if (r.exited) throw RejectedInput("transport: path leaves the chart");
  return r.S;
}

namespace {

// Max-norm distance, measured modulo the period in periodic coordinates.
double chart_distance(const MetricChart& chart, const Vec& a, const Vec& b) {
  double m = 0;
  for (int i = 0; i < chart.dim(); ++i) {
    double d = a[i] - b[i];
    if (chart.periodic()[static_cast<std::size_t>(i)]) {
      const double L = chart.upper()[i] - chart.lower()[i];
      d -= L * std::round(d / L);
    }
    m = std::max(m, std::abs(d));
  }
  return m;
}

}  // namespace

HolonomySample holonomy_sample(const MetricChart& chart, const Vec& basepoint, const std::vector<Path>& loops,
                               int steps) {
  const Mat G = chart.metric(basepoint);
  HolonomySample out;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto& loop = loops[i];
    if (chart_distance(chart, loop.start(), loop.end()) > 1e-9) throw RejectedInput("loop " + std::to_string(i + 1) + " is not closed");
    if (chart_distance(chart, loop.start(), basepoint) > 1e-9)
      throw RejectedInput("loop " + std::to_string(i + 1) + " is not based at the basepoint");
    Mat P = transport_matrix(chart, loop, steps);
    out.isometry_residuals.push_back((P.transpose() * G * P - G).cwiseAbs().maxCoeff());
    out.matrices.push_back(std::move(P));
  }
  return out;
}

}  // namespace hk::riemann
