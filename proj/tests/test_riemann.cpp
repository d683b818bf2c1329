#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hkgeom/riemann.hpp"
#include "hkgeom/types.hpp"

using namespace hk;
using namespace hk::riemann;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

Vec vec_of(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

double angle_of(const Mat& P, double theta) {
  Mat frame = Mat::Identity(2, 2);
  frame(1, 1) = std::sin(theta);
  const Mat r = frame * P * frame.inverse();
  return std::atan2(r(1, 0), r(0, 0));
}

MetricChart bumpy_chart() {
  // g = I + small polynomial terms on [-1, 1]^2
  Polynomial one = Polynomial::constant(2, 1.0);
  Polynomial a(2), b(2), c(2);
  a.add_term({2, 0}, 0.1);
  a.add_term({0, 1}, 0.05);
  b.add_term({1, 1}, 0.03);
  c.add_term({0, 2}, -0.08);
  c.add_term({3, 0}, 0.02);
  return polynomial_chart({{one + a, b}, {b, one + c}}, Vec::Constant(2, -1), Vec::Constant(2, 1));
}

}  // namespace

TEST_CASE("polynomials") {
  Polynomial p(2);
  p.add_term({2, 1}, 3.0);
  p.add_term({0, 0}, -1.0);
  CHECK(p(v2(2, 3)) == doctest::Approx(35));
  CHECK(p.derivative(0)(v2(2, 3)) == doctest::Approx(36));
  CHECK(p.derivative(1)(v2(2, 3)) == doctest::Approx(12));
  CHECK(p.degree() == 3);
  CHECK((p * p)(v2(1, 1)) == doctest::Approx(4));
  CHECK_THROWS_AS(p.add_term({1}, 1.0), RejectedInput);
}

TEST_CASE("christoffel symbols") {
  const Vec x = vec_of({0.4, -1.0, 2.0});
  CHECK(christoffel(flat_chart(3), x).max_abs() == 0.0);

  const auto s2 = sphere_chart(2);
  const double th = 0.7;
  const auto G = christoffel(s2, v2(th, 0.3));
  CHECK(G(0, 1, 1) == doctest::Approx(-std::sin(th) * std::cos(th)).epsilon(1e-10));
  CHECK(G(1, 0, 1) == doctest::Approx(std::cos(th) / std::sin(th)).epsilon(1e-10));
  CHECK(G(1, 1, 0) == G(1, 0, 1));

  const auto Gs = christoffel(scaled_chart(s2, 5.0), v2(th, 0.3));
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(Gs(k, i, j) == doctest::Approx(G(k, i, j)));

  const auto fd = christoffel(s2.with_derivatives(Derivatives::central_difference), v2(th, 0.3));
  CHECK(std::abs(fd(0, 1, 1) - G(0, 1, 1)) < 1e-8);

  CHECK_THROWS_AS(christoffel(s2, v2(-0.1, 0)), RejectedInput);
  CHECK_THROWS_AS(christoffel(s2, vec_of({0.5, 0.5, 0.5})), RejectedInput);
}

TEST_CASE("metric validation") {
  Polynomial one = Polynomial::constant(2, 1.0), two = Polynomial::constant(2, 2.0);
  const auto bad = polynomial_chart({{one, two}, {two, one}}, Vec::Constant(2, -1), Vec::Constant(2, 1));
  CHECK_THROWS_AS(bad.metric(v2(0, 0)), RejectedInput);
  CHECK_THROWS_AS(polynomial_chart({{one, two}, {one, one}}, Vec::Constant(2, -1), Vec::Constant(2, 1)), RejectedInput);
  CHECK_THROWS_AS(bumpy_chart().metric(v2(1.5, 0)), RejectedInput);
  CHECK_THROWS_AS(flat_chart(2).with_step(0), RejectedInput);
}

TEST_CASE("curvature") {
  const auto torus = curvature(flat_torus_chart(3, 2.0), vec_of({0.0, 1.9, 0.5}));
  CHECK(torus.riemann.max_abs() < 1e-9);
  CHECK(torus.christoffel.max_abs() < 1e-9);

  const auto s2 = curvature(sphere_chart(2), v2(1.1, 0.2));
  CHECK(std::abs(s2.sectional(0, 1) - 1) < 1e-5);
  const auto r2 = curvature(sphere_chart(2, 2.0), v2(1.1, 0.2));
  CHECK(std::abs(r2.sectional(0, 1) - 0.25) < 1e-5);

  const auto s3 = curvature(sphere_chart(3), vec_of({1.0, 1.2, 0.4}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(std::abs(s3.sectional(i, j) - 1) < 1e-5);
  CHECK((s3.ricci - 2 * s3.metric).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("Bianchi residuals") {
  const auto flat = bianchi_residuals(curvature(flat_chart(3), vec_of({1.0, 2.0, 3.0})));
  CHECK(flat.first < 1e-12);
  CHECK(flat.pair_sym < 1e-12);
  CHECK(flat.antisym < 1e-12);

  CHECK(bianchi_residuals(curvature(sphere_chart(2), v2(0.9, 1.0))).first < 1e-6);

  // The stencil's pair-symmetry defect is second order in h.
  const auto chart = bumpy_chart();
  const Vec x = v2(0.3, -0.2);
  const auto a = bianchi_residuals(curvature(chart.with_step(1e-2), x));
  const auto b = bianchi_residuals(curvature(chart.with_step(5e-3), x));
  CHECK(a.pair_sym / b.pair_sym == doctest::Approx(4).epsilon(0.05));
  CHECK(a.first < 1e-12);
  CHECK(a.antisym < 1e-12);
}

TEST_CASE("Ricci and Einstein") {
  const std::vector<Vec> pts{v2(0.5, 0.0), v2(1.2, 2.0), v2(2.4, -1.0)};
  CHECK(ricci(flat_torus_chart(2), v2(0.2, 0.3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(is_ricci_flat(flat_torus_chart(2), {v2(0.2, 0.3), v2(0.7, 0.1)}));

  const auto unit = is_einstein(sphere_chart(2), pts);
  CHECK(unit.einstein);
  CHECK(std::abs(unit.constant - 1) < 1e-4);
  CHECK((ricci(sphere_chart(2), pts[1]) - sphere_chart(2).metric(pts[1])).cwiseAbs().maxCoeff() < 1e-4);

  const auto big = is_einstein(sphere_chart(2, 2.0), pts);
  CHECK(big.einstein);
  CHECK(std::abs(big.constant - 0.25) < 1e-4);
  CHECK_FALSE(is_ricci_flat(sphere_chart(2), pts));

  CHECK_FALSE(is_einstein(bumpy_chart(), {v2(0.5, 0.5), v2(-0.5, 0.2)}).einstein);
}

TEST_CASE("geodesics") {
  const auto line = geodesic(flat_chart(2), v2(1, 2), v2(0.5, -1), 3.0, 30);
  CHECK((line.points.back() - v2(2.5, -1)).cwiseAbs().maxCoeff() < 1e-12);

  const auto eq = geodesic(sphere_chart(2), v2(M_PI / 2, 0), v2(0, 1), 2 * M_PI, 4000);
  CHECK(std::abs(eq.points.back()[0] - M_PI / 2) < 1e-4);
  CHECK(std::abs(eq.points.back()[1] - 2 * M_PI) < 1e-4);

  const auto tr = geodesic(sphere_chart(2), v2(1.0, 0.3), v2(0.3, 0.7), 10.0, 10000);
  CHECK_FALSE(tr.exited);
  CHECK(tr.speed_drift < 1e-8);

  const auto out = geodesic(bumpy_chart(), v2(0, 0), v2(1, 0), 5.0, 500);
  CHECK(out.exited);
}

TEST_CASE("parallel transport and holonomy") {
  const auto flat = flat_chart(2);
  const Path tri = Path::polyline({v2(0, 0), v2(1, 0), v2(0, 1), v2(0, 0)});
  const auto t = parallel_transport(flat, tri, v2(0.3, 0.4), 64);
  CHECK((t.vector - v2(0.3, 0.4)).cwiseAbs().maxCoeff() < 1e-10);

  const auto torus = holonomy_sample(
      flat_torus_chart(2), v2(0.5, 0.5),
      {Path::polyline({v2(0.5, 0.5), v2(1.5, 0.5)}), Path::polyline({v2(0.5, 0.5), v2(0.8, 0.5), v2(0.8, 0.9), v2(0.5, 0.5)})},
      64);
  CHECK(torus.matrices.size() == 2);
  for (const auto& m : torus.matrices) CHECK((m - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);

  const auto s2 = sphere_chart(2);
  const double th = M_PI / 3;
  const Mat P = transport_matrix(s2, latitude_loop(th));
  CHECK(std::abs(std::abs(angle_of(P, th)) - M_PI) < 1e-4);
  const double th2 = 1.2;
  const double a2 = angle_of(transport_matrix(s2, latitude_loop(th2)), th2), e2 = 2 * M_PI * (1 - std::cos(th2));
  CHECK(std::min(std::abs(std::remainder(a2 - e2, 2 * M_PI)), std::abs(std::remainder(a2 + e2, 2 * M_PI))) < 1e-4);

  const Vec b = v2(th, 0);
  const Path l1 = Path::polyline({b, v2(th - 0.5, 0.8), v2(th + 0.3, 1.5), b});
  const Path l2 = Path::polyline({b, v2(th + 0.4, 0.3), v2(th + 0.1, 0.9), b});
  const auto h = holonomy_sample(s2, b, {l1, l2, l1.then(l2), l2.reversed()});
  CHECK((h.matrices[2] - h.matrices[1] * h.matrices[0]).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((h.matrices[3] - h.matrices[1].inverse()).cwiseAbs().maxCoeff() < 1e-6);
  for (double r : h.isometry_residuals) CHECK(r < 1e-8);

  CHECK_THROWS_AS(holonomy_sample(s2, b, {Path::polyline({b, v2(1.0, 0.2)})}), RejectedInput);
  CHECK_THROWS_AS(holonomy_sample(s2, v2(1.0, 0.5), {l1}), RejectedInput);
}

TEST_CASE("Kaehler residuals") {
  const auto c = flat_chart(2).with_complex_structure(standard_complex_structure(2));
  const auto flat = kahler_residuals(c, {v2(0.1, 0.2)});
  CHECK(flat.d_omega < 1e-10);
  CHECK(flat.nabla_j < 1e-10);

  const auto fs = kahler_residuals(fubini_study_chart(), {v2(0.3, -0.4), v2(1.2, 0.5)});
  CHECK(fs.d_omega < 1e-5);
  CHECK(fs.nabla_j < 1e-5);

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
  const Vec w = vec_of({0.4, -0.3, 0.5, 0.2});
  const auto a = kahler_residuals(kc.with_step(1e-2), {w});
  const auto b = kahler_residuals(kc.with_step(5e-3), {w});
  CHECK(a.d_omega / b.d_omega > 3.5);
  CHECK(a.nabla_j / b.nabla_j > 3.5);

  Mat bad = Mat::Zero(2, 2);
  bad(0, 1) = 2;
  bad(1, 0) = -1;
  CHECK_THROWS_AS(kahler_residuals(flat_chart(2).with_complex_structure(bad), {v2(0, 0)}), RejectedInput);
  CHECK_THROWS_AS(kahler_residuals(flat_chart(2), {v2(0, 0)}), RejectedInput);
}

TEST_CASE("Berger lookup") {
  const auto k3 = berger_lookup(4, {true, true, true});
  CHECK(k3.groups == std::vector<std::string>{"SU(2)", "Sp(1)"});
  REQUIRE_FALSE(k3.notes.empty());
  CHECK(k3.notes[0].find("Sp(1) is abstractly isomorphic to the group SU(2)") != std::string::npos);

  CHECK(berger_lookup(7, {false, true, true}).groups == std::vector<std::string>{"G2"});
  CHECK(berger_lookup(6, {true, false, true}).groups == std::vector<std::string>{"U(3)", "SU(3)"});
  const auto generic = berger_lookup(8, {false, false, true}).groups;
  CHECK(generic.front() == "SO(8)");
  CHECK(std::find(generic.begin(), generic.end(), "Spin(7)") != generic.end());
  CHECK(std::find(generic.begin(), generic.end(), "Sp(2)Sp(1)") != generic.end());
  CHECK_FALSE(berger_lookup(4, {false, false, false}).notes.empty());
}
