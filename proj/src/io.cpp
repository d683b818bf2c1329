#include "hkgeom/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hk::io {

std::string real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0 ? 0.0 : x);
  return buf;
}

json real_vector(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(real(x));
  return a;
}

json real_vector(const riemann::Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(real(v[i]));
  return a;
}

json real_matrix(const riemann::Mat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(real_vector(riemann::Vec(m.row(i).transpose())));
  return a;
}

json exact(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return to_string(c);
}
json exact(const Integer& z) { return to_string(z); }

json exact_vector(std::span<const Rational> v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json exact_matrix(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(exact_vector(m.row(i)));
  return a;
}

json exact_matrix(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (const auto& x : m.row(i)) row.push_back(to_string(x));
    a.push_back(row);
  }
  return a;
}

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_number_float()) throw RejectedInput("rational expected as a string or integer, got " + j.dump());
  throw RejectedInput("rational expected, got " + j.dump());
}

Integer integer_from(const json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.dump());
  throw RejectedInput("integer expected, got " + j.dump());
}

double real_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw RejectedInput("not a real number: '" + s + "'");
    return x;
  }
  throw RejectedInput("real number expected, got " + j.dump());
}

RatVector rational_vector_from(const json& j) {
  if (!j.is_array()) throw RejectedInput("vector expected, got " + j.dump());
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

riemann::Vec real_vector_from(const json& j) {
  if (!j.is_array()) throw RejectedInput("vector expected, got " + j.dump());
  riemann::Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = real_from(j[i]);
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RejectedInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw RejectedInput(std::string("malformed JSON: ") + e.what());
  }
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw RejectedInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t count_from(const json& j, const char* what) {
  Integer z = integer_from(j);
  if (z < 0 || !z.fits_ulong_p()) throw RejectedInput(std::string(what) + " must be a nonnegative integer");
  return z.get_ui();
}

}  // namespace

IntegralLattice lattice_from_json(const json& j) {
  const std::size_t r = count_from(field(j, "rank"), "rank");
  const json& g = field(j, "gram");
  if (!g.is_array() || g.size() != r) throw RejectedInput("gram must have 'rank' rows");
  IntMatrix m(r, r, Integer(0));
  for (std::size_t i = 0; i < r; ++i) {
    if (!g[i].is_array() || g[i].size() != r) throw RejectedInput("gram must be square");
    for (std::size_t k = 0; k < r; ++k) m(i, k) = integer_from(g[i][k]);
  }
  return IntegralLattice(std::move(m));
}

json lattice_to_json(const IntegralLattice& l) {
  return json{{"rank", std::to_string(l.rank())}, {"gram", exact_matrix(l.gram())}};
}

IntegralLattice load_lattice(const std::string& spec) {
  if (spec.starts_with("diag:") || spec.starts_with("name:")) return parse_lattice_spec(spec);
  return lattice_from_json(parse(read_file(spec)));
}

FujikiData fujiki_from_json(const json& j) {
  const Integer n = integer_from(field(j, "n"));
  if (n < 1 || n > 64) throw RejectedInput("n must be between 1 and 64");
  const json& g = field(j, "gram");
  if (!g.is_array()) throw RejectedInput("gram must be an array of rows");
  const std::size_t d = g.size();
  RatMatrix q(d, d, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (!g[i].is_array() || g[i].size() != d) throw RejectedInput("gram must be square");
    for (std::size_t k = 0; k < d; ++k) q(i, k) = rational_from(g[i][k]);
  }
  return FujikiData(static_cast<int>(n.get_si()), std::move(q), rational_from(field(j, "c")));
}

json fujiki_to_json(const FujikiData& fd) {
  return json{{"n", std::to_string(fd.n())}, {"c", exact(fd.c())}, {"gram", exact_matrix(fd.q())}};
}

PeriodPoint period_from_json(const json& j) {
  return make_period_point(rational_vector_from(field(j, "re")), rational_vector_from(field(j, "im")));
}

json period_to_json(const PeriodPoint& p) { return json{{"re", exact_vector(p.re)}, {"im", exact_vector(p.im)}}; }

json numeric_period_to_json(const NumericPeriodPoint& p) {
  return json{{"re", real_vector(p.re)}, {"im", real_vector(p.im)}};
}

json conic_point_to_json(const ConicPoint& p) {
  json j{{"lambda", exact_vector(p.lambda)}, {"residual", real(p.residual)}, {"exact", p.exact.has_value()}};
  if (p.exact) j["point"] = period_to_json(*p.exact);
  else j["point"] = numeric_period_to_json(p.numeric);
  return j;
}

json path_report_to_json(const PathReport& r) {
  json chain = json::array();
  for (const auto& link : r.chain) {
    const auto& b = link.conic.basis();
    json jl{{"conic", json::array({exact_vector(b[0]), exact_vector(b[1]), exact_vector(b[2])})},
            {"junction_plane", json::array({exact_vector(link.point.plane[0]), exact_vector(link.point.plane[1])})},
            {"exact", link.point.exact.has_value()}};
    if (link.point.exact) jl["point"] = period_to_json(*link.point.exact);
    else jl["point"] = numeric_period_to_json(link.point.numeric);
    chain.push_back(std::move(jl));
  }
  json failures = json::array();
  for (const auto& f : r.verification.failures) failures.push_back(f);
  return json{{"status", r.status == SearchStatus::success ? "success" : "inconclusive"},
              {"steps", std::to_string(r.chain.size())},
              {"restart_used", std::to_string(r.restart_used)},
              {"chain", std::move(chain)},
              {"verification",
               {{"ok", r.verification.ok},
                {"max_residual", real(r.verification.max_residual)},
                {"failures", std::move(failures)}}}};
}

json series_to_json(const IntegerSeries& s) {
  json c = json::array();
  for (const auto& x : s.coeffs()) c.push_back(to_string(x));
  return json{{"truncation", std::to_string(s.truncation())}, {"coeffs", std::move(c)}};
}

riemann::Polynomial polynomial_from_json(const json& j, int nvars) {
  riemann::Polynomial p(nvars);
  if (j.is_number() || j.is_string()) return riemann::Polynomial::constant(nvars, real_from(j));
  if (!j.is_object()) throw RejectedInput("polynomial must be an object of exponent keys");
  for (const auto& [key, coeff] : j.items()) {
    riemann::Polynomial::Exponents e;
    for (const auto& x : parse_integer_list(key)) {
      if (x < 0 || !x.fits_sint_p()) throw RejectedInput("bad exponent in '" + key + "'");
      e.push_back(static_cast<int>(x.get_si()));
    }
    if (static_cast<int>(e.size()) != nvars)
      throw RejectedInput("exponent key '" + key + "' must have " + std::to_string(nvars) + " entries");
    p.add_term(e, real_from(coeff));
  }
  return p;
}

namespace {

double param(const json& j, const char* key, double fallback) {
  if (!j.is_object() || !j.contains("params") || !j["params"].contains(key)) return fallback;
  return real_from(j["params"][key]);
}

riemann::MetricChart catalog_chart(const json& j, int n) {
  const std::string name = field(j, "catalog").get<std::string>();
  if (name == "flat") return riemann::flat_chart(n);
  if (name == "flat_torus") return riemann::flat_torus_chart(n, param(j, "period", 1.0));
  if (name == "sphere") return riemann::sphere_chart(n, param(j, "r", 1.0));
  if (name == "fubini_study") {
    if (n != 2) throw RejectedInput("fubini_study is a 2-dimensional chart");
    return riemann::fubini_study_chart();
  }
  if (name == "product") {
    const json& f = field(field(j, "params"), "factors");
    if (!f.is_array() || f.size() < 2) throw RejectedInput("product needs at least two factors");
    riemann::MetricChart c = chart_from_json(f[0]);
    for (std::size_t i = 1; i < f.size(); ++i) c = riemann::product_chart(c, chart_from_json(f[i]));
    if (c.dim() != n) throw RejectedInput("product dimension does not match 'dim'");
    return c;
  }
  throw RejectedInput("unknown catalog metric '" + name + "'");
}

}  // namespace

riemann::MetricChart chart_from_json(const json& j) {
  const Integer nz = integer_from(field(j, "dim"));
  if (nz < 1 || nz > 64) throw RejectedInput("dim must be between 1 and 64");
  const int n = static_cast<int>(nz.get_si());

  riemann::Vec lo = riemann::Vec::Constant(n, -1), hi = riemann::Vec::Constant(n, 1);
  if (j.contains("domain")) {
    lo = real_vector_from(field(j["domain"], "lo"));
    hi = real_vector_from(field(j["domain"], "hi"));
    if (lo.size() != n || hi.size() != n) throw RejectedInput("domain bounds must have 'dim' entries");
  }

  std::optional<riemann::MetricChart> chart;
  if (j.contains("catalog")) {
    chart = catalog_chart(j, n);
    if (j.contains("domain")) chart = chart->with_domain(lo, hi);
  } else if (j.contains("poly_entries")) {
    const json& e = j["poly_entries"];
    if (!e.is_array() || static_cast<int>(e.size()) != n) throw RejectedInput("poly_entries must have 'dim' rows");
    std::vector<std::vector<riemann::Polynomial>> entries;
    for (const auto& row : e) {
      if (!row.is_array() || static_cast<int>(row.size()) != n) throw RejectedInput("poly_entries must be square");
      std::vector<riemann::Polynomial> r;
      for (const auto& p : row) r.push_back(polynomial_from_json(p, n));
      entries.push_back(std::move(r));
    }
    chart = riemann::polynomial_chart(std::move(entries), lo, hi);
  } else if (j.contains("kahler_potential")) {
    chart = riemann::kahler_potential_chart(polynomial_from_json(j["kahler_potential"], n), lo, hi);
  } else {
    throw RejectedInput("metric spec needs 'catalog', 'poly_entries' or 'kahler_potential'");
  }
  if (chart->dim() != n) throw RejectedInput("metric dimension does not match 'dim'");
  if (j.contains("h")) *chart = chart->with_step(real_from(j["h"]));
  if (j.contains("derivatives")) {
    const std::string d = j["derivatives"].get<std::string>();
    if (d == "analytic") *chart = chart->with_derivatives(riemann::Derivatives::analytic);
    else if (d == "central_difference") *chart = chart->with_derivatives(riemann::Derivatives::central_difference);
    else throw RejectedInput("derivatives must be 'analytic' or 'central_difference'");
  }
  return *chart;
}

riemann::Path path_from_json(const json& j) {
  if (j.is_object() && j.contains("latitude")) return riemann::latitude_loop(real_from(j["latitude"]));
  const json& pts = field(j, "points");
  if (!pts.is_array()) throw RejectedInput("'points' must be an array");
  std::vector<riemann::Vec> v;
  for (const auto& p : pts) v.push_back(real_vector_from(p));
  return riemann::Path::polyline(v);
}

json decomposition_to_json(const DecompositionEnumeration& d) {
  json cands = json::array();
  for (const auto& c : d.candidates) {
    json factors = json::array();
    for (const auto& f : c)
      factors.push_back(json{{"label", f.label()},
                             {"dim", std::to_string(f.complex_dim)},
                             {"chi", exact(f.chi)}});
    cands.push_back(std::move(factors));
  }
  return json{{"candidates", std::move(cands)}, {"ambiguous", d.ambiguous}};
}

json hodge_diamond_to_json(const HodgeDiamond& d) {
  json h = json::object();
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) h[std::to_string(p) + "," + std::to_string(q)] = exact(d.h[p][q]);
  json b = json::array();
  for (const auto& x : d.betti()) b.push_back(exact(x));
  return json{{"h", std::move(h)}, {"betti", std::move(b)}, {"euler", exact(d.euler())}};
}

}  // namespace hk::io
