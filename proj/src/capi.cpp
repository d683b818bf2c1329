#include "hkgeom/hkgeom.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "hkgeom/bbform.hpp"
#include "hkgeom/hrr.hpp"
#include "hkgeom/io.hpp"
#include "hkgeom/lattice.hpp"
#include "hkgeom/period.hpp"
#include "hkgeom/riemann.hpp"
#include "hkgeom/series.hpp"
#include "hkgeom/verify.hpp"

struct hk_lattice {
  hk::IntegralLattice value;
};
struct hk_fujiki {
  hk::FujikiData value;
};
struct hk_chart {
  hk::riemann::MetricChart value;
};
struct hk_series {
  hk::IntegerSeries value;
};

namespace {

using hk::io::json;
namespace rm = hk::riemann;

thread_local std::string last_error;

struct Inconclusive {};

template <typename F>
hk_status guard(F&& f) {
  last_error.clear();
  try {
    f();
    return HK_OK;
  } catch (const Inconclusive&) {
    return HK_INCONCLUSIVE;
  } catch (const hk::RejectedInput& e) {
    last_error = e.what();
    return HK_REJECTED;
  } catch (const hk::InconsistentData& e) {
    last_error = e.what();
    return HK_INCONSISTENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HK_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HK_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw hk::RejectedInput(std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void emit(char** out, const json& j) {
  need(out, "out");
  *out = dup(j.dump());
}

hk::RatVector rationals(const char* s) {
  need(s, "vector");
  return hk::parse_rational_list(s);
}

rm::Vec reals(const char* s) {
  need(s, "vector");
  json arr = json::array();
  std::string text(s);
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    arr.push_back(tok);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return hk::io::real_vector_from(arr);
}

json parse(const char* s) {
  need(s, "json");
  return hk::io::parse(s);
}

std::vector<rm::Vec> points_from(const char* s) {
  const json j = parse(s);
  if (!j.is_array()) throw hk::RejectedInput("points must be a JSON array");
  std::vector<rm::Vec> pts;
  for (const auto& p : j) pts.push_back(hk::io::real_vector_from(p));
  return pts;
}

json signature_json(const hk::Signature& s) {
  return json::array({std::to_string(s.positive), std::to_string(s.negative), std::to_string(s.zero)});
}

hk::DivisorPairData pair_from(const json& j) {
  hk::DivisorPairData d;
  d.qE = hk::io::rational_from(j.at("qE"));
  d.qA = hk::io::rational_from(j.at("qA"));
  d.qEA = hk::io::rational_from(j.at("qEA"));
  const hk::Integer n = hk::io::integer_from(j.at("n"));
  if (n < 1 || n > 64) throw hk::RejectedInput("n must be between 1 and 64");
  d.n = static_cast<int>(n.get_si());
  d.c = j.contains("c") ? hk::io::rational_from(j["c"]) : hk::Rational(1);
  return d;
}

json tensor4_json(const rm::Tensor4& t) {
  const int n = t.dim();
  json out = json::array();
  for (int a = 0; a < n; ++a) {
    json ja = json::array();
    for (int b = 0; b < n; ++b) {
      json jb = json::array();
      for (int c = 0; c < n; ++c) {
        json jc = json::array();
        for (int d = 0; d < n; ++d) jc.push_back(hk::io::real(t(a, b, c, d)));
        jb.push_back(jc);
      }
      ja.push_back(jb);
    }
    out.push_back(ja);
  }
  return out;
}

json christoffel_json(const rm::Christoffel& g) {
  const int n = g.dim();
  json out = json::array();
  for (int k = 0; k < n; ++k) {
    json jk = json::array();
    for (int i = 0; i < n; ++i) {
      json ji = json::array();
      for (int j = 0; j < n; ++j) ji.push_back(hk::io::real(g(k, i, j)));
      jk.push_back(ji);
    }
    out.push_back(jk);
  }
  return out;
}

json matrices_json(const std::vector<rm::Mat>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(hk::io::real_matrix(m));
  return out;
}

}  // namespace

extern "C" {

const char* hk_version(void) { return HKGEOM_VERSION; }
const char* hk_last_error(void) { return last_error.c_str(); }
void hk_string_free(char* s) { std::free(s); }

// --- lattice ---------------------------------------------------------------

hk_status hk_lattice_load(const char* spec_or_path, hk_lattice** out) {
  return guard([&] {
    need(spec_or_path, "spec");
    need(out, "out");
    *out = new hk_lattice{hk::io::load_lattice(spec_or_path)};
  });
}

hk_status hk_lattice_from_json(const char* text, hk_lattice** out) {
  return guard([&] {
    need(out, "out");
    *out = new hk_lattice{hk::io::lattice_from_json(parse(text))};
  });
}

void hk_lattice_free(hk_lattice* l) { delete l; }

size_t hk_lattice_rank(const hk_lattice* l) { return l ? l->value.rank() : 0; }

hk_status hk_lattice_describe(const hk_lattice* l, char** out) {
  return guard([&] {
    need(l, "lattice");
    json j = hk::io::lattice_to_json(l->value);
    j["determinant"] = hk::io::exact(l->value.determinant());
    j["even"] = l->value.is_even();
    j["signature"] = signature_json(hk::signature(l->value));
    emit(out, j);
  });
}

hk_status hk_lattice_signature(const hk_lattice* l, size_t* positive, size_t* negative, size_t* zero) {
  return guard([&] {
    need(l, "lattice");
    need(positive, "positive");
    need(negative, "negative");
    need(zero, "zero");
    const auto s = hk::signature(l->value);
    *positive = s.positive;
    *negative = s.negative;
    *zero = s.zero;
  });
}

hk_status hk_lattice_evaluate(const hk_lattice* l, const char* v, const char* w, char** out) {
  return guard([&] {
    need(l, "lattice");
    const auto a = rationals(v), b = rationals(w);
    if (a.size() != l->value.rank() || b.size() != l->value.rank())
      throw hk::RejectedInput("vector length does not match the lattice rank");
    emit(out, json{{"value", hk::io::exact(l->value.evaluate(a, b))}});
  });
}

hk_status hk_lattice_direct_sum(const hk_lattice* a, const hk_lattice* b, hk_lattice** out) {
  return guard([&] {
    need(a, "lattice");
    need(b, "lattice");
    need(out, "out");
    *out = new hk_lattice{hk::direct_sum(a->value, b->value)};
  });
}

hk_status hk_lattice_rescale(const hk_lattice* l, const char* factor, hk_lattice** out) {
  return guard([&] {
    need(l, "lattice");
    need(factor, "factor");
    need(out, "out");
    *out = new hk_lattice{hk::rescale(l->value, hk::parse_integer(factor))};
  });
}

hk_status hk_lattice_extend(const hk_lattice* l, const char* square, hk_lattice** out) {
  return guard([&] {
    need(l, "lattice");
    need(square, "square");
    need(out, "out");
    *out = new hk_lattice{hk::extend_by_rank_one(l->value, hk::parse_integer(square))};
  });
}

// --- bbform ----------------------------------------------------------------

hk_status hk_fujiki_from_json(const char* text, hk_fujiki** out) {
  return guard([&] {
    need(out, "out");
    *out = new hk_fujiki{hk::io::fujiki_from_json(parse(text))};
  });
}

void hk_fujiki_free(hk_fujiki* f) { delete f; }

hk_status hk_bb_top(const hk_fujiki* f, const char* alpha, char** out) {
  return guard([&] {
    need(f, "fujiki");
    const auto a = rationals(alpha);
    emit(out, json{{"q", hk::io::exact(f->value.square(a))}, {"top", hk::io::exact(hk::fujiki_top(f->value, a))}});
  });
}

hk_status hk_bb_polarized(const hk_fujiki* f, const char* alphas_json, char** out) {
  return guard([&] {
    need(f, "fujiki");
    const json j = parse(alphas_json);
    if (!j.is_array()) throw hk::RejectedInput("alphas must be a JSON array");
    std::vector<hk::RatVector> alphas;
    for (const auto& a : j) alphas.push_back(hk::io::rational_vector_from(a));
    emit(out, json{{"value", hk::io::exact(hk::fujiki_polarized(f->value, alphas))}});
  });
}

hk_status hk_bb_isotropic(const hk_fujiki* f, const char* beta, const char* fillers_json, int copies, char** out) {
  return guard([&] {
    need(f, "fujiki");
    const auto b = rationals(beta);
    std::vector<hk::RatVector> fillers;
    if (fillers_json) {
      const json j = parse(fillers_json);
      if (!j.is_array()) throw hk::RejectedInput("fillers must be a JSON array");
      for (const auto& a : j) fillers.push_back(hk::io::rational_vector_from(a));
    }
    emit(out, json{{"value", hk::io::exact(hk::isotropic_power_vanishing(f->value, b, fillers, copies))}});
  });
}

hk_status hk_bb_matsushita(const char* pair_json, char** out) {
  return guard([&] {
    const auto d = pair_from(parse(pair_json));
    const auto v = hk::matsushita_expand(d);
    json terms = json::array();
    for (std::size_t m = 0; m < v.size(); ++m)
      terms.push_back(json{{"m", std::to_string(m)}, {"value", hk::io::exact(v[m])}});
    emit(out, json{{"E^m.A^(2n-m)", hk::io::exact_vector(v)}, {"terms", terms}});
  });
}

hk_status hk_bb_trivial_test(const char* pair_json, const char* top_e, const char* mixed, char** out) {
  return guard([&] {
    need(top_e, "top_e");
    need(mixed, "mixed");
    const auto r = hk::numerically_trivial_test(pair_from(parse(pair_json)), hk::parse_rational(top_e),
                                                hk::parse_rational(mixed));
    emit(out, json{{"numerically_trivial", r.numerically_trivial},
                   {"qE", hk::io::exact(r.qE)},
                   {"qEA", hk::io::exact(r.qEA)}});
  });
}

hk_status hk_bb_recover(const char* request_json, char** out) {
  return guard([&] {
    const json j = parse(request_json);
    const hk::Integer nz = hk::io::integer_from(j.at("n"));
    if (nz < 1 || nz > 2) throw hk::RejectedInput("recovery supports n = 1 and n = 2");
    const int n = static_cast<int>(nz.get_si());
    const hk::Rational c = hk::io::rational_from(j.at("c"));
    const auto ref = hk::io::rational_vector_from(j.at("reference"));
    hk::TopIntersection table;
    std::size_t dim = ref.size();
    if (j.contains("form")) {
      json fj{{"n", std::to_string(n)}, {"c", hk::io::exact(c)}, {"gram", j["form"]}};
      table = hk::top_intersection_from_form(hk::io::fujiki_from_json(fj));
    } else {
      std::map<std::vector<std::size_t>, hk::Rational> entries;
      for (const auto& [key, value] : j.at("table").items()) {
        std::vector<std::size_t> idx;
        for (const auto& t : hk::parse_integer_list(key)) {
          if (t < 0 || t >= static_cast<long>(dim)) throw hk::RejectedInput("table index out of range: " + key);
          idx.push_back(t.get_ui());
        }
        if (idx.size() != static_cast<std::size_t>(2 * n))
          throw hk::RejectedInput("table keys need 2n indices: " + key);
        std::sort(idx.begin(), idx.end());
        entries[idx] = hk::io::rational_from(value);
      }
      table = [entries](std::span<const std::size_t> indices) {
        std::vector<std::size_t> k(indices.begin(), indices.end());
        std::sort(k.begin(), k.end());
        const auto it = entries.find(k);
        if (it == entries.end()) throw hk::RejectedInput("intersection table has no entry for the requested indices");
        return it->second;
      };
    }
    hk::RecoveryOptions opt;
    if (j.contains("allow_float")) opt.allow_float = j["allow_float"].get<bool>();
    const auto r = hk::bb_recover(n, c, dim, table, ref, opt);
    json res{{"exact", r.exact}, {"residual", hk::io::real(r.residual)}};
    if (r.exact) res["q"] = hk::io::exact_matrix(r.q);
    res["q_numeric"] = hk::io::real_vector(r.q_numeric);
    emit(out, res);
  });
}

// --- period ----------------------------------------------------------------

hk_status hk_period_check(const hk_lattice* l, const char* point_json, char** out) {
  return guard([&] {
    need(l, "lattice");
    const auto p = hk::io::period_from_json(parse(point_json));
    if (p.re.size() != l->value.rank()) throw hk::RejectedInput("point length does not match the lattice rank");
    const bool in = hk::in_period_domain(l->value, p);
    const hk::Rational qx = l->value.evaluate(p.re, p.re), qy = l->value.evaluate(p.im, p.im);
    const hk::Rational b = l->value.evaluate(p.re, p.im);
    json j{{"in_domain", in},
           {"q_alpha", {{"re", hk::io::exact(qx - qy)}, {"im", hk::io::exact(2 * b)}}},
           {"q_alpha_plus_conj", hk::io::exact(4 * qx)},
           {"canonical", hk::io::period_to_json(hk::canonical(p))}};
    if (in) {
      const auto h = hk::hodge_structure_from_period(l->value, p);
      json basis = json::array();
      for (const auto& v : h.h11_basis) basis.push_back(hk::io::exact_vector(v));
      j["hodge"] = {{"h20", std::to_string(h.h20)},
                    {"h11", std::to_string(h.h11)},
                    {"h02", std::to_string(h.h02)},
                    {"h11_basis", basis}};
    }
    emit(out, j);
  });
}

namespace {

hk::PositiveThreePlane plane_from(const hk::IntegralLattice& l, const char* text) {
  const json j = parse(text);
  if (!j.is_array() || j.size() != 3) throw hk::RejectedInput("plane must be an array of three vectors");
  return hk::PositiveThreePlane(l, {hk::io::rational_vector_from(j[0]), hk::io::rational_vector_from(j[1]),
                                    hk::io::rational_vector_from(j[2])});
}

}  // namespace

hk_status hk_twistor_conic(const hk_lattice* l, const char* plane_json, size_t samples, uint64_t seed, double tol,
                           char** out) {
  return guard([&] {
    need(l, "lattice");
    const auto w = plane_from(l->value, plane_json);
    json pts = json::array();
    for (const auto& p : hk::twistor_conic(l->value, w, samples, seed, tol)) pts.push_back(hk::io::conic_point_to_json(p));
    emit(out, json{{"samples", pts}, {"plane_gram", hk::io::exact_matrix(w.gram())}});
  });
}

hk_status hk_twistor_path(const hk_lattice* l, const char* start_json, const char* target_json, size_t max_steps,
                          uint64_t seed, double tol, char** out) {
  bool inconclusive = false;
  const hk_status s = guard([&] {
    need(l, "lattice");
    const auto a = hk::io::period_from_json(parse(start_json));
    const auto b = hk::io::period_from_json(parse(target_json));
    hk::PathSearchOptions opt;
    opt.max_steps = max_steps;
    opt.seed = seed;
    opt.tol = tol;
    const auto r = hk::twistor_path_search(l->value, a, b, opt);
    emit(out, hk::io::path_report_to_json(r));
    if (r.status == hk::SearchStatus::inconclusive) {
      last_error = "no chain found within " + std::to_string(max_steps) + " steps";
      inconclusive = true;
    }
  });
  return s == HK_OK && inconclusive ? HK_INCONCLUSIVE : s;
}

// --- riemann ---------------------------------------------------------------

hk_status hk_chart_from_json(const char* text, hk_chart** out) {
  return guard([&] {
    need(out, "out");
    *out = new hk_chart{hk::io::chart_from_json(parse(text))};
  });
}

void hk_chart_free(hk_chart* c) { delete c; }

int hk_chart_dim(const hk_chart* c) { return c ? c->value.dim() : 0; }

hk_status hk_riemann_curvature(const hk_chart* c, const char* point, char** out) {
  return guard([&] {
    need(c, "chart");
    const auto x = reals(point);
    const auto cp = rm::curvature(c->value, x);
    const auto b = rm::bianchi_residuals(cp);
    const int n = c->value.dim();
    rm::Mat sec = rm::Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) sec(i, j) = cp.sectional(i, j);
    double scalar = 0;
    const rm::Mat ginv = cp.metric.inverse();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) scalar += ginv(i, j) * cp.ricci(i, j);
    emit(out, json{{"metric", hk::io::real_matrix(cp.metric)},
                   {"christoffel", christoffel_json(cp.christoffel)},
                   {"riemann_lowered", tensor4_json(cp.lowered)},
                   {"ricci", hk::io::real_matrix(cp.ricci)},
                   {"scalar", hk::io::real(scalar)},
                   {"sectional", hk::io::real_matrix(sec)},
                   {"bianchi",
                    {{"first", hk::io::real(b.first)},
                     {"pair_sym", hk::io::real(b.pair_sym)},
                     {"antisym", hk::io::real(b.antisym)}}},
                   {"h", hk::io::real(c->value.step())}});
  });
}

hk_status hk_riemann_einstein(const hk_chart* c, const char* points_json, double tol, char** out) {
  return guard([&] {
    need(c, "chart");
    const auto pts = points_from(points_json);
    const auto e = rm::is_einstein(c->value, pts, tol);
    emit(out, json{{"einstein", e.einstein},
                   {"constant", hk::io::real(e.constant)},
                   {"residual", hk::io::real(e.residual)},
                   {"ricci_flat", e.einstein && std::abs(e.constant) <= tol}});
  });
}

hk_status hk_riemann_geodesic(const hk_chart* c, const char* x0, const char* v0, double t, int steps, char** out) {
  return guard([&] {
    need(c, "chart");
    const auto tr = rm::geodesic(c->value, reals(x0), reals(v0), t, steps);
    json pts = json::array();
    const std::size_t stride = std::max<std::size_t>(1, tr.points.size() / 64);
    for (std::size_t i = 0; i < tr.points.size(); i += stride) pts.push_back(hk::io::real_vector(tr.points[i]));
    emit(out, json{{"end", hk::io::real_vector(tr.points.back())},
                   {"end_velocity", hk::io::real_vector(tr.velocities.back())},
                   {"exited", tr.exited},
                   {"speed_drift", hk::io::real(tr.speed_drift)},
                   {"samples", pts}});
  });
}

hk_status hk_riemann_transport(const hk_chart* c, const char* path_json, const char* v0, int steps, char** out) {
  return guard([&] {
    need(c, "chart");
    const auto path = hk::io::path_from_json(parse(path_json));
    const auto t = rm::parallel_transport(c->value, path, reals(v0), steps);
    emit(out, json{{"vector", hk::io::real_vector(t.vector)},
                   {"exited", t.exited},
                   {"norm_drift", hk::io::real(t.norm_drift)}});
  });
}

hk_status hk_riemann_holonomy(const hk_chart* c, const char* base, const char* loops_json, int steps, char** out) {
  return guard([&] {
    need(c, "chart");
    const json j = parse(loops_json);
    if (!j.is_array()) throw hk::RejectedInput("loops must be a JSON array");
    std::vector<rm::Path> loops;
    for (const auto& p : j) loops.push_back(hk::io::path_from_json(p));
    const auto h = rm::holonomy_sample(c->value, reals(base), loops, steps);
    json angles = json::array();
    for (const auto& m : h.matrices) {
      // Rotation angle in a g-orthonormal frame, reported for 2-dimensional charts.
      if (m.rows() != 2) break;
      const rm::Mat g = c->value.metric(reals(base));
      const Eigen::LLT<rm::Mat> llt(g);
      const rm::Mat u = llt.matrixU();
      const rm::Mat r = u * m * u.inverse();
      angles.push_back(hk::io::real(std::atan2(r(1, 0), r(0, 0))));
    }
    json iso = json::array();
    for (double v : h.isometry_residuals) iso.push_back(hk::io::real(v));
    json res{{"matrices", matrices_json(h.matrices)}, {"isometry_residuals", iso}};
    if (!angles.empty()) res["angles"] = angles;
    emit(out, res);
  });
}

hk_status hk_riemann_kahler(const hk_chart* c, const char* points_json, char** out) {
  return guard([&] {
    need(c, "chart");
    const auto r = rm::kahler_residuals(c->value, points_from(points_json));
    emit(out, json{{"d_omega", hk::io::real(r.d_omega)}, {"nabla_j", hk::io::real(r.nabla_j)}});
  });
}

hk_status hk_riemann_berger(int n, int kahler, int ricci_flat, int symmetric_excluded, char** out) {
  return guard([&] {
    const auto r = rm::berger_lookup(n, {kahler != 0, ricci_flat != 0, symmetric_excluded != 0});
    emit(out, json{{"groups", r.groups}, {"notes", r.notes}});
  });
}

// --- series ----------------------------------------------------------------

hk_status hk_series_goettsche(const char* e, size_t order, hk_series** out) {
  return guard([&] {
    need(e, "e");
    need(out, "out");
    *out = new hk_series{hk::goettsche_series(hk::parse_integer(e), order)};
  });
}

void hk_series_free(hk_series* s) { delete s; }

hk_status hk_series_coeff(const hk_series* s, size_t k, char** out) {
  return guard([&] {
    need(s, "series");
    emit(out, json{{"k", std::to_string(k)}, {"coeff", hk::io::exact(s->value.coeff(k))}});
  });
}

hk_status hk_series_multiply(const hk_series* a, const hk_series* b, hk_series** out) {
  return guard([&] {
    need(a, "series");
    need(b, "series");
    need(out, "out");
    *out = new hk_series{a->value * b->value};
  });
}

hk_status hk_series_to_json(const hk_series* s, char** out) {
  return guard([&] {
    need(s, "series");
    emit(out, hk::io::series_to_json(s->value));
  });
}

// --- counting --------------------------------------------------------------

hk_status hk_hrr_chi(const char* surface_json, const char* bundle_json, int literal_square, char** out) {
  return guard([&] {
    const json sj = parse(surface_json);
    hk::SurfaceChernData x{hk::io::integer_from(sj.at("c1_sq")), hk::io::integer_from(sj.at("c2"))};
    hk::BundleChernData f;
    if (bundle_json) {
      const json bj = parse(bundle_json);
      if (bj.contains("rank")) f.rank = hk::io::integer_from(bj["rank"]);
      if (bj.contains("c1_sq")) f.c1_sq = hk::io::integer_from(bj["c1_sq"]);
      if (bj.contains("c1_dot_c1X")) f.c1_dot_c1X = hk::io::integer_from(bj["c1_dot_c1X"]);
      if (bj.contains("c2")) f.c2 = hk::io::integer_from(bj["c2"]);
    }
    const auto todd = literal_square ? hk::ToddConvention::literal_square : hk::ToddConvention::standard;
    emit(out, json{{"chi", hk::io::exact(hk::hrr_chi_surface(x, f, todd))},
                   {"todd", literal_square ? "literal_square" : "standard"}});
  });
}

hk_status hk_solve_c2(const char* chi_o, const char* c1_sq, char** out) {
  return guard([&] {
    need(chi_o, "chi_o");
    need(c1_sq, "c1_sq");
    emit(out, json{{"c2", hk::io::exact(hk::solve_c2(hk::parse_integer(chi_o), hk::parse_integer(c1_sq)))}});
  });
}

hk_status hk_k3_hodge(char** out) {
  return guard([&] { emit(out, hk::io::hodge_diamond_to_json(hk::k3_hodge_diamond())); });
}

hk_status hk_h2_ranks(const char* b1, const char* b2, char** out) {
  return guard([&] {
    need(b1, "b1");
    need(b2, "b2");
    const auto x = hk::parse_integer(b1), y = hk::parse_integer(b2);
    emit(out, json{{"sym2", hk::io::exact(hk::sym_power_h2_rank(x, y))},
                   {"hilb", hk::io::exact(hk::hilb_h2_rank(x, y))},
                   {"kummer", hk::io::exact(hk::kummer_b2(y))}});
  });
}

hk_status hk_hilb2_euler(const char* e, char** out) {
  return guard([&] {
    need(e, "e");
    const auto v = hk::parse_integer(e);
    emit(out, json{{"blowup", hk::io::exact(hk::hilb2_euler(v))},
                   {"series", hk::io::exact(hk::goettsche_series(v, 2).coeff(2))}});
  });
}

hk_status hk_elliptic_fibers(const char* e_total, const char* e_singular, char** out) {
  return guard([&] {
    need(e_total, "e_total");
    need(e_singular, "e_singular");
    emit(out, json{{"count", hk::io::exact(hk::elliptic_fiber_count(hk::parse_integer(e_total),
                                                                      hk::parse_integer(e_singular)))}});
  });
}

hk_status hk_jacobian_euler(long normalization_genus, long nodes, char** out) {
  return guard([&] {
    emit(out, json{{"euler", hk::io::exact(hk::jacobian_euler(normalization_genus, nodes))},
                   {"arithmetic_genus", std::to_string(normalization_genus + nodes)}});
  });
}

hk_status hk_moduli_dims(const char* n, char** out) {
  return guard([&] {
    need(n, "n");
    const auto d = hk::moduli_dims(hk::parse_integer(n));
    emit(out, json{{"dim_hilb", hk::io::exact(d.dim_hilb)},
                   {"dim_jacobian", hk::io::exact(d.dim_jacobian)},
                   {"note", d.note}});
  });
}

hk_status hk_bitangents(const char* d, char** out) {
  return guard([&] {
    need(d, "d");
    emit(out, json{{"bitangents", hk::io::exact(hk::plane_curve_bitangents(hk::parse_integer(d)))}});
  });
}

hk_status hk_bitangents_sextic(char** out) {
  return guard([&] { emit(out, json{{"count", hk::io::exact(hk::bitangent_count_sextic())}}); });
}

hk_status hk_decompose(int complex_dim, const char* chi, char** out) {
  return guard([&] {
    need(chi, "chi");
    emit(out, hk::io::decomposition_to_json(hk::chi_decomposition_enumerate(complex_dim, hk::parse_integer(chi))));
  });
}

hk_status hk_stability(const char* degree, const char* rank, const char* sub_slopes, char** out) {
  return guard([&] {
    need(degree, "degree");
    need(rank, "rank");
    const auto mu = hk::slope(hk::parse_rational(degree), hk::parse_integer(rank));
    const auto subs = sub_slopes && *sub_slopes ? hk::parse_rational_list(sub_slopes) : hk::RatVector{};
    const auto v = hk::is_stable(mu, subs);
    emit(out, json{{"slope", hk::io::exact(mu)}, {"stable", v.stable}, {"semistable", v.semistable}});
  });
}

// --- verify ----------------------------------------------------------------

hk_status hk_verify_suite(int profile, int literal_square, uint64_t seed, const char* cli_path, int only,
                          char** out) {
  bool failed = false;
  const hk_status s = guard([&] {
    hk::verify::SuiteOptions o;
    o.profile = profile ? hk::verify::Profile::full : hk::verify::Profile::fast;
    o.todd = literal_square ? hk::ToddConvention::literal_square : hk::ToddConvention::standard;
    o.seed = seed;
    if (cli_path) o.cli_path = cli_path;
    if (only < 0 || only > hk::verify::criterion_count) throw hk::RejectedInput("no criterion " + std::to_string(only));
    std::vector<hk::verify::CriterionResult> rs;
    if (only) rs.push_back(hk::verify::run_criterion(only, o));
    else rs = hk::verify::run_suite(o);
    json arr = json::array();
    std::string failing;
    for (const auto& r : rs) {
      arr.push_back(json{{"id", std::to_string(r.id)}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      if (!r.pass) failing += (failing.empty() ? "" : ", ") + std::to_string(r.id) + " (" + r.name + ")";
    }
    emit(out, json{{"criteria", arr}, {"all_pass", failing.empty()}});
    if (!failing.empty()) {
      last_error = "failing criteria: " + failing;
      failed = true;
    }
  });
  return s == HK_OK && failed ? HK_INCONSISTENT : s;
}

}  // extern "C"
