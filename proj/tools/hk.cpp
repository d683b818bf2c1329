// hk: command-line front end over the hkgeom C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "hkgeom/hkgeom.h"

using json = nlohmann::json;

namespace {

struct Failure {
  hk_status status;
  std::string message;
};

// Owning wrappers for the C handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};
using Lattice = Handle<hk_lattice, hk_lattice_free>;
using Fujiki = Handle<hk_fujiki, hk_fujiki_free>;
using Chart = Handle<hk_chart, hk_chart_free>;
using Series = Handle<hk_series, hk_series_free>;

void check(hk_status s) {
  if (s != HK_OK) throw Failure{s, hk_last_error()};
}

// Runs a call that fills a JSON string; an inconclusive result keeps its
// payload.
json call(const std::function<hk_status(char**)>& f, hk_status* status = nullptr) {
  char* out = nullptr;
  const hk_status s = f(&out);
  json j;
  if (out) {
    j = json::parse(out);
    hk_string_free(out);
  }
  if (status) *status = s;
  if (s != HK_OK && !(status && out)) throw Failure{s, hk_last_error()};
  return j;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{HK_REJECTED, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON or a file path.
std::string json_arg(const std::string& s) {
  const auto p = s.find_first_not_of(" \t\n");
  if (p != std::string::npos && (s[p] == '{' || s[p] == '[')) return s;
  return read_text(s);
}

// "1,0;0,1" or JSON text for a list of vectors.
std::string vectors_arg(const std::string& s) {
  const auto p = s.find_first_not_of(" \t\n");
  if (p != std::string::npos && (s[p] == '[' || s[p] == '{')) return s;
  if (s.find(';') == std::string::npos && s.find(',') == std::string::npos) return read_text(s);
  json arr = json::array();
  std::stringstream rows(s);
  std::string row;
  while (std::getline(rows, row, ';')) {
    json v = json::array();
    std::stringstream cells(row);
    std::string c;
    while (std::getline(cells, c, ',')) v.push_back(c);
    arr.push_back(v);
  }
  return arr.dump();
}

json list_json(const std::string& csv) {
  json v = json::array();
  std::stringstream cells(csv);
  std::string c;
  while (std::getline(cells, c, ',')) v.push_back(c);
  return v;
}

std::string point_json(const std::string& re, const std::string& im) {
  return json{{"re", list_json(re)}, {"im", list_json(im)}}.dump();
}

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else if (j.is_array()) {
    os << prefix << "\t";
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? " " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
    os << "\n";
  } else {
    os << prefix << "\t" << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

const char* status_name(hk_status s) {
  switch (s) {
    case HK_OK: return "ok";
    case HK_REJECTED: return "rejected";
    case HK_INCONCLUSIVE: return "inconclusive";
    default: return "inconsistent";
  }
}

int exit_code(hk_status s) {
  switch (s) {
    case HK_OK: return 0;
    case HK_REJECTED: return 2;
    case HK_INCONCLUSIVE: return 4;
    default: return 3;
  }
}

std::string self_path(const char* argv0) {
  char buf[4096];
  const ssize_t n = readlink("/proc/self/exe", buf, sizeof buf - 1);
  if (n > 0) return std::string(buf, static_cast<std::size_t>(n));
  return argv0;
}

struct Globals {
  std::string format = "json";
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::size_t order = 10;
};

// Output of one command.
struct Outcome {
  hk_status status = HK_OK;
  json payload;
  json residuals;
};

using Action = std::function<Outcome()>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperkaehler geometry toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (const char* env = std::getenv("HK_SEED")) {
    try {
      g.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "HK_SEED is not an unsigned integer\n";
      return 2;
    }
  }
  app.add_option("--format", g.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", g.seed, "seed for randomized commands (default: HK_SEED or 0)");
  app.add_option("--tol", g.tol, "numeric tolerance");
  app.add_option("--order", g.order, "series truncation order");

  Action action;
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  // --- lattice -------------------------------------------------------------
  CLI::App* lat = sub(&app, "lattice", "integral lattices");
  lat->require_subcommand(1);
  std::string lattice_spec, lattice_file, other_spec, vec_v, vec_w, factor, square;
  auto load = [&](Lattice& l, const std::string& spec, const std::string& file) {
    if (spec.empty() == file.empty()) throw Failure{HK_REJECTED, "give exactly one of --lattice or --file"};
    check(hk_lattice_load(file.empty() ? spec.c_str() : file.c_str(), &l.p));
  };
  auto lattice_opts = [&](CLI::App* s) {
    s->add_option("--lattice", lattice_spec, "diag:a,b,... | name:U|E8_minus|K3 | JSON file");
    s->add_option("--file", lattice_file, "JSON file {\"rank\", \"gram\"}");
  };
  {
    auto* s = sub(lat, "signature", "signature (positive, negative, zero)");
    lattice_opts(s);
    s->callback([&] {
      action = [&] {
        Lattice l;
        load(l, lattice_spec, lattice_file);
        std::size_t p, n, z;
        check(hk_lattice_signature(l.p, &p, &n, &z));
        return Outcome{HK_OK, json{{"signature", {std::to_string(p), std::to_string(n), std::to_string(z)}}}, {}};
      };
    });
    s = sub(lat, "describe", "Gram matrix, determinant, parity and signature");
    lattice_opts(s);
    s->callback([&] {
      action = [&] {
        Lattice l;
        load(l, lattice_spec, lattice_file);
        return Outcome{HK_OK, call([&](char** o) { return hk_lattice_describe(l.p, o); }), {}};
      };
    });
    s = sub(lat, "evaluate", "bilinear form b(v, w)");
    lattice_opts(s);
    s->add_option("--v", vec_v, "vector")->required();
    s->add_option("--w", vec_w, "vector (default: v)");
    s->callback([&] {
      action = [&] {
        Lattice l;
        load(l, lattice_spec, lattice_file);
        const std::string w = vec_w.empty() ? vec_v : vec_w;
        return Outcome{HK_OK, call([&](char** o) { return hk_lattice_evaluate(l.p, vec_v.c_str(), w.c_str(), o); }), {}};
      };
    });
    s = sub(lat, "sum", "orthogonal direct sum");
    lattice_opts(s);
    s->add_option("--other", other_spec, "second lattice")->required();
    s->callback([&] {
      action = [&] {
        Lattice a, b, r;
        load(a, lattice_spec, lattice_file);
        check(hk_lattice_load(other_spec.c_str(), &b.p));
        check(hk_lattice_direct_sum(a.p, b.p, &r.p));
        return Outcome{HK_OK, call([&](char** o) { return hk_lattice_describe(r.p, o); }), {}};
      };
    });
    s = sub(lat, "rescale", "multiply the form by an integer");
    lattice_opts(s);
    s->add_option("--factor", factor, "integer factor")->required();
    s->callback([&] {
      action = [&] {
        Lattice a, r;
        load(a, lattice_spec, lattice_file);
        check(hk_lattice_rescale(a.p, factor.c_str(), &r.p));
        return Outcome{HK_OK, call([&](char** o) { return hk_lattice_describe(r.p, o); }), {}};
      };
    });
    s = sub(lat, "extend", "orthogonal sum with <square>");
    lattice_opts(s);
    s->add_option("--square", square, "square of the new generator")->required();
    s->callback([&] {
      action = [&] {
        Lattice a, r;
        load(a, lattice_spec, lattice_file);
        check(hk_lattice_extend(a.p, square.c_str(), &r.p));
        return Outcome{HK_OK, call([&](char** o) { return hk_lattice_describe(r.p, o); }), {}};
      };
    });
  }

  // --- bb --------------------------------------------------------------------
  CLI::App* bb = sub(&app, "bb", "Beauville-Bogomolov form and Fujiki relation");
  bb->require_subcommand(1);
  std::string form_arg, alpha, alphas, beta, fillers, pair_arg, top_e, mixed, request;
  std::string qE, qA, qEA, cconst = "1";
  int n_half = 1, copies = 0;
  auto form_opts = [&](CLI::App* s) {
    s->add_option("--form", form_arg, "{\"n\", \"c\", \"gram\"} inline or file")->required();
  };
  auto pair_opts = [&](CLI::App* s) {
    s->add_option("--pair", pair_arg, "{\"qE\", \"qA\", \"qEA\", \"n\", \"c\"} inline or file");
    s->add_option("--qE", qE, "q(E)");
    s->add_option("--qA", qA, "q(A)");
    s->add_option("--qEA", qEA, "q(E, A)");
    s->add_option("--n", n_half, "half the dimension");
    s->add_option("--c", cconst, "Fujiki constant");
  };
  auto pair_text = [&] {
    if (!pair_arg.empty()) return json_arg(pair_arg);
    if (qE.empty() || qA.empty() || qEA.empty()) throw Failure{HK_REJECTED, "give --pair or --qE, --qA and --qEA"};
    return json{{"qE", qE}, {"qA", qA}, {"qEA", qEA}, {"n", std::to_string(n_half)}, {"c", cconst}}.dump();
  };
  {
    auto* s = sub(bb, "top", "q(alpha) and c q(alpha)^n");
    form_opts(s);
    s->add_option("--alpha", alpha, "class")->required();
    s->callback([&] {
      action = [&] {
        Fujiki f;
        check(hk_fujiki_from_json(json_arg(form_arg).c_str(), &f.p));
        return Outcome{HK_OK, call([&](char** o) { return hk_bb_top(f.p, alpha.c_str(), o); }), {}};
      };
    });
    s = sub(bb, "polarized", "polarized 2n-linear form");
    form_opts(s);
    s->add_option("--alphas", alphas, "2n classes: \"v1;v2;...\" or JSON")->required();
    s->callback([&] {
      action = [&] {
        Fujiki f;
        check(hk_fujiki_from_json(json_arg(form_arg).c_str(), &f.p));
        const std::string a = vectors_arg(alphas);
        return Outcome{HK_OK, call([&](char** o) { return hk_bb_polarized(f.p, a.c_str(), o); }), {}};
      };
    });
    s = sub(bb, "isotropic", "polarized form on copies of an isotropic class");
    form_opts(s);
    s->add_option("--beta", beta, "isotropic class")->required();
    s->add_option("--fillers", fillers, "remaining classes: \"v1;v2;...\" or JSON");
    s->add_option("--copies", copies, "copies of beta")->required();
    s->callback([&] {
      action = [&] {
        Fujiki f;
        check(hk_fujiki_from_json(json_arg(form_arg).c_str(), &f.p));
        const std::string fl = fillers.empty() ? "[]" : vectors_arg(fillers);
        return Outcome{HK_OK,
                       call([&](char** o) { return hk_bb_isotropic(f.p, beta.c_str(), fl.c_str(), copies, o); }), {}};
      };
    });
    s = sub(bb, "matsushita", "E^m A^(2n-m) for m = 0..2n");
    pair_opts(s);
    s->callback([&] {
      action = [&] {
        const std::string p = pair_text();
        return Outcome{HK_OK, call([&](char** o) { return hk_bb_matsushita(p.c_str(), o); }), {}};
      };
    });
    s = sub(bb, "trivial", "numerical triviality test from E^2n and E.A^(2n-1)");
    pair_opts(s);
    s->add_option("--top-e", top_e, "E^2n")->required();
    s->add_option("--mixed", mixed, "E.A^(2n-1)")->required();
    s->callback([&] {
      action = [&] {
        const std::string p = pair_text();
        return Outcome{HK_OK, call([&](char** o) { return hk_bb_trivial_test(p.c_str(), top_e.c_str(), mixed.c_str(), o); }),
                       {}};
      };
    });
    s = sub(bb, "recover", "recover q from top intersection numbers");
    s->add_option("--request", request, "{\"n\", \"c\", \"reference\", \"table\" | \"form\"} inline or file")
        ->required();
    s->callback([&] {
      action = [&] {
        const std::string r = json_arg(request);
        const json res = call([&](char** o) { return hk_bb_recover(r.c_str(), o); });
        return Outcome{HK_OK, res, json{{"table_residual", res["residual"]}}};
      };
    });
  }

  // --- period ----------------------------------------------------------------
  CLI::App* per = sub(&app, "period", "period domain and twistor conics");
  per->require_subcommand(1);
  std::string re, im, tre, tim, w1, w2, w3, plane;
  std::size_t samples = 8, max_steps = 16;
  {
    auto* s = sub(per, "check", "membership and Hodge numbers");
    lattice_opts(s);
    s->add_option("--re", re, "real part")->required();
    s->add_option("--im", im, "imaginary part")->required();
    s->callback([&] {
      action = [&] {
        Lattice l;
        load(l, lattice_spec, lattice_file);
        const std::string p = point_json(re, im);
        return Outcome{HK_OK, call([&](char** o) { return hk_period_check(l.p, p.c_str(), o); }), {}};
      };
    });
    s = sub(per, "conic", "sample the twistor conic of a positive 3-plane");
    lattice_opts(s);
    s->add_option("--w1", w1, "first basis vector");
    s->add_option("--w2", w2, "second basis vector");
    s->add_option("--w3", w3, "third basis vector");
    s->add_option("--plane", plane, "three vectors: \"v1;v2;v3\" or JSON");
    s->add_option("--samples", samples, "number of sample points");
    s->callback([&] {
      action = [&] {
        Lattice l;
        load(l, lattice_spec, lattice_file);
        std::string pl;
        if (!plane.empty()) pl = vectors_arg(plane);
        else if (!w1.empty() && !w2.empty() && !w3.empty()) pl = json{list_json(w1), list_json(w2), list_json(w3)}.dump();
        else throw Failure{HK_REJECTED, "give --plane or --w1, --w2 and --w3"};
        const json res = call([&](char** o) { return hk_twistor_conic(l.p, pl.c_str(), samples, g.seed, g.tol, o); });
        double worst = 0;
        for (const auto& p : res["samples"]) worst = std::max(worst, std::stod(p["residual"].get<std::string>()));
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", worst);
        return Outcome{HK_OK, res, json{{"max_membership_residual", buf}}};
      };
    });
    s = sub(per, "path", "chain of twistor conics between two period points");
    lattice_opts(s);
    s->add_option("--re", re, "start, real part")->required();
    s->add_option("--im", im, "start, imaginary part")->required();
    s->add_option("--target-re", tre, "target, real part")->required();
    s->add_option("--target-im", tim, "target, imaginary part")->required();
    s->add_option("--max-steps", max_steps, "maximum number of conics");
    s->callback([&] {
      action = [&] {
        Lattice l;
        load(l, lattice_spec, lattice_file);
        const std::string a = point_json(re, im), b = point_json(tre, tim);
        hk_status st;
        const json res = call(
            [&](char** o) { return hk_twistor_path(l.p, a.c_str(), b.c_str(), max_steps, g.seed, g.tol, o); }, &st);
        if (st != HK_OK && st != HK_INCONCLUSIVE) throw Failure{st, hk_last_error()};
        return Outcome{st, res, res.value("verification", json())};
      };
    });
  }

  // --- riemann ---------------------------------------------------------------
  CLI::App* rie = sub(&app, "riemann", "chart-based Riemannian geometry");
  rie->require_subcommand(1);
  std::string metric, at, points, x0, v0, base, path_arg;
  std::vector<std::string> loops;
  double t_end = 1.0;
  int steps = 4096, berger_n = 0;
  bool kahler = false, ricci_flat = false, include_symmetric = false;
  auto chart_opts = [&](CLI::App* s) {
    s->add_option("--metric", metric, "metric spec, inline JSON or file")->required();
  };
  auto load_chart = [&](Chart& c) { check(hk_chart_from_json(json_arg(metric).c_str(), &c.p)); };
  {
    auto* s = sub(rie, "curvature", "Christoffel symbols, curvature, Ricci, Bianchi residuals");
    chart_opts(s);
    s->add_option("--at", at, "point")->required();
    s->callback([&] {
      action = [&] {
        Chart c;
        load_chart(c);
        json res = call([&](char** o) { return hk_riemann_curvature(c.p, at.c_str(), o); });
        json bianchi = res["bianchi"];
        res.erase("bianchi");
        return Outcome{HK_OK, res, json{{"bianchi", bianchi}}};
      };
    });
    s = sub(rie, "einstein", "least-squares Einstein constant over sample points");
    chart_opts(s);
    s->add_option("--points", points, "\"x1;x2;...\" or JSON")->required();
    s->callback([&] {
      action = [&] {
        Chart c;
        load_chart(c);
        const std::string p = vectors_arg(points);
        const json res = call([&](char** o) { return hk_riemann_einstein(c.p, p.c_str(), g.tol, o); });
        return Outcome{HK_OK, res, json{{"residual", res["residual"]}}};
      };
    });
    s = sub(rie, "geodesic", "integrate the geodesic equation");
    chart_opts(s);
    s->add_option("--x0", x0, "start point")->required();
    s->add_option("--v0", v0, "initial velocity")->required();
    s->add_option("--T", t_end, "end time");
    s->add_option("--steps", steps, "RK4 steps");
    s->callback([&] {
      action = [&] {
        Chart c;
        load_chart(c);
        const json res = call([&](char** o) { return hk_riemann_geodesic(c.p, x0.c_str(), v0.c_str(), t_end, steps, o); });
        return Outcome{HK_OK, res, json{{"speed_drift", res["speed_drift"]}}};
      };
    });
    s = sub(rie, "transport", "parallel transport along a path");
    chart_opts(s);
    s->add_option("--path", path_arg, "{\"points\": [...]} or {\"latitude\": theta}, inline or file")->required();
    s->add_option("--v0", v0, "initial vector")->required();
    s->add_option("--steps", steps, "RK4 steps per segment");
    s->callback([&] {
      action = [&] {
        Chart c;
        load_chart(c);
        const std::string p = json_arg(path_arg);
        const json res =
            call([&](char** o) { return hk_riemann_transport(c.p, p.c_str(), v0.c_str(), steps, o); });
        return Outcome{HK_OK, res, json{{"norm_drift", res["norm_drift"]}}};
      };
    });
    s = sub(rie, "holonomy", "transport matrices around loops at a basepoint");
    chart_opts(s);
    s->add_option("--base", base, "basepoint")->required();
    s->add_option("--loop", loops, "loop spec, repeatable")->required();
    s->add_option("--steps", steps, "RK4 steps per segment");
    s->callback([&] {
      action = [&] {
        Chart c;
        load_chart(c);
        json arr = json::array();
        for (const auto& l : loops) arr.push_back(json::parse(json_arg(l)));
        const std::string ls = arr.dump();
        json res = call([&](char** o) { return hk_riemann_holonomy(c.p, base.c_str(), ls.c_str(), steps, o); });
        json iso = res["isometry_residuals"];
        res.erase("isometry_residuals");
        return Outcome{HK_OK, res, json{{"isometry", iso}}};
      };
    });
    s = sub(rie, "kahler", "d omega and nabla J residuals");
    chart_opts(s);
    s->add_option("--points", points, "\"x1;x2;...\" or JSON")->required();
    s->callback([&] {
      action = [&] {
        Chart c;
        load_chart(c);
        const std::string p = vectors_arg(points);
        const json res = call([&](char** o) { return hk_riemann_kahler(c.p, p.c_str(), o); });
        return Outcome{HK_OK, res, res};
      };
    });
    s = sub(rie, "berger", "holonomy groups compatible with the given flags");
    s->add_option("--n", berger_n, "real dimension")->required();
    s->add_flag("--kahler", kahler, "restrict to Kaehler holonomy");
    s->add_flag("--ricci-flat", ricci_flat, "restrict to Ricci-flat holonomy");
    s->add_flag("--include-symmetric", include_symmetric, "do not assume the metric is non-symmetric");
    s->callback([&] {
      action = [&] {
        return Outcome{HK_OK, call([&](char** o) {
                         return hk_riemann_berger(berger_n, kahler, ricci_flat, !include_symmetric, o);
                       }),
                       {}};
      };
    });
  }

  // --- count -----------------------------------------------------------------
  CLI::App* cnt = sub(&app, "count", "Euler characteristics, Riemann-Roch, curve counts");
  cnt->require_subcommand(1);
  std::string e = "24", c1sq = "0", c2 = "24", rank = "1", fc1sq = "0", fc1c1x = "0", fc2 = "0", chi_o, b1 = "0",
              b2 = "22", total, singular, degree, chi, slopes;
  std::size_t coeff_k = 0;
  long genus = 0, nodes = 0;
  int dim = 0;
  bool literal = false;
  {
    auto* s = sub(cnt, "goettsche", "prod (1 - q^k)^(-e) through q^order");
    s->add_option("--e", e, "Euler characteristic of the surface");
    s->callback([&] {
      action = [&] {
        Series sr;
        check(hk_series_goettsche(e.c_str(), g.order, &sr.p));
        return Outcome{HK_OK, call([&](char** o) { return hk_series_to_json(sr.p, o); }), {}};
      };
    });
    s = sub(cnt, "coeff", "one coefficient of the Goettsche series");
    s->add_option("--e", e, "Euler characteristic of the surface");
    s->add_option("--k", coeff_k, "power of q")->required();
    s->callback([&] {
      action = [&] {
        Series sr;
        check(hk_series_goettsche(e.c_str(), g.order, &sr.p));
        return Outcome{HK_OK, call([&](char** o) { return hk_series_coeff(sr.p, coeff_k, o); }), {}};
      };
    });
    s = sub(cnt, "hrr", "chi(X, F) on a surface by Riemann-Roch");
    s->add_option("--c1sq", c1sq, "c1(X)^2");
    s->add_option("--c2", c2, "c2(X)");
    s->add_option("--rank", rank, "rank of F");
    s->add_option("--f-c1sq", fc1sq, "c1(F)^2");
    s->add_option("--f-c1c1x", fc1c1x, "c1(F).c1(X)");
    s->add_option("--f-c2", fc2, "c2(F)");
    s->add_flag("--literal-square", literal, "use the misprinted Todd expansion");
    s->callback([&] {
      action = [&] {
        const std::string x = json{{"c1_sq", c1sq}, {"c2", c2}}.dump();
        const std::string f = json{{"rank", rank}, {"c1_sq", fc1sq}, {"c1_dot_c1X", fc1c1x}, {"c2", fc2}}.dump();
        return Outcome{HK_OK, call([&](char** o) { return hk_hrr_chi(x.c_str(), f.c_str(), literal, o); }), {}};
      };
    });
    s = sub(cnt, "solve-c2", "c2 from chi(O) and c1^2");
    s->add_option("--chi", chi_o, "chi(O_X)")->required();
    s->add_option("--c1sq", c1sq, "c1(X)^2");
    s->callback([&] {
      action = [&] {
        return Outcome{HK_OK, call([&](char** o) { return hk_solve_c2(chi_o.c_str(), c1sq.c_str(), o); }), {}};
      };
    });
    s = sub(cnt, "k3-hodge", "Hodge diamond of a K3 surface");
    s->callback([&] { action = [&] { return Outcome{HK_OK, call(hk_k3_hodge), {}}; }; });
    s = sub(cnt, "h2", "second Betti numbers of S^(2), S^[2] and the Kummer construction");
    s->add_option("--b1", b1, "b1 of the surface");
    s->add_option("--b2", b2, "b2 of the surface");
    s->callback([&] {
      action = [&] { return Outcome{HK_OK, call([&](char** o) { return hk_h2_ranks(b1.c_str(), b2.c_str(), o); }), {}}; };
    });
    s = sub(cnt, "hilb2", "e(S^[2]) by blow-up and by the series");
    s->add_option("--e", e, "Euler characteristic of the surface");
    s->callback([&] {
      action = [&] { return Outcome{HK_OK, call([&](char** o) { return hk_hilb2_euler(e.c_str(), o); }), {}}; };
    });
    s = sub(cnt, "fibers", "singular fibres of an elliptic fibration");
    s->add_option("--total", total, "e of the total space")->required();
    s->add_option("--singular", singular, "e of one singular fibre")->required();
    s->callback([&] {
      action = [&] {
        return Outcome{HK_OK, call([&](char** o) { return hk_elliptic_fibers(total.c_str(), singular.c_str(), o); }), {}};
      };
    });
    s = sub(cnt, "jacobian", "Euler characteristic of a compactified Jacobian");
    s->add_option("--genus", genus, "genus of the normalization");
    s->add_option("--nodes", nodes, "number of nodes");
    s->callback([&] {
      action = [&] { return Outcome{HK_OK, call([&](char** o) { return hk_jacobian_euler(genus, nodes, o); }), {}}; };
    });
    s = sub(cnt, "moduli", "dimensions of S^[n] and of the compactified Jacobian");
    s->add_option("--n", n_half, "n or g")->required();
    s->callback([&] {
      action = [&] {
        const std::string n = std::to_string(n_half);
        return Outcome{HK_OK, call([&](char** o) { return hk_moduli_dims(n.c_str(), o); }), {}};
      };
    });
    s = sub(cnt, "bitangents", "bitangents of a smooth plane curve");
    s->add_option("--d", degree, "degree")->required();
    s->callback([&] {
      action = [&] { return Outcome{HK_OK, call([&](char** o) { return hk_bitangents(degree.c_str(), o); }), {}}; };
    });
    s = sub(cnt, "sextic", "genus-two rational curve count on a K3");
    s->callback([&] { action = [&] { return Outcome{HK_OK, call(hk_bitangents_sextic), {}}; }; });
    s = sub(cnt, "decompose", "factor types with given dimension and chi(O)");
    s->add_option("--dim", dim, "complex dimension")->required();
    s->add_option("--chi", chi, "chi(O)")->required();
    s->callback([&] {
      action = [&] { return Outcome{HK_OK, call([&](char** o) { return hk_decompose(dim, chi.c_str(), o); }), {}}; };
    });
    s = sub(cnt, "stability", "slope stability against subsheaf slopes");
    s->add_option("--degree", degree, "degree")->required();
    s->add_option("--rank", rank, "rank");
    s->add_option("--sub-slopes", slopes, "comma-separated slopes of proper subsheaves");
    s->callback([&] {
      action = [&] {
        return Outcome{HK_OK,
                       call([&](char** o) { return hk_stability(degree.c_str(), rank.c_str(), slopes.c_str(), o); }), {}};
      };
    });
  }

  // --- verify ----------------------------------------------------------------
  std::string profile = "fast", cli_path;
  bool mutation = false;
  int only = 0;
  {
    auto* s = sub(&app, "verify", "run the acceptance suite");
    s->add_option("--profile", profile, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    s->add_flag("--mutation", mutation, "evaluate Riemann-Roch with the literal-square Todd expansion");
    s->add_option("--cli", cli_path, "hk binary for the determinism check (default: this one)");
    s->add_option("--only", only, "single criterion id");
    s->callback([&] {
      action = [&] {
        const std::string cli = cli_path.empty() ? self_path(argv[0]) : cli_path;
        hk_status st;
        const json res = call(
            [&](char** o) { return hk_verify_suite(profile == "full", mutation, g.seed, cli.c_str(), only, o); }, &st);
        if (st != HK_OK && st != HK_INCONSISTENT) throw Failure{st, hk_last_error()};
        return Outcome{st, res, {}};
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  json provenance{{"argv", json::array()}, {"seed", std::to_string(g.seed)}, {"version", hk_version()}};
  for (int i = 1; i < argc; ++i) provenance["argv"].push_back(argv[i]);

  json result;
  hk_status status = HK_OK;
  try {
    if (!action) throw Failure{HK_REJECTED, "no command"};
    Outcome out = action();
    status = out.status;
    result = json{{"status", status_name(status)}, {"payload", out.payload}, {"provenance", provenance}};
    if (!out.residuals.is_null()) result["residuals"] = out.residuals;
    if (status != HK_OK) result["error"] = hk_last_error();
  } catch (const Failure& f) {
    status = f.status;
    result = json{{"status", status_name(status)}, {"error", f.message}, {"provenance", provenance}};
    std::cerr << "hk: " << f.message << "\n";
  } catch (const std::exception& ex) {
    status = HK_INTERNAL;
    result = json{{"status", status_name(status)}, {"error", ex.what()}, {"provenance", provenance}};
    std::cerr << "hk: " << ex.what() << "\n";
  }

  if (g.format == "table") flatten(result, "", std::cout);
  else std::cout << result.dump(2) << "\n";
  return exit_code(status);
}
