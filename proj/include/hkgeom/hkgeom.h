/* hkgeom C interface.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call returns an hk_status; on anything other than HK_OK the message is
 * available from hk_last_error() (per thread, valid until the next call).
 * Results are JSON documents returned through `char** out` and released
 * with hk_string_free. Numbers inside them are strings: exact rationals as
 * "p/q", reals as "%.17g".
 *
 * Vectors are passed as comma-separated rationals ("1,0,-1/2") or, where
 * noted, as JSON text.
 */
#ifndef HKGEOM_H
#define HKGEOM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HK_API __declspec(dllexport)
#else
#define HK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hk_status {
  HK_OK = 0,
  HK_REJECTED = 2,
  HK_INCONSISTENT = 3,
  HK_INCONCLUSIVE = 4,
  HK_INTERNAL = 5
} hk_status;

typedef struct hk_lattice hk_lattice;
typedef struct hk_fujiki hk_fujiki;
typedef struct hk_chart hk_chart;
typedef struct hk_series hk_series;

HK_API const char* hk_version(void);
HK_API const char* hk_last_error(void);
HK_API void hk_string_free(char* s);

/* lattice */
/* "diag:a,b,...", "name:U|E8_minus|K3" or a path to {"rank", "gram"} JSON. */
HK_API hk_status hk_lattice_load(const char* spec_or_path, hk_lattice** out);
HK_API hk_status hk_lattice_from_json(const char* json, hk_lattice** out);
HK_API void hk_lattice_free(hk_lattice* l);
HK_API size_t hk_lattice_rank(const hk_lattice* l);
/* {"rank", "gram", "determinant", "even", "signature": [p, n, z]} */
HK_API hk_status hk_lattice_describe(const hk_lattice* l, char** out);
HK_API hk_status hk_lattice_signature(const hk_lattice* l, size_t* positive, size_t* negative, size_t* zero);
HK_API hk_status hk_lattice_evaluate(const hk_lattice* l, const char* v, const char* w, char** out);
HK_API hk_status hk_lattice_direct_sum(const hk_lattice* a, const hk_lattice* b, hk_lattice** out);
HK_API hk_status hk_lattice_rescale(const hk_lattice* l, const char* factor, hk_lattice** out);
HK_API hk_status hk_lattice_extend(const hk_lattice* l, const char* square, hk_lattice** out);

/* Beauville-Bogomolov data: {"n", "c", "gram"} */
HK_API hk_status hk_fujiki_from_json(const char* json, hk_fujiki** out);
HK_API void hk_fujiki_free(hk_fujiki* f);
HK_API hk_status hk_bb_top(const hk_fujiki* f, const char* alpha, char** out);
/* alphas: JSON array of 2n vectors */
HK_API hk_status hk_bb_polarized(const hk_fujiki* f, const char* alphas_json, char** out);
HK_API hk_status hk_bb_isotropic(const hk_fujiki* f, const char* beta, const char* fillers_json, int copies,
                                 char** out);
/* pair: {"qE", "qA", "qEA", "n", "c"} */
HK_API hk_status hk_bb_matsushita(const char* pair_json, char** out);
HK_API hk_status hk_bb_trivial_test(const char* pair_json, const char* top_e, const char* mixed, char** out);
/* request: {"n", "c", "dim", "reference": [...], "table": {"i,j,..": value} or "form": [[...]],
 *           "allow_float"} */
HK_API hk_status hk_bb_recover(const char* request_json, char** out);

/* period domain; points are {"re": [...], "im": [...]} */
HK_API hk_status hk_period_check(const hk_lattice* l, const char* point_json, char** out);
/* plane: JSON array of three vectors */
HK_API hk_status hk_twistor_conic(const hk_lattice* l, const char* plane_json, size_t samples, uint64_t seed,
                                  double tol, char** out);
/* HK_INCONCLUSIVE with a report in *out when the search gives up. */
HK_API hk_status hk_twistor_path(const hk_lattice* l, const char* start_json, const char* target_json,
                                 size_t max_steps, uint64_t seed, double tol, char** out);

/* Riemannian charts: {"dim", "catalog" | "poly_entries" | "kahler_potential", ...} */
HK_API hk_status hk_chart_from_json(const char* json, hk_chart** out);
HK_API void hk_chart_free(hk_chart* c);
HK_API int hk_chart_dim(const hk_chart* c);
HK_API hk_status hk_riemann_curvature(const hk_chart* c, const char* point, char** out);
/* points: JSON array of points */
HK_API hk_status hk_riemann_einstein(const hk_chart* c, const char* points_json, double tol, char** out);
HK_API hk_status hk_riemann_geodesic(const hk_chart* c, const char* x0, const char* v0, double t, int steps,
                                     char** out);
/* path: {"points": [...]} or {"latitude": theta} */
HK_API hk_status hk_riemann_transport(const hk_chart* c, const char* path_json, const char* v0, int steps,
                                      char** out);
/* loops: JSON array of paths */
HK_API hk_status hk_riemann_holonomy(const hk_chart* c, const char* base, const char* loops_json, int steps,
                                     char** out);
HK_API hk_status hk_riemann_kahler(const hk_chart* c, const char* points_json, char** out);
HK_API hk_status hk_riemann_berger(int n, int kahler, int ricci_flat, int symmetric_excluded, char** out);

/* series */
HK_API hk_status hk_series_goettsche(const char* e, size_t order, hk_series** out);
HK_API void hk_series_free(hk_series* s);
HK_API hk_status hk_series_coeff(const hk_series* s, size_t k, char** out);
HK_API hk_status hk_series_multiply(const hk_series* a, const hk_series* b, hk_series** out);
HK_API hk_status hk_series_to_json(const hk_series* s, char** out);

/* counting and Riemann-Roch */
/* surface {"c1_sq", "c2"}, bundle {"rank", "c1_sq", "c1_dot_c1X", "c2"};
 * literal_square selects the misprinted Todd expansion. */
HK_API hk_status hk_hrr_chi(const char* surface_json, const char* bundle_json, int literal_square, char** out);
HK_API hk_status hk_solve_c2(const char* chi_o, const char* c1_sq, char** out);
HK_API hk_status hk_k3_hodge(char** out);
HK_API hk_status hk_h2_ranks(const char* b1, const char* b2, char** out);
HK_API hk_status hk_hilb2_euler(const char* e, char** out);
HK_API hk_status hk_elliptic_fibers(const char* e_total, const char* e_singular, char** out);
HK_API hk_status hk_jacobian_euler(long normalization_genus, long nodes, char** out);
HK_API hk_status hk_moduli_dims(const char* n, char** out);
HK_API hk_status hk_bitangents(const char* d, char** out);
HK_API hk_status hk_bitangents_sextic(char** out);
HK_API hk_status hk_decompose(int complex_dim, const char* chi, char** out);
/* sub_slopes: comma-separated rationals, possibly empty */
HK_API hk_status hk_stability(const char* degree, const char* rank, const char* sub_slopes, char** out);

/* Acceptance suite. profile: 0 fast, 1 full. `only` is 0 for every
 * criterion or a single id. HK_INCONSISTENT when a criterion fails. */
HK_API hk_status hk_verify_suite(int profile, int literal_square, uint64_t seed, const char* cli_path, int only,
                                 char** out);

#ifdef __cplusplus
}
#endif

#endif /* HKGEOM_H */
