#ifndef HKGEOM_IO_HPP
#define HKGEOM_IO_HPP

#include <json.hpp>
#include <string>
#include <string_view>

#include "hkgeom/bbform.hpp"
#include "hkgeom/hrr.hpp"
#include "hkgeom/lattice.hpp"
#include "hkgeom/period.hpp"
#include "hkgeom/riemann.hpp"
#include "hkgeom/series.hpp"

namespace hk::io {

using json = nlohmann::json;

// Doubles go out as "%.17g" strings so output never depends on a JSON
// library's float printer.
std::string real(double x);
json real_vector(const std::vector<double>& v);
json real_vector(const riemann::Vec& v);
json real_matrix(const riemann::Mat& m);

json exact(const Rational& r);
json exact(const Integer& z);
json exact_vector(std::span<const Rational> v);
json exact_matrix(const RatMatrix& m);
json exact_matrix(const IntMatrix& m);

// Accepts JSON integers and strings ("p/q", integers, decimals); rejects
// binary floats.
Rational rational_from(const json& j);
Integer integer_from(const json& j);
double real_from(const json& j);
RatVector rational_vector_from(const json& j);
riemann::Vec real_vector_from(const json& j);

std::string read_file(const std::string& path);
json parse(std::string_view text);

// {"rank": r, "gram": [[...]]}
IntegralLattice lattice_from_json(const json& j);
json lattice_to_json(const IntegralLattice& l);
// "diag:...", "name:..." or a path to a JSON file.
IntegralLattice load_lattice(const std::string& spec_or_path);

// {"n": n, "c": "p/q", "gram": [[...]]}
FujikiData fujiki_from_json(const json& j);
json fujiki_to_json(const FujikiData& fd);

// {"re": [...], "im": [...]}
PeriodPoint period_from_json(const json& j);
json period_to_json(const PeriodPoint& p);
json numeric_period_to_json(const NumericPeriodPoint& p);
json conic_point_to_json(const ConicPoint& p);
json path_report_to_json(const PathReport& r);

json series_to_json(const IntegerSeries& s);

// {"dim": n, "catalog": "sphere", "params": {"r": 1}}
// {"dim": n, "poly_entries": [[{"2,0": "1", ...}, ...], ...]}
// {"dim": 2m, "kahler_potential": {...}}
// optional "h", "derivatives": "analytic" | "central_difference",
// "domain": {"lo": [...], "hi": [...]}
riemann::MetricChart chart_from_json(const json& j);
riemann::Polynomial polynomial_from_json(const json& j, int nvars);

// {"points": [[...], ...]} (polyline) or {"latitude": theta}
riemann::Path path_from_json(const json& j);

json decomposition_to_json(const DecompositionEnumeration& d);
json hodge_diamond_to_json(const HodgeDiamond& d);

}  // namespace hk::io

#endif  // HKGEOM_IO_HPP
