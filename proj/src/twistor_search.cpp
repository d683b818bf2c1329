#include <algorithm>
#include <cmath>
#include <optional>

#include "hkgeom/linalg.hpp"
#include "hkgeom/period.hpp"
#include "hkgeom/random.hpp"

namespace hk {
namespace {

using Plane = std::array<RatVector, 2>;

class Search {
 public:
  Search(const IntegralLattice& lattice, const PeriodPoint& start, const PeriodPoint& target,
         const PathSearchOptions& options, std::uint64_t stream)
      : lattice_(lattice), target_(target), options_(options), rng_(stream) {
    current_ = {start.re, start.im};
    target_plane_ = {target.re, target.im};
  }

  bool run() {
    if (try_direct()) return true;
    if (options_.max_steps >= 2 && try_bridge()) return true;
    return options_.max_steps >= 3 && graph_chain();
  }

  std::vector<ChainLink> take_chain() { return std::move(chain_); }

 private:
  std::optional<PositiveThreePlane> positive_plane(const RatVector& a, const RatVector& b, const RatVector& c) const {
    if (linalg::rank(linalg::stack_rows({a, b, c})) != 3) return std::nullopt;
    try {
      return PositiveThreePlane(lattice_, {a, b, c});
    } catch (const RejectedInput&) {
      return std::nullopt;
    }
  }

  RatVector random_in(const Plane& plane) {
    while (true) {
      Rational a = rng_.uniform_int(-4, 4), b = rng_.uniform_int(-4, 4);
      if (a == 0 && b == 0) continue;
      return linalg::axpy(linalg::scaled(plane[0], a), b, plane[1]);
    }
  }

  RatVector random_vector() {
    RatVector v(lattice_.rank());
    do {
      for (auto& x : v) x = rng_.uniform_int(-3, 3);
    } while (linalg::is_zero(v));
    return v;
  }

  // Component of v q-orthogonal to a positive 2-plane.
  RatVector perp(const Plane& plane, const RatVector& v) const {
    const auto& a = plane[0];
    RatVector b = linalg::axpy(plane[1], -lattice_.evaluate(plane[1], a) / lattice_.evaluate(a, a), a);
    RatVector out = linalg::axpy(v, -lattice_.evaluate(v, a) / lattice_.evaluate(a, a), a);
    return linalg::axpy(out, -lattice_.evaluate(v, b) / lattice_.evaluate(b, b), b);
  }

  JunctionPoint junction(const Plane& raw) const {
    const Plane plane{primitive(raw[0]), primitive(raw[1])};
    JunctionPoint j{plane, std::nullopt, {}};
    const auto& a = plane[0];
    RatVector b = primitive(linalg::axpy(plane[1], -lattice_.evaluate(plane[1], a) / lattice_.evaluate(a, a), a));
    const Rational ratio = lattice_.evaluate(a, a) / lattice_.evaluate(b, b);
    if (auto r = rational_sqrt(ratio)) {
      PeriodPoint p{a, linalg::scaled(b, *r)};
      j.numeric = to_numeric(p);
      j.exact = std::move(p);
      return j;
    }
    const double scale = std::sqrt(ratio.get_d());
    for (std::size_t i = 0; i < a.size(); ++i) {
      j.numeric.re.push_back(a[i].get_d());
      j.numeric.im.push_back(scale * b[i].get_d());
    }
    return j;
  }

  void finish_with(PositiveThreePlane plane) {
    chain_.push_back({std::move(plane), JunctionPoint{target_plane_, target_, to_numeric(target_)}});
  }

  // One conic through both the current plane and the target plane.
  bool try_direct() {
    if (chain_.size() + 1 > options_.max_steps) return false;
    const auto& [c0, c1] = current_;
    auto r = linalg::rank(linalg::stack_rows({c0, c1, target_plane_[0], target_plane_[1]}));
    if (r == 2) {
      for (std::size_t t = 0; t < options_.trials_per_step; ++t)
        if (auto w = positive_plane(c0, c1, random_vector())) {
          finish_with(std::move(*w));
          return true;
        }
      return false;
    }
    if (r != 3) return false;
    const auto& extra = linalg::in_span({c0, c1}, target_plane_[0]) ? target_plane_[1] : target_plane_[0];
    if (auto w = positive_plane(c0, c1, extra)) {
      finish_with(std::move(*w));
      return true;
    }
    return false;
  }

  // Two conics meeting in span(u, u') with u in the current plane and u' in
  // the target plane.
  bool try_bridge() {
    for (std::size_t t = 0; t < options_.trials_per_step; ++t) {
      RatVector u = random_in(current_);
      RatVector v = random_in(target_plane_);
      auto first = positive_plane(current_[0], current_[1], v);
      if (!first) continue;
      auto second = positive_plane(target_plane_[0], target_plane_[1], u);
      if (!second) continue;
      chain_.push_back({std::move(*first), junction({u, v})});
      finish_with(std::move(*second));
      return true;
    }
    return false;
  }

  // Some w with span(plane, w) a positive 3-plane: random first, then a
  // positive vector of an orthogonal basis of the complement.
  std::optional<RatVector> positive_complement(const Plane& plane) {
    for (std::size_t t = 0; t < options_.trials_per_step; ++t) {
      RatVector p = primitive(perp(plane, random_vector()));
      if (lattice_.evaluate(p, p) > 0) return p;
    }
    const RatMatrix g = lattice_.rational_gram();
    RatMatrix rows(2, lattice_.rank());
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t j = 0; j < lattice_.rank(); ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < lattice_.rank(); ++i) s += plane[r][i] * g(i, j);
        rows(r, j) = s;
      }
    std::vector<RatVector> basis = linalg::nullspace(rows);
    while (!basis.empty()) {
      for (const auto& v : basis)
        if (lattice_.evaluate(v, v) > 0) return primitive(v);
      auto pivot = std::find_if(basis.begin(), basis.end(), [&](const RatVector& v) { return lattice_.evaluate(v, v) != 0; });
      if (pivot == basis.end()) {
        for (std::size_t i = 0; i < basis.size(); ++i)
          for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Rational b = lattice_.evaluate(basis[i], basis[j]);
            if (b != 0) return primitive(b > 0 ? linalg::add(basis[i], basis[j]) : linalg::axpy(basis[i], -1, basis[j]));
          }
        return std::nullopt;
      }
      RatVector v = *pivot;
      basis.erase(pivot);
      const Rational qv = lattice_.evaluate(v, v);
      for (auto& u : basis) u = linalg::axpy(u, -lattice_.evaluate(u, v) / qv, v);
    }
    return std::nullopt;
  }

  // Positive multiple with coprime integer entries.
  static RatVector primitive(RatVector v) {
    Integer l = 1, g = 0;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (auto& x : v) {
      x *= l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    if (g != 0)
      for (auto& x : v) x /= g;
    return v;
  }

  // Three conics. With e1, e2, e3 a q-orthogonal basis of W = P_cur + w and
  // P_cur = span(e1, e2), the target 3-plane is the graph of a contraction
  // over W; replacing e3, e1, e2 by their images one at a time keeps every
  // intermediate 3-plane positive and consecutive ones share a 2-plane.
  bool graph_chain() {
    auto w = positive_complement(current_);
    auto w_t = positive_complement(target_plane_);
    if (!w || !w_t) return false;
    const RatVector& e1 = current_[0];
    RatVector e2 = primitive(linalg::axpy(current_[1], -lattice_.evaluate(current_[1], e1) / lattice_.evaluate(e1, e1), e1));
    const std::array<RatVector, 3> e{e1, e2, *w};
    const std::array<RatVector, 3> t{target_plane_[0], target_plane_[1], *w_t};

    // M(i, j) = coefficient of e_j in the projection of t_i onto W.
    RatMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = lattice_.evaluate(t[i], e[j]) / lattice_.evaluate(e[j], e[j]);
    // s_j = sum_i (M^{-1})(j, i) t_i projects to e_j.
    RatMatrix aug(3, 6);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) aug(i, j) = m(i, j);
      aug(i, 3 + i) = 1;
    }
    if (!invert3(aug)) return false;
    std::array<RatVector, 3> s;
    for (std::size_t j = 0; j < 3; ++j) {
      RatVector v(lattice_.rank());
      for (std::size_t i = 0; i < 3; ++i) v = linalg::axpy(v, aug(j, 3 + i), t[i]);
      s[j] = primitive(std::move(v));
    }

    auto wa = positive_plane(e[0], e[1], s[2]);
    auto wb = positive_plane(s[0], e[1], s[2]);
    auto wc = positive_plane(s[0], s[1], s[2]);
    if (!wa || !wb || !wc) throw InconsistentData("twistor_path_search: graph construction lost positivity");
    std::vector<ChainLink> links;
    links.push_back({std::move(*wa), junction({e[1], s[2]})});
    links.push_back({std::move(*wb), junction({s[0], s[2]})});
    links.push_back({std::move(*wc), JunctionPoint{target_plane_, target_, to_numeric(target_)}});
    compact(links);
    if (chain_.size() + links.size() > options_.max_steps) return false;
    for (auto& l : links) chain_.push_back(std::move(l));
    return true;
  }

  // Gauss-Jordan on the left 3x3 block of a 3x6 matrix.
  static bool invert3(RatMatrix& a) {
    for (std::size_t c = 0; c < 3; ++c) {
      std::size_t p = c;
      while (p < 3 && a(p, c) == 0) ++p;
      if (p == 3) return false;
      if (p != c)
        for (std::size_t j = 0; j < 6; ++j) std::swap(a(p, j), a(c, j));
      Rational inv = 1 / a(c, c);
      for (std::size_t j = 0; j < 6; ++j) a(c, j) *= inv;
      for (std::size_t r = 0; r < 3; ++r) {
        if (r == c || a(r, c) == 0) continue;
        Rational f = a(r, c);
        for (std::size_t j = 0; j < 6; ++j) a(r, j) -= f * a(c, j);
      }
    }
    return true;
  }

  // Consecutive links on the same conic collapse into one.
  void compact(std::vector<ChainLink>& links) const {
    for (std::size_t k = 0; k + 1 < links.size();) {
      const auto& a = links[k].conic.basis();
      const auto& b = links[k + 1].conic.basis();
      if (linalg::rank(linalg::stack_rows({a[0], a[1], a[2], b[0], b[1], b[2]})) == 3)
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(k));
      else
        ++k;
    }
  }

  const IntegralLattice& lattice_;
  const PeriodPoint& target_;
  const PathSearchOptions& options_;
  Rng rng_;
  Plane current_;
  Plane target_plane_;
  std::vector<ChainLink> chain_;
};

}  // namespace

PathReport twistor_path_search(const IntegralLattice& lattice, const PeriodPoint& p, const PeriodPoint& target,
                               const PathSearchOptions& options) {
  if (!in_period_domain(lattice, p) || !in_period_domain(lattice, target))
    throw RejectedInput("twistor_path_search: both points must lie in the period domain");
  if (signature(lattice).positive != 3)
    throw RejectedInput("twistor_path_search: the lattice must have exactly three positive squares");

  PathReport report;
  if (projectively_equal(p, target)) {
    report.status = SearchStatus::success;
    report.verification = verify_twistor_chain(lattice, p, target, report.chain, options.tol);
    return report;
  }

  std::optional<std::vector<ChainLink>> best;
  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
  for (std::size_t r = 0; r < restarts; ++r) {
    const std::uint64_t stream = options.seed * 0x9E3779B97F4A7C15ULL + r;
    Search search(lattice, p, target, options, stream);
    bool ok = search.run();
    auto chain = search.take_chain();
    if (ok) {
      if (!best || chain.size() < best->size()) {
        best = std::move(chain);
        report.restart_used = r;
      }
      if (best->size() == 1) break;
    }
  }

  if (!best) {
    report.status = SearchStatus::inconclusive;
    return report;
  }
  report.status = SearchStatus::success;
  report.chain = std::move(*best);
  report.verification = verify_twistor_chain(lattice, p, target, report.chain, options.tol);
  if (!report.verification.ok)
    throw InconsistentData("twistor_path_search: produced chain failed verification: " +
                           report.verification.failures.front());
  return report;
}

}  // namespace hk
