#include "hkgeom/lattice.hpp"

#include <array>
#include <string>
#include <utility>

namespace hk {

IntegralLattice::IntegralLattice(IntMatrix gram, bool nondegenerate) : gram_(std::move(gram)) {
  if (gram_.rows() == 0) throw RejectedInput("lattice: rank must be positive");
  if (!gram_.is_square()) throw RejectedInput("lattice: Gram matrix is not square");
  if (!gram_.is_symmetric()) throw RejectedInput("lattice: Gram matrix is not symmetric");
  if (nondegenerate && determinant() == 0)
    throw RejectedInput("lattice: declared nondegenerate but det(Gram) = 0");
}

Integer IntegralLattice::evaluate(std::span<const Integer> v, std::span<const Integer> w) const {
  if (v.size() != rank() || w.size() != rank())
    throw RejectedInput("evaluate: vectors must have length " + std::to_string(rank()));
  Integer s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (v[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < rank(); ++j) row += gram_(i, j) * w[j];
    s += v[i] * row;
  }
  return s;
}

Rational IntegralLattice::evaluate(std::span<const Rational> v, std::span<const Rational> w) const {
  if (v.size() != rank() || w.size() != rank())
    throw RejectedInput("evaluate: vectors must have length " + std::to_string(rank()));
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (v[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < rank(); ++j)
      if (gram_(i, j) != 0 && w[j] != 0) row += gram_(i, j) * w[j];
    s += v[i] * row;
  }
  return s;
}

Integer IntegralLattice::determinant() const {
  Rational det = linalg::determinant(rational_gram());
  return det.get_num();
}

bool IntegralLattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (gram_(i, i) % 2 != 0) return false;
  return true;
}

Signature signature(const IntegralLattice& lattice) { return linalg::inertia(lattice.rational_gram()); }

IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b) {
  const std::size_t n = a.rank() + b.rank();
  IntMatrix g(n, n, Integer(0));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) g(a.rank() + i, a.rank() + j) = b.gram()(i, j);
  return IntegralLattice(std::move(g));
}

IntegralLattice rescale(const IntegralLattice& lattice, const Integer& factor) {
  if (factor == 0) throw RejectedInput("rescale: factor must be nonzero");
  IntMatrix g = lattice.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= factor;
  return IntegralLattice(std::move(g));
}

IntegralLattice extend_by_rank_one(const IntegralLattice& lattice, const Integer& square) {
  return direct_sum(lattice, IntegralLattice(IntMatrix{{square}}));
}

IntegralLattice diagonal_lattice(std::span<const Integer> entries) {
  IntMatrix g(entries.size(), entries.size(), Integer(0));
  for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return IntegralLattice(std::move(g));
}

namespace {

IntegralLattice hyperbolic_plane() { return IntegralLattice(IntMatrix{{0, 1}, {1, 0}}); }

// Cartan matrix of E8 in Bourbaki numbering (node 2 attached to node 4),
// negated. Even, unimodular, negative definite.
IntegralLattice e8_minus() {
  constexpr std::array<std::pair<int, int>, 7> edges{{{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}}};
  IntMatrix g(8, 8, Integer(0));
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  for (auto [a, b] : edges) {
    g(a - 1, b - 1) = 1;
    g(b - 1, a - 1) = 1;
  }
  IntegralLattice lattice(std::move(g), true);
  if (signature(lattice) != Signature{0, 8, 0} || lattice.determinant() != 1 || !lattice.is_even())
    throw InconsistentData("E8_minus: constructed Gram failed its self-check");
  return lattice;
}

}  // namespace

IntegralLattice standard_lattice(std::string_view name) {
  if (name == "U") return hyperbolic_plane();
  if (name == "E8_minus" || name == "E8(-1)") return e8_minus();
  if (name == "K3") {
    auto u = hyperbolic_plane();
    auto e8 = e8_minus();
    return direct_sum(direct_sum(direct_sum(u, u), u), direct_sum(e8, e8));
  }
  throw RejectedInput("unknown standard lattice '" + std::string(name) + "' (expected U, E8_minus or K3)");
}

IntegralLattice parse_lattice_spec(std::string_view spec) {
  if (spec.starts_with("diag:")) {
    auto entries = parse_integer_list(spec.substr(5));
    if (entries.empty()) throw RejectedInput("diag: needs at least one entry");
    return diagonal_lattice(entries);
  }
  if (spec.starts_with("name:")) return standard_lattice(spec.substr(5));
  throw RejectedInput("lattice spec must be 'diag:a,b,...' or 'name:U|E8_minus|K3'");
}

}  // namespace hk
