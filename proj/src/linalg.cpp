#include "hkgeom/linalg.hpp"

#include <algorithm>
#include <utility>

namespace hk {

Signature operator+(const Signature& a, const Signature& b) {
  return {a.positive + b.positive, a.negative + b.negative, a.zero + b.zero};
}

namespace linalg {
namespace {

void erase_index(std::vector<std::size_t>& idx, std::size_t value) {
  idx.erase(std::find(idx.begin(), idx.end(), value));
}

// Reduced row-echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Signature inertia(const RatMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw RejectedInput("inertia: matrix is not symmetric");
  RatMatrix a = symmetric;
  std::vector<std::size_t> idx(a.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;

  Signature s;
  while (!idx.empty()) {
    auto diag = std::find_if(idx.begin(), idx.end(), [&](std::size_t i) { return a(i, i) != 0; });
    if (diag != idx.end()) {
      std::size_t p = *diag;
      const Rational d = a(p, p);
      (sgn(d) > 0 ? s.positive : s.negative) += 1;
      erase_index(idx, p);
      for (std::size_t i : idx) {
        if (a(i, p) == 0) continue;
        Rational f = a(i, p) / d;
        for (std::size_t j : idx) a(i, j) -= f * a(p, j);
      }
      continue;
    }

    // Every remaining diagonal entry vanishes.
    std::size_t p = 0, q = 0;
    bool found = false;
    for (std::size_t ii = 0; ii < idx.size() && !found; ++ii)
      for (std::size_t jj = ii + 1; jj < idx.size() && !found; ++jj)
        if (a(idx[ii], idx[jj]) != 0) {
          p = idx[ii];
          q = idx[jj];
          found = true;
        }
    if (!found) {
      s.zero += idx.size();
      break;
    }
    const Rational b = a(p, q);
    s.positive += 1;
    s.negative += 1;
    erase_index(idx, p);
    erase_index(idx, q);
    // Schur complement of the block [[0,b],[b,0]].
    for (std::size_t i : idx)
      for (std::size_t j : idx) a(i, j) -= (a(i, p) * a(q, j) + a(i, q) * a(p, j)) / b;
  }
  return s;
}

Rational determinant(RatMatrix m) {
  if (!m.is_square()) throw RejectedInput("determinant: matrix is not square");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m(p, col) == 0) ++p;
    if (p == n) return 0;
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      Rational f = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

std::vector<RatVector> nullspace(RatMatrix m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rational> leading_minors(const RatMatrix& m) {
  if (!m.is_square()) throw RejectedInput("leading_minors: matrix is not square");
  std::vector<Rational> minors;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    RatMatrix block(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) block(i, j) = m(i, j);
    minors.push_back(determinant(std::move(block)));
  }
  return minors;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw RejectedInput("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational bilinear(const RatMatrix& gram, std::span<const Rational> v, std::span<const Rational> w) {
  if (v.size() != gram.rows() || w.size() != gram.cols())
    throw RejectedInput("bilinear: vector length does not match the form");
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w[j] != 0) row += gram(i, j) * w[j];
    s += v[i] * row;
  }
  return s;
}

RatVector add(std::span<const Rational> a, std::span<const Rational> b) {
  return axpy(a, Rational(1), b);
}

RatVector scaled(std::span<const Rational> a, const Rational& s) {
  RatVector out(a.begin(), a.end());
  for (auto& x : out) x *= s;
  return out;
}

RatVector axpy(std::span<const Rational> a, const Rational& s, std::span<const Rational> b) {
  if (a.size() != b.size()) throw RejectedInput("axpy: dimension mismatch");
  RatVector out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * b[i];
  return out;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

RatMatrix gram_of(const RatMatrix& gram, const std::vector<RatVector>& vectors) {
  RatMatrix g(vectors.size(), vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i; j < vectors.size(); ++j) {
      g(i, j) = bilinear(gram, vectors[i], vectors[j]);
      g(j, i) = g(i, j);
    }
  return g;
}

RatMatrix stack_rows(const std::vector<RatVector>& vectors) {
  if (vectors.empty()) return {};
  RatMatrix m(vectors.size(), vectors.front().size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != m.cols()) throw RejectedInput("stack_rows: ragged vectors");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = vectors[i][j];
  }
  return m;
}

bool in_span(const std::vector<RatVector>& basis, std::span<const Rational> v) {
  if (basis.empty()) return is_zero(v);
  auto extended = basis;
  extended.emplace_back(v.begin(), v.end());
  return rank(stack_rows(basis)) == rank(stack_rows(extended));
}

}  // namespace linalg
}  // namespace hk
