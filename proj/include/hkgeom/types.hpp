#ifndef HKGEOM_TYPES_HPP
#define HKGEOM_TYPES_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hk {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Failure taxonomy shared by every module. The C API and the CLI map these
// one-to-one onto status and exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's precondition.
class RejectedInput : public Error {
 public:
  using Error::Error;
};

// Inputs were individually well-formed but mutually contradictory, or an
// internal cross-check failed.
class InconsistentData : public Error {
 public:
  using Error::Error;
};

// Dense row-major matrix. Used with Integer and Rational entries for the
// exact modules; the Riemannian code works on Eigen types instead.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw RejectedInput("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

// Rationals travel as "p/q" (or "p") strings everywhere outside the library.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Comma-separated lists, e.g. "1,0,-1/2".
RatVector parse_rational_list(std::string_view text);
IntVector parse_integer_list(std::string_view text);

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(std::span<const Integer> v);

}  // namespace hk

#endif  // HKGEOM_TYPES_HPP
