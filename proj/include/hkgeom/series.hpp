#ifndef HKGEOM_SERIES_HPP
#define HKGEOM_SERIES_HPP

#include <cstddef>
#include <vector>

#include "hkgeom/types.hpp"

namespace hk {

// Power series in q with integer coefficients, known through q^N. Products
// truncate to the smaller order; nothing ever extends N.
class IntegerSeries {
 public:
  explicit IntegerSeries(std::size_t truncation);
  IntegerSeries(std::size_t truncation, std::vector<Integer> coeffs);

  static IntegerSeries one(std::size_t truncation);

  std::size_t truncation() const noexcept { return coeffs_.size() - 1; }
  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }

  // Throws RejectedInput past the truncation order.
  const Integer& coeff(std::size_t k) const;

  friend IntegerSeries operator*(const IntegerSeries& a, const IntegerSeries& b);
  friend bool operator==(const IntegerSeries&, const IntegerSeries&) = default;

 private:
  std::vector<Integer> coeffs_;
};

}  // namespace hk

#endif  // HKGEOM_SERIES_HPP
