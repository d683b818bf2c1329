#include "hkgeom/series.hpp"

#include <algorithm>
#include <string>

namespace hk {

IntegerSeries::IntegerSeries(std::size_t truncation) : coeffs_(truncation + 1, Integer(0)) {}

IntegerSeries::IntegerSeries(std::size_t truncation, std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != truncation + 1)
    throw RejectedInput("IntegerSeries: expected " + std::to_string(truncation + 1) + " coefficients");
}

IntegerSeries IntegerSeries::one(std::size_t truncation) {
  IntegerSeries s(truncation);
  s.coeffs_[0] = 1;
  return s;
}

const Integer& IntegerSeries::coeff(std::size_t k) const {
  if (k >= coeffs_.size())
    throw RejectedInput("IntegerSeries: coefficient " + std::to_string(k) + " is past the truncation order " +
                        std::to_string(truncation()));
  return coeffs_[k];
}

IntegerSeries operator*(const IntegerSeries& a, const IntegerSeries& b) {
  const std::size_t n = std::min(a.truncation(), b.truncation());
  IntegerSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return out;
}

}  // namespace hk
