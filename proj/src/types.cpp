#include "hkgeom/types.hpp"

#include <cctype>
#include <string>

namespace hk {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer integer_from(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

template <typename T, typename F>
std::vector<T> parse_list(std::string_view text, F parse_one) {
  std::vector<T> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_one(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  if (!is_integer_literal(s)) throw RejectedInput("not an integer: '" + std::string(text) + "'");
  return integer_from(s);
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    // Plain decimals such as "0.25" are accepted and converted exactly.
    auto dot = s.find('.');
    if (dot != std::string_view::npos) {
      auto whole = s.substr(0, dot);
      auto frac = s.substr(dot + 1);
      bool negative = !whole.empty() && whole.front() == '-';
      std::string digits = std::string(negative ? whole.substr(1) : whole) + std::string(frac);
      if (digits.empty() || !is_integer_literal(digits) || digits.front() == '-' || digits.front() == '+')
        throw RejectedInput("not a rational: '" + std::string(text) + "'");
      Integer num(digits, 10);
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      Rational r(negative ? Integer(-num) : num, den);
      r.canonicalize();
      return r;
    }
    return Rational(parse_integer(s));
  }
  auto num = trim(s.substr(0, slash));
  auto den = trim(s.substr(slash + 1));
  if (!is_integer_literal(num) || !is_integer_literal(den))
    throw RejectedInput("not a rational: '" + std::string(text) + "'");
  Integer d = integer_from(den);
  if (d == 0) throw RejectedInput("zero denominator: '" + std::string(text) + "'");
  Rational r(integer_from(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str(10);
  return r.get_num().get_str(10) + "/" + r.get_den().get_str(10);
}

RatVector parse_rational_list(std::string_view text) {
  return parse_list<Rational>(text, [](std::string_view s) { return parse_rational(s); });
}

IntVector parse_integer_list(std::string_view text) {
  return parse_list<Integer>(text, [](std::string_view s) { return parse_integer(s); });
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(std::span<const Integer> v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& z : v) r.emplace_back(z);
  return r;
}

}  // namespace hk
