#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fairrank {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_fraction(const Integer& num, const Integer& den) {
  return Rational(num, den);
}

inline Integer numerator_of(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator_of(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// "p/q" in lowest terms; integers print without a denominator only when
// `always_fraction` is false.
std::string format_rational(const Rational& q, bool always_fraction = true);

// "p/q  (0.333333)": exact form followed by a 6-place decimal.
std::string format_fraction_with_decimal(const Rational& q);

// Accepts "p/q", "-p/q" and plain integers. Returns nullopt on malformed
// input or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

// Value if it fits into int64.
std::optional<std::int64_t> to_int64(const Integer& value);

}  // namespace fairrank
