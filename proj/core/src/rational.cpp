#include "fairrank/rational.hpp"

#include <cctype>
#include <cstdio>
#include <limits>

namespace fairrank {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Integer value = 0;
  for (char c : s) value = value * 10 + (c - '0');
  return negative ? Integer(-value) : value;
}

}  // namespace

std::string format_rational(const Rational& q, bool always_fraction) {
  const Integer den = denominator_of(q);
  if (!always_fraction && den == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + den.str();
}

std::string format_fraction_with_decimal(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.6f)", to_double(q));
  return format_rational(q) + buf;
}

std::optional<Rational> parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(text)) return std::nullopt;
    return Rational(parse_integer(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) return std::nullopt;
  const Integer d = parse_integer(den);
  if (d == 0) return std::nullopt;
  return Rational(parse_integer(num), d);
}

std::optional<std::int64_t> to_int64(const Integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return value.convert_to<std::int64_t>();
}

}  // namespace fairrank
