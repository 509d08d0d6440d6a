#pragma once

#include "fairrank/rational.hpp"
#include "json.hpp"

namespace fairrank::detail {

// Integers that overflow int64 are emitted as decimal strings.
inline nlohmann::json integer_json(const Integer& value) {
  if (auto v = to_int64(value)) return *v;
  return value.str();
}

inline nlohmann::json fraction_json(const Rational& q) {
  return {{"num", integer_json(numerator_of(q))}, {"den", integer_json(denominator_of(q))}};
}

}  // namespace fairrank::detail
