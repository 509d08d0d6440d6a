#include "fairrank/ranking.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

#include "json.hpp"

#include "fairrank/error.hpp"
#include "fairrank/predicates.hpp"
#include "json_util.hpp"

namespace fairrank {

Ranking Ranking::exact(std::vector<Rational> values) {
  return Ranking(std::move(values), 0.0);
}

Ranking Ranking::exact_integers(std::span<const long long> values) {
  std::vector<Rational> v;
  v.reserve(values.size());
  for (long long x : values) v.emplace_back(x);
  return exact(std::move(v));
}

Ranking Ranking::floating(std::vector<double> values, double epsilon) {
  if (!(epsilon >= 0.0)) {
    throw Error(ErrorCode::kDomainMismatch, "ranking tolerance must be >= 0");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kDomainMismatch, "non-finite rank");
  }
  return Ranking(std::move(values), epsilon);
}

Ranking Ranking::constant(std::size_t n, const Rational& value) {
  return exact(std::vector<Rational>(n, value));
}

std::size_t Ranking::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, values_);
}

const std::vector<Rational>& Ranking::exact_values() const {
  if (!is_exact()) throw Error(ErrorCode::kDomainMismatch, "ranking is in float mode");
  return std::get<std::vector<Rational>>(values_);
}

const std::vector<double>& Ranking::float_values() const {
  if (is_exact()) throw Error(ErrorCode::kDomainMismatch, "ranking is in exact mode");
  return std::get<std::vector<double>>(values_);
}

double Ranking::as_double(Vertex x) const {
  if (x < 1 || x > size()) throw Error(ErrorCode::kUnknownVertex, std::to_string(x));
  return is_exact() ? to_double(exact_values()[x - 1]) : float_values()[x - 1];
}

std::string Ranking::value_string(Vertex x) const {
  if (x < 1 || x > size()) throw Error(ErrorCode::kUnknownVertex, std::to_string(x));
  if (is_exact()) return format_rational(exact_values()[x - 1], false);
  char buf[40];
  const double v = float_values()[x - 1];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep float mode on re-parse.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::vector<Vertex> Ranking::order_descending() const {
  std::vector<Vertex> order(size());
  std::iota(order.begin(), order.end(), Vertex{1});
  if (is_exact()) {
    const auto& v = exact_values();
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return v[b - 1] < v[a - 1]; });
  } else {
    const auto& v = float_values();
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return v[b - 1] < v[a - 1]; });
  }
  return order;
}

std::string_view to_string(FairnessClass c) {
  switch (c) {
    case FairnessClass::kNsCop: return "nsCop";
    case FairnessClass::kSCop: return "sCop";
    case FairnessClass::kCop: return "Cop";
    case FairnessClass::kWeak: return "Weak";
    case FairnessClass::kSpec: return "Spec";
    case FairnessClass::kLin: return "Lin";
    case FairnessClass::kInj: return "Inj";
  }
  return "?";
}

std::optional<FairnessClass> parse_fairness_class(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (FairnessClass c : kAllFairnessClasses) {
    std::string name(to_string(c));
    for (char& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (name == lower) return c;
  }
  return std::nullopt;
}

namespace {

void check_domain(const Tournament& t, const Ranking& r) {
  if (t.size() != r.size()) {
    throw Error(ErrorCode::kDomainMismatch, "ranking has " + std::to_string(r.size()) +
                                                " values for " + std::to_string(t.size()) +
                                                " vertices");
  }
}

// Calls fn(values_span, order) in the ranking's mode.
template <class Fn>
decltype(auto) dispatch(const Ranking& r, Fn&& fn) {
  if (r.is_exact()) {
    return fn(std::span<const Rational>(r.exact_values()), ExactOrder{});
  }
  return fn(std::span<const double>(r.float_values()), ToleranceOrder{r.epsilon()});
}

}  // namespace

BackwardReport backward_arcs(const Tournament& t, const Ranking& r) {
  check_domain(t, r);
  BackwardReport report;
  report.total = t.arc_count();
  dispatch(r, [&](auto values, const auto& order) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (t.beats(i, j) && order.less(values[i], values[j])) {
          report.backward.push_back({i + 1, j + 1});
        }
      }
    }
  });
  report.fraction = report.total == 0
                        ? Rational(0)
                        : Rational(Integer(report.backward.size()), Integer(report.total));
  return report;
}

FairnessVerdict is_fair(const Tournament& t, const Ranking& r, FairnessClass c) {
  check_domain(t, r);
  auto violation = dispatch(
      r, [&](auto values, const auto& order) { return find_violation(t, values, c, order); });
  return FairnessVerdict{!violation.has_value(), std::move(violation)};
}

bool spectral_leq(const Tournament& t, const Ranking& r, Vertex x, Vertex y) {
  check_domain(t, r);
  if (x < 1 || x > t.size()) throw Error(ErrorCode::kUnknownVertex, std::to_string(x));
  if (y < 1 || y > t.size()) throw Error(ErrorCode::kUnknownVertex, std::to_string(y));
  return dispatch(r, [&](auto values, const auto& order) {
    using T = typename decltype(values)::value_type;
    std::vector<T> a, b;
    for (std::size_t z = 0; z < t.size(); ++z) {
      if (t.beats(x - 1, z)) a.push_back(values[z]);
      if (t.beats(y - 1, z)) b.push_back(values[z]);
    }
    return sorted_dominance(std::move(a), std::move(b), order);
  });
}

bool spectral_strict_less(const Tournament& t, const Ranking& r, Vertex x, Vertex y) {
  return spectral_leq(t, r, x, y) && !spectral_leq(t, r, y, x);
}

Ranking linear_sums(const Tournament& t, const Ranking& r) {
  check_domain(t, r);
  if (r.is_exact()) {
    return Ranking::exact(out_sums(t, std::span<const Rational>(r.exact_values())));
  }
  return Ranking::floating(out_sums(t, std::span<const double>(r.float_values())),
                           r.epsilon());
}

Ranking copeland_ranking(const Tournament& t) {
  std::vector<Rational> v;
  v.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v.emplace_back(t.degree_at(i));
  return Ranking::exact(std::move(v));
}

Ranking parse_ranking(std::string_view text) {
  struct Entry {
    std::size_t vertex;
    std::string value;
  };
  std::vector<Entry> entries;
  bool any_decimal = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    std::string buf(line);
    for (char& c : buf) {
      if (c == '\t' || c == '\r') c = ' ';
    }
    const auto first = buf.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    const auto sep = buf.find(' ', first);
    const auto second = sep == std::string::npos ? sep : buf.find_first_not_of(' ', sep);
    if (second == std::string::npos) {
      throw Error(ErrorCode::kSyntaxError, "line " + std::to_string(line_no) +
                                               ": expected 'vertex value'");
    }
    const auto end = buf.find(' ', second);
    if (end != std::string::npos && buf.find_first_not_of(' ', end) != std::string::npos) {
      throw Error(ErrorCode::kSyntaxError,
                  "line " + std::to_string(line_no) + ": trailing fields");
    }
    std::size_t vertex = 0;
    const std::string_view vtext(buf.data() + first, sep - first);
    const auto [ptr, ec] = std::from_chars(vtext.data(), vtext.data() + vtext.size(), vertex);
    if (ec != std::errc() || ptr != vtext.data() + vtext.size() || vertex == 0) {
      throw Error(ErrorCode::kSyntaxError,
                  "line " + std::to_string(line_no) + ": bad vertex '" + std::string(vtext) + "'");
    }
    std::string value = buf.substr(second, end == std::string::npos ? end : end - second);
    if (value.find('/') == std::string::npos &&
        value.find_first_of(".eE") != std::string::npos) {
      any_decimal = true;
    }
    entries.push_back({vertex, std::move(value)});
  }

  const std::size_t n = entries.size();
  std::vector<int> seen(n, 0);
  for (const auto& e : entries) {
    if (e.vertex > n || seen[e.vertex - 1]++) {
      throw Error(ErrorCode::kDomainMismatch,
                  "ranking must list each of vertices 1.." + std::to_string(n) + " once");
    }
  }

  if (!any_decimal) {
    std::vector<Rational> values(n);
    for (const auto& e : entries) {
      auto q = parse_rational(e.value);
      if (!q) throw Error(ErrorCode::kSyntaxError, "bad rank '" + e.value + "'");
      values[e.vertex - 1] = *q;
    }
    return Ranking::exact(std::move(values));
  }
  std::vector<double> values(n);
  for (const auto& e : entries) {
    if (auto q = parse_rational(e.value)) {
      values[e.vertex - 1] = to_double(*q);
      continue;
    }
    char* endp = nullptr;
    const double v = std::strtod(e.value.c_str(), &endp);
    if (endp != e.value.c_str() + e.value.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::kSyntaxError, "bad rank '" + e.value + "'");
    }
    values[e.vertex - 1] = v;
  }
  return Ranking::floating(std::move(values));
}

std::string serialize_ranking(const Ranking& r) {
  std::string out;
  for (Vertex x = 1; x <= r.size(); ++x) {
    out += std::to_string(x) + " " + r.value_string(x) + "\n";
  }
  return out;
}

std::string to_json(const BackwardReport& report) {
  nlohmann::json backward = nlohmann::json::array();
  for (const Arc& a : report.backward) backward.push_back({a.from, a.to});
  nlohmann::json j;
  j["backward"] = std::move(backward);
  j["total"] = report.total;
  j["fraction"] = detail::fraction_json(report.fraction);
  return j.dump();
}

}  // namespace fairrank
