#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fairrank/rational.hpp"
#include "fairrank/tournament.hpp"

namespace fairrank {

inline constexpr double kDefaultEpsilon = 1e-9;

enum class RankMode { kExact, kFloat };

// Vertex -> numeric rank. One mode per ranking: exact rationals (comparisons
// are exact, epsilon is 0) or doubles compared with tolerance epsilon.
class Ranking {
 public:
  static Ranking exact(std::vector<Rational> values);
  static Ranking exact_integers(std::span<const long long> values);
  static Ranking floating(std::vector<double> values,
                          double epsilon = kDefaultEpsilon);
  // Every vertex gets the same exact rank.
  static Ranking constant(std::size_t n, const Rational& value = 0);

  std::size_t size() const noexcept;
  RankMode mode() const noexcept {
    return std::holds_alternative<std::vector<Rational>>(values_)
               ? RankMode::kExact
               : RankMode::kFloat;
  }
  bool is_exact() const noexcept { return mode() == RankMode::kExact; }
  double epsilon() const noexcept { return epsilon_; }

  // Throw kDomainMismatch when called in the wrong mode.
  const std::vector<Rational>& exact_values() const;
  const std::vector<double>& float_values() const;

  double as_double(Vertex x) const;
  std::string value_string(Vertex x) const;

  // Values arranged by vertex in descending rank, ties by ascending label.
  std::vector<Vertex> order_descending() const;

 private:
  Ranking(std::variant<std::vector<Rational>, std::vector<double>> values,
          double epsilon)
      : values_(std::move(values)), epsilon_(epsilon) {}

  std::variant<std::vector<Rational>, std::vector<double>> values_;
  double epsilon_ = 0.0;
};

enum class FairnessClass { kNsCop, kSCop, kCop, kWeak, kSpec, kLin, kInj };

inline constexpr FairnessClass kAllFairnessClasses[] = {
    FairnessClass::kNsCop, FairnessClass::kSCop, FairnessClass::kCop,
    FairnessClass::kWeak,  FairnessClass::kSpec, FairnessClass::kLin,
    FairnessClass::kInj};

std::string_view to_string(FairnessClass c);
// Case-insensitive: nscop, scop, cop, weak, spec, lin, inj.
std::optional<FairnessClass> parse_fairness_class(std::string_view text);

// Certificate of unfairness. For a non-positive rank under kLin, x == y is
// the offending vertex.
struct Violation {
  Vertex x = 0;
  Vertex y = 0;
  std::string rule;
};

struct FairnessVerdict {
  bool fair = true;
  std::optional<Violation> violation;

  explicit operator bool() const noexcept { return fair; }
};

struct BackwardReport {
  std::vector<Arc> backward;
  std::size_t total = 0;
  Rational fraction;
};

// Arcs x -> y with r(x) < r(y). Throws kDomainMismatch on size mismatch.
BackwardReport backward_arcs(const Tournament& t, const Ranking& r);

// Fails with the lexicographically least violating ordered pair.
FairnessVerdict is_fair(const Tournament& t, const Ranking& r,
                        FairnessClass c);

// x <=_r y: some injection f: x+ -> y+ with r(z) <= r(f(z)).
bool spectral_leq(const Tournament& t, const Ranking& r, Vertex x, Vertex y);
bool spectral_strict_less(const Tournament& t, const Ranking& r, Vertex x,
                          Vertex y);

// S(x) = sum of r over x+, in r's mode.
Ranking linear_sums(const Tournament& t, const Ranking& r);

// r = out-degree, exact.
Ranking copeland_ranking(const Tournament& t);

// One "vertex value" line per vertex, 1..n each exactly once. Values are
// integers or p/q (exact mode) or decimals (float mode; any decimal value
// switches the whole ranking to float mode).
Ranking parse_ranking(std::string_view text);
std::string serialize_ranking(const Ranking& r);

std::string to_json(const BackwardReport& report);

}  // namespace fairrank
