#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairrank/rational.hpp"
#include "fairrank/ranking.hpp"
#include "fairrank/tournament.hpp"

namespace fairrank {

enum class SearchSpace { kPermutations, kWeakOrders, kClosedForm };

std::string_view to_string(SearchSpace space);

struct MinBackwardResult {
  std::size_t count = 0;
  Rational fraction;
  Ranking witness = Ranking::constant(0);
  SearchSpace search_space = SearchSpace::kClosedForm;
  // Set for kLin: only integer level values 1..k are tried, so the count is
  // a candidate value that the true class minimum cannot exceed.
  bool lower_bound_candidate = false;
};

inline constexpr std::size_t kMaxPermutationSearch = 10;
inline constexpr std::size_t kMaxWeakOrderSearch = 6;

// Exact minimum over all vertex orderings by depth-first branch and bound.
// The witness is the lexicographically least optimal order (listed from the
// top rank down) and ranks the k-th listed vertex n-k+1. n <= 10.
MinBackwardResult min_backward_injective(const Tournament& t);

// Arcs x -> y with d(x) < d(y); witness is the out-degree ranking.
MinBackwardResult min_backward_copeland_closed_form(const Tournament& t);

// Exhaustive over weak orders, i.e. level vectors in {1..k}^n hitting every
// level, filtered by is_fair(c). The witness is the lexicographically least
// optimal level vector. n <= 6. Throws kEmptyClass when nothing passes.
MinBackwardResult min_backward_fair(const Tournament& t, FairnessClass c);

// Number of weak orders (ordered set partitions) of n items.
std::uint64_t fubini_number(std::size_t n);

// l(3l+1) / (2(l+1)(2l+1)), the sCop minimum fraction on the composite
// family.
Rational composite_fraction(std::uint64_t l);
Integer composite_min_backward(std::uint64_t l);  // l^2 (2l+1) (3l+1)
Integer composite_vertex_count(std::uint64_t l);  // (2l+1)^2
Integer composite_arc_count(std::uint64_t l);     // 2l(l+1)(2l+1)^2

// Upper bound on the sCop backward fraction for n vertices:
// (3l-2)/(4l-2) for n = 2l, (3l+1)/(4l+2) for n = 2l+1. n >= 2.
Rational copeland_bound(const Integer& n);

struct EmnRow {
  std::uint64_t l = 0;
  Integer n;
  Integer edges;
  Integer min_backward;
  Rational fraction;
  Rational bound;
  bool materialized = false;
};

struct EmnReport {
  std::string family;
  std::vector<EmnRow> rows;
  Rational limit;
  bool strictly_increasing = true;
  bool all_below_limit = true;
};

// Closed-form sweep over l = 1..l_max. Rows with l <= materialize_up_to
// also build the tournament and confirm the closed-form count and the
// out-degree formula; a mismatch throws kVerificationFailed. `jobs` > 1
// materialises rows on worker threads; row order is unaffected.
EmnReport emn_sweep_composite(std::uint64_t l_max,
                              std::uint64_t materialize_up_to,
                              std::size_t jobs = 1,
                              std::size_t vertex_cap = kDefaultVertexCap);

enum class SampleMode { kExhaustive, kRandom };

struct BoundCheckReport {
  std::size_t n = 0;
  SampleMode mode = SampleMode::kExhaustive;
  std::size_t tested = 0;
  Rational bound;
  Rational max_fraction;
  std::optional<Tournament> witness;
  std::size_t violations = 0;
  bool holds() const noexcept { return violations == 0; }
};

// Every tested tournament has closed-form sCop fraction < 3/4 and at most
// copeland_bound(n). Exhaustive mode needs n <= 5.
BoundCheckReport verify_copeland_upper_bound(std::size_t n, SampleMode mode,
                                             std::size_t samples = 0,
                                             std::uint64_t seed = 0);

// min injective backward count <= floor(|E|/2) on every tested tournament.
// Here bound is floor(|E|/2)/|E| and max_fraction the largest observed
// min/|E|. n <= 7; exhaustive mode n <= 6.
BoundCheckReport reversal_bound_check(std::size_t n, SampleMode mode,
                                      std::size_t samples = 0,
                                      std::uint64_t seed = 0);

std::string to_json(const MinBackwardResult& result);
std::string to_json(const EmnReport& report);
std::string to_csv(const EmnReport& report);
std::string to_json(const BoundCheckReport& report);

}  // namespace fairrank
