#include "fairrank/optimize.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "fairrank/error.hpp"
#include "fairrank/predicates.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace fairrank {

std::string_view to_string(SearchSpace space) {
  switch (space) {
    case SearchSpace::kPermutations: return "permutations";
    case SearchSpace::kWeakOrders: return "weakOrders";
    case SearchSpace::kClosedForm: return "closedForm";
  }
  return "?";
}

namespace {

Rational arc_fraction(std::size_t count, std::size_t total) {
  if (total == 0) return Rational(0);
  return Rational(Integer(count), Integer(total));
}

struct PermutationSearch {
  std::size_t n = 0;
  std::vector<std::uint32_t> out_mask;
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> best_order;
  std::size_t best = 0;

  // Vertices are placed from the top down; placing v below the current
  // prefix turns every arc from v into the prefix backward.
  void search(std::uint32_t placed, std::size_t count) {
    if (count >= best) return;
    if (prefix.size() == n) {
      best = count;
      best_order = prefix;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (placed & (1U << v)) continue;
      const auto added = static_cast<std::size_t>(std::popcount(out_mask[v] & placed));
      prefix.push_back(v);
      search(placed | (1U << v), count + added);
      prefix.pop_back();
    }
  }
};

std::size_t order_cost(const std::vector<std::uint32_t>& out_mask,
                       const std::vector<std::size_t>& order) {
  std::uint32_t placed = 0;
  std::size_t cost = 0;
  for (std::size_t v : order) {
    cost += static_cast<std::size_t>(std::popcount(out_mask[v] & placed));
    placed |= 1U << v;
  }
  return cost;
}

}  // namespace

MinBackwardResult min_backward_injective(const Tournament& t) {
  const std::size_t n = t.size();
  if (n > kMaxPermutationSearch) {
    throw Error(ErrorCode::kResourceLimit, "permutation search limited to n <= " +
                                               std::to_string(kMaxPermutationSearch));
  }
  PermutationSearch s;
  s.n = n;
  s.out_mask.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (t.beats(i, j)) s.out_mask[i] |= 1U << j;
    }
  }
  // Copeland order seeds the bound; +1 keeps equally good orders reachable
  // so the lexicographically least one wins.
  std::vector<std::size_t> seed(n);
  std::iota(seed.begin(), seed.end(), 0);
  std::stable_sort(seed.begin(), seed.end(), [&](std::size_t a, std::size_t b) {
    return t.degree_at(a) > t.degree_at(b);
  });
  s.best = order_cost(s.out_mask, seed) + 1;
  s.search(0, 0);

  std::vector<long long> ranks(n);
  for (std::size_t k = 0; k < n; ++k) ranks[s.best_order[k]] = static_cast<long long>(n - k);
  MinBackwardResult result;
  result.count = s.best;
  result.fraction = arc_fraction(s.best, t.arc_count());
  result.witness = Ranking::exact_integers(ranks);
  result.search_space = SearchSpace::kPermutations;
  return result;
}

MinBackwardResult min_backward_copeland_closed_form(const Tournament& t) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t.beats(i, j) && t.degree_at(i) < t.degree_at(j)) ++count;
    }
  }
  MinBackwardResult result;
  result.count = count;
  result.fraction = arc_fraction(count, t.arc_count());
  result.witness = copeland_ranking(t);
  result.search_space = SearchSpace::kClosedForm;
  return result;
}

MinBackwardResult min_backward_fair(const Tournament& t, FairnessClass c) {
  const std::size_t n = t.size();
  if (n > kMaxWeakOrderSearch) {
    throw Error(ErrorCode::kResourceLimit, "weak-order search limited to n <= " +
                                               std::to_string(kMaxWeakOrderSearch));
  }
  // Odometer over {1..n}^n in lexicographic order.
  std::vector<long long> levels(n, 1);
  std::vector<std::size_t> hits(n + 1, 0);
  std::optional<std::vector<long long>> best_levels;
  std::size_t best = t.arc_count() + 1;
  const ExactOrder order;
  while (true) {
    std::fill(hits.begin(), hits.end(), 0);
    long long top = 0;
    for (long long v : levels) {
      ++hits[static_cast<std::size_t>(v)];
      top = std::max(top, v);
    }
    bool surjective = true;
    for (long long k = 1; k <= top; ++k) surjective = surjective && hits[static_cast<std::size_t>(k)] > 0;
    if (surjective) {
      const std::span<const long long> view(levels);
      const std::size_t count = count_backward(t, view, order);
      if (count < best && !find_violation(t, view, c, order)) {
        best = count;
        best_levels = levels;
        if (best == 0) break;
      }
    }
    std::size_t pos = n;
    while (pos > 0 && levels[pos - 1] == static_cast<long long>(n)) {
      levels[pos - 1] = 1;
      --pos;
    }
    if (pos == 0) break;
    ++levels[pos - 1];
  }
  if (!best_levels) {
    throw Error(ErrorCode::kEmptyClass,
                "no weak order passes " + std::string(to_string(c)));
  }
  MinBackwardResult result;
  result.count = best;
  result.fraction = arc_fraction(best, t.arc_count());
  result.witness = Ranking::exact_integers(*best_levels);
  result.search_space = SearchSpace::kWeakOrders;
  result.lower_bound_candidate = c == FairnessClass::kLin;
  return result;
}

std::uint64_t fubini_number(std::size_t n) {
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;  // C(m, k)
    for (std::size_t k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      a[m] += binom * a[m - k];
    }
  }
  return a[n];
}

Integer composite_min_backward(std::uint64_t l) {
  const Integer L(l);
  return L * L * (2 * L + 1) * (3 * L + 1);
}

Integer composite_vertex_count(std::uint64_t l) {
  const Integer s = 2 * Integer(l) + 1;
  return s * s;
}

Integer composite_arc_count(std::uint64_t l) {
  const Integer L(l);
  return 2 * L * (L + 1) * (2 * L + 1) * (2 * L + 1);
}

Rational composite_fraction(std::uint64_t l) {
  const Integer L(l);
  return Rational(L * (3 * L + 1), 2 * (L + 1) * (2 * L + 1));
}

Rational copeland_bound(const Integer& n) {
  if (n < 2) throw Error(ErrorCode::kDomainMismatch, "bound needs n >= 2");
  const Integer l = n / 2;
  if (n % 2 == 0) return Rational(3 * l - 2, 4 * l - 2);
  return Rational(3 * l + 1, 4 * l + 2);
}

namespace {

// Builds T_l and checks size, arc count, the per-layer out-degree and the
// closed-form backward count.
void materialize_composite_row(const EmnRow& row, std::size_t vertex_cap) {
  const std::size_t l = row.l;
  const Tournament t = composite_tournament(l, vertex_cap);
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kVerificationFailed,
                "composite l=" + std::to_string(l) + ": " + what);
  };
  if (Integer(t.size()) != row.n) fail("vertex count");
  if (Integer(t.arc_count()) != row.edges) fail("arc count");
  const std::size_t s = 2 * l + 1;
  for (std::size_t m = 1; m <= s; ++m) {
    for (std::size_t i = 1; i <= s; ++i) {
      if (t.out_degree(composite_vertex(l, m, i)) != (m - 1) + l + 2 * l * l) {
        fail("out-degree of vertex " + std::to_string(m) + "|" + std::to_string(i));
      }
    }
  }
  if (Integer(min_backward_copeland_closed_form(t).count) != row.min_backward) {
    fail("Copeland backward count");
  }
}

}  // namespace

EmnReport emn_sweep_composite(std::uint64_t l_max, std::uint64_t materialize_up_to,
                              std::size_t jobs, std::size_t vertex_cap) {
  if (l_max < 1) throw Error(ErrorCode::kDomainMismatch, "lmax must be >= 1");
  const std::uint64_t materialize = std::min(materialize_up_to, l_max);
  if (materialize > 0 && composite_vertex_count(materialize) > vertex_cap) {
    throw Error(ErrorCode::kResourceLimit,
                "materializing l=" + std::to_string(materialize) + " exceeds the vertex cap " +
                    std::to_string(vertex_cap));
  }

  EmnReport report;
  report.family = "composite";
  report.limit = Rational(3, 4);
  for (std::uint64_t l = 1; l <= l_max; ++l) {
    EmnRow row;
    row.l = l;
    row.n = composite_vertex_count(l);
    row.edges = composite_arc_count(l);
    row.min_backward = composite_min_backward(l);
    row.fraction = Rational(row.min_backward, row.edges);
    row.bound = copeland_bound(row.n);
    row.materialized = l <= materialize;
    if (row.fraction != composite_fraction(l)) {
      throw Error(ErrorCode::kVerificationFailed, "closed forms disagree at l=" + std::to_string(l));
    }
    if (!report.rows.empty() && !(report.rows.back().fraction < row.fraction)) {
      report.strictly_increasing = false;
    }
    if (!(row.fraction < report.limit)) report.all_below_limit = false;
    report.rows.push_back(std::move(row));
  }

  // Worker threads pull rows by index; failures are rethrown in row order.
  std::vector<std::exception_ptr> errors(materialize);
  std::size_t next = 0;
  std::mutex mutex;
  auto worker = [&] {
    while (true) {
      std::size_t idx;
      {
        std::lock_guard lock(mutex);
        if (next >= materialize) return;
        idx = next++;
      }
      try {
        materialize_composite_row(report.rows[idx], vertex_cap);
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, materialize));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return report;
}

namespace {

// Visits the tournaments a bound check covers.
void for_each_sample(std::size_t n, SampleMode mode, std::size_t samples, std::uint64_t seed,
                     const std::function<void(const Tournament&)>& visit) {
  if (mode == SampleMode::kExhaustive) {
    for_each_tournament(n, visit);
    return;
  }
  std::mt19937_64 seeds(seed);
  for (std::size_t s = 0; s < samples; ++s) visit(random_tournament(n, seeds()));
}

void observe(BoundCheckReport& report, const Tournament& t, const Rational& fraction) {
  ++report.tested;
  if (!report.witness || fraction > report.max_fraction) {
    report.max_fraction = fraction;
    report.witness = t;
  }
}

}  // namespace

BoundCheckReport verify_copeland_upper_bound(std::size_t n, SampleMode mode,
                                             std::size_t samples, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kDomainMismatch, "bound check needs n >= 2");
  if (mode == SampleMode::kExhaustive && n > 5) {
    throw Error(ErrorCode::kResourceLimit, "exhaustive bound check limited to n <= 5");
  }
  BoundCheckReport report;
  report.n = n;
  report.mode = mode;
  report.bound = copeland_bound(Integer(n));
  const Rational three_quarters(3, 4);
  for_each_sample(n, mode, samples, seed, [&](const Tournament& t) {
    const Rational f = min_backward_copeland_closed_form(t).fraction;
    if (f > report.bound || !(f < three_quarters)) ++report.violations;
    observe(report, t, f);
  });
  return report;
}

BoundCheckReport reversal_bound_check(std::size_t n, SampleMode mode, std::size_t samples,
                                      std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kDomainMismatch, "reversal check needs n >= 2");
  if (n > 7) throw Error(ErrorCode::kResourceLimit, "reversal check limited to n <= 7");
  const std::size_t edges = n * (n - 1) / 2;
  BoundCheckReport report;
  report.n = n;
  report.mode = mode;
  report.bound = Rational(Integer(edges / 2), Integer(edges));
  for_each_sample(n, mode, samples, seed, [&](const Tournament& t) {
    const MinBackwardResult r = min_backward_injective(t);
    if (r.count > edges / 2) ++report.violations;
    observe(report, t, r.fraction);
  });
  return report;
}

std::string to_json(const MinBackwardResult& result) {
  std::vector<std::string> witness;
  for (Vertex x = 1; x <= result.witness.size(); ++x) witness.push_back(result.witness.value_string(x));
  nlohmann::json j;
  j["count"] = result.count;
  j["fraction"] = detail::fraction_json(result.fraction);
  j["witness"] = std::move(witness);
  j["search_space"] = std::string(to_string(result.search_space));
  if (result.lower_bound_candidate) j["lower_bound_candidate"] = true;
  return j.dump();
}

std::string to_json(const EmnReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"l", row.l},
                    {"n", detail::integer_json(row.n)},
                    {"edges", detail::integer_json(row.edges)},
                    {"min_backward", detail::integer_json(row.min_backward)},
                    {"fraction", detail::fraction_json(row.fraction)},
                    {"bound", detail::fraction_json(row.bound)},
                    {"materialized", row.materialized}});
  }
  nlohmann::json j;
  j["family"] = report.family;
  j["rows"] = std::move(rows);
  j["limit"] = detail::fraction_json(report.limit);
  j["strictly_increasing"] = report.strictly_increasing;
  j["all_below_limit"] = report.all_below_limit;
  return j.dump();
}

std::string to_csv(const EmnReport& report) {
  std::ostringstream out;
  out << "l,n,edges,min_backward,fraction_num,fraction_den,bound_num,bound_den,materialized\n";
  for (const auto& row : report.rows) {
    out << row.l << ',' << row.n << ',' << row.edges << ',' << row.min_backward << ','
        << numerator_of(row.fraction) << ',' << denominator_of(row.fraction) << ','
        << numerator_of(row.bound) << ',' << denominator_of(row.bound) << ','
        << (row.materialized ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string to_json(const BoundCheckReport& report) {
  nlohmann::json j;
  j["n"] = report.n;
  j["mode"] = report.mode == SampleMode::kExhaustive ? "exhaustive" : "random";
  j["tested"] = report.tested;
  j["bound"] = detail::fraction_json(report.bound);
  j["max_fraction"] = detail::fraction_json(report.max_fraction);
  j["violations"] = report.violations;
  if (report.witness) j["witness"] = serialize_tournament(*report.witness);
  return j.dump();
}

}  // namespace fairrank
