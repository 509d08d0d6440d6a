#include "fairrank/ranking.hpp"

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fairrank/error.hpp"
#include "fairrank/predicates.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace fairrank {
namespace {

Tournament three_cycle() { return parse_tournament("3\n010\n001\n100\n"); }
Tournament chain3() { return transitive_tournament(3); }  // 1->2, 1->3, 2->3

Ranking ints(std::initializer_list<long long> v) {
  return Ranking::exact_integers(std::vector<long long>(v));
}

Ranking fractions(std::initializer_list<std::pair<int, int>> v) {
  std::vector<Rational> out;
  for (auto [p, q] : v) out.emplace_back(p, q);
  return Ranking::exact(std::move(out));
}

// All level vectors in {1..k}^n that use every level 1..k.
std::vector<std::vector<long long>> all_weak_orders(std::size_t n) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> v(n, 1);
  while (true) {
    long long top = *std::max_element(v.begin(), v.end());
    std::vector<bool> hit(static_cast<std::size_t>(top) + 1, false);
    for (auto x : v) hit[static_cast<std::size_t>(x)] = true;
    if (std::all_of(hit.begin() + 1, hit.end(), [](bool b) { return b; })) out.push_back(v);
    std::size_t pos = n;
    while (pos > 0 && v[pos - 1] == static_cast<long long>(n)) v[--pos] = 1;
    if (pos == 0) break;
    ++v[pos - 1];
  }
  return out;
}

TEST(Backward, ThreeCycleIdentityRanks) {
  const auto report = backward_arcs(three_cycle(), ints({1, 2, 3}));
  EXPECT_EQ(report.backward, (std::vector<Arc>{{1, 2}, {2, 3}}));
  EXPECT_EQ(report.total, 3u);
  EXPECT_EQ(report.fraction, Rational(2, 3));
}

TEST(Backward, ConstantAndAgreeingRankings) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = random_tournament(9, seed);
    EXPECT_EQ(backward_arcs(t, Ranking::constant(9, 5)).fraction, 0);
  }
  EXPECT_EQ(backward_arcs(chain3(), ints({3, 2, 1})).fraction, 0);
}

TEST(Backward, DomainMismatch) {
  EXPECT_THROW(backward_arcs(three_cycle(), ints({1, 2})), Error);
}

TEST(Backward, JsonShape) {
  const auto j = nlohmann::json::parse(to_json(backward_arcs(three_cycle(), ints({1, 2, 3}))));
  EXPECT_EQ(j["backward"], nlohmann::json::parse("[[1,2],[2,3]]"));
  EXPECT_EQ(j["total"], 3);
  EXPECT_EQ(j["fraction"]["num"], 2);
  EXPECT_EQ(j["fraction"]["den"], 3);
}

// Backward, forward and level arcs partition E; an injective ranking and
// its reversal together make every arc backward exactly once.
TEST(Backward, TrichotomyAndReversalProperty) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen() % 10;
    const auto t = random_tournament(n, gen());
    std::vector<long long> r(n);
    for (auto& x : r) x = static_cast<long long>(gen() % 4);
    std::vector<long long> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -r[i];
    const auto fwd = backward_arcs(t, Ranking::exact_integers(r)).backward.size();
    const auto rev = backward_arcs(t, Ranking::exact_integers(neg)).backward.size();
    std::size_t level = 0;
    for (const Arc& a : t.arcs()) level += r[a.from - 1] == r[a.to - 1];
    EXPECT_EQ(fwd + rev + level, t.arc_count());
    EXPECT_EQ(fwd, oracle::backward_count(t, r));

    std::vector<long long> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<long long> perm_rev(n);
    for (std::size_t i = 0; i < n; ++i) perm_rev[i] = -perm[i];
    const auto a = backward_arcs(t, Ranking::exact_integers(perm)).backward.size();
    const auto b = backward_arcs(t, Ranking::exact_integers(perm_rev)).backward.size();
    EXPECT_EQ(a + b, t.arc_count());
    EXPECT_LE(std::min(a, b), t.arc_count() / 2);
  }
}

TEST(Backward, FloatModeTolerance) {
  const auto t = three_cycle();
  const auto r = Ranking::floating({1.0, 1.0 + 1e-12, 2.0});
  const auto report = backward_arcs(t, r);
  EXPECT_EQ(report.backward, (std::vector<Arc>{{2, 3}}));
}

TEST(IsFair, CopelandRankingPassesCopelandAndWeak) {
  const FairnessClass classes[] = {FairnessClass::kNsCop, FairnessClass::kSCop,
                                   FairnessClass::kCop, FairnessClass::kWeak};
  for (std::size_t n = 1; n <= 5; ++n) {
    for_each_tournament(n, [&](const Tournament& t) {
      for (auto c : classes) EXPECT_TRUE(is_fair(t, copeland_ranking(t), c).fair);
    });
  }
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto t = random_tournament(1 + seed % 30, seed);
    for (auto c : classes) EXPECT_TRUE(is_fair(t, copeland_ranking(t), c).fair);
  }
}

TEST(IsFair, ThreeCycleUnevenRanks) {
  const auto t = three_cycle();
  const auto r = ints({1, 1, 2});
  EXPECT_TRUE(is_fair(t, r, FairnessClass::kSCop).fair);
  const auto verdict = is_fair(t, r, FairnessClass::kNsCop);
  ASSERT_FALSE(verdict.fair);
  ASSERT_TRUE(verdict.violation.has_value());
  // Least ordered pair with equal degrees and unequal ranks.
  EXPECT_EQ(verdict.violation->x, 3u);
  EXPECT_EQ(verdict.violation->y, 1u);
  EXPECT_FALSE(is_fair(t, r, FairnessClass::kCop).fair);
}

TEST(IsFair, ThreeCycleUniformIsLinear) {
  const auto t = three_cycle();
  const auto r = fractions({{1, 3}, {1, 3}, {1, 3}});
  EXPECT_TRUE(is_fair(t, r, FairnessClass::kLin).fair);
  EXPECT_TRUE(is_fair(t, r, FairnessClass::kSpec).fair);
  EXPECT_TRUE(is_fair(t, r, FairnessClass::kWeak).fair);
  EXPECT_FALSE(is_fair(t, r, FairnessClass::kInj).fair);
}

TEST(IsFair, LinRequiresPositiveRanks) {
  const auto t = three_cycle();
  const auto verdict = is_fair(t, ints({0, 0, 0}), FairnessClass::kLin);
  ASSERT_FALSE(verdict.fair);
  EXPECT_EQ(verdict.violation->x, 1u);
  EXPECT_EQ(verdict.violation->y, 1u);
  EXPECT_NO_THROW(is_fair(t, ints({-1, 2, 2}), FairnessClass::kLin));
}

TEST(IsFair, ConstantRankingIsNonStrictCopelandFair) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for_each_tournament(n, [&](const Tournament& t) {
      EXPECT_TRUE(is_fair(t, Ranking::constant(n), FairnessClass::kNsCop).fair);
    });
  }
  // Weak fairness of a constant ranking fails exactly when some out-set is
  // strictly contained in another.
  for_each_tournament(4, [&](const Tournament& t) {
    bool containment = false;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (i != j && detail::strict_subset_rows(t, i, j)) containment = true;
      }
    }
    EXPECT_EQ(is_fair(t, Ranking::constant(4), FairnessClass::kWeak).fair, !containment);
  });
}

TEST(IsFair, Injective) {
  EXPECT_TRUE(is_fair(three_cycle(), ints({3, 1, 2}), FairnessClass::kInj).fair);
  const auto v = is_fair(three_cycle(), ints({3, 1, 3}), FairnessClass::kInj);
  ASSERT_FALSE(v.fair);
  EXPECT_EQ(v.violation->x, 1u);
  EXPECT_EQ(v.violation->y, 3u);
}

TEST(IsFair, WeakCertificate) {
  // chain: 3+ = {} is strictly inside 2+ = {3}.
  const auto v = is_fair(chain3(), ints({1, 1, 1}), FairnessClass::kWeak);
  ASSERT_FALSE(v.fair);
  EXPECT_EQ(v.violation->x, 2u);
  EXPECT_EQ(v.violation->y, 1u);
}

// Lin => Spec => Weak and Cop => sCop => Weak on every weak order.
void expect_containments(const Tournament& t, const Ranking& r) {
  const bool lin = is_fair(t, r, FairnessClass::kLin).fair;
  const bool spec = is_fair(t, r, FairnessClass::kSpec).fair;
  const bool weak = is_fair(t, r, FairnessClass::kWeak).fair;
  const bool cop = is_fair(t, r, FairnessClass::kCop).fair;
  const bool scop = is_fair(t, r, FairnessClass::kSCop).fair;
  EXPECT_TRUE(!lin || spec);
  EXPECT_TRUE(!spec || weak);
  EXPECT_TRUE(!cop || scop);
  EXPECT_TRUE(!scop || weak);
}

TEST(Containment, AllWeakOrdersUpToFour) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto orders = all_weak_orders(n);
    for_each_tournament(n, [&](const Tournament& t) {
      for (const auto& levels : orders) expect_containments(t, Ranking::exact_integers(levels));
    });
  }
}

TEST(Containment, RandomRankings) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    const auto t = random_tournament(n, gen());
    std::vector<Rational> r(n);
    for (auto& x : r) x = Rational(static_cast<long long>(1 + gen() % 5), static_cast<long long>(1 + gen() % 3));
    expect_containments(t, Ranking::exact(r));
  }
}

TEST(Spectral, Examples) {
  // Vertex 3 of the chain beats nobody.
  const auto chain = chain3();
  const auto r = ints({5, 7, 9});
  for (Vertex y = 1; y <= 3; ++y) EXPECT_TRUE(spectral_leq(chain, r, 3, y));
  EXPECT_TRUE(spectral_strict_less(chain, r, 3, 1));
  EXPECT_FALSE(spectral_strict_less(chain, r, 2, 2));

  const ExactOrder exact;
  EXPECT_FALSE(sorted_dominance<long long>({5}, {3}, exact));
  EXPECT_TRUE(sorted_dominance<long long>({1, 4}, {2, 2, 5}, exact));
  EXPECT_TRUE(oracle::injection_exists<long long>({1, 4}, {2, 2, 5}));

  const auto cycle = three_cycle();
  const auto flat = Ranking::constant(3, 1);
  for (Vertex x = 1; x <= 3; ++x) {
    for (Vertex y = 1; y <= 3; ++y) EXPECT_FALSE(spectral_strict_less(cycle, flat, x, y));
  }
  EXPECT_THROW(spectral_leq(cycle, flat, 1, 4), Error);
}

TEST(Spectral, SortedDominanceMatchesBruteForce) {
  std::mt19937_64 gen(2024);
  const ExactOrder exact;
  std::size_t disagreements = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<int> a(gen() % 7), b(gen() % 7);
    for (auto& x : a) x = static_cast<int>(gen() % 6);
    for (auto& x : b) x = static_cast<int>(gen() % 6);
    if (sorted_dominance(a, b, exact) != oracle::injection_exists(a, b)) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0u);
}

TEST(Spectral, PreorderProperty) {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + gen() % 6;
    const auto t = random_tournament(n, gen());
    std::vector<long long> levels(n);
    for (auto& x : levels) x = static_cast<long long>(gen() % 4);
    const auto r = Ranking::exact_integers(levels);
    for (Vertex x = 1; x <= n; ++x) {
      EXPECT_TRUE(spectral_leq(t, r, x, x));
      for (Vertex y = 1; y <= n; ++y) {
        for (Vertex z = 1; z <= n; ++z) {
          if (spectral_leq(t, r, x, y) && spectral_leq(t, r, y, z)) {
            EXPECT_TRUE(spectral_leq(t, r, x, z));
          }
        }
      }
    }
  }
}

TEST(LinearSums, Examples) {
  const auto s = linear_sums(three_cycle(), fractions({{1, 3}, {1, 3}, {1, 3}}));
  for (const auto& v : s.exact_values()) EXPECT_EQ(v, Rational(1, 3));
  // chain with c=3 -> 1, b=2 -> 2, a=1 -> 4.
  const auto chain = linear_sums(chain3(), ints({4, 2, 1}));
  EXPECT_EQ(chain.exact_values(), (std::vector<Rational>{3, 1, 0}));
  const auto flt = linear_sums(chain3(), Ranking::floating({4.0, 2.0, 1.0}));
  EXPECT_FALSE(flt.is_exact());
  EXPECT_DOUBLE_EQ(flt.float_values()[2], 0.0);
}

TEST(RankingText, ParseAndSerialize) {
  const auto r = parse_ranking("2 1/2\n1 3\n3 -4/6\n");
  ASSERT_TRUE(r.is_exact());
  EXPECT_EQ(r.exact_values(), (std::vector<Rational>{3, Rational(1, 2), Rational(-2, 3)}));
  EXPECT_EQ(serialize_ranking(r), "1 3\n2 1/2\n3 -2/3\n");

  const auto f = parse_ranking("1 0.25\n2 1/4\n");
  ASSERT_FALSE(f.is_exact());
  EXPECT_EQ(f.float_values(), (std::vector<double>{0.25, 0.25}));
  EXPECT_EQ(parse_ranking(serialize_ranking(f)).float_values(), f.float_values());

  const auto g = Ranking::floating({0.1, 1.0 / 3.0, 2.0});
  const auto back = parse_ranking(serialize_ranking(g));
  EXPECT_FALSE(back.is_exact());
  EXPECT_EQ(back.float_values(), g.float_values());

  EXPECT_THROW(parse_ranking("1 1\n1 2\n"), Error);
  EXPECT_THROW(parse_ranking("1 1\n3 2\n"), Error);
  EXPECT_THROW(parse_ranking("1 x\n"), Error);
  EXPECT_THROW(parse_ranking("1 1/0\n"), Error);
  EXPECT_THROW(parse_ranking("1\n"), Error);
}

TEST(FairnessClassNames, RoundTrip) {
  for (auto c : kAllFairnessClasses) EXPECT_EQ(parse_fairness_class(to_string(c)), c);
  EXPECT_EQ(parse_fairness_class("NSCOP"), FairnessClass::kNsCop);
  EXPECT_FALSE(parse_fairness_class("kemeny").has_value());
}

}  // namespace
}  // namespace fairrank
