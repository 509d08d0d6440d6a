#pragma once

// Value-generic fairness kernels. Ranking dispatches here; the optimisation
// harness calls them directly on integer level vectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fairrank/ranking.hpp"
#include "fairrank/tournament.hpp"

namespace fairrank {

struct ExactOrder {
  template <class T>
  bool less(const T& a, const T& b) const {
    return a < b;
  }
  template <class T>
  bool leq(const T& a, const T& b) const {
    return !(b < a);
  }
  template <class T>
  bool equal(const T& a, const T& b) const {
    return a == b;
  }
};

// a < b iff b - a > eps; a == b iff |a - b| <= eps.
struct ToleranceOrder {
  double eps = kDefaultEpsilon;

  bool less(double a, double b) const { return b - a > eps; }
  bool leq(double a, double b) const { return !less(b, a); }
  bool equal(double a, double b) const { return std::abs(a - b) <= eps; }
};

// Multisets a, b; true iff an injection a -> b exists that never decreases
// the value. Sort both descending and compare position by position.
template <class T, class Order>
bool sorted_dominance(std::vector<T> a, std::vector<T> b, const Order& order) {
  if (a.size() > b.size()) return false;
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!order.leq(a[k], b[k])) return false;
  }
  return true;
}

template <class T, class Order>
std::size_t count_backward(const Tournament& t, std::span<const T> r,
                           const Order& order) {
  std::size_t count = 0;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t.beats(i, j) ? order.less(r[i], r[j]) : order.less(r[j], r[i])) {
        ++count;
      }
    }
  }
  return count;
}

template <class T>
std::vector<T> out_sums(const Tournament& t, std::span<const T> r) {
  const std::size_t n = t.size();
  std::vector<T> sums(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (t.beats(i, j)) sums[i] += r[j];
    }
  }
  return sums;
}

namespace detail {

inline bool strict_subset_rows(const Tournament& t, std::size_t i,
                               std::size_t j) {
  auto a = t.row(i);
  auto b = t.row(j);
  bool proper = false;
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] & ~b[w]) return false;
    if (a[w] != b[w]) proper = true;
  }
  return proper;
}

template <class T>
std::vector<std::vector<T>> spectra(const Tournament& t, std::span<const T> r) {
  const std::size_t n = t.size();
  std::vector<std::vector<T>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].reserve(t.degree_at(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (t.beats(i, j)) out[i].push_back(r[j]);
    }
    std::sort(out[i].begin(), out[i].end(), std::greater<>());
  }
  return out;
}

// Spectra are pre-sorted descending.
template <class T, class Order>
bool presorted_dominance(const std::vector<T>& a, const std::vector<T>& b,
                         const Order& order) {
  if (a.size() > b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!order.leq(a[k], b[k])) return false;
  }
  return true;
}

inline Violation make_violation(std::size_t i, std::size_t j,
                                const char* rule) {
  return Violation{i + 1, j + 1, rule};
}

}  // namespace detail

// First violating ordered pair (x, y) in lexicographic order, or nullopt.
// Under kLin a non-positive rank is reported first, as (x, x).
template <class T, class Order>
std::optional<Violation> find_violation(const Tournament& t,
                                        std::span<const T> r, FairnessClass c,
                                        const Order& order) {
  const std::size_t n = t.size();
  switch (c) {
    case FairnessClass::kNsCop:
    case FairnessClass::kSCop:
    case FairnessClass::kCop: {
      const bool check_ns = c != FairnessClass::kSCop;
      const bool check_s = c != FairnessClass::kNsCop;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const auto di = t.degree_at(i);
          const auto dj = t.degree_at(j);
          if (check_ns && di <= dj && !order.leq(r[i], r[j])) {
            return detail::make_violation(i, j, "d(x)<=d(y) but r(x)>r(y)");
          }
          if (check_s && di < dj && !order.less(r[i], r[j])) {
            return detail::make_violation(i, j, "d(x)<d(y) but r(x)>=r(y)");
          }
        }
      }
      return std::nullopt;
    }
    case FairnessClass::kWeak: {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          if (detail::strict_subset_rows(t, i, j) && !order.less(r[i], r[j])) {
            return detail::make_violation(i, j, "x+ < y+ but r(x)>=r(y)");
          }
        }
      }
      return std::nullopt;
    }
    case FairnessClass::kSpec: {
      const auto spec = detail::spectra(t, r);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          if (!detail::presorted_dominance(spec[i], spec[j], order)) continue;
          if (!order.leq(r[i], r[j])) {
            return detail::make_violation(i, j, "x<=_r y but r(x)>r(y)");
          }
          if (!detail::presorted_dominance(spec[j], spec[i], order) &&
              !order.less(r[i], r[j])) {
            return detail::make_violation(i, j, "x<_r y but r(x)>=r(y)");
          }
        }
      }
      return std::nullopt;
    }
    case FairnessClass::kLin: {
      for (std::size_t i = 0; i < n; ++i) {
        if (!order.less(T(0), r[i])) {
          return detail::make_violation(i, i, "non-positive rank");
        }
      }
      const auto sums = out_sums(t, r);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          if (order.leq(sums[i], sums[j]) && !order.leq(r[i], r[j])) {
            return detail::make_violation(i, j, "S(x)<=S(y) but r(x)>r(y)");
          }
          if (order.less(sums[i], sums[j]) && !order.less(r[i], r[j])) {
            return detail::make_violation(i, j, "S(x)<S(y) but r(x)>=r(y)");
          }
        }
      }
      return std::nullopt;
    }
    case FairnessClass::kInj: {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j && order.equal(r[i], r[j])) {
            return detail::make_violation(i, j, "r(x)=r(y)");
          }
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace fairrank
