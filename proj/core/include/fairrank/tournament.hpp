#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairrank {

// Vertices are labelled 1..n throughout the public API.
using Vertex = std::size_t;

struct Arc {
  Vertex from = 0;
  Vertex to = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

inline constexpr std::size_t kDefaultVertexCap = 10'000;

// Complete, loop-free, antisymmetric digraph stored as a dense bit matrix.
// Row x holds the out-neighbourhood x+. Immutable after construction.
class Tournament {
 public:
  // Validating constructor. Throws Error with kLoopArc, kDuplicateOrConflict,
  // kMissingPair or kUnknownVertex.
  static Tournament from_arcs(std::size_t n, std::span<const Arc> arcs);

  // Builds from a 0-based predicate beats(i, j), consulted once for every
  // i < j. Always valid by construction.
  static Tournament from_orientation(
      std::size_t n, const std::function<bool(std::size_t, std::size_t)>& beats);

  std::size_t size() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return n_ * (n_ - 1) / 2; }

  // 1-based, validated.
  bool has_arc(Vertex x, Vertex y) const;
  std::size_t out_degree(Vertex x) const;
  std::vector<Vertex> out_neighbours(Vertex x) const;

  // 0-based, unchecked; the hot path for predicates and solvers.
  bool beats(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  std::size_t degree_at(std::size_t i) const noexcept { return degree_[i]; }
  std::span<const std::uint64_t> row(std::size_t i) const noexcept {
    return {bits_.data() + i * words_, words_};
  }

  // Arcs in lexicographic (from, to) order.
  std::vector<Arc> arcs() const;
  std::vector<std::size_t> out_degrees() const { return degree_; }

  // Subtournament on the given (1-based) vertices; vertex k of the result
  // corresponds to vertices[k-1].
  Tournament induced(std::span<const Vertex> vertices) const;

  friend bool operator==(const Tournament&, const Tournament&) = default;

 private:
  explicit Tournament(std::size_t n);
  void set_arc(std::size_t i, std::size_t j);
  void check_vertex(Vertex x) const;

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> degree_;
};

// Components ordered losers first: for x in component i and y in component
// j with i < j, the arc is y -> x. Vertices inside a component ascend.
struct SccDecomposition {
  std::vector<std::vector<Vertex>> components;
};

SccDecomposition scc_decompose(const Tournament& t);
bool is_strongly_connected(const Tournament& t);

// Generators. Composite vertex m|i is flattened to (m-1)(2l+1)+i.
Tournament rotational_tournament(std::size_t l);
Tournament composite_tournament(std::size_t l,
                                std::size_t vertex_cap = kDefaultVertexCap);
Vertex composite_vertex(std::size_t l, std::size_t m, std::size_t i);
Tournament random_tournament(std::size_t n, std::uint64_t seed);
// a -> b for every a < b.
Tournament transitive_tournament(std::size_t n);

// Exhaustive enumeration of all 2^C(n,2) labelled tournaments, n <= 6.
// Tournament number `code` orients the k-th pair (i<j, lexicographic) as
// i -> j iff bit k of code is set, so the stream can be split by code range.
inline constexpr std::size_t kMaxEnumerationSize = 6;
std::uint64_t tournament_count(std::size_t n);
Tournament tournament_from_code(std::size_t n, std::uint64_t code);
void for_each_tournament(std::size_t n,
                         const std::function<void(const Tournament&)>& visit);

// Text I/O: adjacency matrix ("n" then n rows of 0/1) or edge list
// ("n=<N>" then "u v" per line).
Tournament parse_tournament(std::string_view text);
std::string serialize_tournament(const Tournament& t);

}  // namespace fairrank
