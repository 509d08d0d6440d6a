#include "fairrank/tournament.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

#include "fairrank/error.hpp"

namespace fairrank {

Tournament::Tournament(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0), degree_(n, 0) {}

void Tournament::set_arc(std::size_t i, std::size_t j) {
  bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  ++degree_[i];
}

void Tournament::check_vertex(Vertex x) const {
  if (x < 1 || x > n_) {
    throw Error(ErrorCode::kUnknownVertex,
                "vertex " + std::to_string(x) + " not in 1.." + std::to_string(n_));
  }
}

Tournament Tournament::from_arcs(std::size_t n, std::span<const Arc> arcs) {
  if (n < 1) throw Error(ErrorCode::kDomainMismatch, "a tournament needs n >= 1");
  Tournament t(n);
  std::vector<std::uint8_t> covered(n * n, 0);
  for (const Arc& a : arcs) {
    t.check_vertex(a.from);
    t.check_vertex(a.to);
    if (a.from == a.to) {
      throw Error(ErrorCode::kLoopArc, "loop at vertex " + std::to_string(a.from));
    }
    const std::size_t i = a.from - 1;
    const std::size_t j = a.to - 1;
    const std::size_t key = std::min(i, j) * n + std::max(i, j);
    if (covered[key]) {
      throw Error(ErrorCode::kDuplicateOrConflict,
                  "pair {" + std::to_string(a.from) + "," + std::to_string(a.to) +
                      "} oriented more than once");
    }
    covered[key] = 1;
    t.set_arc(i, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!covered[i * n + j]) {
        throw Error(ErrorCode::kMissingPair, "pair {" + std::to_string(i + 1) + "," +
                                                 std::to_string(j + 1) +
                                                 "} has no arc");
      }
    }
  }
  return t;
}

Tournament Tournament::from_orientation(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& beats) {
  if (n < 1) throw Error(ErrorCode::kDomainMismatch, "a tournament needs n >= 1");
  Tournament t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (beats(i, j)) {
        t.set_arc(i, j);
      } else {
        t.set_arc(j, i);
      }
    }
  }
  return t;
}

bool Tournament::has_arc(Vertex x, Vertex y) const {
  check_vertex(x);
  check_vertex(y);
  return beats(x - 1, y - 1);
}

std::size_t Tournament::out_degree(Vertex x) const {
  check_vertex(x);
  return degree_[x - 1];
}

std::vector<Vertex> Tournament::out_neighbours(Vertex x) const {
  check_vertex(x);
  std::vector<Vertex> out;
  for (std::size_t j = 0; j < n_; ++j) {
    if (beats(x - 1, j)) out.push_back(j + 1);
  }
  return out;
}

std::vector<Arc> Tournament::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (beats(i, j)) out.push_back({i + 1, j + 1});
    }
  }
  return out;
}

Tournament Tournament::induced(std::span<const Vertex> vertices) const {
  for (Vertex v : vertices) check_vertex(v);
  return from_orientation(vertices.size(), [&](std::size_t a, std::size_t b) {
    return beats(vertices[a] - 1, vertices[b] - 1);
  });
}

// In a tournament every vertex of a lower component has strictly smaller
// out-degree than every vertex above it, so components are contiguous runs
// of the ascending degree order. The k lowest vertices close off a union of
// components exactly when their degrees sum to C(k,2).
SccDecomposition scc_decompose(const Tournament& t) {
  const std::size_t n = t.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return t.degree_at(a) < t.degree_at(b);
  });

  SccDecomposition result;
  std::vector<Vertex> current;
  std::size_t degree_sum = 0;
  for (std::size_t k = 0; k < n; ++k) {
    degree_sum += t.degree_at(order[k]);
    current.push_back(order[k] + 1);
    const std::size_t taken = k + 1;
    if (degree_sum == taken * (taken - 1) / 2) {
      std::sort(current.begin(), current.end());
      result.components.push_back(std::move(current));
      current.clear();
    }
  }
  return result;
}

bool is_strongly_connected(const Tournament& t) {
  return scc_decompose(t).components.size() == 1;
}

Tournament rotational_tournament(std::size_t l) {
  if (l < 1) throw Error(ErrorCode::kDomainMismatch, "rotational tournament needs l >= 1");
  const std::size_t n = 2 * l + 1;
  return Tournament::from_orientation(n, [&](std::size_t i, std::size_t j) {
    return (j - i) <= l;  // j = i (+) k for some k in 1..l
  });
}

Vertex composite_vertex(std::size_t l, std::size_t m, std::size_t i) {
  return (m - 1) * (2 * l + 1) + i;
}

Tournament composite_tournament(std::size_t l, std::size_t vertex_cap) {
  if (l < 1) throw Error(ErrorCode::kDomainMismatch, "composite tournament needs l >= 1");
  const std::size_t s = 2 * l + 1;
  if (s > vertex_cap / s) {
    throw Error(ErrorCode::kResourceLimit,
                "composite T_" + std::to_string(l) + " has " + std::to_string(s * s) +
                    " vertices, cap is " + std::to_string(vertex_cap));
  }
  // Arc i -> j in the rotational tournament on 0..s-1.
  auto rotational = [&](std::size_t i, std::size_t j) {
    const std::size_t diff = (j + s - i) % s;
    return diff >= 1 && diff <= l;
  };
  return Tournament::from_orientation(s * s, [&](std::size_t a, std::size_t b) {
    const std::size_t m = a / s, i = a % s;
    const std::size_t mb = b / s, j = b % s;
    if (i == j) return m > mb;
    if (m == mb) return rotational(i, j);
    return rotational(m, mb);
  });
}

Tournament random_tournament(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return Tournament::from_orientation(n, [&](std::size_t, std::size_t) {
    return (gen() >> 63) != 0;
  });
}

Tournament transitive_tournament(std::size_t n) {
  return Tournament::from_orientation(n, [](std::size_t, std::size_t) { return true; });
}

std::uint64_t tournament_count(std::size_t n) {
  if (n > kMaxEnumerationSize) {
    throw Error(ErrorCode::kResourceLimit,
                "enumeration limited to n <= " + std::to_string(kMaxEnumerationSize));
  }
  return std::uint64_t{1} << (n * (n - (n > 0 ? 1 : 0)) / 2);
}

Tournament tournament_from_code(std::size_t n, std::uint64_t code) {
  if (code >= tournament_count(n)) {
    throw Error(ErrorCode::kDomainMismatch, "tournament code out of range");
  }
  std::size_t bit = 0;
  return Tournament::from_orientation(n, [&](std::size_t, std::size_t) {
    return ((code >> bit++) & 1U) != 0;
  });
}

void for_each_tournament(std::size_t n,
                         const std::function<void(const Tournament&)>& visit) {
  const std::uint64_t total = tournament_count(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    visit(tournament_from_code(n, code));
  }
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::size_t parse_count(std::string_view s, const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kSyntaxError,
                std::string("bad ") + what + ": '" + std::string(s) + "'");
  }
  return value;
}

Tournament parse_edge_list(std::size_t n, std::span<const std::string_view> lines) {
  std::vector<Arc> arcs;
  for (auto line : lines) {
    const auto sep = line.find_first_of(" \t");
    if (sep == std::string_view::npos) {
      throw Error(ErrorCode::kSyntaxError, "expected 'u v', got '" + std::string(line) + "'");
    }
    auto rest = line.substr(sep);
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
    arcs.push_back({parse_count(line.substr(0, sep), "vertex"), parse_count(rest, "vertex")});
  }
  return Tournament::from_arcs(n, arcs);
}

Tournament parse_matrix(std::size_t n, std::span<const std::string_view> rows) {
  if (rows.size() != n) {
    throw Error(ErrorCode::kSyntaxError, "expected " + std::to_string(n) + " matrix rows, got " +
                                             std::to_string(rows.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::kSyntaxError, "row " + std::to_string(i + 1) + " has " +
                                               std::to_string(rows[i].size()) + " entries");
    }
    for (char c : rows[i]) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::kSyntaxError,
                    "row " + std::to_string(i + 1) + " contains '" + std::string(1, c) + "'");
      }
    }
  }
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] == '1') arcs.push_back({i + 1, j + 1});
    }
  }
  return Tournament::from_arcs(n, arcs);
}

}  // namespace

Tournament parse_tournament(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::kSyntaxError, "empty input");
  const auto rest = std::span(lines).subspan(1);
  if (lines.front().starts_with("n=")) {
    return parse_edge_list(parse_count(lines.front().substr(2), "vertex count"), rest);
  }
  return parse_matrix(parse_count(lines.front(), "vertex count"), rest);
}

std::string serialize_tournament(const Tournament& t) {
  std::string out = std::to_string(t.size()) + "\n";
  out.reserve(out.size() + t.size() * (t.size() + 1));
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) out += t.beats(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace fairrank
