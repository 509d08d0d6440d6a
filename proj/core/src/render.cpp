#include "fairrank/render.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fairrank/error.hpp"

namespace fairrank {

std::string render_table(const Tournament& t, const std::optional<Ranking>& ranking) {
  const std::size_t n = t.size();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{1});
  std::vector<std::vector<bool>> backward(n, std::vector<bool>(n, false));
  if (ranking) {
    if (ranking->size() != n) {
      throw Error(ErrorCode::kDomainMismatch, "ranking size differs from tournament");
    }
    order = ranking->order_descending();
    for (const Arc& a : backward_arcs(t, *ranking).backward) {
      backward[a.from - 1][a.to - 1] = true;
    }
  }

  const std::size_t width = std::to_string(n).size();
  auto pad = [&](const std::string& s) {
    return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
  };
  std::ostringstream out;
  out << pad("") << " |";
  for (Vertex y : order) out << ' ' << pad(std::to_string(y)) << ' ';
  out << '\n' << std::string(width + 2 + order.size() * (width + 2), '-') << '\n';
  for (Vertex x : order) {
    out << pad(std::to_string(x)) << " |";
    for (Vertex y : order) {
      const bool arc = x != y && t.beats(x - 1, y - 1);
      const std::string mark = pad(arc ? "*" : ".");
      if (arc && backward[x - 1][y - 1]) {
        out << '[' << mark << ']';
      } else {
        out << ' ' << mark << ' ';
      }
    }
    if (ranking) out << "  r=" << ranking->value_string(x);
    out << '\n';
  }
  return out.str();
}

}  // namespace fairrank
