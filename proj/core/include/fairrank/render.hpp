#pragma once

#include <optional>
#include <string>

#include "fairrank/ranking.hpp"
#include "fairrank/tournament.hpp"

namespace fairrank {

// ASCII adjacency grid. Rows and columns are sorted by descending rank
// (label order without a ranking); '*' marks row -> column, '.' no arc, and
// backward arcs are bracketed "[*]".
std::string render_table(const Tournament& t,
                         const std::optional<Ranking>& ranking = std::nullopt);

}  // namespace fairrank
