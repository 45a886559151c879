#pragma once

// graph6 encoding of simple graphs: a size header N(n) followed by the upper
// triangle of the adjacency matrix, column by column, packed six bits per
// byte with each byte offset by 63.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "thrackle/graph.hpp"

namespace thrackle {

// Throws MalformedGraph6. Edges come out in bit order: (i, j) with i < j,
// ordered by j and then by i.
AbstractGraph decode_graph6(std::string_view line);

std::string encode_graph6(const AbstractGraph& g);

// One graph per non-empty line; an optional ">>graph6<<" header is accepted.
// Errors carry the 1-based line number.
std::vector<AbstractGraph> parse_graph6_lines(std::string_view text);
std::vector<AbstractGraph> load_graph6(const std::filesystem::path& path);

}  // namespace thrackle
