#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>

#include "epinet/graph.hpp"

namespace epinet {

struct LoadOptions {
  // Relabel ids densely in order of first appearance instead of n = max id + 1.
  bool compact_ids = false;
};

struct LoadResult {
  Graph graph;
  std::size_t self_loops_skipped = 0;
  std::size_t duplicates_skipped = 0;
};

// Reads "u v" pairs, one per line. '#' starts a comment; blank lines are
// ignored; a "# nodes N" header line (as written by write_edge_list) sets
// a minimum node count. Extra columns (weights, timestamps) after the pair are ignored.
// Throws ParseError with the offending line number.
LoadResult load_edge_list(std::istream& in, const LoadOptions& options = {});
LoadResult load_edge_list_file(const std::string& path, const LoadOptions& options = {});

// Writes a header comment with the node count followed by sorted "u v" lines.
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace epinet
