#include "epinet/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "epinet/errors.hpp"

namespace epinet {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == ','; }

std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  auto token = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return token;
}

std::uint64_t parse_id(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line_no, "expected a non-negative integer node id, got '" + std::string(token) + "'");
  }
  if (value >= std::numeric_limits<NodeId>::max()) {
    throw ParseError(line_no, "node id " + std::string(token) + " is too large");
  }
  return value;
}

}  // namespace

LoadResult load_edge_list(std::istream& in, const LoadOptions& options) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::unordered_map<std::uint64_t, NodeId> relabel;
  std::uint64_t max_id = 0;
  bool any = false;
  std::uint64_t declared_nodes = 0;

  auto map_id = [&](std::uint64_t raw) -> NodeId {
    if (!options.compact_ids) return static_cast<NodeId>(raw);
    auto [it, inserted] = relabel.try_emplace(raw, static_cast<NodeId>(relabel.size()));
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    if (rest.starts_with("# nodes ")) {
      // Header written by write_edge_list; preserves trailing isolated nodes.
      std::string_view header = rest.substr(8);
      const auto count = next_token(header);
      std::uint64_t declared = 0;
      if (std::from_chars(count.data(), count.data() + count.size(), declared).ec == std::errc()) {
        declared_nodes = declared;
      }
      continue;
    }
    if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    const auto first = next_token(rest);
    if (first.empty()) continue;
    const auto second = next_token(rest);
    if (second.empty()) throw ParseError(line_no, "expected two node ids");
    const auto u = parse_id(first, line_no);
    const auto v = parse_id(second, line_no);
    max_id = std::max({max_id, u, v});
    any = true;
    const auto a = map_id(u);
    const auto b = map_id(v);
    pairs.emplace_back(a, b);
  }

  std::size_t n = 0;
  if (any) n = options.compact_ids ? relabel.size() : static_cast<std::size_t>(max_id) + 1;
  if (!options.compact_ids) n = std::max<std::size_t>(n, declared_nodes);
  LoadResult result{Graph(n), 0, 0};
  for (auto [u, v] : pairs) {
    if (u == v) {
      ++result.self_loops_skipped;
    } else if (!result.graph.add_edge(u, v)) {
      ++result.duplicates_skipped;
    }
  }
  return result;
}

LoadResult load_edge_list_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  return load_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.first << ' ' << e.second << '\n';
}

}  // namespace epinet
