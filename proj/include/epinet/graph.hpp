#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace epinet {

using NodeId = std::uint32_t;

// Unordered pair, stored with first < second.
struct Edge {
  NodeId first;
  NodeId second;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph over dense node ids 0..node_count()-1.
//
// Self-loops and parallel edges are rejected at insertion, so every Graph
// value satisfies the simple-graph invariants by construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_keys_.size(); }

  // Returns false (and changes nothing) for self-loops and existing edges.
  bool add_edge(NodeId u, NodeId v);
  bool remove_edge(NodeId u, NodeId v);
  bool has_edge(NodeId u, NodeId v) const;

  std::span<const NodeId> neighbors(NodeId u) const { return adjacency_[u]; }
  std::size_t degree(NodeId u) const { return adjacency_[u].size(); }
  std::size_t max_degree() const;

  // Sorted list of all edges.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  static std::uint64_t key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  std::vector<std::vector<NodeId>> adjacency_;
  std::unordered_set<std::uint64_t> edge_keys_;
};

// Full structural scan: no self-loops, no duplicates, symmetric adjacency,
// degree sum equal to twice the edge count. Returns a description of the
// first violation, or nullopt when the graph is sound.
std::optional<std::string> find_invariant_violation(const Graph& g);

Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t leaves);  // centre is node 0

}  // namespace epinet
