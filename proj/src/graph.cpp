#include "epinet/graph.hpp"

#include <algorithm>
#include <set>

namespace epinet {

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

bool Graph::add_edge(NodeId u, NodeId v) {
  if (u == v) return false;
  if (!edge_keys_.insert(key(u, v)).second) return false;
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  return true;
}

bool Graph::remove_edge(NodeId u, NodeId v) {
  if (edge_keys_.erase(key(u, v)) == 0) return false;
  auto drop = [](std::vector<NodeId>& list, NodeId x) {
    list.erase(std::find(list.begin(), list.end(), x));
  };
  drop(adjacency_[u], v);
  drop(adjacency_[v], u);
  return true;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  return u != v && edge_keys_.contains(key(u, v));
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.node_count() == b.node_count() && a.edge_count() == b.edge_count() &&
         a.edges() == b.edges();
}

std::optional<std::string> find_invariant_violation(const Graph& g) {
  std::set<std::pair<NodeId, NodeId>> seen;
  std::size_t degree_sum = 0;
  const auto n = g.node_count();
  for (NodeId u = 0; u < n; ++u) {
    degree_sum += g.degree(u);
    for (NodeId v : g.neighbors(u)) {
      if (v >= n) return "neighbor id " + std::to_string(v) + " out of range";
      if (u == v) return "self-loop at node " + std::to_string(u);
      if (!seen.emplace(u, v).second) {
        return "duplicate edge " + std::to_string(u) + "-" + std::to_string(v);
      }
      const auto back = g.neighbors(v);
      if (std::find(back.begin(), back.end(), u) == back.end()) {
        return "asymmetric adjacency " + std::to_string(u) + "->" + std::to_string(v);
      }
    }
  }
  if (degree_sum != 2 * g.edge_count()) return "degree sum differs from 2|E|";
  return std::nullopt;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (NodeId v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

}  // namespace epinet
