#include "epinet/interventions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "epinet/errors.hpp"
#include "epinet/metrics.hpp"
#include "epinet/rng.hpp"

namespace epinet {

void InterventionSpec::validate() const {
  if (!(trigger_time >= 0.0)) throw ParameterError("intervention trigger time must be >= 0");
  if (const auto* thin = std::get_if<ThinToDensity>(&action)) {
    if (!(thin->target >= 0.0 && thin->target <= 1.0)) {
      throw ParameterError("thinning target density must lie in [0, 1]");
    }
  }
}

Graph apply_degree_cap(const Graph& g, std::size_t cap, std::uint64_t seed) {
  Graph out = g;
  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });

  Rng rng(seed);
  std::vector<NodeId> incident;
  for (NodeId u : order) {
    if (out.degree(u) <= cap) continue;
    const auto nbrs = out.neighbors(u);
    incident.assign(nbrs.begin(), nbrs.end());
    std::sort(incident.begin(), incident.end());
    rng.shuffle(incident.begin(), incident.end());
    for (std::size_t i = cap; i < incident.size(); ++i) out.remove_edge(u, incident[i]);
  }
  return out;
}

Graph thin_to_density(const Graph& g, double target, std::uint64_t seed) {
  if (!(target >= 0.0 && target <= 1.0)) throw ParameterError("target density must lie in [0, 1]");
  const auto n = static_cast<double>(g.node_count());
  const double pairs = n * (n - 1.0) / 2.0;
  const double current = g.node_count() < 2 ? 0.0 : density(g);
  if (target > current) throw ParameterError("target density exceeds the current density");
  // Nudge before flooring so that target == current keeps every edge.
  const auto keep = static_cast<std::size_t>(std::floor(target * pairs + 1e-9));
  if (keep >= g.edge_count()) return g;

  auto edges = g.edges();
  Rng rng(seed);
  rng.shuffle(edges.begin(), edges.end());
  Graph out = g;
  for (std::size_t i = keep; i < edges.size(); ++i) out.remove_edge(edges[i].first, edges[i].second);
  return out;
}

Graph apply_intervention(const Graph& g, const InterventionSpec& spec, std::uint64_t seed) {
  if (const auto* cap = std::get_if<DegreeCap>(&spec.action)) {
    return apply_degree_cap(g, cap->cap, seed);
  }
  return thin_to_density(g, std::get<ThinToDensity>(spec.action).target, seed);
}

}  // namespace epinet
