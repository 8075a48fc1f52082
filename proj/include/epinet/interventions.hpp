#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "epinet/graph.hpp"

namespace epinet {

struct DegreeCap {
  std::size_t cap = 5;
};

struct ThinToDensity {
  double target = 0.0;
};

// A structural change applied to the contact network at trigger_time.
struct InterventionSpec {
  double trigger_time = 0.0;
  std::variant<DegreeCap, ThinToDensity> action;

  // Throws ParameterError on negative time or a target outside [0, 1].
  void validate() const;
};

// Lockdown: nodes are visited once in descending order of their initial
// degree (ties by id). A node whose current degree exceeds cap keeps `cap`
// of its incident edges, chosen by a seeded shuffle; the rest are deleted,
// lowering the neighbours' degrees immediately. Nodes already at or below
// the cap are left alone. Result: max degree <= cap, edges only removed.
Graph apply_degree_cap(const Graph& g, std::size_t cap, std::uint64_t seed);

// Removes uniformly random edges until the edge count is
// floor(target * n (n - 1) / 2). Throws ParameterError if target exceeds the
// current density.
Graph thin_to_density(const Graph& g, double target, std::uint64_t seed);

Graph apply_intervention(const Graph& g, const InterventionSpec& spec, std::uint64_t seed);

}  // namespace epinet
