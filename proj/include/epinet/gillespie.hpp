#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "epinet/epidemic.hpp"
#include "epinet/graph.hpp"
#include "epinet/interventions.hpp"

namespace epinet {

struct RunOptions {
  // Defaults to SIRS when alpha > 0, SIR otherwise.
  std::optional<Model> model;
  // Applied to the network in trigger order. The well-mixed engine rejects them.
  std::vector<InterventionSpec> interventions;
  // Record every stride-th event (the initial and final states are always kept).
  std::size_t record_stride = 1;
};

// Exact stochastic simulation on a contact network. Each step draws the
// waiting time from the total propensity, then the event class in
// proportion to its propensity. Infections pick a uniform S-I edge;
// recoveries and waning pick a uniform eligible node. Stops at t_max or
// when no event is possible.
//
// When an intervention trigger falls before the next event, that pending
// event is discarded, time jumps to the trigger, the network is transformed
// and propensities are rebuilt.
Trajectory gillespie_run(const Graph& g, const RateParams& p, const CompartmentState& init,
                         double t_max, std::uint64_t seed, const RunOptions& options = {});

// Mass-action variant: infection propensity beta * k_avg * N_S * N_I / n,
// so that the threshold sits at beta * k_avg / gamma = 1.
Trajectory gillespie_well_mixed(std::size_t n, double k_avg, const RateParams& p,
                                const Counts& init, double t_max, std::uint64_t seed,
                                const RunOptions& options = {});

// One applied transition of the network engine.
struct EventRecord {
  double t = 0.0;
  EventKind kind = EventKind::Infection;
  NodeId node = 0;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// Same as gillespie_run but also returns the full event log.
Trajectory gillespie_run_logged(const Graph& g, const RateParams& p, const CompartmentState& init,
                                double t_max, std::uint64_t seed, const RunOptions& options,
                                std::vector<EventRecord>& log);

}  // namespace epinet
