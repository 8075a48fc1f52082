#pragma once

#include <cstdint>

#include "epinet/epidemic.hpp"
#include "epinet/experiments.hpp"
#include "epinet/graph.hpp"
#include "epinet/interventions.hpp"
#include "json.hpp"

namespace epinet {

// {"nodes", "edges", "avg_degree", "density", "power_law_exponent", "scale_free"};
// density and power_law_exponent are null when undefined.
nlohmann::json metrics_report(const Graph& g);

// {"peak_infected_fraction", "peak_time", "final_recovered_fraction", "seed"}
nlohmann::json summary_json(const TrajectorySummary& summary, std::uint64_t seed);

// {"t": 3.0, "action": "degree_cap", "cap": 5} or {"t": 3.0, "action": "thin", "target": 0.003}
nlohmann::json intervention_json(const InterventionSpec& spec);
// Throws std::invalid_argument naming the offending key.
InterventionSpec parse_intervention(const nlohmann::json& j, const std::string& path = "intervention");

nlohmann::json network_source_json(const NetworkSource& source);
nlohmann::json sweep_spec_json(const SweepSpec& spec);

}  // namespace epinet
