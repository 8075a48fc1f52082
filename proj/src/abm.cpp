#include "epinet/abm.hpp"

#include <vector>

#include "epinet/errors.hpp"
#include "epinet/rng.hpp"

namespace epinet {

Trajectory abm_run(std::size_t n, const RateParams& p, const Counts& init, std::size_t steps,
                   std::uint64_t seed) {
  p.validate();
  if (p.alpha != 0.0) throw ParameterError("the agent-based engine is SIR only; alpha must be 0");
  if (p.gamma > 1.0) throw ProbabilityError("recovery probability gamma exceeds 1");
  if (n == 0) throw ParameterError("population must be > 0");
  if (init.total() != n) throw StateError("initial counts do not sum to the population");

  // Agents are interchangeable, so the initial labels are laid out in blocks.
  std::vector<Compartment> agents;
  agents.reserve(n);
  agents.insert(agents.end(), init.susceptible, Compartment::Susceptible);
  agents.insert(agents.end(), init.infected, Compartment::Infected);
  agents.insert(agents.end(), init.recovered, Compartment::Recovered);

  Trajectory traj;
  traj.engine = EngineKind::AgentBased;
  traj.seed = seed;
  traj.population = n;
  Counts counts = init;
  traj.samples.push_back({0.0, counts});

  Rng rng(seed);
  const double population = static_cast<double>(n);
  for (std::size_t step = 1; step <= steps && counts.infected > 0; ++step) {
    const double p_infect = p.beta * static_cast<double>(counts.infected) / population;
    if (p_infect > 1.0) throw ProbabilityError("infection probability beta * I / N exceeds 1");
    Counts next = counts;
    for (auto& a : agents) {
      if (a == Compartment::Susceptible) {
        if (rng.bernoulli(p_infect)) {
          a = Compartment::Infected;
          --next.susceptible;
          ++next.infected;
          ++traj.total_events;
        }
      } else if (a == Compartment::Infected) {
        if (rng.bernoulli(p.gamma)) {
          a = Compartment::Recovered;
          --next.infected;
          ++next.recovered;
          ++traj.total_events;
        }
      }
    }
    counts = next;
    traj.samples.push_back({static_cast<double>(step), counts});
  }
  return traj;
}

}  // namespace epinet
