#pragma once

#include <cstddef>
#include <cstdint>

#include "epinet/epidemic.hpp"

namespace epinet {

// Discrete-time, well-mixed agent-based SIR. Every step, each susceptible
// agent becomes infected with probability beta * I(t) / N and each infected
// agent recovers with probability gamma; I(t) is read before any update.
// Samples are taken at integer times 0..steps (stopping early once no agent
// is infected).
//
// Throws ProbabilityError when gamma > 1 or beta * I(t) / N > 1 at some
// step, ParameterError for alpha != 0 (the update has no waning branch).
Trajectory abm_run(std::size_t n, const RateParams& p, const Counts& init, std::size_t steps,
                   std::uint64_t seed);

}  // namespace epinet
