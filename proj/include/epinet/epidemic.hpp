#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "epinet/graph.hpp"
#include "epinet/rng.hpp"

namespace epinet {

// Numeric values follow the agent-state encoding 1 = S, 2 = I, 3 = R.
enum class Compartment : std::uint8_t { Susceptible = 1, Infected = 2, Recovered = 3 };

struct RateParams {
  double beta = 0.0;   // infection rate per S-I contact
  double gamma = 0.0;  // recovery rate per infected
  double alpha = 0.0;  // waning-immunity rate per recovered; 0 gives SIR

  // Throws ParameterError on negative or non-finite rates.
  void validate() const;
};

enum class Model { SIR, SIRS };

struct Counts {
  std::size_t susceptible = 0;
  std::size_t infected = 0;
  std::size_t recovered = 0;

  std::size_t total() const { return susceptible + infected + recovered; }
  friend bool operator==(const Counts&, const Counts&) = default;
};

// Per-node labels on a network plus the cached S-I edge count.
struct CompartmentState {
  std::vector<Compartment> labels;
  Counts counts;
  std::size_t si_edges = 0;
};

// Either an absolute number of initial infected or a fraction of N.
struct InitialInfected {
  std::variant<std::size_t, double> amount;

  static InitialInfected count(std::size_t c) { return {c}; }
  static InitialInfected fraction(double f) { return {f}; }

  // round(fraction * n), at least 1; throws ParameterError when out of range.
  std::size_t resolve(std::size_t n) const;
};

struct EventRates {
  double infection = 0.0;
  double recovery = 0.0;
  double waning = 0.0;

  double total() const { return infection + recovery + waning; }
};

enum class EventKind { Infection, Recovery, Waning };

// Uniformly chosen initial infected nodes; everything else susceptible.
CompartmentState init_state(const Graph& g, InitialInfected initial, std::uint64_t seed);

// Recounts S-I edges from scratch.
std::size_t count_si_edges(const Graph& g, std::span<const Compartment> labels);

// Throws StateError if labels, counts or the S-I cache disagree with g.
void check_consistency(const Graph& g, const CompartmentState& s);

// a_infection = beta * (S-I edges), a_recovery = gamma * N_I, a_waning = alpha * N_R.
EventRates compute_event_rates(const CompartmentState& s, const RateParams& p,
                               Model model = Model::SIRS);

// Exponential waiting time -ln(u) / a_total. nullopt signals an absorbing
// state (a_total <= 0).
std::optional<double> sample_waiting_time(double a_total, Rng& rng);
std::optional<double> waiting_time_from_uniform(double a_total, double u);

// Event class with probability a_v / a_total; nullopt when a_total <= 0.
std::optional<EventKind> select_event(const EventRates& rates, Rng& rng);
// u in [0, 1) selects the class by cumulative propensity.
std::optional<EventKind> select_event_from_uniform(const EventRates& rates, double u);

enum class EngineKind { NetworkGillespie, WellMixedGillespie, AgentBased };

std::string to_string(EngineKind kind);

struct Sample {
  double t = 0.0;
  Counts counts;
};

struct Trajectory {
  EngineKind engine = EngineKind::NetworkGillespie;
  std::uint64_t seed = 0;
  std::size_t population = 0;
  std::vector<Sample> samples;  // strictly increasing t
  std::size_t total_events = 0;
  std::vector<double> intervention_times;  // triggers actually applied
};

struct TrajectorySummary {
  double peak_infected_fraction = 0.0;
  double peak_time = 0.0;
  double final_recovered_fraction = 0.0;
  std::size_t total_events = 0;
};

// Throws std::invalid_argument for an empty trajectory.
TrajectorySummary summarize_trajectory(const Trajectory& t);

// Counts in force at time t (trajectories are piecewise constant).
Counts counts_at(const Trajectory& traj, double t);

// Largest N_I / N over [t0, t1], including the value carried into t0.
double max_infected_fraction(const Trajectory& traj, double t0, double t1);

// "t,S,I,R" with integer counts, one row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace epinet
