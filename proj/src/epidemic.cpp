#include "epinet/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "epinet/errors.hpp"
#include "format.hpp"

namespace epinet {

void RateParams::validate() const {
  auto ok = [](double x) { return std::isfinite(x) && x >= 0.0; };
  if (!ok(beta)) throw ParameterError("beta must be finite and >= 0");
  if (!ok(gamma)) throw ParameterError("gamma must be finite and >= 0");
  if (!ok(alpha)) throw ParameterError("alpha must be finite and >= 0");
}

std::size_t InitialInfected::resolve(std::size_t n) const {
  if (const auto* c = std::get_if<std::size_t>(&amount)) {
    if (*c == 0 || *c > n) throw ParameterError("initial infected count must lie in [1, N]");
    return *c;
  }
  const double f = std::get<double>(amount);
  if (!(f > 0.0 && f <= 1.0)) throw ParameterError("initial infected fraction must lie in (0, 1]");
  if (n == 0) throw ParameterError("cannot seed infections in an empty population");
  const auto c = static_cast<std::size_t>(std::llround(f * static_cast<double>(n)));
  return std::clamp<std::size_t>(c, 1, n);
}

CompartmentState init_state(const Graph& g, InitialInfected initial, std::uint64_t seed) {
  const auto n = g.node_count();
  const auto infected = initial.resolve(n);
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  Rng rng(seed);
  // Partial Fisher-Yates: the first `infected` slots become a uniform subset.
  for (std::size_t i = 0; i < infected; ++i) {
    const auto j = i + rng.index(n - i);
    std::swap(ids[i], ids[j]);
  }
  CompartmentState s;
  s.labels.assign(n, Compartment::Susceptible);
  for (std::size_t i = 0; i < infected; ++i) s.labels[ids[i]] = Compartment::Infected;
  s.counts = {n - infected, infected, 0};
  s.si_edges = count_si_edges(g, s.labels);
  return s;
}

std::size_t count_si_edges(const Graph& g, std::span<const Compartment> labels) {
  std::size_t count = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (labels[u] != Compartment::Susceptible) continue;
    for (NodeId v : g.neighbors(u)) count += labels[v] == Compartment::Infected;
  }
  return count;
}

void check_consistency(const Graph& g, const CompartmentState& s) {
  if (s.labels.size() != g.node_count()) throw StateError("label count differs from node count");
  Counts recount;
  for (auto label : s.labels) {
    switch (label) {
      case Compartment::Susceptible: ++recount.susceptible; break;
      case Compartment::Infected: ++recount.infected; break;
      case Compartment::Recovered: ++recount.recovered; break;
      default: throw StateError("label outside {S, I, R}");
    }
  }
  if (!(recount == s.counts)) throw StateError("compartment counts disagree with labels");
  if (count_si_edges(g, s.labels) != s.si_edges) throw StateError("cached S-I edge count is stale");
}

EventRates compute_event_rates(const CompartmentState& s, const RateParams& p, Model model) {
  EventRates r;
  r.infection = p.beta * static_cast<double>(s.si_edges);
  r.recovery = p.gamma * static_cast<double>(s.counts.infected);
  if (model == Model::SIRS) r.waning = p.alpha * static_cast<double>(s.counts.recovered);
  return r;
}

std::optional<double> waiting_time_from_uniform(double a_total, double u) {
  if (!(a_total > 0.0)) return std::nullopt;
  return -std::log(u) / a_total;
}

std::optional<double> sample_waiting_time(double a_total, Rng& rng) {
  if (!(a_total > 0.0)) return std::nullopt;
  return waiting_time_from_uniform(a_total, rng.uniform_open());
}

std::optional<EventKind> select_event_from_uniform(const EventRates& rates, double u) {
  const double total = rates.total();
  if (!(total > 0.0)) return std::nullopt;
  const double x = u * total;
  if (x < rates.infection) return EventKind::Infection;
  if (x < rates.infection + rates.recovery || rates.waning <= 0.0) {
    // Rounding can push x onto the total; fall back to the last non-zero class.
    return rates.recovery > 0.0 ? EventKind::Recovery : EventKind::Infection;
  }
  return EventKind::Waning;
}

std::optional<EventKind> select_event(const EventRates& rates, Rng& rng) {
  if (!(rates.total() > 0.0)) return std::nullopt;
  return select_event_from_uniform(rates, rng.uniform());
}

std::string to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::NetworkGillespie: return "network-gillespie";
    case EngineKind::WellMixedGillespie: return "well-mixed-gillespie";
    case EngineKind::AgentBased: return "abm";
  }
  return "unknown";
}

TrajectorySummary summarize_trajectory(const Trajectory& t) {
  if (t.samples.empty()) throw std::invalid_argument("cannot summarize an empty trajectory");
  if (t.population == 0) throw std::invalid_argument("trajectory has zero population");
  const auto n = static_cast<double>(t.population);
  TrajectorySummary out;
  std::size_t peak = t.samples.front().counts.infected;
  out.peak_time = t.samples.front().t;
  for (const auto& s : t.samples) {
    if (s.counts.infected > peak) {
      peak = s.counts.infected;
      out.peak_time = s.t;
    }
  }
  out.peak_infected_fraction = static_cast<double>(peak) / n;
  out.final_recovered_fraction = static_cast<double>(t.samples.back().counts.recovered) / n;
  out.total_events = t.total_events;
  return out;
}

Counts counts_at(const Trajectory& traj, double t) {
  auto it = std::upper_bound(traj.samples.begin(), traj.samples.end(), t,
                             [](double x, const Sample& s) { return x < s.t; });
  if (it == traj.samples.begin()) return traj.samples.front().counts;
  return std::prev(it)->counts;
}

double max_infected_fraction(const Trajectory& traj, double t0, double t1) {
  if (traj.samples.empty() || traj.population == 0) return 0.0;
  std::size_t best = counts_at(traj, t0).infected;
  auto it = std::upper_bound(traj.samples.begin(), traj.samples.end(), t0,
                             [](double x, const Sample& s) { return x < s.t; });
  for (; it != traj.samples.end() && it->t <= t1; ++it) best = std::max(best, it->counts.infected);
  return static_cast<double>(best) / static_cast<double>(traj.population);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,S,I,R\n";
  for (const auto& s : traj.samples) {
    out << format_double(s.t) << ',' << s.counts.susceptible << ',' << s.counts.infected << ','
        << s.counts.recovered << '\n';
  }
}

}  // namespace epinet
