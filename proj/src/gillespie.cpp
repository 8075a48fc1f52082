#include "epinet/gillespie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epinet/errors.hpp"

namespace epinet {
namespace {

// Set of small integers with O(1) insert, erase and uniform pick.
class IndexedSet {
 public:
  static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

  void reset(std::size_t universe) {
    items_.clear();
    position_.assign(universe, kAbsent);
  }
  void insert(std::uint32_t x) {
    if (position_[x] != kAbsent) return;
    position_[x] = static_cast<std::uint32_t>(items_.size());
    items_.push_back(x);
  }
  void erase(std::uint32_t x) {
    const auto at = position_[x];
    if (at == kAbsent) return;
    const auto last = items_.back();
    items_[at] = last;
    position_[last] = at;
    items_.pop_back();
    position_[x] = kAbsent;
  }
  std::size_t size() const { return items_.size(); }
  std::uint32_t pick(Rng& rng) const { return items_[rng.index(items_.size())]; }

 private:
  std::vector<std::uint32_t> items_;
  std::vector<std::uint32_t> position_;
};

// Network state with incremental S-I edge bookkeeping over a CSR view of the graph.
class NetworkSystem {
 public:
  NetworkSystem(const Graph& g, const CompartmentState& init) : labels_(init.labels) {
    infected_.reset(labels_.size());
    recovered_.reset(labels_.size());
    for (NodeId u = 0; u < labels_.size(); ++u) {
      if (labels_[u] == Compartment::Infected) infected_.insert(u);
      if (labels_[u] == Compartment::Recovered) recovered_.insert(u);
    }
    counts_ = init.counts;
    rebuild(g);
  }

  // Recomputes the CSR arrays and the S-I edge set for a (possibly new) graph.
  void rebuild(const Graph& g) {
    endpoints_ = g.edges();
    const auto n = labels_.size();
    offsets_.assign(n + 1, 0);
    for (const auto& e : endpoints_) {
      ++offsets_[e.first + 1];
      ++offsets_[e.second + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    slots_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    si_.reset(endpoints_.size());
    for (std::uint32_t id = 0; id < endpoints_.size(); ++id) {
      const auto [a, b] = endpoints_[id];
      slots_[fill[a]++] = {b, id};
      slots_[fill[b]++] = {a, id};
      if (is_si(a, b)) si_.insert(id);
    }
  }

  EventRates rates(const RateParams& p, Model model) const {
    EventRates r;
    r.infection = p.beta * static_cast<double>(si_.size());
    r.recovery = p.gamma * static_cast<double>(counts_.infected);
    if (model == Model::SIRS) r.waning = p.alpha * static_cast<double>(counts_.recovered);
    return r;
  }

  NodeId apply(EventKind kind, Rng& rng) {
    switch (kind) {
      case EventKind::Infection: {
        const auto [a, b] = endpoints_[si_.pick(rng)];
        const NodeId target = labels_[a] == Compartment::Susceptible ? a : b;
        infect(target);
        return target;
      }
      case EventKind::Recovery: {
        const NodeId u = infected_.pick(rng);
        recover(u);
        return u;
      }
      case EventKind::Waning: {
        const NodeId u = recovered_.pick(rng);
        wane(u);
        return u;
      }
    }
    return 0;
  }

  const Counts& counts() const { return counts_; }

 private:
  struct Slot {
    NodeId neighbor;
    std::uint32_t edge;
  };

  bool is_si(NodeId a, NodeId b) const {
    return (labels_[a] == Compartment::Susceptible && labels_[b] == Compartment::Infected) ||
           (labels_[a] == Compartment::Infected && labels_[b] == Compartment::Susceptible);
  }

  std::span<const Slot> slots_of(NodeId u) const {
    return std::span<const Slot>(slots_).subspan(offsets_[u], offsets_[u + 1] - offsets_[u]);
  }

  void infect(NodeId u) {
    labels_[u] = Compartment::Infected;
    --counts_.susceptible;
    ++counts_.infected;
    infected_.insert(u);
    for (const auto& s : slots_of(u)) {
      if (labels_[s.neighbor] == Compartment::Susceptible) si_.insert(s.edge);
      else if (labels_[s.neighbor] == Compartment::Infected) si_.erase(s.edge);
    }
  }

  void recover(NodeId u) {
    labels_[u] = Compartment::Recovered;
    --counts_.infected;
    ++counts_.recovered;
    infected_.erase(u);
    recovered_.insert(u);
    for (const auto& s : slots_of(u)) {
      if (labels_[s.neighbor] == Compartment::Susceptible) si_.erase(s.edge);
    }
  }

  void wane(NodeId u) {
    labels_[u] = Compartment::Susceptible;
    --counts_.recovered;
    ++counts_.susceptible;
    recovered_.erase(u);
    for (const auto& s : slots_of(u)) {
      if (labels_[s.neighbor] == Compartment::Infected) si_.insert(s.edge);
    }
  }

  std::vector<Compartment> labels_;
  Counts counts_;
  std::vector<Edge> endpoints_;
  std::vector<std::size_t> offsets_;
  std::vector<Slot> slots_;
  IndexedSet infected_;
  IndexedSet recovered_;
  IndexedSet si_;
};

class WellMixedSystem {
 public:
  WellMixedSystem(std::size_t n, double k_avg, const Counts& init)
      : n_(static_cast<double>(n)), k_avg_(k_avg), counts_(init) {}

  EventRates rates(const RateParams& p, Model model) const {
    EventRates r;
    r.infection = p.beta * k_avg_ * static_cast<double>(counts_.susceptible) *
                  static_cast<double>(counts_.infected) / n_;
    r.recovery = p.gamma * static_cast<double>(counts_.infected);
    if (model == Model::SIRS) r.waning = p.alpha * static_cast<double>(counts_.recovered);
    return r;
  }

  NodeId apply(EventKind kind, Rng&) {
    switch (kind) {
      case EventKind::Infection: --counts_.susceptible; ++counts_.infected; break;
      case EventKind::Recovery: --counts_.infected; ++counts_.recovered; break;
      case EventKind::Waning: --counts_.recovered; ++counts_.susceptible; break;
    }
    return 0;
  }

  const Counts& counts() const { return counts_; }

 private:
  double n_;
  double k_avg_;
  Counts counts_;
};

Model resolve_model(const RateParams& p, const RunOptions& options) {
  if (options.model) return *options.model;
  return p.alpha > 0.0 ? Model::SIRS : Model::SIR;
}

void check_horizon(double t_max) {
  if (!(t_max > 0.0) || std::isnan(t_max)) throw ParameterError("t_max must be > 0");
}

// Shared event loop. on_trigger(spec, index) transforms the system in place.
template <typename System, typename OnTrigger>
void run_loop(System& system, const RateParams& p, Model model, double t_max,
              std::uint64_t seed, const RunOptions& options, Trajectory& traj,
              std::vector<EventRecord>* log, OnTrigger&& on_trigger) {
  const std::size_t stride = std::max<std::size_t>(1, options.record_stride);
  std::vector<InterventionSpec> schedule = options.interventions;
  std::stable_sort(schedule.begin(), schedule.end(), [](const auto& a, const auto& b) {
    return a.trigger_time < b.trigger_time;
  });

  Rng rng(seed);
  double t = 0.0;
  double last_event_time = 0.0;
  std::size_t next_trigger = 0;
  traj.samples.push_back({0.0, system.counts()});

  while (true) {
    const auto rates = system.rates(p, model);
    const auto tau = sample_waiting_time(rates.total(), rng);
    if (next_trigger < schedule.size()) {
      const auto& spec = schedule[next_trigger];
      if (spec.trigger_time <= t_max && (!tau || t + *tau >= spec.trigger_time)) {
        // The pending event is discarded; memorylessness keeps this exact.
        t = std::max(t, spec.trigger_time);
        on_trigger(spec, next_trigger);
        traj.intervention_times.push_back(t);
        ++next_trigger;
        continue;
      }
    }
    if (!tau || t + *tau > t_max) break;
    t += *tau;
    last_event_time = t;
    const auto kind = *select_event(rates, rng);
    const NodeId node = system.apply(kind, rng);
    ++traj.total_events;
    if (log) log->push_back({t, kind, node});
    if (traj.total_events % stride == 0) traj.samples.push_back({t, system.counts()});
  }
  if (traj.total_events % stride != 0) traj.samples.push_back({last_event_time, system.counts()});
}

Trajectory network_run(const Graph& g, const RateParams& p, const CompartmentState& init,
                       double t_max, std::uint64_t seed, const RunOptions& options,
                       std::vector<EventRecord>* log) {
  p.validate();
  check_horizon(t_max);
  for (const auto& spec : options.interventions) spec.validate();
  try {
    check_consistency(g, init);
  } catch (const StateError& e) {
    throw StateError(std::string("inconsistent initial state: ") + e.what());
  }

  Trajectory traj;
  traj.engine = EngineKind::NetworkGillespie;
  traj.seed = seed;
  traj.population = g.node_count();

  NetworkSystem system(g, init);
  std::optional<Graph> working;
  auto on_trigger = [&](const InterventionSpec& spec, std::size_t index) {
    const Graph& current = working ? *working : g;
    working = apply_intervention(current, spec, mix_seed(seed, 1000 + index));
    system.rebuild(*working);
  };
  run_loop(system, p, resolve_model(p, options), t_max, seed, options, traj, log, on_trigger);
  return traj;
}

}  // namespace

Trajectory gillespie_run(const Graph& g, const RateParams& p, const CompartmentState& init,
                         double t_max, std::uint64_t seed, const RunOptions& options) {
  return network_run(g, p, init, t_max, seed, options, nullptr);
}

Trajectory gillespie_run_logged(const Graph& g, const RateParams& p, const CompartmentState& init,
                                double t_max, std::uint64_t seed, const RunOptions& options,
                                std::vector<EventRecord>& log) {
  log.clear();
  return network_run(g, p, init, t_max, seed, options, &log);
}

Trajectory gillespie_well_mixed(std::size_t n, double k_avg, const RateParams& p,
                                const Counts& init, double t_max, std::uint64_t seed,
                                const RunOptions& options) {
  p.validate();
  check_horizon(t_max);
  if (n == 0) throw ParameterError("population must be > 0");
  if (!(k_avg >= 0.0) || !std::isfinite(k_avg)) throw ParameterError("k_avg must be finite and >= 0");
  if (init.total() != n) throw StateError("initial counts do not sum to the population");
  if (!options.interventions.empty()) {
    throw ParameterError("structural interventions need a network; the well-mixed engine has none");
  }

  Trajectory traj;
  traj.engine = EngineKind::WellMixedGillespie;
  traj.seed = seed;
  traj.population = n;
  WellMixedSystem system(n, k_avg, init);
  run_loop(system, p, resolve_model(p, options), t_max, seed, options, traj, nullptr,
           [](const InterventionSpec&, std::size_t) {});
  return traj;
}

}  // namespace epinet
