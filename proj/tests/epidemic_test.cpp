#include <doctest.h>

#include <cmath>
#include <sstream>

#include "epinet/abm.hpp"
#include "epinet/errors.hpp"
#include "epinet/generators.hpp"
#include "epinet/gillespie.hpp"
#include "epinet/interventions.hpp"
#include "epinet/rng.hpp"

using namespace epinet;

namespace {

CompartmentState triangle_state() {
  Graph g = complete_graph(3);
  CompartmentState s;
  s.labels = {Compartment::Infected, Compartment::Susceptible, Compartment::Susceptible};
  s.counts = {2, 1, 0};
  s.si_edges = count_si_edges(g, s.labels);
  return s;
}

// Replays an event log on the initial labels and checks every step.
void replay(const Graph& g, CompartmentState s, const std::vector<EventRecord>& log, Model model) {
  double last = 0.0;
  for (const auto& ev : log) {
    REQUIRE(ev.t >= last);
    last = ev.t;
    auto& label = s.labels[ev.node];
    switch (ev.kind) {
      case EventKind::Infection:
        REQUIRE(label == Compartment::Susceptible);
        label = Compartment::Infected;
        --s.counts.susceptible;
        ++s.counts.infected;
        break;
      case EventKind::Recovery:
        REQUIRE(label == Compartment::Infected);
        label = Compartment::Recovered;
        --s.counts.infected;
        ++s.counts.recovered;
        break;
      case EventKind::Waning:
        REQUIRE(model == Model::SIRS);
        REQUIRE(label == Compartment::Recovered);
        label = Compartment::Susceptible;
        --s.counts.recovered;
        ++s.counts.susceptible;
        break;
    }
    REQUIRE(s.counts.total() == g.node_count());
  }
  s.si_edges = count_si_edges(g, s.labels);
  CHECK_NOTHROW(check_consistency(g, s));
}

std::string csv(const Trajectory& t) {
  std::ostringstream out;
  write_trajectory_csv(out, t);
  return out.str();
}

}  // namespace

TEST_CASE("event rates on a triangle") {
  const Graph g = complete_graph(3);
  CompartmentState s;
  s.labels = {Compartment::Infected, Compartment::Susceptible, Compartment::Susceptible};
  s.counts = {2, 1, 0};
  s.si_edges = count_si_edges(g, s.labels);
  CHECK(s.si_edges == 2);
  const auto r = compute_event_rates(s, {0.5, 1.0, 0.0});
  CHECK(r.infection == 1.0);
  CHECK(r.recovery == 1.0);
  CHECK(r.total() == 2.0);

  CompartmentState all_r;
  all_r.labels.assign(10, Compartment::Recovered);
  all_r.counts = {0, 0, 10};
  const auto w = compute_event_rates(all_r, {0.3, 1.0, 0.2});
  CHECK(w.total() == doctest::Approx(2.0));
  CHECK(w.waning == w.total());
  CHECK(compute_event_rates(all_r, {0.3, 1.0, 0.2}, Model::SIR).total() == 0.0);
}

TEST_CASE("S-I edge cache matches a recount mid-epidemic") {
  const Graph g = generate_er(50, 0.15, 3);
  Rng rng(8);
  CompartmentState s;
  for (NodeId u = 0; u < 50; ++u) {
    const auto c = static_cast<Compartment>(1 + rng.index(3));
    s.labels.push_back(c);
    if (c == Compartment::Susceptible) ++s.counts.susceptible;
    if (c == Compartment::Infected) ++s.counts.infected;
    if (c == Compartment::Recovered) ++s.counts.recovered;
  }
  std::size_t brute = 0;
  for (const auto& e : g.edges()) {
    const auto a = s.labels[e.first];
    const auto b = s.labels[e.second];
    brute += (a == Compartment::Susceptible && b == Compartment::Infected) ||
             (a == Compartment::Infected && b == Compartment::Susceptible);
  }
  s.si_edges = count_si_edges(g, s.labels);
  CHECK(s.si_edges == brute);
  CHECK(compute_event_rates(s, {0.3, 1, 0}).infection == doctest::Approx(0.3 * brute));
  s.si_edges += 1;
  CHECK_THROWS_AS(check_consistency(g, s), StateError);
}

TEST_CASE("waiting time") {
  CHECK(*waiting_time_from_uniform(2.0, std::exp(-2.0)) == doctest::Approx(1.0));
  CHECK_FALSE(waiting_time_from_uniform(0.0, 0.5));
  Rng rng(1);
  CHECK_FALSE(sample_waiting_time(0.0, rng));
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += *sample_waiting_time(1.0, rng);
  CHECK(std::abs(sum / n - 1.0) < 3.0 / std::sqrt(double(n)));
}

TEST_CASE("event selection") {
  CHECK(*select_event_from_uniform({1, 3, 0}, 0.24) == EventKind::Infection);
  CHECK(*select_event_from_uniform({1, 3, 0}, 0.26) == EventKind::Recovery);
  CHECK(*select_event_from_uniform({1, 3, 0}, 0.999999) == EventKind::Recovery);
  CHECK_FALSE(select_event_from_uniform({0, 0, 0}, 0.5));

  Rng rng(5);
  for (int i = 0; i < 1000; ++i) CHECK(*select_event({5, 0, 0}, rng) == EventKind::Infection);

  const EventRates r{1, 1, 2};
  const double expected[3] = {0.25, 0.25, 0.5};
  int hits[3] = {0, 0, 0};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++hits[static_cast<int>(*select_event(r, rng))];
  for (int k = 0; k < 3; ++k) {
    const double sigma = std::sqrt(n * expected[k] * (1 - expected[k]));
    CHECK(std::abs(hits[k] - n * expected[k]) < 3 * sigma);
  }
}

TEST_CASE("initial infected") {
  const Graph tri = complete_graph(3);
  const auto s = init_state(tri, InitialInfected::count(1), 1);
  CHECK(s.counts == Counts{2, 1, 0});
  CHECK(s.si_edges == 2);

  const Graph g = generate_er(1000, 0.01, 2);
  CHECK(init_state(g, InitialInfected::fraction(0.01), 3).counts.infected == 10);
  const auto all = init_state(g, InitialInfected::fraction(1.0), 3);
  CHECK(all.counts.infected == 1000);
  CHECK(all.si_edges == 0);
  CHECK(InitialInfected::fraction(0.0001).resolve(1000) == 1);
  CHECK_THROWS_AS(init_state(g, InitialInfected::fraction(1.5), 3), ParameterError);
  CHECK_THROWS_AS(init_state(tri, InitialInfected::count(4), 3), ParameterError);
}

TEST_CASE("pure death process") {
  const Graph g = generate_er(100, 0.05, 1);
  const auto init = init_state(g, InitialInfected::count(10), 2);
  const auto t = gillespie_run(g, {0.0, 1.0, 0.0}, init, 1000.0, 3);
  CHECK(t.samples.back().counts == Counts{90, 0, 10});
  CHECK(t.total_events == 10);
  const auto sum = summarize_trajectory(t);
  CHECK(sum.peak_infected_fraction == doctest::Approx(0.1));
  CHECK(sum.peak_time == 0.0);
}

TEST_CASE("event log replays consistently and scope matches the labels") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = generate_ba(200, 3, seed);
    const auto init = init_state(g, InitialInfected::fraction(0.05), seed);
    const RateParams p{0.4, 1.0, seed % 2 ? 0.3 : 0.0};
    const Model model = p.alpha > 0 ? Model::SIRS : Model::SIR;
    std::vector<EventRecord> log;
    const auto t = gillespie_run_logged(g, p, init, 30.0, seed, {}, log);
    CHECK(log.size() == t.total_events);
    replay(g, init, log, model);

    std::vector<Compartment> labels = init.labels;
    for (const auto& ev : log)
      labels[ev.node] = ev.kind == EventKind::Infection  ? Compartment::Infected
                        : ev.kind == EventKind::Recovery ? Compartment::Recovered
                                                         : Compartment::Susceptible;
    const auto recovered = std::count(labels.begin(), labels.end(), Compartment::Recovered);
    CHECK(summarize_trajectory(t).final_recovered_fraction == doctest::Approx(recovered / 200.0));
  }
}

TEST_CASE("SIRS with alpha = 0 reproduces SIR exactly") {
  const Graph g = generate_er(500, 0.02, 4);
  const auto init = init_state(g, InitialInfected::fraction(0.02), 5);
  std::vector<EventRecord> sir_log, sirs_log;
  RunOptions sir, sirs;
  sir.model = Model::SIR;
  sirs.model = Model::SIRS;
  const auto a = gillespie_run_logged(g, {0.3, 1.0, 0.0}, init, 50.0, 6, sir, sir_log);
  const auto b = gillespie_run_logged(g, {0.3, 1.0, 0.0}, init, 50.0, 6, sirs, sirs_log);
  CHECK(sir_log == sirs_log);
  CHECK(csv(a) == csv(b));
}

TEST_CASE("seed determinism") {
  const Graph g = generate_ws(300, 6, 0.2, 1);
  const auto init = init_state(g, InitialInfected::fraction(0.01), 2);
  const auto a = gillespie_run(g, {0.5, 1.0, 0.1}, init, 40.0, 9);
  const auto b = gillespie_run(g, {0.5, 1.0, 0.1}, init, 40.0, 9);
  const auto c = gillespie_run(g, {0.5, 1.0, 0.1}, init, 40.0, 10);
  CHECK(csv(a) == csv(b));
  CHECK(csv(a) != csv(c));
}

TEST_CASE("trajectories conserve N and SIR keeps R monotone") {
  const Graph g = generate_er(400, 0.02, 11);
  const auto init = init_state(g, InitialInfected::fraction(0.01), 12);
  const auto t = gillespie_run(g, {0.25, 1.0, 0.0}, init, 100.0, 13);
  for (std::size_t k = 1; k < t.samples.size(); ++k) {
    const auto& prev = t.samples[k - 1];
    const auto& cur = t.samples[k];
    CHECK(cur.t > prev.t);
    CHECK(cur.counts.total() == 400);
    CHECK(cur.counts.recovered >= prev.counts.recovered);
    CHECK(cur.counts.susceptible <= prev.counts.susceptible);
  }
  CHECK(t.samples.back().counts.infected == 0);
}

TEST_CASE("record stride keeps the first and last state") {
  const Graph g = generate_er(400, 0.02, 11);
  const auto init = init_state(g, InitialInfected::fraction(0.01), 12);
  RunOptions thin;
  thin.record_stride = 7;
  const auto full = gillespie_run(g, {0.25, 1.0, 0.0}, init, 100.0, 13);
  const auto sparse = gillespie_run(g, {0.25, 1.0, 0.0}, init, 100.0, 13, thin);
  CHECK(sparse.samples.front().counts == full.samples.front().counts);
  CHECK(sparse.samples.back().counts == full.samples.back().counts);
  CHECK(sparse.samples.back().t == full.samples.back().t);
  CHECK(sparse.samples.size() < full.samples.size());
}

TEST_CASE("engine errors") {
  const Graph g = complete_graph(3);
  auto bad = triangle_state();
  bad.counts = {1, 1, 0};
  CHECK_THROWS_AS(gillespie_run(g, {0.1, 1, 0}, bad, 10.0, 1), StateError);
  CHECK_THROWS_AS(gillespie_run(g, {-0.1, 1, 0}, triangle_state(), 10.0, 1), ParameterError);
  CHECK_THROWS_AS(gillespie_run(g, {0.1, 1, 0}, triangle_state(), 0.0, 1), ParameterError);
  RunOptions with_cap;
  with_cap.interventions.push_back({1.0, DegreeCap{1}});
  CHECK_THROWS_AS(gillespie_well_mixed(100, 10, {0.1, 1, 0}, {99, 1, 0}, 10.0, 1, with_cap),
                  ParameterError);
}

TEST_CASE("intervention discards the pending event and rebuilds the network") {
  const Graph g = generate_ba(500, 5, 2);
  const auto init = init_state(g, InitialInfected::fraction(0.02), 3);
  RunOptions opts;
  opts.interventions.push_back({0.5, DegreeCap{0}});
  std::vector<EventRecord> log;
  const auto t = gillespie_run_logged(g, {0.5, 1.0, 0.0}, init, 50.0, 4, opts, log);
  REQUIRE(t.intervention_times == std::vector<double>{0.5});
  // An edgeless network admits no further infections.
  for (const auto& ev : log)
    if (ev.t > 0.5) CHECK(ev.kind == EventKind::Recovery);
  CHECK(counts_at(t, 0.5).infected > 0);

  // A trigger after extinction leaves the epidemic untouched.
  RunOptions late;
  late.interventions.push_back({45.0, DegreeCap{0}});
  const auto base = gillespie_run(g, {0.5, 1.0, 0.0}, init, 50.0, 4);
  const auto after = gillespie_run(g, {0.5, 1.0, 0.0}, init, 50.0, 4, late);
  CHECK(summarize_trajectory(after).peak_infected_fraction ==
        summarize_trajectory(base).peak_infected_fraction);
  CHECK(max_infected_fraction(after, 45.0, 50.0) == 0.0);
}

TEST_CASE("well-mixed engine") {
  const auto flat = gillespie_well_mixed(1000, 10, {0.0, 1.0, 0.0}, {990, 10, 0}, 100.0, 1);
  CHECK(flat.samples.back().counts == Counts{990, 0, 10});
  CHECK(summarize_trajectory(flat).peak_infected_fraction == doctest::Approx(0.01));
  CHECK(flat.engine == EngineKind::WellMixedGillespie);

  double low = 0.0, high = 0.0;
  for (std::uint64_t r = 0; r < 50; ++r) {
    low += summarize_trajectory(
               gillespie_well_mixed(1000, 10, {0.05, 1, 0}, {990, 10, 0}, 200.0, mix_seed(r, 2)))
               .final_recovered_fraction;
    high += summarize_trajectory(
                gillespie_well_mixed(1000, 10, {0.2, 1, 0}, {990, 10, 0}, 200.0, mix_seed(r, 2)))
                .final_recovered_fraction;
  }
  CHECK(low / 50 < 0.15);
  CHECK(high / 50 > 0.5);
}

TEST_CASE("summaries and piecewise lookup") {
  Trajectory t;
  t.population = 10;
  t.samples = {{0.0, {9, 1, 0}}, {1.0, {8, 2, 0}}, {2.0, {8, 1, 1}}, {3.0, {7, 2, 1}}, {4.0, {7, 0, 3}}};
  const auto s = summarize_trajectory(t);
  CHECK(s.peak_infected_fraction == doctest::Approx(0.2));
  CHECK(s.peak_time == 1.0);
  CHECK(s.final_recovered_fraction == doctest::Approx(0.3));
  CHECK(counts_at(t, 2.5) == Counts{8, 1, 1});
  CHECK(counts_at(t, 10.0) == Counts{7, 0, 3});
  CHECK(max_infected_fraction(t, 1.5, 2.9) == doctest::Approx(0.2));
  CHECK(max_infected_fraction(t, 2.0, 2.9) == doctest::Approx(0.1));
  CHECK(max_infected_fraction(t, 2.5, 3.0) == doctest::Approx(0.2));
  CHECK_THROWS_AS(summarize_trajectory(Trajectory{}), std::invalid_argument);
  CHECK(csv(t).rfind("t,S,I,R\n0,9,1,0\n1,8,2,0\n", 0) == 0);
}

TEST_CASE("agent-based model") {
  const auto none = abm_run(100, {0.0, 0.5, 0.0}, {90, 10, 0}, 50, 1);
  for (const auto& smp : none.samples) CHECK(smp.counts.susceptible == 90);

  const auto one_step = abm_run(100, {0.0, 1.0, 0.0}, {90, 10, 0}, 5, 1);
  CHECK(counts_at(one_step, 1.0) == Counts{90, 0, 10});

  CHECK_THROWS_AS(abm_run(100, {0.1, 1.5, 0.0}, {90, 10, 0}, 5, 1), ProbabilityError);
  CHECK_THROWS_AS(abm_run(100, {5.0, 0.5, 0.0}, {50, 50, 0}, 5, 1), ProbabilityError);
  CHECK_THROWS_AS(abm_run(100, {0.1, 0.5, 0.2}, {90, 10, 0}, 5, 1), ParameterError);
}

TEST_CASE("agent-based mean follows the per-step mean-field map") {
  const std::size_t n = 10000;
  const int steps = 150;
  const int reps = 100;
  std::vector<double> s(steps + 1), i(steps + 1), r(steps + 1);
  for (int k = 0; k < reps; ++k) {
    const auto t = abm_run(n, {0.3, 0.1, 0.0}, {9900, 100, 0}, steps, mix_seed(k, 2));
    for (int step = 0; step <= steps; ++step) {
      const auto c = counts_at(t, step);
      s[step] += double(c.susceptible) / n / reps;
      i[step] += double(c.infected) / n / reps;
      r[step] += double(c.recovered) / n / reps;
    }
  }
  double ms = 0.99, mi = 0.01, mr = 0.0;
  for (int step = 0; step <= steps; ++step) {
    CHECK(std::abs(s[step] - ms) < 0.03);
    CHECK(std::abs(i[step] - mi) < 0.03);
    CHECK(std::abs(r[step] - mr) < 0.03);
    const double infect = 0.3 * ms * mi;
    const double recover = 0.1 * mi;
    ms -= infect;
    mi += infect - recover;
    mr += recover;
  }
}
