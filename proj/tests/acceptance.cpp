// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "epinet/experiments.hpp"
#include "epinet/generators.hpp"
#include "epinet/gillespie.hpp"
#include "epinet/interventions.hpp"
#include "epinet/metrics.hpp"
#include "epinet/ode.hpp"
#include "epinet/parallel.hpp"
#include "epinet/rng.hpp"

using namespace epinet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::size_t threads() { return default_parallelism(); }

const TableRow& find_row(const ExperimentTable& t, const std::string& network, double beta) {
  for (const auto& row : t.rows)
    if (row.network == network && row.value("beta") == beta) return row;
  throw std::runtime_error("missing row " + network);
}

// Exp 01 on ER, WS and BA at the two probe rates, shared by criteria 1 and 2.
struct ScopeRun {
  ExperimentTable table;
  double seconds = 0.0;
};

const ScopeRun& scope_run() {
  static const ScopeRun run = [] {
    ScopeSweepConfig c;
    c.networks = {NetworkSource::generated({ErdosRenyiParams{1000, 0.01}, 0}),
                  NetworkSource::generated({WattsStrogatzParams{1000, 10, 0.1}, 0}),
                  NetworkSource::generated({BarabasiAlbertParams{1000, 5}, 0})};
    c.betas = {0.05, 0.2};
    c.replicates = 50;
    c.threads = threads();
    const auto start = std::chrono::steady_clock::now();
    ScopeRun r;
    r.table = experiment_scope_sweep(c);
    r.seconds = seconds_since(start);
    return r;
  }();
  return run;
}

Outcome threshold_location() {
  const auto& run = scope_run();
  bool pass = run.seconds < 60.0;
  std::string detail;
  for (const char* net : {"ER(n=1000,p=0.01)", "WS(n=1000,k=10,p=0.1)"}) {
    const double low = find_row(run.table, net, 0.05).value("scope_mean");
    const double high = find_row(run.table, net, 0.2).value("scope_mean");
    pass = pass && low < 0.15 && high > 0.5;
    detail += fmt("%s scope(0.05)=%.4f scope(0.2)=%.4f; ", net, low, high);
  }
  return {pass, detail + fmt("%.1fs for ER+WS+BA", run.seconds)};
}

Outcome no_threshold_on_scale_free() {
  const auto& run = scope_run();
  const double er = find_row(run.table, "ER(n=1000,p=0.01)", 0.05).value("scope_mean");
  const double ba = find_row(run.table, "BA(n=1000,m=5)", 0.05).value("scope_mean");
  return {ba >= 2.0 * er && run.seconds < 30.0,
          fmt("BA scope(0.05)=%.4f ER scope(0.05)=%.4f ratio=%.3f", ba, er, ba / er)};
}

Outcome table_statistics() {
  bool pass = true;
  double k_lo = 1e9, k_hi = 0, e_lo = 1e9, e_hi = 0, d_lo = 1, d_hi = 0, er_e_lo = 1e9;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto ba = analyze(generate_ba(1000, 5, seed));
    const double e = ba.power_law_exponent.value_or(0.0);
    pass = pass && ba.average_degree >= 9.8 && ba.average_degree <= 10.0 && e >= 2.2 && e <= 3.2 &&
           ba.scale_free;
    k_lo = std::min(k_lo, ba.average_degree);
    k_hi = std::max(k_hi, ba.average_degree);
    e_lo = std::min(e_lo, e);
    e_hi = std::max(e_hi, e);

    const auto er = analyze(generate_er(1000, 0.01, seed));
    const double d = er.density.value_or(0.0);
    pass = pass && d >= 0.0085 && d <= 0.0115 && !er.scale_free;
    d_lo = std::min(d_lo, d);
    d_hi = std::max(d_hi, d);
    if (er.power_law_exponent) er_e_lo = std::min(er_e_lo, *er.power_law_exponent);
  }
  return {pass, fmt("20 seeds: BA <k> in [%.3f, %.3f], exponent in [%.3f, %.3f]; "
                    "ER density in [%.4f%%, %.4f%%], smallest exponent %.2f",
                    k_lo, k_hi, e_lo, e_hi, 100 * d_lo, 100 * d_hi, er_e_lo)};
}

Outcome stochastic_deterministic_agreement() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = 10000;
  const double t_max = 30.0;
  const RateParams p{0.2, 1.0, 0.0};
  std::vector<Trajectory> runs(100);
  parallel_for(runs.size(), threads(), [&](std::size_t r) {
    runs[r] = gillespie_well_mixed(n, 10.0, p, {9900, 100, 0}, t_max, replicate_seeds(1, r).run);
  });
  const auto sol = ode_sir({2.0, 1.0, 0.0}, {0.99, 0.01, 0.0}, t_max);
  const auto mean = mean_curve(runs, sol.dt, sol.t.size());
  double worst = 0.0, at = 0.0;
  for (std::size_t k = 0; k < sol.t.size(); ++k) {
    const auto& x = sol.states[k];
    const double d = std::max({std::abs(x.s - mean.s[k]), std::abs(x.i - mean.i[k]),
                               std::abs(x.r - mean.r[k])});
    if (d > worst) {
      worst = d;
      at = sol.t[k];
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 0.02 && secs < 120.0,
          fmt("max deviation %.4f at t=%.2f over %zu grid times, %.1fs", worst, at, sol.t.size(), secs)};
}

Outcome sirs_reduction_and_equilibrium() {
  bool identical = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = generate_er(500, 0.02, seed);
    const auto init = init_state(g, InitialInfected::fraction(0.02), seed);
    RunOptions sir, sirs;
    sir.model = Model::SIR;
    sirs.model = Model::SIRS;
    std::vector<EventRecord> a, b;
    gillespie_run_logged(g, {0.3, 1.0, 0.0}, init, 100.0, seed, sir, a);
    gillespie_run_logged(g, {0.3, 1.0, 0.0}, init, 100.0, seed, sirs, b);
    identical = identical && a == b;
  }
  const auto tail = ode_sirs({2.0, 1.0, 0.5}, {0.99, 0.01, 0.0}, 500.0).states.back();
  const double err = std::max({std::abs(tail.s - 0.5), std::abs(tail.i - 1.0 / 6),
                               std::abs(tail.r - 1.0 / 3)});
  return {identical && err < 1e-4,
          fmt("event logs identical over 20 seeds: %s; ODE tail error %.2e", identical ? "yes" : "no", err)};
}

Outcome sirs_waves() {
  WaveConfig c = WaveConfig::defaults();
  c.threads = threads();
  const auto result = experiment_sirs(c);
  bool pass = true;
  std::string detail;
  for (const auto& row : result.table.rows) {
    const auto maxima = static_cast<std::size_t>(row.value("local_maxima"));
    const bool control = row.value("alpha") == 0.0;
    pass = pass && (control ? maxima == 1 : maxima >= 2);
    detail += fmt("%s a=%g: %zu; ", row.network.c_str(), row.value("alpha"), maxima);
  }
  return {pass, detail};
}

Outcome degree_cap_lockdown() {
  bool capped = true;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const std::size_t n = 20 + rng.index(180);
    Graph g;
    switch (seed % 3) {
      case 0: g = generate_er(n, 0.02 + 0.2 * rng.uniform(), seed); break;
      case 1: g = generate_ba(n, 1 + rng.index(8), seed); break;
      default: g = generate_ws(n, 2 * (1 + rng.index(6)), rng.uniform(), seed); break;
    }
    capped = capped && apply_degree_cap(g, 5, seed).max_degree() <= 5;
  }
  const Graph ba = generate_ba(3000, 20, 1);
  const Graph after = apply_degree_cap(ba, 5, 1);
  const auto before_stats = analyze(ba);
  const auto after_stats = analyze(after);
  const bool pass = capped && density(after) < 0.0033 && before_stats.scale_free && !after_stats.scale_free;
  return {pass, fmt("1000 graphs capped: %s; BA(3000,20) density %.3f%% -> %.3f%%, exponent %.2f -> %.2f",
                    capped ? "yes" : "no", 100 * density(ba), 100 * density(after),
                    before_stats.power_law_exponent.value_or(0.0),
                    after_stats.power_law_exponent.value_or(0.0))};
}

Outcome intervention_timing() {
  InterventionTimingConfig c;
  c.threads = threads();
  const auto table = experiment_intervention_timing(c);
  std::vector<double> triggers, peaks;
  std::string detail;
  for (const auto& row : table.rows) {
    triggers.push_back(row.value("trigger_time"));
    peaks.push_back(row.value("windowed_peak_mean"));
    detail += fmt("%.2f:%.4f ", triggers.back(), peaks.back());
  }
  const double rho = spearman_correlation(triggers, peaks);
  return {triggers.size() >= 5 && rho > 0.0, fmt("spearman %.3f; ", rho) + detail};
}

Outcome density_convergence() {
  DensityComparisonConfig c;
  c.densities = {0.001, 0.01};
  c.threads = threads();
  const auto table = experiment_density_comparison(c);
  auto gap = [&](std::size_t point) {
    return std::abs(table.rows[2 * point].value("scope_mean") - table.rows[2 * point + 1].value("scope_mean"));
  };
  const double low = gap(0), high = gap(1);
  return {low > high, fmt("gap at 0.1%% = %.4f, gap at 1.0%% = %.4f (n=%zu)", low, high, c.n)};
}

Outcome universal_invariants() {
  bool conserved = true, monotone = true, deterministic = true;
  std::size_t events = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(mix_seed(seed, 77));
    const std::size_t n = 30 + rng.index(300);
    Graph g;
    switch (seed % 3) {
      case 0: g = generate_er(n, 0.01 + 0.1 * rng.uniform(), seed); break;
      case 1: g = generate_ba(n, 1 + rng.index(6), seed); break;
      default: g = generate_ws(n, 2 * (1 + rng.index(4)), rng.uniform(), seed); break;
    }
    const RateParams p{rng.uniform(), 0.2 + 2.0 * rng.uniform(), seed % 2 ? 0.0 : rng.uniform()};
    RunOptions options;
    if (seed % 5 == 0) options.interventions.push_back({2.0 * rng.uniform(), DegreeCap{1 + rng.index(5)}});
    const auto init = init_state(g, InitialInfected::count(1 + rng.index(n / 5)), seed);
    const auto traj = gillespie_run(g, p, init, 30.0, seed, options);
    events += traj.total_events;
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
      const auto& c = traj.samples[k].counts;
      conserved = conserved && c.total() == n;
      if (p.alpha == 0.0 && k > 0) monotone = monotone && c.recovered >= traj.samples[k - 1].counts.recovered;
    }
    if (seed % 10 == 0) {
      std::ostringstream a, b;
      write_trajectory_csv(a, traj);
      write_trajectory_csv(b, gillespie_run(g, p, init, 30.0, seed, options));
      deterministic = deterministic && a.str() == b.str();
    }
  }

  bool frequencies = true;
  Rng rng(12345);
  const std::vector<EventRates> cases{{1, 1, 2}, {1, 3, 0}, {0.3, 5.2, 1.1}};
  for (const auto& r : cases) {
    const double probs[3] = {r.infection / r.total(), r.recovery / r.total(), r.waning / r.total()};
    int hits[3] = {0, 0, 0};
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++hits[static_cast<int>(*select_event(r, rng))];
    for (int k = 0; k < 3; ++k) {
      const double sigma = std::sqrt(draws * probs[k] * (1 - probs[k]));
      frequencies = frequencies && std::abs(hits[k] - draws * probs[k]) <= 3 * sigma;
    }
  }
  return {conserved && monotone && deterministic && frequencies,
          fmt("500 runs / %zu events: conservation %s, SIR monotone R %s, byte-identical CSVs %s, "
              "event frequencies within 3 sigma %s",
              events, conserved ? "yes" : "no", monotone ? "yes" : "no", deterministic ? "yes" : "no",
              frequencies ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"threshold location on ER and WS", threshold_location},
      {"no threshold on scale-free BA", no_threshold_on_scale_free},
      {"synthetic network statistics", table_statistics},
      {"well-mixed Gillespie vs ODE", stochastic_deterministic_agreement},
      {"SIRS reduction and endemic equilibrium", sirs_reduction_and_equilibrium},
      {"SIRS waves", sirs_waves},
      {"degree-cap lockdown", degree_cap_lockdown},
      {"intervention timing monotonicity", intervention_timing},
      {"density convergence", density_convergence},
      {"universal invariants", universal_invariants},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& [name, check] = criteria[k];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", k + 1, name, o.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
