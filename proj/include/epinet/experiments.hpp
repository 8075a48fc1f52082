#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "epinet/epidemic.hpp"
#include "epinet/generators.hpp"
#include "epinet/graph.hpp"
#include "epinet/interventions.hpp"

namespace epinet {

struct WellMixedSource {
  std::size_t n = 1000;
  double k_avg = 10.0;
};

// A fixed graph shared read-only by every replicate (e.g. a loaded edge list).
struct LoadedSource {
  std::string path;
  bool compact_ids = false;
  std::shared_ptr<const Graph> graph;
};

// Generated sources get a fresh graph per replicate; the seed field of the
// generator params is ignored in favour of the replicate seed.
struct NetworkSource {
  std::string label;
  std::variant<GeneratorParams, WellMixedSource, LoadedSource> source;

  static NetworkSource generated(GeneratorParams params);
  static NetworkSource well_mixed(std::size_t n, double k_avg);
  static NetworkSource loaded(std::string path, bool compact_ids, Graph g);
};

struct SweepSpec {
  std::string experiment = "sweep";
  NetworkSource network;
  std::vector<double> betas;
  double gamma = 1.0;
  double alpha = 0.0;
  InitialInfected initial = InitialInfected::fraction(0.01);
  double t_max = 200.0;
  std::size_t replicates = 50;
  std::uint64_t base_seed = 1;
  std::optional<InterventionSpec> intervention;
  // Measurement window after an intervention: [trigger + delay * (t_max - trigger), t_max].
  double window_delay = 0.33;
  std::size_t threads = 1;

  // Throws ParameterError: replicates >= 1, non-empty beta grid of values >= 0.
  void validate() const;
};

// Seeds for replicate r: the replicate seed is base_seed + r; graph,
// initial-infected and event streams use independent derived sub-seeds.
struct ReplicateSeeds {
  std::uint64_t replicate;
  std::uint64_t graph;
  std::uint64_t init;
  std::uint64_t run;
};
ReplicateSeeds replicate_seeds(std::uint64_t base_seed, std::size_t replicate);

// One replicate at one beta. Deterministic in (spec, beta, replicate).
Trajectory run_single(const SweepSpec& spec, double beta, std::size_t replicate);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
};
MeanStd mean_std(std::span<const double> values);

struct AggregateSummary {
  MeanStd scope;  // final recovered fraction
  MeanStd peak;   // maximum infected fraction
  MeanStd peak_time;
  std::optional<MeanStd> windowed_peak;  // only with an intervention
  std::size_t replicates = 0;
};

// Runs spec.replicates independent replicates at one beta. Engine errors are
// rethrown as ExperimentError naming the network, beta and replicate.
AggregateSummary run_replicates(const SweepSpec& spec, double beta);

struct TableRow {
  std::string experiment;
  std::string network;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, double>> metrics;
  std::size_t replicates = 0;

  // Looks up a param or metric by column name; throws std::out_of_range.
  double value(const std::string& column) const;
};

struct ExperimentTable {
  std::vector<TableRow> rows;

  void append(const ExperimentTable& other);
  // Columns: experiment, network, params..., metrics..., replicates. The
  // column set is the union over rows, in first-seen order; gaps stay empty.
  void write_csv(std::ostream& out) const;
};

// Generic sweep: one row per beta on spec.network.
ExperimentTable sweep(const SweepSpec& spec);

// --- Experiment 01: epidemic scope vs beta on several networks -------------

struct ScopeSweepConfig {
  std::vector<NetworkSource> networks;
  std::vector<double> betas;
  double gamma = 1.0;
  double initial_fraction = 0.01;
  double t_max = 200.0;
  std::size_t replicates = 50;
  std::uint64_t base_seed = 1;
  std::size_t threads = 1;

  // ER(1000, 0.01), WS(1000, 10, 0.1), BA(1000, 5) and a well-mixed
  // population with <k> = 10; beta from 0 to 0.3 in steps of 0.025.
  static ScopeSweepConfig defaults();
};
ExperimentTable experiment_scope_sweep(const ScopeSweepConfig& config);

// --- Experiment 02: ER vs BA over a density grid at matched <k> ------------

struct DensityComparisonConfig {
  std::size_t n = 10000;
  std::vector<double> densities{0.001, 0.002, 0.003, 0.005, 0.0075, 0.01};
  double beta = 0.1;
  double gamma = 1.0;
  double initial_fraction = 0.01;
  double t_max = 200.0;
  std::size_t replicates = 50;
  std::uint64_t base_seed = 1;
  std::size_t threads = 1;
};

// BA attachment count m = max(1, round(d (n - 1) / 2)) for each density d;
// the ER partner uses p equal to the BA density 2 m (n - m) / (n (n - 1)).
struct DensityPoint {
  double target_density;
  std::size_t ba_m;
  double density;
};
std::vector<DensityPoint> density_points(const DensityComparisonConfig& config);

ExperimentTable experiment_density_comparison(const DensityComparisonConfig& config);

// --- Experiment 03: degree-cap lockdown at different trigger times --------

struct InterventionTimingConfig {
  std::size_t n = 3000;
  std::size_t m = 20;
  std::size_t cap = 5;
  std::vector<double> trigger_times{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
  double beta = 0.1;
  double gamma = 1.0;
  double initial_fraction = 0.01;
  double t_max = 6.0;
  double window_delay = 0.33;
  std::size_t replicates = 50;
  std::uint64_t base_seed = 1;
  std::size_t threads = 1;
};
ExperimentTable experiment_intervention_timing(const InterventionTimingConfig& config);

// --- Experiment 04: SIRS waves ----------------------------------------------

struct WaveConfig {
  std::vector<NetworkSource> networks;
  double beta = 0.3;
  double gamma = 1.0;
  double alpha = 0.2;
  double initial_fraction = 0.01;
  double t_max = 100.0;
  std::size_t replicates = 50;
  std::uint64_t base_seed = 1;
  bool sir_control = true;  // add an alpha = 0 row per network
  // Smoothing block width as a fraction of t_max.
  double smoothing_fraction = 0.01;
  // A local maximum must exceed this infected fraction.
  double min_peak_fraction = 0.01;
  std::size_t threads = 1;

  // ER(1000, 0.01), WS(1000, 10, 0.1), BA(1000, 5), well-mixed <k> = 10.
  static WaveConfig defaults();
};

struct MeanCurve {
  std::string network;
  double alpha = 0.0;
  std::vector<double> t;
  std::vector<double> s;
  std::vector<double> i;
  std::vector<double> r;
};

struct WaveResult {
  ExperimentTable table;
  std::vector<MeanCurve> curves;
};
WaveResult experiment_sirs(const WaveConfig& config);

// Mean compartment fractions over trajectories on the grid t_k = k * step, k = 0..points-1.
MeanCurve mean_curve(std::span<const Trajectory> runs, double step, std::size_t points);

// Averages consecutive blocks of `block` values (the trailing partial block is dropped).
std::vector<double> block_average(std::span<const double> values, std::size_t block);

// Indices strictly greater than both neighbours and above min_height.
std::size_t count_local_maxima(std::span<const double> values, double min_height);

// Spearman rank correlation with average ranks for ties.
double spearman_correlation(std::span<const double> x, std::span<const double> y);

// Long-format CSV: network,alpha,t,S,I,R.
void write_mean_curves_csv(std::ostream& out, std::span<const MeanCurve> curves);

}  // namespace epinet
