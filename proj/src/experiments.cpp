#include "epinet/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "epinet/errors.hpp"
#include "epinet/gillespie.hpp"
#include "epinet/metrics.hpp"
#include "epinet/parallel.hpp"
#include "epinet/rng.hpp"
#include "format.hpp"

namespace epinet {
namespace {

std::string beta_context(const SweepSpec& spec, double beta) {
  std::ostringstream os;
  os << spec.experiment << " on " << spec.network.label << " at beta=" << beta;
  return os.str();
}

// N_S, N_I, N_R fractions of one run on the grid t_k = k * step.
std::vector<std::array<double, 3>> sample_fractions(const Trajectory& traj, double step,
                                                    std::size_t points) {
  std::vector<std::array<double, 3>> out(points);
  const auto n = static_cast<double>(traj.population);
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) * step;
    while (cursor + 1 < traj.samples.size() && traj.samples[cursor + 1].t <= t) ++cursor;
    const auto& c = traj.samples[cursor].counts;
    out[k] = {static_cast<double>(c.susceptible) / n, static_cast<double>(c.infected) / n,
              static_cast<double>(c.recovered) / n};
  }
  return out;
}

MeanCurve average_grids(const std::vector<std::vector<std::array<double, 3>>>& grids, double step,
                        std::size_t points) {
  MeanCurve curve;
  curve.t.resize(points);
  curve.s.assign(points, 0.0);
  curve.i.assign(points, 0.0);
  curve.r.assign(points, 0.0);
  for (std::size_t k = 0; k < points; ++k) curve.t[k] = static_cast<double>(k) * step;
  if (grids.empty()) return curve;
  for (const auto& grid : grids) {
    for (std::size_t k = 0; k < points; ++k) {
      curve.s[k] += grid[k][0];
      curve.i[k] += grid[k][1];
      curve.r[k] += grid[k][2];
    }
  }
  const double inv = 1.0 / static_cast<double>(grids.size());
  for (std::size_t k = 0; k < points; ++k) {
    curve.s[k] *= inv;
    curve.i[k] *= inv;
    curve.r[k] *= inv;
  }
  return curve;
}

TableRow summary_row(const SweepSpec& spec, const AggregateSummary& agg,
                     std::vector<std::pair<std::string, double>> params) {
  TableRow row;
  row.experiment = spec.experiment;
  row.network = spec.network.label;
  row.params = std::move(params);
  row.metrics = {{"scope_mean", agg.scope.mean},        {"scope_std", agg.scope.std},
                 {"peak_mean", agg.peak.mean},          {"peak_std", agg.peak.std},
                 {"peak_time_mean", agg.peak_time.mean}, {"peak_time_std", agg.peak_time.std}};
  if (agg.windowed_peak) {
    row.metrics.emplace_back("windowed_peak_mean", agg.windowed_peak->mean);
    row.metrics.emplace_back("windowed_peak_std", agg.windowed_peak->std);
  }
  row.replicates = agg.replicates;
  return row;
}

}  // namespace

NetworkSource NetworkSource::generated(GeneratorParams params) {
  return {describe(params), std::move(params)};
}

NetworkSource NetworkSource::well_mixed(std::size_t n, double k_avg) {
  std::ostringstream os;
  os << "well-mixed(n=" << n << ",k=" << k_avg << ")";
  return {os.str(), WellMixedSource{n, k_avg}};
}

NetworkSource NetworkSource::loaded(std::string path, bool compact_ids, Graph g) {
  auto label = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  return {label, LoadedSource{std::move(path), compact_ids, std::make_shared<const Graph>(std::move(g))}};
}

void SweepSpec::validate() const {
  if (replicates < 1) throw ParameterError("replicates must be >= 1");
  if (betas.empty()) throw ParameterError("beta grid must not be empty");
  for (double b : betas) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw ParameterError("beta values must be finite and >= 0");
  }
  RateParams{0.0, gamma, alpha}.validate();
  if (!(t_max > 0.0)) throw ParameterError("t_max must be > 0");
  if (!(window_delay >= 0.0 && window_delay <= 1.0)) {
    throw ParameterError("window_delay must lie in [0, 1]");
  }
  if (intervention) intervention->validate();
}

ReplicateSeeds replicate_seeds(std::uint64_t base_seed, std::size_t replicate) {
  const std::uint64_t r = base_seed + replicate;
  return {r, mix_seed(r, 0), mix_seed(r, 1), mix_seed(r, 2)};
}

Trajectory run_single(const SweepSpec& spec, double beta, std::size_t replicate) {
  const auto seeds = replicate_seeds(spec.base_seed, replicate);
  const RateParams p{beta, spec.gamma, spec.alpha};
  RunOptions options;
  if (spec.intervention) options.interventions.push_back(*spec.intervention);

  auto on_graph = [&](const Graph& g) {
    const auto init = init_state(g, spec.initial, seeds.init);
    return gillespie_run(g, p, init, spec.t_max, seeds.run, options);
  };

  if (const auto* gen = std::get_if<GeneratorParams>(&spec.network.source)) {
    GeneratorParams params = *gen;
    params.seed = seeds.graph;
    return on_graph(generate(params));
  }
  if (const auto* loaded = std::get_if<LoadedSource>(&spec.network.source)) {
    if (!loaded->graph) throw ParameterError("loaded network source has no graph");
    return on_graph(*loaded->graph);
  }
  const auto& wm = std::get<WellMixedSource>(spec.network.source);
  const auto infected = spec.initial.resolve(wm.n);
  return gillespie_well_mixed(wm.n, wm.k_avg, p, Counts{wm.n - infected, infected, 0}, spec.t_max,
                              seeds.run, options);
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

AggregateSummary run_replicates(const SweepSpec& spec, double beta) {
  spec.validate();
  const auto reps = spec.replicates;
  std::vector<double> scope(reps), peak(reps), peak_time(reps), windowed(reps);
  parallel_for(reps, spec.threads, [&](std::size_t r) {
    try {
      const auto traj = run_single(spec, beta, r);
      const auto summary = summarize_trajectory(traj);
      scope[r] = summary.final_recovered_fraction;
      peak[r] = summary.peak_infected_fraction;
      peak_time[r] = summary.peak_time;
      if (spec.intervention) {
        const double trigger = spec.intervention->trigger_time;
        const double start = trigger + spec.window_delay * (spec.t_max - trigger);
        windowed[r] = max_infected_fraction(traj, start, spec.t_max);
      }
    } catch (const std::exception& e) {
      throw ExperimentError(beta_context(spec, beta) + ", replicate " + std::to_string(r) + ": " +
                            e.what());
    }
  });
  AggregateSummary agg;
  agg.scope = mean_std(scope);
  agg.peak = mean_std(peak);
  agg.peak_time = mean_std(peak_time);
  if (spec.intervention) agg.windowed_peak = mean_std(windowed);
  agg.replicates = reps;
  return agg;
}

double TableRow::value(const std::string& column) const {
  for (const auto& [k, v] : params) {
    if (k == column) return v;
  }
  for (const auto& [k, v] : metrics) {
    if (k == column) return v;
  }
  throw std::out_of_range("no column '" + column + "' in row for " + network);
}

void ExperimentTable::append(const ExperimentTable& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

void ExperimentTable::write_csv(std::ostream& out) const {
  std::vector<std::string> params;
  std::vector<std::string> metrics;
  auto note = [](std::vector<std::string>& cols, const std::string& name) {
    if (std::find(cols.begin(), cols.end(), name) == cols.end()) cols.push_back(name);
  };
  for (const auto& row : rows) {
    for (const auto& [k, v] : row.params) note(params, k);
    for (const auto& [k, v] : row.metrics) note(metrics, k);
  }
  out << "experiment,network";
  for (const auto& c : params) out << ',' << c;
  for (const auto& c : metrics) out << ',' << c;
  out << ",replicates\n";
  auto cell = [&out](const std::vector<std::pair<std::string, double>>& kv, const std::string& name) {
    out << ',';
    for (const auto& [k, v] : kv) {
      if (k == name) {
        out << format_double(v);
        return;
      }
    }
  };
  for (const auto& row : rows) {
    // Labels such as "ER(n=1000,p=0.01)" contain commas.
    out << row.experiment << ",\"" << row.network << '"';
    for (const auto& c : params) cell(row.params, c);
    for (const auto& c : metrics) cell(row.metrics, c);
    out << ',' << row.replicates << '\n';
  }
}

ExperimentTable sweep(const SweepSpec& spec) {
  spec.validate();
  ExperimentTable table;
  for (double beta : spec.betas) {
    const auto agg = run_replicates(spec, beta);
    std::vector<std::pair<std::string, double>> params{
        {"beta", beta}, {"gamma", spec.gamma}, {"alpha", spec.alpha}};
    if (spec.intervention) params.emplace_back("trigger_time", spec.intervention->trigger_time);
    table.rows.push_back(summary_row(spec, agg, std::move(params)));
  }
  return table;
}

ScopeSweepConfig ScopeSweepConfig::defaults() {
  ScopeSweepConfig c;
  c.networks = {NetworkSource::generated({ErdosRenyiParams{1000, 0.01}, 0}),
                NetworkSource::generated({WattsStrogatzParams{1000, 10, 0.1}, 0}),
                NetworkSource::generated({BarabasiAlbertParams{1000, 5}, 0}),
                NetworkSource::well_mixed(1000, 10.0)};
  for (int k = 0; k <= 12; ++k) c.betas.push_back(0.025 * k);
  return c;
}

ExperimentTable experiment_scope_sweep(const ScopeSweepConfig& config) {
  ExperimentTable table;
  for (const auto& network : config.networks) {
    SweepSpec spec;
    spec.experiment = "exp01";
    spec.network = network;
    spec.betas = config.betas;
    spec.gamma = config.gamma;
    spec.initial = InitialInfected::fraction(config.initial_fraction);
    spec.t_max = config.t_max;
    spec.replicates = config.replicates;
    spec.base_seed = config.base_seed;
    spec.threads = config.threads;
    table.append(sweep(spec));
  }
  return table;
}

std::vector<DensityPoint> density_points(const DensityComparisonConfig& config) {
  if (config.n < 2) throw ParameterError("density comparison needs n >= 2");
  std::vector<DensityPoint> out;
  const double n = static_cast<double>(config.n);
  for (double d : config.densities) {
    if (!(d > 0.0 && d < 1.0)) throw ParameterError("densities must lie in (0, 1)");
    const auto m = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(d * (n - 1.0) / 2.0)), 1, config.n - 1);
    const double md = static_cast<double>(m);
    out.push_back({d, m, 2.0 * md * (n - md) / (n * (n - 1.0))});
  }
  return out;
}

ExperimentTable experiment_density_comparison(const DensityComparisonConfig& config) {
  ExperimentTable table;
  for (const auto& point : density_points(config)) {
    const std::vector<GeneratorParams> pair{
        {ErdosRenyiParams{config.n, point.density}, 0},
        {BarabasiAlbertParams{config.n, point.ba_m}, 0}};
    for (std::size_t model = 0; model < pair.size(); ++model) {
      SweepSpec spec;
      spec.experiment = "exp02";
      spec.network = NetworkSource::generated(pair[model]);
      spec.network.label = model == 0 ? "ER" : "BA";
      spec.betas = {config.beta};
      spec.gamma = config.gamma;
      spec.initial = InitialInfected::fraction(config.initial_fraction);
      spec.t_max = config.t_max;
      spec.replicates = config.replicates;
      spec.base_seed = config.base_seed;
      spec.threads = config.threads;
      const auto agg = run_replicates(spec, config.beta);
      table.rows.push_back(summary_row(
          spec, agg,
          {{"target_density", point.target_density},
           {"density", point.density},
           {"n", static_cast<double>(config.n)},
           {"mean_degree", point.density * static_cast<double>(config.n - 1)},
           {"beta", config.beta},
           {"gamma", config.gamma}}));
    }
  }
  return table;
}

ExperimentTable experiment_intervention_timing(const InterventionTimingConfig& config) {
  ExperimentTable table;
  for (double trigger : config.trigger_times) {
    if (!(trigger >= 0.0 && trigger < config.t_max)) {
      throw ParameterError("trigger times must lie in [0, t_max)");
    }
    SweepSpec spec;
    spec.experiment = "exp03";
    spec.network = NetworkSource::generated({BarabasiAlbertParams{config.n, config.m}, 0});
    spec.betas = {config.beta};
    spec.gamma = config.gamma;
    spec.initial = InitialInfected::fraction(config.initial_fraction);
    spec.t_max = config.t_max;
    spec.replicates = config.replicates;
    spec.base_seed = config.base_seed;
    spec.intervention = InterventionSpec{trigger, DegreeCap{config.cap}};
    spec.window_delay = config.window_delay;
    spec.threads = config.threads;
    const auto agg = run_replicates(spec, config.beta);
    const double start = trigger + config.window_delay * (config.t_max - trigger);
    table.rows.push_back(summary_row(spec, agg,
                                     {{"trigger_time", trigger},
                                      {"window_start", start},
                                      {"cap", static_cast<double>(config.cap)},
                                      {"beta", config.beta},
                                      {"gamma", config.gamma}}));
  }
  return table;
}

WaveConfig WaveConfig::defaults() {
  WaveConfig c;
  c.networks = ScopeSweepConfig::defaults().networks;
  return c;
}

MeanCurve mean_curve(std::span<const Trajectory> runs, double step, std::size_t points) {
  std::vector<std::vector<std::array<double, 3>>> grids;
  grids.reserve(runs.size());
  for (const auto& run : runs) grids.push_back(sample_fractions(run, step, points));
  return average_grids(grids, step, points);
}

std::vector<double> block_average(std::span<const double> values, std::size_t block) {
  if (block == 0) throw ParameterError("block width must be >= 1");
  std::vector<double> out;
  for (std::size_t start = 0; start + block <= values.size(); start += block) {
    double sum = 0.0;
    for (std::size_t k = start; k < start + block; ++k) sum += values[k];
    out.push_back(sum / static_cast<double>(block));
  }
  return out;
}

std::size_t count_local_maxima(std::span<const double> values, double min_height) {
  std::size_t count = 0;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    if (values[k] > values[k - 1] && values[k] > values[k + 1] && values[k] > min_height) ++count;
  }
  return count;
}

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman correlation needs two equal-length samples of size >= 2");
  }
  auto ranks = [](std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
      i = j + 1;
    }
    return rank;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const auto mx = mean_std(rx).mean;
  const auto my = mean_std(ry).mean;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    sxy += (rx[k] - mx) * (ry[k] - my);
    sxx += (rx[k] - mx) * (rx[k] - mx);
    syy += (ry[k] - my) * (ry[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

WaveResult experiment_sirs(const WaveConfig& config) {
  if (!(config.alpha > 0.0)) throw ParameterError("the SIRS experiment needs alpha > 0");
  if (!(config.smoothing_fraction > 0.0 && config.smoothing_fraction <= 1.0)) {
    throw ParameterError("smoothing_fraction must lie in (0, 1]");
  }
  constexpr std::size_t kPointsPerBlock = 10;
  const double window = config.t_max * config.smoothing_fraction;
  const double step = window / static_cast<double>(kPointsPerBlock);
  const auto points = static_cast<std::size_t>(std::floor(config.t_max / step + 1e-9)) + 1;

  WaveResult result;
  std::vector<double> alphas{config.alpha};
  if (config.sir_control) alphas.push_back(0.0);
  for (const auto& network : config.networks) {
    for (double alpha : alphas) {
      SweepSpec spec;
      spec.experiment = "exp04";
      spec.network = network;
      spec.betas = {config.beta};
      spec.gamma = config.gamma;
      spec.alpha = alpha;
      spec.initial = InitialInfected::fraction(config.initial_fraction);
      spec.t_max = config.t_max;
      spec.replicates = config.replicates;
      spec.base_seed = config.base_seed;
      spec.threads = config.threads;
      spec.validate();

      std::vector<std::vector<std::array<double, 3>>> grids(spec.replicates);
      std::vector<double> peaks(spec.replicates);
      parallel_for(spec.replicates, spec.threads, [&](std::size_t r) {
        try {
          const auto run = run_single(spec, config.beta, r);
          grids[r] = sample_fractions(run, step, points);
          peaks[r] = summarize_trajectory(run).peak_infected_fraction;
        } catch (const std::exception& e) {
          throw ExperimentError(beta_context(spec, config.beta) + ", replicate " +
                                std::to_string(r) + ": " + e.what());
        }
      });
      auto curve = average_grids(grids, step, points);
      curve.network = network.label;
      curve.alpha = alpha;

      const auto smoothed = block_average(curve.i, kPointsPerBlock);
      const auto maxima = count_local_maxima(smoothed, config.min_peak_fraction);
      double tail_sum = 0.0;
      std::size_t tail_count = 0;
      for (std::size_t k = 0; k < points; ++k) {
        if (curve.t[k] >= config.t_max / 2.0) {
          tail_sum += curve.i[k];
          ++tail_count;
        }
      }

      TableRow row;
      row.experiment = spec.experiment;
      row.network = network.label;
      row.params = {{"beta", config.beta}, {"gamma", config.gamma}, {"alpha", alpha}};
      const auto peak = mean_std(peaks);
      row.metrics = {{"local_maxima", static_cast<double>(maxima)},
                     {"long_run_infected_mean", tail_count ? tail_sum / tail_count : 0.0},
                     {"peak_mean", peak.mean},
                     {"peak_std", peak.std}};
      row.replicates = spec.replicates;
      result.table.rows.push_back(std::move(row));
      result.curves.push_back(std::move(curve));
    }
  }
  return result;
}

void write_mean_curves_csv(std::ostream& out, std::span<const MeanCurve> curves) {
  out << "network,alpha,t,S,I,R\n";
  for (const auto& c : curves) {
    for (std::size_t k = 0; k < c.t.size(); ++k) {
      out << '"' << c.network << "\"," << format_double(c.alpha) << ',' << format_double(c.t[k])
          << ',' << format_double(c.s[k]) << ',' << format_double(c.i[k]) << ','
          << format_double(c.r[k]) << '\n';
    }
  }
}

}  // namespace epinet
