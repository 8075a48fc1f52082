#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "epinet/abm.hpp"
#include "epinet/edge_list.hpp"
#include "epinet/errors.hpp"
#include "epinet/experiments.hpp"
#include "epinet/generators.hpp"
#include "epinet/gillespie.hpp"
#include "epinet/metrics.hpp"
#include "epinet/ode.hpp"
#include "epinet/parallel.hpp"
#include "epinet/reports.hpp"
#include "epinet/rng.hpp"

namespace epinet::cli {
namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_output(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

std::string manifest_path(const std::string& output) { return output + ".manifest.json"; }

void write_json(const std::string& path, const json& doc) {
  auto out = open_output(path);
  out << doc.dump(2) << '\n';
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": malformed JSON: " + e.what());
  }
}

std::string joined(const std::string& dir, const std::string& file) {
  if (dir.empty() || file.empty() || file.front() == '/') return file;
  return dir.back() == '/' ? dir + file : dir + "/" + file;
}

GeneratorParams generator_from_flags(const std::string& model, std::size_t n, double p, std::size_t k,
                                     double p_rewire, std::size_t m, std::uint64_t seed) {
  if (model == "er") return {ErdosRenyiParams{n, p}, seed};
  if (model == "ws") return {WattsStrogatzParams{n, k, p_rewire}, seed};
  if (model == "ba") return {BarabasiAlbertParams{n, m}, seed};
  throw ParameterError("unknown model '" + model + "'");
}

NetworkSource named_network(const std::string& name) {
  if (name == "er") return NetworkSource::generated({ErdosRenyiParams{1000, 0.01}, 0});
  if (name == "ws") return NetworkSource::generated({WattsStrogatzParams{1000, 10, 0.1}, 0});
  if (name == "ba") return NetworkSource::generated({BarabasiAlbertParams{1000, 5}, 0});
  if (name == "well-mixed") return NetworkSource::well_mixed(1000, 10.0);
  throw ParameterError("unknown network '" + name + "' (er, ws, ba, well-mixed)");
}

// Expands names (with "all") and appends loaded edge lists.
std::vector<NetworkSource> resolve_networks(const std::vector<std::string>& names,
                                            const std::vector<std::string>& edge_lists,
                                            bool compact_ids, bool force_er) {
  std::vector<std::string> expanded;
  for (const auto& name : names) {
    if (name == "all") {
      for (const char* n : {"er", "ws", "ba", "well-mixed"}) expanded.emplace_back(n);
    } else {
      expanded.push_back(name);
    }
  }
  if (force_er && std::find(expanded.begin(), expanded.end(), "er") == expanded.end()) {
    expanded.insert(expanded.begin(), "er");
  }
  std::vector<NetworkSource> out;
  for (const auto& name : expanded) {
    if (std::none_of(out.begin(), out.end(),
                     [&](const NetworkSource& s) { return s.label == named_network(name).label; })) {
      out.push_back(named_network(name));
    }
  }
  for (const auto& path : edge_lists) {
    auto loaded = load_edge_list_file(path, LoadOptions{compact_ids});
    out.push_back(NetworkSource::loaded(path, compact_ids, std::move(loaded.graph)));
  }
  return out;
}

void write_table(const ExperimentTable& table, const std::string& path, const json& manifest,
                 std::ostream& out) {
  auto file = open_output(path);
  table.write_csv(file);
  write_json(manifest_path(path), manifest);
  out << "wrote " << path << " (" << table.rows.size() << " rows)\n";
}

json sweep_manifest(const std::string& command, const std::vector<SweepSpec>& specs) {
  json list = json::array();
  for (const auto& s : specs) list.push_back(sweep_spec_json(s));
  return {{"command", command}, {"sweeps", list}};
}

// --- simulate ---------------------------------------------------------------

TrajectorySummary summarize_ode(const OdeSolution& sol) {
  TrajectorySummary s;
  s.peak_infected_fraction = sol.states.front().i;
  s.peak_time = sol.t.front();
  for (std::size_t k = 0; k < sol.t.size(); ++k) {
    if (sol.states[k].i > s.peak_infected_fraction) {
      s.peak_infected_fraction = sol.states[k].i;
      s.peak_time = sol.t[k];
    }
  }
  s.final_recovered_fraction = sol.states.back().r;
  return s;
}

int run_simulate(const std::string& config_path, const std::string& seed_flag,
                 const std::string& out_dir, std::ostream& out) {
  auto config = parse_config(parse_json_text(read_file(config_path), config_path));
  if (!seed_flag.empty()) {
    std::uint64_t seed = 0;
    if (seed_flag == "auto") {
      std::random_device device;
      seed = (static_cast<std::uint64_t>(device()) << 32) | device();
      out << "seed " << seed << '\n';
    } else {
      try {
        seed = std::stoull(seed_flag);
      } catch (const std::exception&) {
        throw ConfigError("--seed: expected an integer or 'auto'");
      }
    }
    // A generator seed that simply followed the old init seed follows the new one.
    if (auto* gen = std::get_if<GeneratorParams>(&config.network); gen && gen->seed == config.seed) {
      gen->seed = seed;
    }
    config.seed = seed;
  }

  const auto trajectory_path = joined(out_dir, config.output.trajectory);
  const auto summary_path = joined(out_dir, config.output.summary);
  const auto manifest_file = joined(out_dir, config.output.manifest);
  const std::uint64_t init_seed = mix_seed(config.seed, 1);
  const std::uint64_t run_seed = mix_seed(config.seed, 2);

  TrajectorySummary summary;
  {
    auto traj_out = open_output(trajectory_path);
    if (config.engine == EngineSelector::Ode) {
      const auto& wm = std::get<WellMixedSource>(config.network);
      const auto infected = config.initial.resolve(wm.n);
      const double i0 = static_cast<double>(infected) / static_cast<double>(wm.n);
      RateParams effective = config.rates;
      effective.beta *= wm.k_avg;
      const auto sol = ode_sirs(effective, FractionState{1.0 - i0, i0, 0.0}, config.t_max, config.dt);
      write_ode_csv(traj_out, sol);
      summary = summarize_ode(sol);
    } else {
      RunOptions options;
      options.interventions = config.interventions;
      options.record_stride = config.record_stride;
      Trajectory traj;
      if (const auto* wm = std::get_if<WellMixedSource>(&config.network)) {
        const auto infected = config.initial.resolve(wm->n);
        const Counts init{wm->n - infected, infected, 0};
        if (config.engine == EngineSelector::Abm) {
          RateParams effective = config.rates;
          effective.beta *= wm->k_avg;
          traj = abm_run(wm->n, effective, init, static_cast<std::size_t>(std::floor(config.t_max)),
                         run_seed);
        } else {
          traj = gillespie_well_mixed(wm->n, wm->k_avg, config.rates, init, config.t_max, run_seed, options);
        }
      } else {
        Graph g;
        if (const auto* gen = std::get_if<GeneratorParams>(&config.network)) {
          g = generate(*gen);
        } else {
          const auto& el = std::get<EdgeListSource>(config.network);
          g = load_edge_list_file(el.path, LoadOptions{el.compact_ids}).graph;
        }
        const auto init = init_state(g, config.initial, init_seed);
        traj = gillespie_run(g, config.rates, init, config.t_max, run_seed, options);
      }
      write_trajectory_csv(traj_out, traj);
      summary = summarize_trajectory(traj);
    }
  }
  write_json(summary_path, summary_json(summary, config.seed));
  write_json(manifest_file, {{"command", "simulate"},
                             {"config", to_json(config)},
                             {"outputs", {trajectory_path, summary_path}}});
  out << "wrote " << trajectory_path << " and " << summary_path << '\n';
  return kSuccess;
}

int classify(std::ostream& err, const std::exception& e, int code) {
  err << "error: " << e.what() << '\n';
  return code;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Epidemic simulation on contact networks", "epinet"};
  app.require_subcommand(1);
  const std::size_t default_threads = default_parallelism();

  // generate
  auto* generate_cmd = app.add_subcommand("generate", "Emit a synthetic graph as an edge list");
  std::string model = "ba";
  std::size_t gen_n = 1000, gen_k = 10, gen_m = 5;
  double gen_p = 0.01, gen_p_rewire = 0.1;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  generate_cmd->add_option("--model", model, "er, ws or ba")->check(CLI::IsMember({"er", "ws", "ba"}));
  generate_cmd->add_option("--n", gen_n, "Node count");
  generate_cmd->add_option("--p", gen_p, "ER edge probability");
  generate_cmd->add_option("--k", gen_k, "WS ring degree (even)");
  generate_cmd->add_option("--p-rewire", gen_p_rewire, "WS rewiring probability");
  generate_cmd->add_option("--m", gen_m, "BA edges per new node");
  generate_cmd->add_option("--seed", gen_seed, "Generator seed");
  generate_cmd->add_option("--out", gen_out, "Output path (default: stdout)");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "Degree statistics of an edge-list file as JSON");
  std::string metrics_path, metrics_out;
  bool metrics_compact = false;
  metrics_cmd->add_option("edge_list", metrics_path, "Edge-list file")->required();
  metrics_cmd->add_flag("--compact-ids", metrics_compact, "Relabel sparse node ids densely");
  metrics_cmd->add_option("--out", metrics_out, "Output path (default: stdout)");

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Single run from a JSON config");
  std::string sim_config, sim_seed, sim_out_dir;
  simulate_cmd->add_option("--config", sim_config, "Run config (JSON)")->required();
  simulate_cmd->add_option("--seed", sim_seed, "Override init seed; 'auto' draws and prints one");
  simulate_cmd->add_option("--out-dir", sim_out_dir, "Directory prefix for relative output paths");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Replicated beta sweep from a JSON SweepSpec");
  std::string sweep_config, sweep_out = "sweep.csv";
  std::size_t sweep_threads = default_threads;
  sweep_cmd->add_option("--config", sweep_config, "Sweep spec (JSON)")->required();
  sweep_cmd->add_option("--out", sweep_out, "Table CSV path");
  sweep_cmd->add_option("--threads", sweep_threads, "Worker threads");

  // exp01
  auto* exp01 = app.add_subcommand("exp01", "Epidemic scope vs beta (ER reference always included)");
  std::vector<std::string> e1_networks{"all"}, e1_edge_lists;
  bool e1_compact = false;
  double e1_beta_max = 0.3, e1_beta_step = 0.025, e1_gamma = 1.0, e1_fraction = 0.01, e1_t_max = 200.0;
  std::size_t e1_reps = 50, e1_threads = default_threads;
  std::uint64_t e1_seed = 1;
  std::string e1_out = "exp01.csv";
  exp01->add_option("--network", e1_networks, "er, ws, ba, well-mixed or all (repeatable)");
  exp01->add_option("--edge-list", e1_edge_lists, "Additional real-world edge list (repeatable)");
  exp01->add_flag("--compact-ids", e1_compact, "Relabel sparse node ids densely");
  exp01->add_option("--beta-max", e1_beta_max, "Largest beta in the grid");
  exp01->add_option("--beta-step", e1_beta_step, "Grid spacing");
  exp01->add_option("--gamma", e1_gamma, "Recovery rate");
  exp01->add_option("--fraction", e1_fraction, "Initial infected fraction");
  exp01->add_option("--t-max", e1_t_max, "Time horizon");
  exp01->add_option("--replicates", e1_reps, "Replicates per point");
  exp01->add_option("--seed", e1_seed, "Base seed");
  exp01->add_option("--threads", e1_threads, "Worker threads");
  exp01->add_option("--out", e1_out, "Table CSV path");

  // exp02
  auto* exp02 = app.add_subcommand("exp02", "ER vs BA over a density grid at matched <k>");
  DensityComparisonConfig e2;
  e2.threads = default_threads;
  std::string e2_out = "exp02.csv";
  exp02->add_option("--n", e2.n, "Node count of every graph");
  exp02->add_option("--densities", e2.densities, "Target densities");
  exp02->add_option("--beta", e2.beta, "Infection rate");
  exp02->add_option("--gamma", e2.gamma, "Recovery rate");
  exp02->add_option("--fraction", e2.initial_fraction, "Initial infected fraction");
  exp02->add_option("--t-max", e2.t_max, "Time horizon");
  exp02->add_option("--replicates", e2.replicates, "Replicates per point");
  exp02->add_option("--seed", e2.base_seed, "Base seed");
  exp02->add_option("--threads", e2.threads, "Worker threads");
  exp02->add_option("--out", e2_out, "Table CSV path");

  // exp03
  auto* exp03 = app.add_subcommand("exp03", "Degree-cap lockdown at different trigger times");
  InterventionTimingConfig e3;
  e3.threads = default_threads;
  std::string e3_out = "exp03.csv";
  exp03->add_option("--n", e3.n, "BA node count");
  exp03->add_option("--m", e3.m, "BA edges per new node");
  exp03->add_option("--cap", e3.cap, "Maximum degree after the lockdown");
  exp03->add_option("--triggers", e3.trigger_times, "Trigger times");
  exp03->add_option("--beta", e3.beta, "Infection rate");
  exp03->add_option("--gamma", e3.gamma, "Recovery rate");
  exp03->add_option("--fraction", e3.initial_fraction, "Initial infected fraction");
  exp03->add_option("--t-max", e3.t_max, "Time horizon");
  exp03->add_option("--window-delay", e3.window_delay, "Measurement delay as a fraction of the remaining time");
  exp03->add_option("--replicates", e3.replicates, "Replicates per point");
  exp03->add_option("--seed", e3.base_seed, "Base seed");
  exp03->add_option("--threads", e3.threads, "Worker threads");
  exp03->add_option("--out", e3_out, "Table CSV path");

  // exp04
  auto* exp04 = app.add_subcommand("exp04", "SIRS waves with an SIR control");
  WaveConfig e4;
  e4.threads = default_threads;
  std::vector<std::string> e4_networks{"all"}, e4_edge_lists;
  bool e4_compact = false;
  std::string e4_out = "exp04.csv", e4_curves;
  exp04->add_option("--network", e4_networks, "er, ws, ba, well-mixed or all (repeatable)");
  exp04->add_option("--edge-list", e4_edge_lists, "Additional real-world edge list (repeatable)");
  exp04->add_flag("--compact-ids", e4_compact, "Relabel sparse node ids densely");
  exp04->add_option("--beta", e4.beta, "Infection rate");
  exp04->add_option("--gamma", e4.gamma, "Recovery rate");
  exp04->add_option("--alpha", e4.alpha, "Waning-immunity rate");
  exp04->add_option("--fraction", e4.initial_fraction, "Initial infected fraction");
  exp04->add_option("--t-max", e4.t_max, "Time horizon");
  exp04->add_option("--smoothing", e4.smoothing_fraction, "Smoothing window as a fraction of t_max");
  exp04->add_option("--min-peak", e4.min_peak_fraction, "Minimum infected fraction of a counted peak");
  exp04->add_option("--replicates", e4.replicates, "Replicates per network");
  exp04->add_option("--seed", e4.base_seed, "Base seed");
  exp04->add_option("--threads", e4.threads, "Worker threads");
  exp04->add_option("--out", e4_out, "Table CSV path");
  exp04->add_option("--curves", e4_curves, "Mean-curve CSV path (default: <out>.curves.csv)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kUsageError;
  }

  try {
    if (generate_cmd->parsed()) {
      const auto params = generator_from_flags(model, gen_n, gen_p, gen_k, gen_p_rewire, gen_m, gen_seed);
      const auto g = generate(params);
      if (gen_out.empty()) {
        write_edge_list(out, g);
      } else {
        auto file = open_output(gen_out);
        write_edge_list(file, g);
        write_json(manifest_path(gen_out), {{"command", "generate"},
                                            {"generator", network_source_json(NetworkSource::generated(params))},
                                            {"seed", gen_seed}});
        out << "wrote " << gen_out << '\n';
      }
    } else if (metrics_cmd->parsed()) {
      std::ifstream in(metrics_path);
      if (!in) throw IoError("cannot read '" + metrics_path + "'");
      const auto loaded = load_edge_list(in, LoadOptions{metrics_compact});
      auto report = metrics_report(loaded.graph);
      report["self_loops_skipped"] = loaded.self_loops_skipped;
      if (metrics_out.empty()) {
        out << report.dump(2) << '\n';
      } else {
        write_json(metrics_out, report);
        write_json(manifest_path(metrics_out),
                   {{"command", "metrics"}, {"input", metrics_path}, {"compact_ids", metrics_compact}});
      }
    } else if (simulate_cmd->parsed()) {
      return run_simulate(sim_config, sim_seed, sim_out_dir, out);
    } else if (sweep_cmd->parsed()) {
      auto spec = parse_sweep(parse_json_text(read_file(sweep_config), sweep_config));
      spec.threads = sweep_threads;
      write_table(sweep(spec), sweep_out, sweep_manifest("sweep", {spec}), out);
    } else if (exp01->parsed()) {
      ScopeSweepConfig c;
      c.networks = resolve_networks(e1_networks, e1_edge_lists, e1_compact, true);
      if (!(e1_beta_step > 0.0) || !(e1_beta_max >= 0.0)) {
        throw ParameterError("--beta-step must be > 0 and --beta-max >= 0");
      }
      const auto steps = static_cast<std::size_t>(std::floor(e1_beta_max / e1_beta_step + 1e-9));
      for (std::size_t k = 0; k <= steps; ++k) c.betas.push_back(static_cast<double>(k) * e1_beta_step);
      c.gamma = e1_gamma;
      c.initial_fraction = e1_fraction;
      c.t_max = e1_t_max;
      c.replicates = e1_reps;
      c.base_seed = e1_seed;
      c.threads = e1_threads;
      std::vector<SweepSpec> specs;
      for (const auto& net : c.networks) {
        SweepSpec s;
        s.experiment = "exp01";
        s.network = net;
        s.betas = c.betas;
        s.gamma = c.gamma;
        s.initial = InitialInfected::fraction(c.initial_fraction);
        s.t_max = c.t_max;
        s.replicates = c.replicates;
        s.base_seed = c.base_seed;
        specs.push_back(s);
      }
      write_table(experiment_scope_sweep(c), e1_out, sweep_manifest("exp01", specs), out);
    } else if (exp02->parsed()) {
      json points = json::array();
      for (const auto& p : density_points(e2)) {
        points.push_back({{"target_density", p.target_density}, {"ba_m", p.ba_m}, {"density", p.density}});
      }
      json manifest{{"command", "exp02"},  {"n", e2.n},           {"points", points},
                    {"beta", e2.beta},     {"gamma", e2.gamma},   {"initial_fraction", e2.initial_fraction},
                    {"t_max", e2.t_max},   {"replicates", e2.replicates}, {"base_seed", e2.base_seed}};
      write_table(experiment_density_comparison(e2), e2_out, manifest, out);
    } else if (exp03->parsed()) {
      json manifest{{"command", "exp03"},
                    {"network", {{"ba", {{"n", e3.n}, {"m", e3.m}}}}},
                    {"cap", e3.cap},
                    {"trigger_times", e3.trigger_times},
                    {"beta", e3.beta},
                    {"gamma", e3.gamma},
                    {"initial_fraction", e3.initial_fraction},
                    {"t_max", e3.t_max},
                    {"window_delay", e3.window_delay},
                    {"replicates", e3.replicates},
                    {"base_seed", e3.base_seed}};
      write_table(experiment_intervention_timing(e3), e3_out, manifest, out);
    } else if (exp04->parsed()) {
      e4.networks = resolve_networks(e4_networks, e4_edge_lists, e4_compact, false);
      const auto result = experiment_sirs(e4);
      json nets = json::array();
      for (const auto& n : e4.networks) nets.push_back(network_source_json(n));
      json manifest{{"command", "exp04"},
                    {"networks", nets},
                    {"beta", e4.beta},
                    {"gamma", e4.gamma},
                    {"alpha", e4.alpha},
                    {"initial_fraction", e4.initial_fraction},
                    {"t_max", e4.t_max},
                    {"smoothing_fraction", e4.smoothing_fraction},
                    {"min_peak_fraction", e4.min_peak_fraction},
                    {"sir_control", e4.sir_control},
                    {"replicates", e4.replicates},
                    {"base_seed", e4.base_seed}};
      write_table(result.table, e4_out, manifest, out);
      const auto curves_path = e4_curves.empty() ? e4_out + ".curves.csv" : e4_curves;
      auto file = open_output(curves_path);
      write_mean_curves_csv(file, result.curves);
      write_json(manifest_path(curves_path), manifest);
      out << "wrote " << curves_path << '\n';
    }
  } catch (const ConfigError& e) {
    return classify(err, e, kInputError);
  } catch (const ParseError& e) {
    return classify(err, e, kInputError);
  } catch (const IoError& e) {
    return classify(err, e, kInputError);
  } catch (const ParameterError& e) {
    return classify(err, e, kInputError);
  } catch (const std::exception& e) {
    return classify(err, e, kRuntimeError);
  }
  return kSuccess;
}

}  // namespace epinet::cli
