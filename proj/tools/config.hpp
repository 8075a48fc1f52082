#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "epinet/epidemic.hpp"
#include "epinet/experiments.hpp"
#include "epinet/generators.hpp"
#include "epinet/interventions.hpp"
#include "json.hpp"

namespace epinet::cli {

// Thrown for any invalid configuration; the message carries the JSON path.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EdgeListSource {
  std::string path;
  bool compact_ids = false;
};

enum class EngineSelector { Gillespie, Abm, Ode };

struct OutputPaths {
  std::string trajectory = "trajectory.csv";
  std::string summary = "summary.json";
  std::string manifest = "manifest.json";
};

struct RunConfig {
  // Generator seeds default to the init seed.
  std::variant<GeneratorParams, EdgeListSource, WellMixedSource> network;
  RateParams rates;
  InitialInfected initial = InitialInfected::fraction(0.01);
  std::uint64_t seed = 0;
  double t_max = 0.0;
  std::vector<InterventionSpec> interventions;
  OutputPaths output;
  EngineSelector engine = EngineSelector::Gillespie;
  double dt = 0.01;  // ODE step
  std::size_t record_stride = 1;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
// Fully resolved form; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& config);

// Sweep document: {"network": {...}, "betas": [...], "gamma", "alpha",
// "init": {...}, "t_max", "replicates", "base_seed", "intervention",
// "window_delay", "experiment"}. Edge lists are loaded here.
SweepSpec parse_sweep(const nlohmann::json& doc);

}  // namespace epinet::cli
