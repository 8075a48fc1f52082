#include "epinet/reports.hpp"

#include <stdexcept>

#include "epinet/metrics.hpp"

namespace epinet {

using nlohmann::json;

json metrics_report(const Graph& g) {
  json out;
  out["nodes"] = g.node_count();
  out["edges"] = g.edge_count();
  if (g.node_count() == 0) {
    out["avg_degree"] = nullptr;
    out["density"] = nullptr;
    out["power_law_exponent"] = nullptr;
    out["scale_free"] = false;
    return out;
  }
  const auto stats = analyze(g);
  out["avg_degree"] = stats.average_degree;
  out["density"] = stats.density ? json(*stats.density) : json(nullptr);
  out["power_law_exponent"] = stats.power_law_exponent ? json(*stats.power_law_exponent) : json(nullptr);
  out["scale_free"] = stats.scale_free;
  return out;
}

json summary_json(const TrajectorySummary& summary, std::uint64_t seed) {
  return {{"peak_infected_fraction", summary.peak_infected_fraction},
          {"peak_time", summary.peak_time},
          {"final_recovered_fraction", summary.final_recovered_fraction},
          {"seed", seed}};
}

json intervention_json(const InterventionSpec& spec) {
  json out{{"t", spec.trigger_time}};
  if (const auto* cap = std::get_if<DegreeCap>(&spec.action)) {
    out["action"] = "degree_cap";
    out["cap"] = cap->cap;
  } else {
    out["action"] = "thin";
    out["target"] = std::get<ThinToDensity>(spec.action).target;
  }
  return out;
}

InterventionSpec parse_intervention(const json& j, const std::string& path) {
  if (!j.is_object()) throw std::invalid_argument(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "t" && key != "action" && key != "cap" && key != "target") {
      throw std::invalid_argument(path + ": unknown key '" + key + "'");
    }
  }
  if (!j.contains("t") || !j["t"].is_number()) throw std::invalid_argument(path + ".t: required number");
  if (!j.contains("action") || !j["action"].is_string()) {
    throw std::invalid_argument(path + ".action: required string");
  }
  InterventionSpec spec;
  spec.trigger_time = j["t"].get<double>();
  const auto action = j["action"].get<std::string>();
  if (action == "degree_cap") {
    if (j.contains("target")) throw std::invalid_argument(path + ": 'target' does not apply to degree_cap");
    if (!j.contains("cap") || !j["cap"].is_number_integer() || j["cap"].get<std::int64_t>() < 0) {
      throw std::invalid_argument(path + ".cap: required non-negative integer");
    }
    spec.action = DegreeCap{j["cap"].get<std::size_t>()};
  } else if (action == "thin") {
    if (j.contains("cap")) throw std::invalid_argument(path + ": 'cap' does not apply to thin");
    if (!j.contains("target") || !j["target"].is_number()) {
      throw std::invalid_argument(path + ".target: required number");
    }
    spec.action = ThinToDensity{j["target"].get<double>()};
  } else {
    throw std::invalid_argument(path + ".action: unknown action '" + action + "'");
  }
  spec.validate();
  return spec;
}

json network_source_json(const NetworkSource& source) {
  json out{{"label", source.label}};
  if (const auto* gen = std::get_if<GeneratorParams>(&source.source)) {
    if (const auto* er = std::get_if<ErdosRenyiParams>(&gen->variant)) {
      out["er"] = {{"n", er->n}, {"p", er->p}};
    } else if (const auto* ws = std::get_if<WattsStrogatzParams>(&gen->variant)) {
      out["ws"] = {{"n", ws->n}, {"k", ws->k}, {"p_rewire", ws->p_rewire}};
    } else {
      const auto& ba = std::get<BarabasiAlbertParams>(gen->variant);
      out["ba"] = {{"n", ba.n}, {"m", ba.m}};
    }
  } else if (const auto* wm = std::get_if<WellMixedSource>(&source.source)) {
    out["well_mixed"] = {{"n", wm->n}, {"k_avg", wm->k_avg}};
  } else {
    const auto& loaded = std::get<LoadedSource>(source.source);
    out["edge_list"] = {{"path", loaded.path}, {"compact_ids", loaded.compact_ids}};
  }
  return out;
}

json sweep_spec_json(const SweepSpec& spec) {
  json out{{"experiment", spec.experiment},
           {"network", network_source_json(spec.network)},
           {"betas", spec.betas},
           {"gamma", spec.gamma},
           {"alpha", spec.alpha},
           {"t_max", spec.t_max},
           {"replicates", spec.replicates},
           {"base_seed", spec.base_seed},
           {"window_delay", spec.window_delay}};
  if (const auto* c = std::get_if<std::size_t>(&spec.initial.amount)) {
    out["init"] = {{"count", *c}};
  } else {
    out["init"] = {{"fraction", std::get<double>(spec.initial.amount)}};
  }
  out["intervention"] = spec.intervention ? intervention_json(*spec.intervention) : json(nullptr);
  return out;
}

}  // namespace epinet
