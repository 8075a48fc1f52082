#include "config.hpp"

#include <algorithm>
#include <initializer_list>

#include "epinet/edge_list.hpp"
#include "epinet/errors.hpp"
#include "epinet/reports.hpp"

namespace epinet::cli {
namespace {

using nlohmann::json;

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(path + ": unknown key '" + key + "'");
  }
}

const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key + ": missing required field");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

std::uint64_t unsigned_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw ConfigError(path + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

double number_or(const json& j, const std::string& path, const char* key, double fallback) {
  return j.contains(key) ? number(j.at(key), path + "." + key) : fallback;
}

struct ParsedNetwork {
  std::variant<GeneratorParams, EdgeListSource, WellMixedSource> source;
  std::optional<std::uint64_t> generator_seed;
};

ParsedNetwork parse_network(const json& j, const std::string& path) {
  only_keys(j, path, {"er", "ws", "ba", "edge_list", "well_mixed"});
  if (j.size() != 1) {
    throw ConfigError(path + ": exactly one network source required (er, ws, ba, edge_list, well_mixed), got " +
                      std::to_string(j.size()));
  }
  const auto& [kind, body] = *j.items().begin();
  const std::string sub = path + "." + kind;
  ParsedNetwork out;
  auto seed_of = [&](const json& b) -> std::optional<std::uint64_t> {
    if (!b.contains("seed")) return std::nullopt;
    return unsigned_int(b.at("seed"), sub + ".seed");
  };
  if (kind == "er") {
    only_keys(body, sub, {"n", "p", "seed"});
    out.source = GeneratorParams{ErdosRenyiParams{unsigned_int(require(body, sub, "n"), sub + ".n"),
                                                  number(require(body, sub, "p"), sub + ".p")},
                                 0};
    out.generator_seed = seed_of(body);
  } else if (kind == "ws") {
    only_keys(body, sub, {"n", "k", "p_rewire", "seed"});
    out.source = GeneratorParams{
        WattsStrogatzParams{unsigned_int(require(body, sub, "n"), sub + ".n"),
                            unsigned_int(require(body, sub, "k"), sub + ".k"),
                            number(require(body, sub, "p_rewire"), sub + ".p_rewire")},
        0};
    out.generator_seed = seed_of(body);
  } else if (kind == "ba") {
    only_keys(body, sub, {"n", "m", "seed"});
    out.source = GeneratorParams{BarabasiAlbertParams{unsigned_int(require(body, sub, "n"), sub + ".n"),
                                                      unsigned_int(require(body, sub, "m"), sub + ".m")},
                                 0};
    out.generator_seed = seed_of(body);
  } else if (kind == "edge_list") {
    only_keys(body, sub, {"path", "compact_ids"});
    const auto& p = require(body, sub, "path");
    if (!p.is_string()) throw ConfigError(sub + ".path: expected a string");
    EdgeListSource src{p.get<std::string>(), false};
    if (body.contains("compact_ids")) {
      if (!body["compact_ids"].is_boolean()) throw ConfigError(sub + ".compact_ids: expected a boolean");
      src.compact_ids = body["compact_ids"].get<bool>();
    }
    out.source = src;
  } else {
    only_keys(body, sub, {"n", "k_avg"});
    out.source = WellMixedSource{unsigned_int(require(body, sub, "n"), sub + ".n"),
                                 number_or(body, sub, "k_avg", 1.0)};
  }
  return out;
}

InitialInfected parse_initial(const json& j, const std::string& path, bool allow_seed) {
  if (allow_seed) {
    only_keys(j, path, {"fraction", "count", "seed"});
  } else {
    only_keys(j, path, {"fraction", "count"});
  }
  if (j.contains("fraction") && j.contains("count")) {
    throw ConfigError(path + ": 'fraction' and 'count' are mutually exclusive");
  }
  if (j.contains("count")) return InitialInfected::count(unsigned_int(j["count"], path + ".count"));
  if (j.contains("fraction")) return InitialInfected::fraction(number(j["fraction"], path + ".fraction"));
  throw ConfigError(path + ": one of 'fraction' or 'count' is required");
}

void check_generator(const GeneratorParams& g, const std::string& path) {
  try {
    std::visit(
        [](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ErdosRenyiParams>) {
            if (!(p.p >= 0.0 && p.p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
          } else if constexpr (std::is_same_v<T, WattsStrogatzParams>) {
            if (p.k % 2 != 0 || p.k >= p.n) throw ParameterError("k must be even and smaller than n");
            if (!(p.p_rewire >= 0.0 && p.p_rewire <= 1.0)) throw ParameterError("p_rewire must lie in [0, 1]");
          } else {
            if (p.m < 1 || p.m >= p.n) throw ParameterError("m must satisfy 1 <= m < n");
          }
        },
        g.variant);
  } catch (const ParameterError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json initial_json(const InitialInfected& init) {
  if (const auto* c = std::get_if<std::size_t>(&init.amount)) return {{"count", *c}};
  return {{"fraction", std::get<double>(init.amount)}};
}

std::string engine_name(EngineSelector e) {
  switch (e) {
    case EngineSelector::Gillespie: return "gillespie";
    case EngineSelector::Abm: return "abm";
    case EngineSelector::Ode: return "ode";
  }
  return "gillespie";
}

}  // namespace

RunConfig parse_config(const json& doc) {
  only_keys(doc, "$", {"network", "rates", "init", "t_max", "engine", "interventions", "output",
                       "dt", "record_stride"});
  RunConfig c;
  const auto net = parse_network(require(doc, "$", "network"), "$.network");
  c.network = net.source;

  const auto& rates = require(doc, "$", "rates");
  only_keys(rates, "$.rates", {"beta", "gamma", "alpha"});
  c.rates.beta = number(require(rates, "$.rates", "beta"), "$.rates.beta");
  c.rates.gamma = number(require(rates, "$.rates", "gamma"), "$.rates.gamma");
  c.rates.alpha = number_or(rates, "$.rates", "alpha", 0.0);
  try {
    c.rates.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("$.rates: ") + e.what());
  }

  const auto& init = require(doc, "$", "init");
  c.initial = parse_initial(init, "$.init", true);
  if (init.contains("seed")) c.seed = unsigned_int(init["seed"], "$.init.seed");

  c.t_max = number(require(doc, "$", "t_max"), "$.t_max");
  if (!(c.t_max > 0.0)) throw ConfigError("$.t_max: must be > 0");

  if (auto* gen = std::get_if<GeneratorParams>(&c.network)) {
    gen->seed = net.generator_seed.value_or(c.seed);
    check_generator(*gen, "$.network");
  }

  if (doc.contains("engine")) {
    if (!doc["engine"].is_string()) throw ConfigError("$.engine: expected a string");
    const auto e = doc["engine"].get<std::string>();
    if (e == "gillespie") c.engine = EngineSelector::Gillespie;
    else if (e == "abm") c.engine = EngineSelector::Abm;
    else if (e == "ode") c.engine = EngineSelector::Ode;
    else throw ConfigError("$.engine: unknown engine '" + e + "' (gillespie, abm, ode)");
  }

  if (doc.contains("interventions")) {
    const auto& list = doc["interventions"];
    if (!list.is_array()) throw ConfigError("$.interventions: expected an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto path = "$.interventions[" + std::to_string(k) + "]";
      try {
        c.interventions.push_back(parse_intervention(list[k], path));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }

  if (doc.contains("output")) {
    const auto& out = doc["output"];
    only_keys(out, "$.output", {"trajectory", "summary", "manifest"});
    auto str = [&](const char* key, std::string& target) {
      if (!out.contains(key)) return;
      if (!out[key].is_string()) throw ConfigError(std::string("$.output.") + key + ": expected a string");
      target = out[key].get<std::string>();
    };
    str("trajectory", c.output.trajectory);
    str("summary", c.output.summary);
    str("manifest", c.output.manifest);
  }

  c.dt = number_or(doc, "$", "dt", c.dt);
  if (!(c.dt > 0.0)) throw ConfigError("$.dt: must be > 0");
  if (doc.contains("record_stride")) c.record_stride = unsigned_int(doc["record_stride"], "$.record_stride");
  if (c.record_stride == 0) throw ConfigError("$.record_stride: must be >= 1");

  const bool well_mixed = std::holds_alternative<WellMixedSource>(c.network);
  if (c.engine != EngineSelector::Gillespie && !well_mixed) {
    throw ConfigError("$.engine: '" + engine_name(c.engine) + "' requires a well_mixed network");
  }
  if (!c.interventions.empty() && well_mixed) {
    throw ConfigError("$.interventions: structural interventions need a graph network");
  }
  if (c.engine == EngineSelector::Abm && c.rates.alpha != 0.0) {
    throw ConfigError("$.rates.alpha: the abm engine is SIR only");
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json network;
  if (const auto* gen = std::get_if<GeneratorParams>(&c.network)) {
    network = network_source_json(NetworkSource::generated(*gen));
    network.erase("label");
    network.begin()->emplace("seed", gen->seed);
  } else if (const auto* el = std::get_if<EdgeListSource>(&c.network)) {
    network["edge_list"] = {{"path", el->path}, {"compact_ids", el->compact_ids}};
  } else {
    const auto& wm = std::get<WellMixedSource>(c.network);
    network["well_mixed"] = {{"n", wm.n}, {"k_avg", wm.k_avg}};
  }
  json init = initial_json(c.initial);
  init["seed"] = c.seed;
  json interventions = json::array();
  for (const auto& iv : c.interventions) interventions.push_back(intervention_json(iv));
  return {{"network", network},
          {"rates", {{"beta", c.rates.beta}, {"gamma", c.rates.gamma}, {"alpha", c.rates.alpha}}},
          {"init", init},
          {"t_max", c.t_max},
          {"engine", engine_name(c.engine)},
          {"interventions", interventions},
          {"output",
           {{"trajectory", c.output.trajectory},
            {"summary", c.output.summary},
            {"manifest", c.output.manifest}}},
          {"dt", c.dt},
          {"record_stride", c.record_stride}};
}

SweepSpec parse_sweep(const json& doc) {
  only_keys(doc, "$", {"experiment", "network", "betas", "gamma", "alpha", "init", "t_max",
                       "replicates", "base_seed", "intervention", "window_delay"});
  SweepSpec spec;
  if (doc.contains("experiment")) {
    if (!doc["experiment"].is_string()) throw ConfigError("$.experiment: expected a string");
    spec.experiment = doc["experiment"].get<std::string>();
  }
  const auto net = parse_network(require(doc, "$", "network"), "$.network");
  if (net.generator_seed) {
    throw ConfigError("$.network: generator seeds come from base_seed in a sweep; remove 'seed'");
  }
  if (const auto* gen = std::get_if<GeneratorParams>(&net.source)) {
    check_generator(*gen, "$.network");
    spec.network = NetworkSource::generated(*gen);
  } else if (const auto* el = std::get_if<EdgeListSource>(&net.source)) {
    auto loaded = load_edge_list_file(el->path, LoadOptions{el->compact_ids});
    spec.network = NetworkSource::loaded(el->path, el->compact_ids, std::move(loaded.graph));
  } else {
    const auto& wm = std::get<WellMixedSource>(net.source);
    spec.network = NetworkSource::well_mixed(wm.n, wm.k_avg);
  }

  const auto& betas = require(doc, "$", "betas");
  if (!betas.is_array() || betas.empty()) throw ConfigError("$.betas: expected a non-empty array");
  for (std::size_t k = 0; k < betas.size(); ++k) {
    spec.betas.push_back(number(betas[k], "$.betas[" + std::to_string(k) + "]"));
  }
  spec.gamma = number_or(doc, "$", "gamma", spec.gamma);
  spec.alpha = number_or(doc, "$", "alpha", spec.alpha);
  if (doc.contains("init")) spec.initial = parse_initial(doc["init"], "$.init", false);
  spec.t_max = number_or(doc, "$", "t_max", spec.t_max);
  if (doc.contains("replicates")) spec.replicates = unsigned_int(doc["replicates"], "$.replicates");
  if (doc.contains("base_seed")) spec.base_seed = unsigned_int(doc["base_seed"], "$.base_seed");
  if (doc.contains("intervention") && !doc["intervention"].is_null()) {
    try {
      spec.intervention = parse_intervention(doc["intervention"], "$.intervention");
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  spec.window_delay = number_or(doc, "$", "window_delay", spec.window_delay);
  try {
    spec.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("$: ") + e.what());
  }
  if (spec.intervention && std::holds_alternative<WellMixedSource>(spec.network.source)) {
    throw ConfigError("$.intervention: structural interventions need a graph network");
  }
  return spec;
}

}  // namespace epinet::cli
