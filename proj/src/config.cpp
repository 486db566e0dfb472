#include "dac/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dac/errors.hpp"
#include "dac/generators.hpp"
#include "dac/random.hpp"

namespace dac {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw InputError(where + ": unknown key '" + key + "'");
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw InputError(where + ": '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(where + ": '" + key + "' must be finite");
  return x;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

int integer(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw InputError(where + ": '" + key + "' must be an integer");
  return v.get<int>();
}

std::uint64_t seed_value(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw InputError(where + ": seed must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string text(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw InputError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

Sinusoid parse_sinusoid(const json& j, const std::string& where) {
  reject_unknown(j, {"type", "amplitude", "frequency", "phase"}, where);
  return {number_or(j, "amplitude", 1.0, where), number_or(j, "frequency", 1.0, where),
          number_or(j, "phase", 0.0, where)};
}

std::pair<Signal, std::optional<std::uint64_t>> parse_signal(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type")) throw InputError(where + ": signal needs a 'type'");
  const std::string type = text(j, "type", where);
  if (type == "sinusoid") return {parse_sinusoid(j, where), std::nullopt};
  if (type == "cosine") {
    const auto s = parse_sinusoid(j, where);
    return {Cosine{s.amplitude, s.frequency, s.phase}, std::nullopt};
  }
  if (type == "sum_of_sinusoids") {
    reject_unknown(j, {"type", "terms"}, where);
    SumOfSinusoids sum;
    for (const auto& term : j.at("terms")) sum.terms.push_back(parse_sinusoid(term, where));
    return {sum, std::nullopt};
  }
  if (type == "ramp") {
    reject_unknown(j, {"type", "slope"}, where);
    return {Ramp{number_or(j, "slope", 1.0, where)}, std::nullopt};
  }
  if (type == "atan") {
    reject_unknown(j, {"type", "scale", "rate"}, where);
    return {Atan{number_or(j, "scale", 1.0, where), number_or(j, "rate", 1.0, where)}, std::nullopt};
  }
  if (type == "constant") {
    reject_unknown(j, {"type", "value"}, where);
    return {Constant{number(j, "value", where)}, std::nullopt};
  }
  if (type == "sampled_hold") {
    reject_unknown(j, {"type", "offset", "bias", "period", "frequency_std", "phase_std", "seed"}, where);
    SampledHold s;
    s.offset = number_or(j, "offset", s.offset, where);
    s.bias = number_or(j, "bias", s.bias, where);
    s.period = number_or(j, "period", s.period, where);
    s.frequency_std = number_or(j, "frequency_std", s.frequency_std, where);
    s.phase_std = number_or(j, "phase_std", s.phase_std, where);
    if (!(s.period > 0.0)) throw InputError(where + ": sampled_hold period must be positive");
    std::optional<std::uint64_t> seed;
    if (j.contains("seed")) seed = seed_value(j.at("seed"), where);
    return {s, seed};
  }
  throw InputError(where + ": unknown signal type '" + type + "'");
}

SignalSpec parse_signals(const json& j) {
  SignalSpec spec;
  if (j.is_string()) {
    spec.preset = j.get<std::string>();
  } else if (j.is_object()) {
    reject_unknown(j, {"preset", "values", "seed"}, "signals");
    spec.preset = text(j, "preset", "signals");
    if (j.contains("values")) {
      for (const auto& v : j.at("values")) {
        if (!v.is_number()) throw InputError("signals: values must be numbers");
        spec.values.push_back(v.get<double>());
      }
    }
    if (j.contains("seed")) spec.seed = seed_value(j.at("seed"), "signals");
  } else if (j.is_array()) {
    int i = 0;
    for (const auto& entry : j) {
      auto [signal, seed] = parse_signal(entry, "signals[" + std::to_string(i++) + "]");
      spec.signals.push_back(std::move(signal));
      spec.seeds.push_back(seed);
    }
  } else {
    throw InputError("signals: expected a preset name, preset object or list");
  }
  if (!spec.preset.empty() && spec.preset != "continuous_six" && spec.preset != "sampled_hold_six" &&
      spec.preset != "constant") {
    throw InputError("signals: unknown preset '" + spec.preset + "'");
  }
  if (spec.preset == "constant" && spec.values.empty()) {
    throw InputError("signals: preset 'constant' needs 'values'");
  }
  return spec;
}

SweepGrid parse_sweep(const json& j) {
  reject_unknown(j, {"variable", "values", "linspace"}, "sweep");
  SweepGrid grid;
  grid.variable = text(j, "variable", "sweep");
  if (grid.variable != "tau" && grid.variable != "d") {
    throw InputError("sweep: variable must be 'tau' or 'd'");
  }
  if (j.contains("values") == j.contains("linspace")) {
    throw InputError("sweep: give exactly one of 'values' or 'linspace'");
  }
  if (j.contains("values")) {
    for (const auto& v : j.at("values")) {
      if (!v.is_number()) throw InputError("sweep: values must be numbers");
      grid.values.push_back(v.get<double>());
    }
  } else {
    const auto& ls = j.at("linspace");
    if (!ls.is_array() || ls.size() != 3 || !ls[2].is_number_integer()) {
      throw InputError("sweep: linspace must be [start, stop, count]");
    }
    const double a = ls[0].get<double>();
    const double b = ls[1].get<double>();
    const int count = ls[2].get<int>();
    if (count < 1) throw InputError("sweep: linspace count must be positive");
    for (int i = 0; i < count; ++i) {
      grid.values.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
    }
  }
  if (grid.values.empty()) throw InputError("sweep: no values");
  if (grid.variable == "d") {
    for (double v : grid.values) {
      if (v < 0 || v != std::floor(v)) throw InputError("sweep: d values must be nonnegative integers");
    }
  }
  return grid;
}

}  // namespace

std::string to_string(Mode m) { return m == Mode::Ct ? "ct" : "dt"; }

RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config: top level must be an object");
  reject_unknown(j,
                 {"graph_path", "graph_preset", "mode", "beta", "tau", "h", "horizon", "delta", "d", "steps",
                  "signals", "seed", "output_dir", "sweep", "envelope_horizon", "envelope_grid"},
                 "config");
  try {
    RunConfig cfg;
    if (j.contains("graph_path") == j.contains("graph_preset")) {
      throw InputError("config: give exactly one of 'graph_path' or 'graph_preset'");
    }
    if (j.contains("graph_path")) {
      cfg.graph_path = text(j, "graph_path", "config");
      if (cfg.graph_path.is_relative() && !base_dir.empty()) cfg.graph_path = base_dir / cfg.graph_path;
    } else {
      cfg.graph_preset = text(j, "graph_preset", "config");
      if (cfg.graph_preset != "six_ring" && cfg.graph_preset != "six_ring_with_chords") {
        throw InputError("config: unknown graph_preset '" + cfg.graph_preset + "'");
      }
    }
    const std::string mode = text(j, "mode", "config");
    if (mode == "ct") {
      cfg.mode = Mode::Ct;
    } else if (mode == "dt") {
      cfg.mode = Mode::Dt;
    } else {
      throw InputError("config: mode must be 'ct' or 'dt'");
    }
    cfg.beta = number_or(j, "beta", 1.0, "config");
    if (!(cfg.beta > 0.0)) throw InputError("config: beta must be positive");

    if (cfg.mode == Mode::Ct) {
      if (!j.contains("tau") || !j.contains("h")) throw InputError("config: ct mode needs 'tau' and 'h'");
      cfg.tau = number(j, "tau", "config");
      cfg.h = number(j, "h", "config");
      cfg.horizon = number_or(j, "horizon", cfg.horizon, "config");
      if (cfg.tau < 0.0) throw InputError("config: tau must be nonnegative");
      if (!(cfg.h > 0.0)) throw InputError("config: h must be positive");
      if (!(cfg.horizon > 0.0)) throw InputError("config: horizon must be positive");
    } else {
      if (!j.contains("delta") || !j.contains("d")) throw InputError("config: dt mode needs 'delta' and 'd'");
      cfg.delta = number(j, "delta", "config");
      cfg.d = integer(j, "d", "config");
      if (!(cfg.delta > 0.0)) throw InputError("config: delta must be positive");
      if (cfg.d < 0) throw InputError("config: d must be nonnegative");
      if (j.contains("steps")) {
        cfg.steps = integer(j, "steps", "config");
      } else if (j.contains("horizon")) {
        cfg.steps = static_cast<int>(std::ceil(number(j, "horizon", "config") / cfg.delta - 1e-9));
      } else {
        throw InputError("config: dt mode needs 'steps' or 'horizon'");
      }
      if (cfg.steps < 1) throw InputError("config: steps must be positive");
    }

    cfg.signals = j.contains("signals") ? parse_signals(j.at("signals"))
                                        : parse_signals(json(cfg.mode == Mode::Ct ? "continuous_six"
                                                                                  : "sampled_hold_six"));
    if (j.contains("seed")) cfg.seed = seed_value(j.at("seed"), "config");
    if (j.contains("output_dir")) cfg.output_dir = text(j, "output_dir", "config");
    if (j.contains("sweep")) {
      cfg.sweep = parse_sweep(j.at("sweep"));
      if ((cfg.sweep->variable == "tau") != (cfg.mode == Mode::Ct)) {
        throw InputError("sweep: variable '" + cfg.sweep->variable + "' does not match mode " +
                         to_string(cfg.mode));
      }
    }
    if (j.contains("envelope_horizon")) cfg.envelope_horizon = number(j, "envelope_horizon", "config");
    if (j.contains("envelope_grid")) cfg.envelope_grid = integer(j, "envelope_grid", "config");
    return cfg;
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

Digraph config_graph(const RunConfig& cfg) {
  if (cfg.graph_preset == "six_ring") return graphs::six_ring();
  if (cfg.graph_preset == "six_ring_with_chords") return graphs::six_ring_with_chords();
  return read_edge_list_file(cfg.graph_path);
}

ReferenceSignalSet build_signals(const SignalSpec& spec, int n, std::uint64_t run_seed) {
  const std::uint64_t seed = spec.seed.value_or(run_seed);
  ReferenceSignalSet set;
  if (spec.preset == "continuous_six") {
    set = catalog::continuous_six();
  } else if (spec.preset == "sampled_hold_six") {
    set = catalog::sampled_hold_six(seed);
  } else if (spec.preset == "constant") {
    set = catalog::constants(spec.values);
  } else {
    std::vector<Signal> signals = spec.signals;
    for (std::size_t i = 0; i < signals.size(); ++i) {
      if (auto* held = std::get_if<SampledHold>(&signals[i])) {
        held->seed = i < spec.seeds.size() && spec.seeds[i] ? *spec.seeds[i] : derive_seed(seed, i);
      }
    }
    set = ReferenceSignalSet(std::move(signals));
  }
  if (set.size() != n) {
    throw InputError("signals: graph has " + std::to_string(n) + " agents but " +
                     std::to_string(set.size()) + " signals were given");
  }
  return set;
}

}  // namespace dac
