#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dac/graph.hpp"
#include "dac/signals.hpp"

namespace dac {

enum class Mode { Ct, Dt };

std::string to_string(Mode m);

// Either a catalog preset ("continuous_six", "sampled_hold_six",
// "constant") or an explicit per-agent list.
struct SignalSpec {
  std::string preset;
  std::vector<double> values;  // for "constant"
  std::vector<Signal> signals;
  // Per-signal seed for sampled-hold entries given explicitly; when absent
  // the run seed is used, mixed with the agent index.
  std::vector<std::optional<std::uint64_t>> seeds;
  std::optional<std::uint64_t> seed;
};

struct SweepGrid {
  std::string variable;  // "tau" or "d"
  std::vector<double> values;
};

struct RunConfig {
  std::filesystem::path graph_path;
  std::string graph_preset;  // "six_ring", "six_ring_with_chords"
  Mode mode = Mode::Ct;
  double beta = 1.0;
  // ct
  double tau = 0.0;
  double h = 0.01;
  double horizon = 40.0;
  // dt
  double delta = 0.0;
  int d = 0;
  int steps = 0;

  SignalSpec signals;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;
  std::optional<SweepGrid> sweep;
  std::optional<double> envelope_horizon;
  int envelope_grid = 2000;
};

// Parses the JSON run configuration. Relative graph paths are resolved
// against `base_dir`. Throws InputError on malformed or mode-inconsistent
// input (ct needs tau and h, dt needs delta and d).
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

Digraph config_graph(const RunConfig& cfg);
ReferenceSignalSet build_signals(const SignalSpec& spec, int n, std::uint64_t run_seed);

}  // namespace dac
