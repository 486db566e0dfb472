#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dac/config.hpp"
#include "dac/report.hpp"
#include "dac/sim.hpp"

namespace dac {

struct CommandOptions {
  std::filesystem::path config;
  std::filesystem::path out;  // falls back to the config's output_dir, then "."
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;  // sweep workers; 0 = hardware concurrency
};

struct SimulationOutcome {
  Trajectory trajectory;
  RunSummary summary;
};

// Builds the analysis report. Throws ModelError for a non-SCWB graph and
// InadmissibleError for a DT stepsize outside (0, 1/(beta d_max)).
std::string analyze(const RunConfig& cfg);

// Runs one simulation and evaluates the applicable bounds. Delays beyond
// the admissible range are simulated; only the tracking bound is omitted.
SimulationOutcome simulate(const RunConfig& cfg);

// One summary per sweep value, in grid order; runs execute in parallel.
std::vector<RunSummary> sweep(const RunConfig& cfg, unsigned threads = 0);
std::string sweep_csv(const std::string& variable, const std::vector<RunSummary>& runs);

// File-writing wrappers used by the CLI. Each returns a process exit code
// and reports written paths on `log`.
int cmd_analyze(const CommandOptions& opts, std::ostream& log);
int cmd_simulate(const CommandOptions& opts, std::ostream& log);
int cmd_sweep(const CommandOptions& opts, std::ostream& log);

}  // namespace dac
