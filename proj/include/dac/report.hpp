#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "dac/bounds.hpp"
#include "dac/config.hpp"
#include "dac/graph.hpp"
#include "dac/sim.hpp"
#include "dac/spectral.hpp"

namespace dac {

// JSON text (two-space indent, trailing newline).
std::string analysis_json(const RunConfig& cfg, const Digraph& g, const StructureReport& structure,
                          const std::optional<Spectrum>& spectrum, const std::optional<CtDelayReport>& ct,
                          const std::optional<DtDelayReport>& dt);

struct RunSummary {
  Mode mode = Mode::Ct;
  double beta = 1.0;
  double tau = 0.0;    // ct
  double h = 0.0;      // ct, after snapping
  double delta = 0.0;  // dt
  int d = 0;           // dt
  double horizon = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  Stability classification = Stability::Bounded;
  double steady_error = 0.0;
  double gamma = 0.0;
  bool admissible = false;
  std::optional<double> tracking_bound;
  std::optional<double> rate;        // rho_tau or omega_bar
  std::optional<double> gain;        // k_tau or k_bar
  std::optional<double> delay_bound; // tau_bar or max_admissible_d
};

std::string summary_json(const RunSummary& s);

// Header t,x_1..x_n,e_1..e_n; every value printed with 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
std::string trajectory_csv(const Trajectory& traj);
// Reads back times, x and errors. Classification fields are not stored.
Trajectory read_trajectory_csv(std::istream& in);

// Writes to a temporary file in the same directory, then renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// %.17g
std::string format_double(double v);

}  // namespace dac
