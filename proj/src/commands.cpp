#include "dac/commands.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dac/bounds.hpp"
#include "dac/errors.hpp"
#include "dac/spectral.hpp"

namespace dac {

namespace {

struct Prepared {
  Digraph graph;
  StructureReport structure;
  ReferenceSignalSet signals;
};

Prepared prepare(const RunConfig& cfg) {
  Digraph g = config_graph(cfg);
  StructureReport structure = validate(g);
  ReferenceSignalSet signals = build_signals(cfg.signals, g.size(), cfg.seed);
  return {std::move(g), std::move(structure), std::move(signals)};
}

void require_scwb(const StructureReport& s) {
  if (s.scwb()) return;
  std::string why;
  if (!s.strongly_connected) why += "not strongly connected";
  if (!s.weight_balanced) why += std::string(why.empty() ? "" : ", ") + "not weight-balanced";
  throw ModelError("graph is not SCWB: " + why);
}

double dt_horizon(const RunConfig& cfg) { return cfg.steps * cfg.delta; }

std::filesystem::path out_dir(const CommandOptions& opts, const RunConfig& cfg) {
  if (!opts.out.empty()) return opts.out;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  return ".";
}

RunConfig load_with_overrides(const CommandOptions& opts) {
  if (opts.config.empty()) throw InputError("--config is required");
  RunConfig cfg = load_config(opts.config);
  if (opts.seed) cfg.seed = *opts.seed;
  return cfg;
}

}  // namespace

std::string analyze(const RunConfig& cfg) {
  const Prepared p = prepare(cfg);
  require_scwb(p.structure);
  const Spectrum spec = compute_spectrum(laplacian(p.graph));
  std::optional<CtDelayReport> ct;
  std::optional<DtDelayReport> dt;
  if (cfg.mode == Mode::Ct) {
    const double gamma = signal_variation_gamma(p.signals, cfg.horizon, SignalMode::Ct);
    ct = ct_report(p.graph, p.structure, spec, cfg.beta, cfg.tau, gamma, cfg.envelope_horizon,
                   cfg.envelope_grid);
  } else {
    const double gamma = signal_variation_gamma(p.signals, dt_horizon(cfg), SignalMode::Dt, cfg.delta);
    dt = dt_report(p.graph, p.structure, spec, cfg.beta, cfg.delta, cfg.d, gamma);
  }
  return analysis_json(cfg, p.graph, p.structure, spec, ct, dt);
}

SimulationOutcome simulate(const RunConfig& cfg) {
  const Prepared p = prepare(cfg);
  require_scwb(p.structure);
  const Spectrum spec = compute_spectrum(laplacian(p.graph));

  SimulationOutcome out;
  RunSummary& s = out.summary;
  s.mode = cfg.mode;
  s.beta = cfg.beta;
  s.seed = cfg.seed;
  if (cfg.mode == Mode::Ct) {
    out.trajectory = simulate_ct(p.graph, cfg.beta, cfg.tau, p.signals, cfg.h, cfg.horizon);
    s.tau = cfg.tau;
    s.h = out.trajectory.times.size() > 1 ? out.trajectory.times[1] - out.trajectory.times[0] : cfg.h;
    s.horizon = out.trajectory.times.back();
    s.gamma = signal_variation_gamma(p.signals, cfg.horizon, SignalMode::Ct);
    const auto admissible = ct_admissible_delay(spec, cfg.beta);
    s.delay_bound = admissible.tau_bar;
    s.admissible = cfg.tau < admissible.tau_bar;
    if (s.admissible) {
      s.rate = ct_decay_rate(spec, cfg.beta, cfg.tau);
      s.gain = ct_envelope_gain(p.graph, cfg.beta, cfg.tau, cfg.envelope_horizon, cfg.envelope_grid);
      s.tracking_bound = ct_tracking_bound(s.gamma, *s.gain, *s.rate);
    }
  } else {
    if (!dt_stepsize_admissible(cfg.beta, cfg.delta, p.structure.d_max)) {
      throw InadmissibleError("stepsize delta = " + format_double(cfg.delta) + " is outside (0, " +
                              format_double(dt_stepsize_range(cfg.beta, p.structure.d_max).second) + ")");
    }
    out.trajectory = simulate_dt(p.graph, cfg.beta, cfg.delta, cfg.d, p.signals, cfg.steps);
    s.delta = cfg.delta;
    s.d = cfg.d;
    s.horizon = out.trajectory.times.back();
    s.gamma = signal_variation_gamma(p.signals, dt_horizon(cfg), SignalMode::Dt, cfg.delta);
    const auto admissible = dt_admissible_delay(spec, cfg.beta, cfg.delta);
    s.delay_bound = admissible.max_admissible_d;
    s.admissible = cfg.d <= admissible.max_admissible_d;
    if (s.admissible) {
      const auto env = dt_envelope(cfg.delta * disagreement_matrix(laplacian(p.graph), cfg.beta), cfg.d);
      s.rate = env.omega_bar;
      s.gain = env.k_bar;
      s.tracking_bound = dt_tracking_bound(s.gamma, cfg.delta, env.k_bar, env.omega_bar);
    }
  }
  s.samples = static_cast<long>(out.trajectory.times.size());
  s.classification = out.trajectory.classification;
  s.steady_error = out.trajectory.steady_error;
  return out;
}

std::vector<RunSummary> sweep(const RunConfig& cfg, unsigned threads) {
  if (!cfg.sweep) throw InputError("config has no 'sweep' section");
  const auto& values = cfg.sweep->values;
  std::vector<RunSummary> results(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        RunConfig run = cfg;
        if (cfg.sweep->variable == "tau") {
          run.tau = values[i];
        } else {
          run.d = static_cast<int>(values[i]);
        }
        results[i] = simulate(run).summary;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(values.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::string sweep_csv(const std::string& variable, const std::vector<RunSummary>& runs) {
  std::ostringstream out;
  out << variable << ",classification,steady_error,admissible,tracking_bound,rate,gain\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& r : runs) {
    out << (variable == "tau" ? format_double(r.tau) : std::to_string(r.d)) << ','
        << to_string(r.classification) << ',' << format_double(r.steady_error) << ','
        << (r.admissible ? "true" : "false") << ',' << opt(r.tracking_bound) << ',' << opt(r.rate) << ','
        << opt(r.gain) << '\n';
  }
  return out.str();
}

int cmd_analyze(const CommandOptions& opts, std::ostream& log) {
  const RunConfig cfg = load_with_overrides(opts);
  const auto path = out_dir(opts, cfg) / "analysis.json";
  write_file_atomic(path, analyze(cfg));
  log << "wrote " << path.string() << '\n';
  return 0;
}

int cmd_simulate(const CommandOptions& opts, std::ostream& log) {
  const RunConfig cfg = load_with_overrides(opts);
  const auto outcome = simulate(cfg);
  const auto dir = out_dir(opts, cfg);
  write_file_atomic(dir / "trajectory.csv", trajectory_csv(outcome.trajectory));
  write_file_atomic(dir / "summary.json", summary_json(outcome.summary));
  log << "wrote " << (dir / "trajectory.csv").string() << " and " << (dir / "summary.json").string() << '\n';
  log << "classification " << to_string(outcome.summary.classification) << ", steady error "
      << format_double(outcome.summary.steady_error) << '\n';
  return 0;
}

int cmd_sweep(const CommandOptions& opts, std::ostream& log) {
  const RunConfig cfg = load_with_overrides(opts);
  const auto runs = sweep(cfg, opts.threads);
  const auto dir = out_dir(opts, cfg);
  write_file_atomic(dir / "sweep.csv", sweep_csv(cfg.sweep->variable, runs));
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const auto& r : runs) all.push_back(nlohmann::ordered_json::parse(summary_json(r)));
  write_file_atomic(dir / "sweep.json", all.dump(2) + "\n");
  log << "wrote " << (dir / "sweep.csv").string() << " (" << runs.size() << " runs)\n";
  return 0;
}

}  // namespace dac
