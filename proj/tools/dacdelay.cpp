#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dac/commands.hpp"
#include "dac/errors.hpp"
#include "dac/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Delay bounds and simulation for dynamic average consensus"};
  app.require_subcommand(1);

  dac::CommandOptions opts;
  std::string config;
  std::string out;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--seed", seed, "seed for sampled signals (overrides the config)");
  };

  auto* analyze = app.add_subcommand("analyze", "compute delay bounds and envelopes");
  add_common(analyze);
  auto* simulate = app.add_subcommand("simulate", "simulate one run; writes trajectory.csv and summary.json");
  add_common(simulate);
  auto* sweep = app.add_subcommand("sweep", "simulate the sweep grid in parallel; writes sweep.csv");
  add_common(sweep);
  sweep->add_option("--threads", opts.threads, "worker threads (0 = all cores)");

  auto* verify = app.add_subcommand("verify", "run the property suites");
  dac::VerifyOptions vopts;
  verify->add_option("--seed", vopts.seed, "seed for randomized checks");
  verify->add_option("--suite", vopts.suites, "restrict to these suites")
      ->check(CLI::IsMember(dac::verify_suites()));
  verify->add_option("--inject-fault", vopts.inject_fault, "perturb the named check (suite.name)")
      ->check(CLI::IsMember(dac::verify_fault_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*verify) {
      const auto results = dac::run_verify(vopts, &std::cout);
      int passed = 0;
      for (const auto& r : results) passed += r.passed;
      std::cout << passed << "/" << results.size() << " checks passed\n";
      return passed == static_cast<int>(results.size()) ? 0 : 1;
    }
    opts.config = config;
    opts.out = out;
    for (auto* cmd : {analyze, simulate, sweep}) {
      if (*cmd && cmd->count("--seed")) opts.seed = seed;
    }
    if (*analyze) return dac::cmd_analyze(opts, std::cout);
    if (*simulate) return dac::cmd_simulate(opts, std::cout);
    if (*sweep) return dac::cmd_sweep(opts, std::cout);
  } catch (const dac::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
