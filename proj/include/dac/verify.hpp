#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dac {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  // Name of a check whose computation is deliberately perturbed; the named
  // check is then expected to fail. Empty for a normal run.
  std::string inject_fault;
  std::vector<std::string> suites;  // empty = all
};

// Property suites for graph, spectral, lambert, bounds, sim and cli.
// Progress lines go to `log` when non-null.
std::vector<CheckResult> run_verify(const VerifyOptions& opts, std::ostream* log = nullptr);

std::vector<std::string> verify_suites();
std::vector<std::string> verify_fault_names();

}  // namespace dac
