#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dac/commands.hpp"
#include "dac/config.hpp"
#include "dac/errors.hpp"
#include "dac/report.hpp"
#include "dac/verify.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

const char* kCt = R"({"graph_preset": "six_ring", "mode": "ct", "tau": 0.2, "h": 0.01,
                      "horizon": 20, "signals": "continuous_six"})";
const char* kDt = R"({"graph_preset": "six_ring", "mode": "dt", "delta": 0.19, "d": 2,
                      "steps": 400, "signals": "sampled_hold_six", "seed": 4})";

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("dac_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Config, ParsesCtAndDt) {
  const auto ct = dac::parse_config(kCt);
  EXPECT_EQ(ct.mode, dac::Mode::Ct);
  EXPECT_DOUBLE_EQ(ct.tau, 0.2);
  EXPECT_DOUBLE_EQ(ct.horizon, 20.0);
  const auto dt = dac::parse_config(kDt);
  EXPECT_EQ(dt.mode, dac::Mode::Dt);
  EXPECT_EQ(dt.d, 2);
  EXPECT_EQ(dt.steps, 400);
  EXPECT_EQ(dt.seed, 4u);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(dac::parse_config("{"), dac::InputError);
  EXPECT_THROW(dac::parse_config(R"({"graph_preset": "six_ring", "mode": "ct", "tau": 0.2})"), dac::InputError);
  EXPECT_THROW(dac::parse_config(R"({"graph_preset": "six_ring", "mode": "dt", "delta": 0.1, "d": 1})"),
               dac::InputError);
  EXPECT_THROW(dac::parse_config(R"({"graph_preset": "six_ring", "mode": "ct", "tau": 0.2, "h": 0.01,
                                     "bogus": 1})"),
               dac::InputError);
  EXPECT_THROW(dac::parse_config(R"({"graph_preset": "nope", "mode": "ct", "tau": 0.2, "h": 0.01})"),
               dac::InputError);
  EXPECT_THROW(dac::parse_config(R"({"mode": "ct", "tau": 0.2, "h": 0.01})"), dac::InputError);
  EXPECT_THROW(dac::parse_config(R"({"graph_preset": "six_ring", "mode": "xt", "tau": 0.2, "h": 0.01})"),
               dac::InputError);
  EXPECT_THROW(dac::parse_config(R"({"graph_preset": "six_ring", "mode": "ct", "tau": 0.2, "h": 0.01,
                                     "sweep": {"variable": "d", "values": [1, 2]}})"),
               dac::InputError);
}

TEST(Config, SweepLinspace) {
  const auto cfg = dac::parse_config(R"({"graph_preset": "six_ring", "mode": "ct", "tau": 0, "h": 0.01,
                                         "sweep": {"variable": "tau", "linspace": [0, 0.6, 13]}})");
  ASSERT_TRUE(cfg.sweep.has_value());
  ASSERT_EQ(cfg.sweep->values.size(), 13u);
  EXPECT_DOUBLE_EQ(cfg.sweep->values.front(), 0.0);
  EXPECT_NEAR(cfg.sweep->values[5], 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(cfg.sweep->values.back(), 0.6);
}

TEST(Config, TypedSignalList) {
  const auto cfg = dac::parse_config(R"({"graph_preset": "six_ring", "mode": "ct", "tau": 0, "h": 0.01,
      "signals": [{"type": "constant", "value": 1}, {"type": "ramp", "slope": 0.5},
                  {"type": "sinusoid"}, {"type": "atan", "scale": 2},
                  {"type": "cosine", "frequency": 2}, {"type": "sampled_hold", "bias": 0.3, "seed": 9}]})");
  const auto set = dac::build_signals(cfg.signals, 6, cfg.seed);
  EXPECT_EQ(set.size(), 6);
  EXPECT_DOUBLE_EQ(set.at(2.0)(1), 1.0);
  EXPECT_THROW(dac::build_signals(cfg.signals, 5, cfg.seed), dac::InputError);
}

TEST(Config, LoadResolvesRelativeGraphPath) {
  const auto dir = scratch("load");
  fs::create_directories(dir / "graphs");
  std::ofstream(dir / "graphs" / "g.txt") << "1 2 1\n2 1 1\n";
  std::ofstream(dir / "run.json") << R"({"graph_path": "graphs/g.txt", "mode": "ct", "tau": 0.1, "h": 0.01,
                                          "signals": {"preset": "constant", "values": [0, 1]}})";
  const auto cfg = dac::load_config(dir / "run.json");
  EXPECT_EQ(dac::config_graph(cfg).size(), 2);
  EXPECT_THROW(dac::load_config(dir / "missing.json"), dac::InputError);
}

TEST(Report, CsvRoundTripIsExact) {
  const auto out = dac::simulate(dac::parse_config(kDt));
  std::stringstream buf;
  dac::write_trajectory_csv(buf, out.trajectory);
  std::string header;
  std::getline(buf, header);
  EXPECT_EQ(header.rfind("t,x_1,", 0), 0u);
  EXPECT_NE(header.find(",e_6"), std::string::npos);
  buf.seekg(0);
  const auto back = dac::read_trajectory_csv(buf);
  EXPECT_EQ(back.times, out.trajectory.times);
  EXPECT_EQ(back.x, out.trajectory.x);
  EXPECT_EQ(back.errors, out.trajectory.errors);
  EXPECT_EQ(dac::format_double(0.1), "0.10000000000000001");
}

TEST(Report, AtomicWrite) {
  const auto dir = scratch("atomic");
  dac::write_file_atomic(dir / "a.txt", "one");
  dac::write_file_atomic(dir / "a.txt", "two");
  std::ifstream in(dir / "a.txt");
  std::string s;
  in >> s;
  EXPECT_EQ(s, "two");
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1);
}

TEST(Commands, AnalyzeCt) {
  const auto j = json::parse(dac::analyze(dac::parse_config(kCt)));
  EXPECT_TRUE(j.at("structure").at("scwb").get<bool>());
  EXPECT_NEAR(j.at("ct").at("tau_bar").get<double>(), 0.5235987755982988, 1e-12);
  EXPECT_TRUE(j.at("ct").contains("tracking_bound"));
}

TEST(Commands, AnalyzeRejectsNonScwb) {
  const auto dir = scratch("nonscwb");
  std::ofstream(dir / "g.txt") << "1 2 1\n2 3 1\n3 1 1\n1 3 1\n";
  const auto cfg = dac::parse_config(R"({"graph_path": "g.txt", "mode": "ct", "tau": 0.1, "h": 0.01,
                                         "signals": {"preset": "constant", "values": [0, 1, 2]}})", dir);
  EXPECT_THROW(dac::analyze(cfg), dac::ModelError);
}

TEST(Commands, SimulateDtAdmissible) {
  const auto out = dac::simulate(dac::parse_config(kDt));
  EXPECT_TRUE(out.summary.admissible);
  ASSERT_TRUE(out.summary.tracking_bound.has_value());
  EXPECT_GE(*out.summary.tracking_bound, out.trajectory.errors.cwiseAbs().maxCoeff());
  auto cfg = dac::parse_config(kDt);
  cfg.delta = 1.5;
  EXPECT_THROW(dac::simulate(cfg), dac::InadmissibleError);
}

TEST(Commands, SimulateIsDeterministic) {
  const auto a = dac::simulate(dac::parse_config(kDt));
  const auto b = dac::simulate(dac::parse_config(kDt));
  EXPECT_EQ(dac::trajectory_csv(a.trajectory), dac::trajectory_csv(b.trajectory));
  EXPECT_EQ(dac::summary_json(a.summary), dac::summary_json(b.summary));
}

TEST(Commands, SweepDtOrderAndThreads) {
  auto cfg = dac::parse_config(R"({"graph_preset": "six_ring", "mode": "dt", "delta": 0.19, "d": 0,
      "steps": 1500, "signals": "sampled_hold_six", "sweep": {"variable": "d", "values": [0, 1, 2, 3]}})");
  const auto serial = dac::sweep(cfg, 1);
  const auto parallel = dac::sweep(cfg, 4);
  ASSERT_EQ(serial.size(), 4u);
  EXPECT_EQ(dac::sweep_csv("d", serial), dac::sweep_csv("d", parallel));
  for (int d = 0; d < 3; ++d) {
    EXPECT_EQ(serial[d].d, d);
    EXPECT_TRUE(serial[d].admissible);
    EXPECT_NE(serial[d].classification, dac::Stability::Diverging);
  }
  EXPECT_FALSE(serial[3].admissible);
  EXPECT_EQ(serial[3].classification, dac::Stability::Diverging);
}

TEST(Commands, FileWrappersWriteOutputs) {
  const auto dir = scratch("wrappers");
  std::ofstream(dir / "run.json") << kDt;
  dac::CommandOptions opts;
  opts.config = dir / "run.json";
  opts.out = dir / "out";
  std::ostringstream log;
  EXPECT_EQ(dac::cmd_analyze(opts, log), 0);
  EXPECT_EQ(dac::cmd_simulate(opts, log), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "analysis.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "trajectory.csv"));
  const auto summary = json::parse(std::ifstream(dir / "out" / "summary.json"));
  EXPECT_EQ(summary.at("seed").get<std::uint64_t>(), 4u);
}

TEST(Verify, AllSuitesPassAndFaultsAreCaught) {
  dac::VerifyOptions opts;
  opts.suites = {"lambert", "spectral"};
  for (const auto& r : dac::run_verify(opts)) EXPECT_TRUE(r.passed) << r.suite << "." << r.name << " " << r.detail;
  opts.inject_fault = "lambert.defining_identity";
  int failed = 0;
  for (const auto& r : dac::run_verify(opts)) failed += !r.passed;
  EXPECT_EQ(failed, 1);
}

}  // namespace
