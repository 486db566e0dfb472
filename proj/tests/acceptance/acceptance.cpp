#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dac/bounds.hpp"
#include "dac/commands.hpp"
#include "dac/config.hpp"
#include "dac/generators.hpp"
#include "dac/graph.hpp"
#include "dac/lambert.hpp"
#include "dac/random.hpp"
#include "dac/sim.hpp"
#include "dac/spectral.hpp"

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Verdict()> run;
};

std::string num(double v, int prec = 6) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

dac::Spectrum spectrum_of(const dac::Digraph& g) { return dac::compute_spectrum(dac::laplacian(g)); }

dac::RunConfig ring_ct(double tau, const std::string& signals, double horizon) {
  return dac::parse_config(R"({"graph_preset": "six_ring", "mode": "ct", "beta": 1, "tau": )" + num(tau, 17) +
                           R"(, "h": 0.01, "horizon": )" + num(horizon, 17) + R"(, "signals": )" + signals + "}");
}

dac::RunConfig ring_dt(int d, const std::string& signals, int steps) {
  return dac::parse_config(R"({"graph_preset": "six_ring", "mode": "dt", "beta": 1, "delta": 0.19, "d": )" +
                           std::to_string(d) + R"(, "steps": )" + std::to_string(steps) +
                           R"(, "signals": )" + signals + R"(, "seed": 1})");
}

const std::string kContinuous = R"("continuous_six")";
const std::string kSampled = R"("sampled_hold_six")";
const std::string kConstant = R"({"preset": "constant", "values": [1, 2, 3, 4, 5, 9]})";

// Runs shared by criteria 6, 7 and 12.
std::vector<dac::RunSummary> ct_runs;
std::vector<dac::RunSummary> dt_runs;

Verdict c1() {
  const double tau_bar = dac::ct_admissible_delay(spectrum_of(dac::graphs::six_ring()), 1.0).tau_bar;
  return {std::abs(tau_bar - 0.5236) <= 0.005, "tau_bar = " + num(tau_bar, 8) + " (target 0.5236 +- 0.005)"};
}

Verdict c2() {
  const double tau_bar = dac::ct_admissible_delay(spectrum_of(dac::graphs::six_ring_with_chords()), 1.0).tau_bar;
  return {std::abs(tau_bar - 0.41) <= 0.01, "tau_bar = " + num(tau_bar, 8) + " (target 0.41 +- 0.01)"};
}

// Decay rate of the delayed fundamental matrix read off the simulated
// ||Phi(t)|| by a least-squares fit of log ||Phi|| over the second half.
double simulated_rate(double tau) {
  const auto env = dac::ct_envelope(dac::graphs::six_ring(), 1.0, tau);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = env.times.size() / 2; i < env.times.size(); ++i) {
    const double x = env.times[i];
    const double y = std::log(env.phi_norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Verdict c3() {
  const auto spec = spectrum_of(dac::graphs::six_ring());
  const double taus[] = {0.0, 0.2, 0.4};
  const double targets[] = {0.50, 0.28, 0.11};
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const double rho = dac::ct_decay_rate(spec, 1.0, taus[i]);
    const bool hit = std::abs(rho - targets[i]) <= 0.02;
    ok &= hit;
    detail += "rho(" + num(taus[i]) + ") = " + num(rho, 5) + " [target " + num(targets[i]) + (hit ? "] " : ", MISS] ");
  }
  detail += "| fitted from ||Phi||: rho(0.2) = " + num(simulated_rate(0.2), 4) +
            ", rho(0.4) = " + num(simulated_rate(0.4), 4);
  return {ok, detail};
}

Verdict c4() {
  const auto dt = dac::dt_admissible_delay(spectrum_of(dac::graphs::six_ring()), 1.0, 0.19);
  const bool ok = dt.max_admissible_d == 2 && std::abs(dt.d_hat_min - 2.25) <= 0.01;
  return {ok, "max admissible d = " + std::to_string(dt.max_admissible_d) + " (target 2), d_hat_min = " +
                  num(dt.d_hat_min, 6) + " (target 2.25 +- 0.01)"};
}

Verdict c5() {
  dac::Rng rng(20240605);
  std::vector<dac::Digraph> graphs = {dac::graphs::six_ring(), dac::graphs::six_ring_with_chords()};
  for (int i = 0; i < 50; ++i) graphs.push_back(dac::graphs::random_scwb(dac::uniform_int(rng, 3, 10), rng));
  int violations = 0;
  double worst_ct = 0.0, worst_dt = -1e9;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const double beta = i < 2 ? 1.0 : dac::uniform(rng, 0.5, 2.0);
    const auto structure = dac::validate(graphs[i]);
    const auto spec = spectrum_of(graphs[i]);
    const double tau_bar = dac::ct_admissible_delay(spec, beta).tau_bar;
    const double tau_deg = dac::ct_degree_bound(structure.d_max, beta);
    const double delta = (i < 2 ? 0.19 : dac::uniform(rng, 0.05, 0.95)) / (beta * structure.d_max);
    const int d_bar = dac::dt_admissible_delay(spec, beta, delta).d_bar;
    const double d_deg = dac::dt_degree_bound(beta, delta, structure.d_max);
    violations += (tau_deg > tau_bar) + (d_deg > d_bar);
    worst_ct = std::max(worst_ct, tau_deg / tau_bar);
    worst_dt = std::max(worst_dt, d_deg - d_bar);
  }
  return {violations == 0, std::to_string(graphs.size()) + " graphs, violations " + std::to_string(violations) +
                               ", max tau_deg/tau_bar = " + num(worst_ct, 4) +
                               ", max (d_deg - d_bar) = " + num(worst_dt, 4)};
}

Verdict c6() {
  const double taus[] = {0.0, 0.2, 0.4, 0.6};
  ct_runs.clear();
  std::string detail;
  bool ok = true;
  for (double tau : taus) {
    const auto out = dac::simulate(ring_ct(tau, kContinuous, 150.0));
    ct_runs.push_back(out.summary);
    const auto cls = out.summary.classification;
    const bool hit = tau < 0.5 ? cls != dac::Stability::Diverging : cls == dac::Stability::Diverging;
    ok &= hit;
    detail += "tau " + num(tau) + ": " + dac::to_string(cls) + (hit ? "; " : " (MISS); ");
  }
  return {ok, detail};
}

Verdict c7() {
  dt_runs.clear();
  std::string detail;
  bool ok = true;
  for (int d = 0; d <= 3; ++d) {
    const auto out = dac::simulate(ring_dt(d, kSampled, 1500));
    dt_runs.push_back(out.summary);
    const auto cls = out.summary.classification;
    const bool hit = d < 3 ? cls != dac::Stability::Diverging : cls == dac::Stability::Diverging;
    ok &= hit;
    detail += "d " + std::to_string(d) + ": " + dac::to_string(cls) + (hit ? "; " : " (MISS); ");
  }
  return {ok, detail};
}

Verdict c8() {
  double worst = 0.0;
  for (double tau : {0.1, 0.2, 0.4}) {
    worst = std::max(worst, dac::simulate(ring_ct(tau, kConstant, 250.0)).summary.steady_error);
  }
  for (int d : {0, 1, 2}) {
    worst = std::max(worst, dac::simulate(ring_dt(d, kConstant, 5000)).summary.steady_error);
  }
  return {worst <= 1e-6, "max steady error over 6 runs = " + num(worst, 3) + " (limit 1e-6)"};
}

Verdict c9() {
  dac::Rng rng(20240609);
  double e1 = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 3; ++d) {
      Eigen::MatrixXd a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * dac::standard_normal_pair(rng).first;
      for (int k = -d; k <= 30; ++k) {
        const Eigen::MatrixXd ref = dac::delayed_exponential_recurrence(a, d, k);
        const Eigen::MatrixXd got = dac::delayed_exponential(a, d, k);
        e1 = std::max(e1, (got - ref).cwiseAbs().maxCoeff() / std::max(1.0, ref.cwiseAbs().maxCoeff()));
      }
    }
  }
  double e2 = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = dac::graphs::random_scwb(dac::uniform_int(rng, 2, 6), rng);
    const double beta = dac::uniform(rng, 0.5, 2.0);
    const double delta = dac::uniform(rng, 0.1, 0.9) / (beta * dac::validate(g).d_max);
    const int d = dac::uniform_int(rng, 0, 3);
    std::vector<dac::Signal> sig;
    for (int i = 0; i < g.size(); ++i) {
      dac::SampledHold s;
      s.bias = dac::uniform(rng, -1.0, 1.0);
      s.period = 1.0;
      s.seed = rng();
      sig.emplace_back(s);
    }
    const dac::ReferenceSignalSet signals(std::move(sig));
    const auto iterated = dac::disagreement_coordinates(dac::simulate_dt(g, beta, delta, d, signals, 200));
    const auto formula = dac::dt_trajectory_formula_all(g, beta, delta, d, signals, 200);
    e2 = std::max(e2, (formula - iterated).cwiseAbs().maxCoeff() / std::max(1.0, iterated.cwiseAbs().maxCoeff()));
  }
  double e3 = 0.0;
  for (int i = 0; i < 2500; ++i) {
    const int k = dac::uniform_int(rng, -3, 3);
    const std::complex<double> z =
        std::polar(std::exp(dac::uniform(rng, -8.0, 8.0)), dac::uniform(rng, -std::numbers::pi, std::numbers::pi));
    const auto w = dac::lambert_w(k, z);
    e3 = std::max(e3, std::abs(w * std::exp(w) - z) / std::abs(z));
  }
  const bool ok = e1 <= 1e-10 && e2 <= 1e-9 && e3 <= 1e-12;
  return {ok, "delayed exponential " + num(e1, 3) + " (limit 1e-10), trajectory formula " + num(e2, 3) +
                  " (limit 1e-9), Lambert identity " + num(e3, 3) + " (limit 1e-12, relative)"};
}

Verdict c10() {
  dac::Rng rng(20240610);
  int ct_bad = 0, dt_bad = 0, dt_count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = dac::graphs::random_scwb(dac::uniform_int(rng, 3, 10), rng);
    const double beta = dac::uniform(rng, 0.5, 2.0);
    const auto spec = spectrum_of(g);
    const double tau_bar = dac::ct_admissible_delay(spec, beta).tau_bar;
    const double below = dac::ct_rightmost_root(spec, beta, 0.99 * tau_bar);
    const double above = dac::ct_rightmost_root(spec, beta, 1.01 * tau_bar);
    ct_bad += !(below < 0.0 && above > 0.0);
  }
  while (dt_count < 50) {
    const auto g = dac::graphs::random_scwb(dac::uniform_int(rng, 3, 10), rng);
    const double beta = dac::uniform(rng, 0.5, 2.0);
    const double delta = dac::uniform(rng, 0.2, 0.95) / (beta * dac::validate(g).d_max);
    const auto spec = spectrum_of(g);
    const auto bound = dac::dt_admissible_delay(spec, beta, delta);
    const double frac = bound.d_hat_min - std::floor(bound.d_hat_min);
    if (frac < 1e-6 || frac > 1.0 - 1e-6) continue;
    ++dt_count;
    const Eigen::MatrixXd hs = delta * dac::disagreement_matrix(dac::laplacian(g), beta);
    const bool stable = dac::is_schur(dac::build_augmented(hs, bound.max_admissible_d));
    const bool unstable = !dac::is_schur(dac::build_augmented(hs, bound.d_bar));
    dt_bad += !(stable && unstable);
  }
  return {ct_bad == 0 && dt_bad == 0, "CT root sign flip counterexamples " + std::to_string(ct_bad) +
                                          "/50, DT Schur flip counterexamples " + std::to_string(dt_bad) + "/50"};
}

Verdict c11() {
  dac::Rng rng(20240611);
  double worst_dt = 0.0, worst_res = -1.0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = dac::graphs::random_scwb(dac::uniform_int(rng, 3, 8), rng);
    const double beta = dac::uniform(rng, 0.5, 2.0);
    const double delta = dac::uniform(rng, 0.2, 0.95) / (beta * dac::validate(g).d_max);
    const auto bound = dac::dt_admissible_delay(spectrum_of(g), beta, delta);
    const int d = dac::uniform_int(rng, 0, std::min(bound.max_admissible_d, 4));
    const Eigen::MatrixXd hs = delta * dac::disagreement_matrix(dac::laplacian(g), beta);
    const auto a = dac::build_augmented(hs, d);
    const auto env = dac::dt_envelope(hs, d);
    worst_res = std::max(worst_res, dac::envelope_residual(a, env));
    Eigen::VectorXd x(a.rows());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = dac::standard_normal_pair(rng).first;
    const double log_x0 = std::log(x.stableNorm());
    for (int k = 0; k <= 500; ++k) {
      const double log_bound = std::log(env.k_bar) + k * std::log(env.omega_bar) + log_x0;
      worst_dt = std::max(worst_dt, std::exp(std::log(x.stableNorm()) - log_bound));
      x = a * x;
    }
  }
  double worst_ct = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const auto g = trial == 0 ? dac::graphs::six_ring() : dac::graphs::random_scwb(dac::uniform_int(rng, 3, 6), rng);
    const double beta = trial == 0 ? 1.0 : dac::uniform(rng, 0.5, 2.0);
    const double tau_bar = dac::ct_admissible_delay(spectrum_of(g), beta).tau_bar;
    const double tau = trial == 0 ? 0.2 : dac::uniform(rng, 0.1, 0.8) * tau_bar;
    const auto coarse = dac::ct_envelope(g, beta, tau);
    const auto fine = dac::ct_envelope(g, beta, tau, coarse.horizon, 4000);
    for (std::size_t i = 0; i < fine.times.size(); ++i) {
      worst_ct = std::max(worst_ct, fine.phi_norms[i] / (coarse.k_tau * std::exp(-coarse.rho_tau * fine.times[i])));
    }
  }
  const bool ok = worst_dt <= 1.0 + 1e-9 && worst_res <= 1e-8 && worst_ct <= 1.0 + 1e-6;
  return {ok, "DT max ||x(k)||/(k_bar w^k ||x(0)||) = " + num(worst_dt, 8) + " (limit 1+1e-9), residual " +
                  num(worst_res, 3) + " (limit 1e-8), CT max ||Phi||/(k e^{-rho t}) on 2x grid = " +
                  num(worst_ct, 10) + " (limit 1+1e-6)"};
}

Verdict c12() {
  bool ok = true;
  std::string detail;
  auto check = [&](const dac::RunSummary& s, const std::string& label) {
    if (s.classification == dac::Stability::Diverging) return;
    if (!s.tracking_bound) {
      ok = false;
      detail += label + ": no bound; ";
      return;
    }
    const bool hit = s.steady_error <= *s.tracking_bound;
    ok &= hit;
    detail += label + ": " + num(s.steady_error, 3) + " <= " + num(*s.tracking_bound, 4) + (hit ? "; " : " (MISS); ");
  };
  if (ct_runs.size() != 4 || dt_runs.size() != 4) return {false, "criteria 6 and 7 did not run"};
  for (std::size_t i = 0; i < ct_runs.size(); ++i) check(ct_runs[i], "ct tau " + num(ct_runs[i].tau));
  for (std::size_t i = 0; i < dt_runs.size(); ++i) check(dt_runs[i], "dt d " + std::to_string(dt_runs[i].d));
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "CT bound, ring", 1.0, c1},
      {2, "CT bound, ring with chords", 1.0, c2},
      {3, "CT decay rates, ring", 1.0, c3},
      {4, "DT bound, ring, delta 0.19", 1.0, c4},
      {5, "degree bounds dominate", 30.0, c5},
      {6, "CT stability transition", 60.0, c6},
      {7, "DT stability transition", 30.0, c7},
      {8, "static-input exactness", 60.0, c8},
      {9, "oracle equivalences", 60.0, c9},
      {10, "root and Schur flips across the bounds", 120.0, c10},
      {11, "envelope validity", 120.0, c11},
      {12, "tracking-bound domination", 60.0, c12},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = v.ok && in_time;
    failed += !pass;
    std::printf("criterion %2d %s  %s: %s [%.2f s, budget %.0f s%s]\n", c.id, pass ? "PASS" : "FAIL",
                c.title.c_str(), v.detail.c_str(), secs, c.budget_s, in_time ? "" : ", OVER");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
