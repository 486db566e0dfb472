#include "dac/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dac/bounds.hpp"
#include "dac/commands.hpp"
#include "dac/config.hpp"
#include "dac/errors.hpp"
#include "dac/generators.hpp"
#include "dac/graph.hpp"
#include "dac/lambert.hpp"
#include "dac/random.hpp"
#include "dac/report.hpp"
#include "dac/sim.hpp"
#include "dac/spectral.hpp"

namespace dac {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

using Check = std::function<Outcome(Rng&, bool fault)>;

struct CheckDef {
  std::string suite;
  std::string name;
  Check run;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(7);
  s << v;
  return s.str();
}

Outcome within(double observed, double limit, const std::string& what) {
  return {observed <= limit, what + " " + fmt(observed) + " (limit " + fmt(limit) + ")"};
}

Eigen::MatrixXd random_matrix(Rng& rng, int n, double scale) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = scale * standard_normal_pair(rng).first;
  }
  return a;
}

Eigen::VectorXd random_unit(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = standard_normal_pair(rng).first;
  return v.normalized();
}

ReferenceSignalSet random_held_signals(Rng& rng, int n) {
  std::vector<Signal> signals;
  for (int i = 0; i < n; ++i) {
    SampledHold s;
    s.bias = uniform(rng, -1.0, 1.0);
    s.period = 1.0;
    s.seed = rng();
    signals.emplace_back(s);
  }
  return ReferenceSignalSet(std::move(signals));
}

struct DtInstance {
  Digraph g;
  double beta;
  double delta;
  Spectrum spec;
  DtAdmissibleDelay bound;
  Eigen::MatrixXd h_scaled;
};

// Random SCWB instance with an admissible stepsize whose d_hat_min keeps a
// clear distance from an integer, so the bound is not decided by rounding.
DtInstance random_dt_instance(Rng& rng) {
  for (;;) {
    Digraph g = graphs::random_scwb(uniform_int(rng, 3, 8), rng);
    const double beta = uniform(rng, 0.5, 2.0);
    const auto structure = validate(g);
    const double delta = uniform(rng, 0.2, 0.95) / (beta * structure.d_max);
    Spectrum spec = compute_spectrum(laplacian(g));
    const auto bound = dt_admissible_delay(spec, beta, delta);
    const double frac = bound.d_hat_min - std::floor(bound.d_hat_min);
    if (frac < 1e-6 || frac > 1.0 - 1e-6) continue;
    Eigen::MatrixXd h_scaled = delta * disagreement_matrix(laplacian(g), beta);
    return {std::move(g), beta, delta, std::move(spec), bound, std::move(h_scaled)};
  }
}

// ---------------------------------------------------------------- graph

Outcome graph_edge_list_roundtrip(Rng& rng, bool fault) {
  for (int trial = 0; trial < 20; ++trial) {
    const Digraph g = graphs::random_scwb(uniform_int(rng, 2, 10), rng);
    std::stringstream buf;
    write_edge_list(buf, g);
    const auto edges = parse_edge_list(buf);
    Digraph back = load_graph(edges, g.size());
    double diff = (back.adjacency() - g.adjacency()).cwiseAbs().maxCoeff();
    if (fault) diff += 1.0;
    if (diff != 0.0) return {false, "trial " + std::to_string(trial) + " differs by " + fmt(diff)};
  }
  return {true, "20 random graphs"};
}

Outcome graph_laplacian_sums(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Digraph g = graphs::random_scwb(uniform_int(rng, 2, 10), rng);
    Eigen::MatrixXd l = laplacian(g);
    if (fault) l(0, 0) += 1e-9;
    worst = std::max({worst, l.rowwise().sum().cwiseAbs().maxCoeff(), l.colwise().sum().cwiseAbs().maxCoeff()});
  }
  return within(worst, 1e-12, "max |row/col sum|");
}

Outcome graph_random_scwb_valid(Rng& rng, bool fault) {
  for (int trial = 0; trial < 50; ++trial) {
    Digraph g = graphs::random_scwb(uniform_int(rng, 2, 10), rng);
    if (fault) {
      Eigen::MatrixXd a = g.adjacency();
      a(0, 1) += 0.5;
      g = Digraph(a);
    }
    if (!validate(g).scwb()) return {false, "generated graph is not SCWB"};
  }
  return {true, "50 random graphs"};
}

Outcome graph_basis_orthonormal(Rng&, bool fault) {
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n) {
    Eigen::MatrixXd r = disagreement_basis(n).R;
    if (fault) r(0, 0) += 1e-6;
    worst = std::max(worst, (r.transpose() * r - Eigen::MatrixXd::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (r.transpose() * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff());
  }
  return within(worst, 1e-14, "max deviation");
}

// -------------------------------------------------------------- spectral

Outcome spectral_ring_closed_form(Rng&, bool fault) {
  const auto eigs = eig_general(laplacian(graphs::directed_ring(6)));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    // Circulant: 1 - e^{2 pi i k / 6}; check each computed value is on the list.
    double best = 1e300;
    for (int k = 0; k < 6; ++k) {
      const auto mu = 1.0 - std::polar(1.0, 2.0 * std::numbers::pi * k / 6.0);
      best = std::min(best, std::abs(eigs(i) - mu));
    }
    worst = std::max(worst, best);
  }
  if (fault) worst += 1e-3;
  return within(worst, 1e-12, "max distance to closed form");
}

Outcome spectral_trace_and_conjugates(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(rng, 2, 12);
    const Eigen::MatrixXd a = random_matrix(rng, n, 1.0);
    Eigen::VectorXcd eigs = eig_general(a);
    if (fault) eigs(0) += 1e-6;
    worst = std::max(worst, std::abs(eigs.sum() - a.trace()) / std::max(1.0, a.norm()));
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
      double best = 1e300;
      for (Eigen::Index j = 0; j < eigs.size(); ++j) best = std::min(best, std::abs(eigs(j) - std::conj(eigs(i))));
      worst = std::max(worst, best);
    }
  }
  return within(worst, 1e-10, "max trace/conjugate mismatch");
}

Outcome spectral_lyapunov_residual(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = trial < 25 ? uniform_int(rng, 1, 12) : uniform_int(rng, 31, 40);
    Eigen::MatrixXd a = random_matrix(rng, n, 1.0);
    a *= uniform(rng, 0.1, 0.95) / std::max(spectral_radius(a), 1e-3);
    const Eigen::MatrixXd q = solve_discrete_lyapunov(a, Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd res = a.transpose() * q * a - q + Eigen::MatrixXd::Identity(n, n);
    worst = std::max(worst, res.cwiseAbs().maxCoeff() / std::max(1.0, q.cwiseAbs().maxCoeff()));
  }
  if (fault) worst += 1.0;
  return within(worst, 1e-10, "max relative residual");
}

// --------------------------------------------------------------- lambert

Outcome lambert_identity(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int i = 0; i < 2500; ++i) {
    const int k = uniform_int(rng, -2, 2);
    const double radius = std::exp(uniform(rng, -8.0, 8.0));
    const double angle = uniform(rng, -std::numbers::pi, std::numbers::pi);
    const std::complex<double> z = std::polar(radius, angle);
    std::complex<double> w = lambert_w(k, z);
    if (fault) w *= 1.0 + 1e-9;
    worst = std::max(worst, std::abs(w * std::exp(w) - z) / std::abs(z));
  }
  return within(worst, 1e-12, "max relative |w e^w - z|");
}

Outcome lambert_series_agreement(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const std::complex<double> z = std::polar(uniform(rng, 0.0, 0.3), uniform(rng, -3.14, 3.14));
    const std::complex<double> series = w0_series(z) + (fault ? 1e-10 : 0.0);
    worst = std::max(worst, std::abs(series - lambert_w(0, z)));
  }
  return within(worst, 1e-13, "max |series - W0|");
}

Outcome lambert_real_branches(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double x = uniform(rng, -0.3678, -1e-6);
    const double w0_imag = lambert_w(0, x).imag() + (fault ? 1e-10 : 0.0);
    worst = std::max({worst, std::abs(w0_imag), std::abs(lambert_w(-1, x).imag())});
    if (!(lambert_w(-1, x).real() <= -1.0 && lambert_w(0, x).real() >= -1.0)) {
      return {false, "branch ordering violated at " + fmt(x)};
    }
  }
  return within(worst, 1e-14, "max imaginary part on (-1/e, 0)");
}

// ---------------------------------------------------------------- bounds

Outcome bounds_ct_root_flip(Rng& rng, bool fault) {
  for (int trial = 0; trial < 50; ++trial) {
    const Digraph g = graphs::random_scwb(uniform_int(rng, 3, 8), rng);
    const double beta = uniform(rng, 0.5, 2.0);
    const Spectrum spec = compute_spectrum(laplacian(g));
    double tau_bar = ct_admissible_delay(spec, beta).tau_bar;
    if (fault) tau_bar *= 1.05;
    const double below = ct_rightmost_root(spec, beta, 0.99 * tau_bar);
    const double above = ct_rightmost_root(spec, beta, 1.01 * tau_bar);
    if (!(below < 0.0 && above > 0.0)) {
      return {false, "trial " + std::to_string(trial) + ": roots " + fmt(below) + ", " + fmt(above)};
    }
  }
  return {true, "50 random instances"};
}

Outcome bounds_dt_schur_flip(Rng& rng, bool fault) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_dt_instance(rng);
    const int d_ok = inst.bound.max_admissible_d + (fault ? 1 : 0);
    const bool stable = is_schur(build_augmented(inst.h_scaled, d_ok));
    const bool unstable = !is_schur(build_augmented(inst.h_scaled, inst.bound.d_bar + (fault ? 1 : 0)));
    if (!stable || !unstable) {
      return {false, "trial " + std::to_string(trial) + ": d_bar = " + std::to_string(inst.bound.d_bar)};
    }
  }
  return {true, "50 random instances"};
}

Outcome bounds_gamma_region(Rng& rng, bool fault) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_dt_instance(rng);
    const auto eigs = inst.spec.nonzero_eigs();
    for (int d : {inst.bound.max_admissible_d, inst.bound.d_bar}) {
      bool all_inside = true;
      for (const auto& lambda : eigs) {
        all_inside &= gamma_region_contains(-inst.delta * inst.beta * lambda, fault ? d + 1 : d);
      }
      if (all_inside != (d <= inst.bound.max_admissible_d)) {
        return {false, "trial " + std::to_string(trial) + ", d = " + std::to_string(d)};
      }
    }
  }
  return {true, "50 random instances"};
}

Outcome bounds_degree_domination(Rng& rng, bool fault) {
  std::vector<Digraph> graphs_list = {graphs::six_ring(), graphs::six_ring_with_chords()};
  for (int i = 0; i < 50; ++i) graphs_list.push_back(graphs::random_scwb(uniform_int(rng, 3, 8), rng));
  for (std::size_t i = 0; i < graphs_list.size(); ++i) {
    const auto& g = graphs_list[i];
    const double beta = i < 2 ? 1.0 : uniform(rng, 0.5, 2.0);
    const auto structure = validate(g);
    const Spectrum spec = compute_spectrum(laplacian(g));
    double tau_deg = ct_degree_bound(structure.d_max, beta);
    if (fault) tau_deg *= 10.0;
    if (tau_deg > ct_admissible_delay(spec, beta).tau_bar) return {false, "ct degree bound exceeds tau_bar"};
    const double delta = (i < 2 ? 0.19 : uniform(rng, 0.05, 0.95)) / (beta * structure.d_max);
    const auto dt = dt_admissible_delay(spec, beta, delta);
    if (dt_degree_bound(beta, delta, structure.d_max) > dt.d_bar) return {false, "dt degree bound exceeds d_bar"};
  }
  return {true, std::to_string(graphs_list.size()) + " graphs"};
}

Outcome bounds_undirected_one_step(Rng& rng, bool fault) {
  for (int trial = 0; trial < 50; ++trial) {
    const Digraph g = graphs::random_connected_undirected(uniform_int(rng, 2, 8), rng);
    const double beta = uniform(rng, 0.5, 2.0);
    const Spectrum spec = compute_spectrum(laplacian(g));
    const double delta = uniform(rng, 0.01, 0.999) / (beta * spec.lambdaN_hat) * (fault ? 1.9 : 1.0);
    if (dt_admissible_delay(spec, beta, delta).max_admissible_d < 1) {
      return {false, "trial " + std::to_string(trial) + " tolerates no delay"};
    }
  }
  return {true, "50 random undirected graphs, delta < 1/(beta lambda_N)"};
}

Outcome bounds_rate_monotone(Rng&, bool fault) {
  const Spectrum spec = compute_spectrum(laplacian(graphs::six_ring()));
  const double tau_bar = ct_admissible_delay(spec, 1.0).tau_bar;
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) {
    const double tau = 0.95 * tau_bar * i / 9.0;
    double rho = ct_decay_rate(spec, 1.0, tau);
    if (fault && i == 5) rho = prev + 1.0;
    if (rho > prev + 1e-12) return {false, "rate increases at tau = " + fmt(tau)};
    prev = rho;
  }
  return {true, "10 grid points on the ring"};
}

Outcome bounds_envelope_certificate(Rng& rng, bool fault) {
  double worst = -1.0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_dt_instance(rng);
    const int d = uniform_int(rng, 0, std::min(inst.bound.max_admissible_d, 4));
    auto env = dt_envelope(inst.h_scaled, d);
    if (fault) env.omega_bar *= 0.9;
    worst = std::max(worst, envelope_residual(build_augmented(inst.h_scaled, d), env));
  }
  return within(worst, 1e-8, "max lambda_max residual");
}

Outcome bounds_dt_envelope_domination(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = random_dt_instance(rng);
    const int d = uniform_int(rng, 0, std::min(inst.bound.max_admissible_d, 4));
    const auto env = dt_envelope(inst.h_scaled, d);
    const double k_bar = fault ? 0.5 * env.k_bar : env.k_bar;
    const Eigen::Index m = inst.h_scaled.rows();
    std::vector<Eigen::VectorXd> p(d + 1, Eigen::VectorXd::Zero(m));
    p.back() = random_unit(rng, static_cast<int>(m));
    for (int k = 0; k <= 500; ++k) {
      const double log_bound = std::log(k_bar) + k * std::log(env.omega_bar);
      worst = std::max(worst, std::exp(std::log(p.back().stableNorm()) - log_bound));
      Eigen::VectorXd next = p.back() + inst.h_scaled * p.front();
      p.erase(p.begin());
      p.push_back(std::move(next));
    }
  }
  return within(worst, 1.0 + 1e-9, "max ||p(k)|| / (k_bar omega^k)");
}

Outcome bounds_ct_envelope_refined(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const Digraph g = trial == 0 ? graphs::six_ring() : graphs::random_scwb(uniform_int(rng, 3, 6), rng);
    const double beta = trial == 0 ? 1.0 : uniform(rng, 0.5, 2.0);
    const double tau_bar = ct_admissible_delay(compute_spectrum(laplacian(g)), beta).tau_bar;
    const double tau = trial == 0 ? 0.2 : uniform(rng, 0.1, 0.8) * tau_bar;
    const auto coarse = ct_envelope(g, beta, tau);
    const auto fine = ct_envelope(g, beta, tau, coarse.horizon, 4000);
    const double k = fault ? 0.5 * coarse.k_tau : coarse.k_tau;
    for (std::size_t i = 0; i < fine.times.size(); ++i) {
      worst = std::max(worst, fine.phi_norms[i] / (k * std::exp(-coarse.rho_tau * fine.times[i])));
    }
  }
  return within(worst, 1.0 + 1e-6, "max ||Phi(t)|| / (k_tau e^{-rho t}) on a 2x grid");
}

// ------------------------------------------------------------------- sim

Outcome sim_delayed_exponential(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 3; ++d) {
      const Eigen::MatrixXd a = random_matrix(rng, n, 0.5);
      const auto seq = delayed_exponential_sequence(a, d, 30);
      for (int k = -d; k <= 30; ++k) {
        const Eigen::MatrixXd ref = delayed_exponential_recurrence(a, d, k);
        double err = (seq[k + d] - ref).cwiseAbs().maxCoeff() / std::max(1.0, ref.cwiseAbs().maxCoeff());
        if (fault && k == 30) err += 1e-6;
        worst = std::max(worst, err);
      }
    }
  }
  return within(worst, 1e-10, "max relative deviation");
}

Outcome sim_trajectory_formula(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Digraph g = graphs::random_scwb(uniform_int(rng, 2, 6), rng);
    const auto structure = validate(g);
    const double beta = uniform(rng, 0.5, 2.0);
    const double delta = uniform(rng, 0.1, 0.9) / (beta * structure.d_max);
    const int d = uniform_int(rng, 0, 3);
    const auto signals = random_held_signals(rng, g.size());
    const auto traj = simulate_dt(g, beta, delta, d, signals, 200);
    const Eigen::MatrixXd iterated = disagreement_coordinates(traj);
    Eigen::MatrixXd formula = dt_trajectory_formula_all(g, beta, delta, d, signals, 200);
    if (fault) formula(200, 0) += 1e-3;
    const double scale = std::max(1.0, iterated.cwiseAbs().maxCoeff());
    worst = std::max(worst, (formula - iterated).cwiseAbs().maxCoeff() / scale);
  }
  return within(worst, 1e-9, "max relative deviation");
}

Outcome sim_conservation(Rng& rng, bool fault) {
  const auto inst = random_dt_instance(rng);
  const auto signals = random_held_signals(rng, inst.g.size());
  const int d = std::min(inst.bound.max_admissible_d, 2);
  const auto traj = simulate_dt(inst.g, inst.beta, inst.delta, d, signals, 10000);
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    double drift = (traj.x.row(row).transpose() - signals.at(traj.times[k])).sum();
    if (fault) drift += 1e-12 * static_cast<double>(k);
    worst = std::max(worst, std::abs(drift));
  }
  return within(worst, 1e-9, "max |sum z| over 1e4 steps");
}

Outcome sim_zero_delay_dt(Rng& rng, bool fault) {
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Digraph g = graphs::random_scwb(uniform_int(rng, 2, 8), rng);
    const double delta = uniform(rng, 0.1, 0.9) / validate(g).d_max;
    const auto signals = random_held_signals(rng, g.size());
    const auto traj = simulate_dt(g, 1.0, delta, 0, signals, 300);
    const Eigen::MatrixXd l = laplacian(g);
    Eigen::VectorXd x = signals.at(0.0);
    for (int k = 0; k <= 300; ++k) {
      double err = (traj.x.row(k).transpose() - x).cwiseAbs().maxCoeff();
      if (fault) err += 1e-9;
      worst = std::max(worst, err / std::max(1.0, x.cwiseAbs().maxCoeff()));
      x = x - delta * l * x + signals.at((k + 1) * delta) - signals.at(k * delta);
    }
  }
  return within(worst, 1e-12, "max relative deviation");
}

Outcome sim_zero_delay_ct(Rng&, bool fault) {
  // Independent reference: RK4 on x' = -L x + r'(t), x(0) = r(0).
  const Digraph g = graphs::six_ring();
  const auto signals = catalog::continuous_six();
  const double h = 0.01;
  const auto traj = simulate_ct(g, 1.0, 0.0, signals, h, 10.0);
  const Eigen::MatrixXd l = laplacian(g);
  auto f = [&](double t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return -l * x + signals.derivative_at(t);
  };
  Eigen::VectorXd x = signals.at(0.0);
  if (fault) x(0) += 1e-6;
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    worst = std::max(worst, (traj.x.row(static_cast<Eigen::Index>(k)).transpose() - x).cwiseAbs().maxCoeff());
    const Eigen::VectorXd k1 = f(t, x);
    const Eigen::VectorXd k2 = f(t + h / 2, x + h / 2 * k1);
    const Eigen::VectorXd k3 = f(t + h / 2, x + h / 2 * k2);
    const Eigen::VectorXd k4 = f(t + h, x + h * k3);
    x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return within(worst, 1e-8, "max deviation from delay-free RK4");
}

Outcome sim_step_refinement(Rng&, bool fault) {
  const Digraph g = graphs::six_ring();
  const auto signals = catalog::continuous_six();
  auto final_state = [&](double h) {
    const auto traj = simulate_ct(g, 1.0, 0.2, signals, h, 10.0);
    return Eigen::VectorXd(traj.x.bottomRows(1).transpose());
  };
  const auto a = final_state(0.04);
  const auto b = final_state(0.02);
  Eigen::VectorXd c = final_state(0.01);
  if (fault) c(0) += 1e-6;
  const double ratio = (a - b).norm() / (b - c).norm();
  return {ratio > 10.0 && ratio < 24.0, "error ratio " + fmt(ratio) + " (expected ~16)"};
}

Outcome sim_static_exactness(Rng&, bool fault) {
  const Digraph g = graphs::six_ring();
  const auto signals = catalog::constants({1.0, -2.0, 0.5, 3.0, -1.5, 0.25});
  double worst = 0.0;
  for (double tau : {0.1, 0.2, 0.4}) {
    worst = std::max(worst, simulate_ct(g, 1.0, tau, signals, 0.01, 250.0).steady_error);
  }
  for (int d : {0, 1, 2}) {
    worst = std::max(worst, simulate_dt(g, 1.0, 0.19, d, signals, 5000).steady_error);
  }
  if (fault) worst += 1e-3;
  return within(worst, 1e-6, "max steady error");
}

// ------------------------------------------------------------------- cli

RunConfig sample_config(Mode mode) {
  RunConfig cfg;
  cfg.graph_preset = "six_ring";
  cfg.mode = mode;
  cfg.seed = 7;
  if (mode == Mode::Ct) {
    cfg.tau = 0.2;
    cfg.h = 0.02;
    cfg.horizon = 20.0;
    cfg.signals.preset = "continuous_six";
  } else {
    cfg.delta = 0.19;
    cfg.d = 1;
    cfg.steps = 300;
    cfg.signals.preset = "sampled_hold_six";
  }
  return cfg;
}

Outcome cli_csv_roundtrip(Rng&, bool fault) {
  const auto outcome = simulate(sample_config(Mode::Dt));
  std::string text = trajectory_csv(outcome.trajectory);
  if (fault) text.replace(text.find('\n') + 1, 1, "9");
  std::istringstream in(text);
  const Trajectory back = read_trajectory_csv(in);
  const bool same = back.times == outcome.trajectory.times && back.x == outcome.trajectory.x &&
                    back.errors == outcome.trajectory.errors;
  return {same, same ? "exact" : "values differ after parsing"};
}

Outcome cli_determinism(Rng&, bool fault) {
  for (Mode mode : {Mode::Ct, Mode::Dt}) {
    const auto cfg = sample_config(mode);
    const auto a = simulate(cfg);
    auto cfg2 = cfg;
    if (fault) cfg2.seed += 1;
    const auto b = simulate(cfg2);
    if (trajectory_csv(a.trajectory) != trajectory_csv(b.trajectory) ||
        summary_json(a.summary) != summary_json(b.summary)) {
      return {false, to_string(mode) + " outputs differ between runs"};
    }
  }
  return {true, "ct and dt outputs byte-identical"};
}

Outcome cli_config_errors(Rng&, bool fault) {
  std::vector<std::string> bad = {
      "{",
      R"({"graph_preset": "six_ring"})",
      R"({"graph_preset": "six_ring", "mode": "ct", "tau": 0.1})",
      R"({"graph_preset": "six_ring", "mode": "dt", "delta": 0.1, "d": -1, "steps": 10})",
      R"({"graph_preset": "six_ring", "mode": "ct", "tau": 0.1, "h": 0.01, "typo": 1})",
      R"({"graph_preset": "nowhere", "mode": "ct", "tau": 0.1, "h": 0.01})",
  };
  if (fault) bad.push_back(R"({"graph_preset": "six_ring", "mode": "ct", "tau": 0.1, "h": 0.01})");
  for (const auto& text : bad) {
    try {
      parse_config(text);
      return {false, "accepted: " + text};
    } catch (const InputError&) {
    }
  }
  return {true, std::to_string(bad.size()) + " malformed configs rejected"};
}

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> checks = {
      {"graph", "edge_list_roundtrip", graph_edge_list_roundtrip},
      {"graph", "laplacian_zero_sums", graph_laplacian_sums},
      {"graph", "random_scwb_valid", graph_random_scwb_valid},
      {"graph", "basis_orthonormal", graph_basis_orthonormal},
      {"spectral", "ring_closed_form", spectral_ring_closed_form},
      {"spectral", "trace_and_conjugates", spectral_trace_and_conjugates},
      {"spectral", "lyapunov_residual", spectral_lyapunov_residual},
      {"lambert", "defining_identity", lambert_identity},
      {"lambert", "series_agreement", lambert_series_agreement},
      {"lambert", "real_branches", lambert_real_branches},
      {"bounds", "ct_root_flip", bounds_ct_root_flip},
      {"bounds", "dt_schur_flip", bounds_dt_schur_flip},
      {"bounds", "gamma_region_consistency", bounds_gamma_region},
      {"bounds", "degree_bounds", bounds_degree_domination},
      {"bounds", "undirected_one_step", bounds_undirected_one_step},
      {"bounds", "ct_rate_monotone", bounds_rate_monotone},
      {"bounds", "envelope_certificate", bounds_envelope_certificate},
      {"bounds", "dt_envelope_domination", bounds_dt_envelope_domination},
      {"bounds", "ct_envelope_refined", bounds_ct_envelope_refined},
      {"sim", "delayed_exponential", sim_delayed_exponential},
      {"sim", "trajectory_formula", sim_trajectory_formula},
      {"sim", "conservation", sim_conservation},
      {"sim", "zero_delay_dt", sim_zero_delay_dt},
      {"sim", "zero_delay_ct", sim_zero_delay_ct},
      {"sim", "step_refinement", sim_step_refinement},
      {"sim", "static_exactness", sim_static_exactness},
      {"cli", "csv_roundtrip", cli_csv_roundtrip},
      {"cli", "determinism", cli_determinism},
      {"cli", "config_errors", cli_config_errors},
  };
  return checks;
}

}  // namespace

std::vector<std::string> verify_suites() { return {"graph", "spectral", "lambert", "bounds", "sim", "cli"}; }

std::vector<std::string> verify_fault_names() {
  std::vector<std::string> names;
  for (const auto& c : registry()) names.push_back(c.suite + "." + c.name);
  return names;
}

std::vector<CheckResult> run_verify(const VerifyOptions& opts, std::ostream* log) {
  if (!opts.inject_fault.empty()) {
    const auto names = verify_fault_names();
    if (std::find(names.begin(), names.end(), opts.inject_fault) == names.end()) {
      throw InputError("unknown fault '" + opts.inject_fault + "'");
    }
  }
  for (const auto& s : opts.suites) {
    const auto all = verify_suites();
    if (std::find(all.begin(), all.end(), s) == all.end()) throw InputError("unknown suite '" + s + "'");
  }
  std::vector<CheckResult> results;
  std::uint64_t index = 0;
  for (const auto& def : registry()) {
    ++index;
    if (!opts.suites.empty() &&
        std::find(opts.suites.begin(), opts.suites.end(), def.suite) == opts.suites.end()) {
      continue;
    }
    const std::string full = def.suite + "." + def.name;
    Rng rng(derive_seed(opts.seed, index));
    const auto start = std::chrono::steady_clock::now();
    CheckResult r{def.suite, def.name, false, ""};
    try {
      const Outcome o = def.run(rng, opts.inject_fault == full);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (log) {
      *log << (r.passed ? "PASS " : "FAIL ") << full << ": " << r.detail << " [" << fmt(secs) << " s]\n";
      log->flush();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace dac
