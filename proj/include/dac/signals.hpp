#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace dac {

// Reference input catalog. Every signal is one-sided: its value is zero for
// t < 0 and follows the formula for t >= 0.

struct Sinusoid {
  double amplitude = 1.0;
  double frequency = 1.0;  // rad/s
  double phase = 0.0;
};

struct SumOfSinusoids {
  std::vector<Sinusoid> terms;
};

struct Ramp {
  double slope = 1.0;
};

// scale * atan(rate * t)
struct Atan {
  double scale = 1.0;
  double rate = 1.0;
};

struct Cosine {
  double amplitude = 1.0;
  double frequency = 1.0;
  double phase = 0.0;
};

struct Constant {
  double value = 0.0;
};

// Sensor-style input: resampled every `period` seconds and held between
// samples. On [m P, (m+1) P) the value is
//   offset + sin(w_m * m P + phi_m) + bias
// with w_m ~ N(0, frequency_std^2) and phi_m ~ N(0, phase_std^2) drawn from
// a generator keyed on (seed, m), so any sample can be evaluated directly.
struct SampledHold {
  double offset = 2.0;
  double bias = 0.0;
  double period = 5.0;
  double frequency_std = 0.5;
  double phase_std = 1.5707963267948966;
  std::uint64_t seed = 0;

  // (w_m, phi_m)
  std::pair<double, double> draw(std::int64_t m) const;
};

using Signal = std::variant<Sinusoid, SumOfSinusoids, Ramp, Atan, Cosine, Constant, SampledHold>;

// Right-continuous value.
double value(const Signal& s, double t);
// Left limit at t; differs from value() only at jumps (t = 0, sample times).
double value_left(const Signal& s, double t);
// Time derivative for t > 0 away from jumps (zero on held segments).
double derivative(const Signal& s, double t);

std::string signal_kind(const Signal& s);

class ReferenceSignalSet {
 public:
  ReferenceSignalSet() = default;
  explicit ReferenceSignalSet(std::vector<Signal> signals) : signals_(std::move(signals)) {}

  int size() const { return static_cast<int>(signals_.size()); }
  const std::vector<Signal>& signals() const { return signals_; }
  const Signal& operator[](int i) const { return signals_.at(i); }

  Eigen::VectorXd at(double t) const;
  Eigen::VectorXd at_left(double t) const;
  Eigen::VectorXd derivative_at(double t) const;
  double average(double t) const { return at(t).mean(); }

 private:
  std::vector<Signal> signals_;
};

namespace catalog {

// Six heterogeneous continuous-time inputs:
//   0.55 sin(0.8t), 0.5 sin(0.7t) + 0.5 sin(0.6t), 0.1t, 2 atan(0.5t),
//   0.1 cos(2t), 0.5 sin(0.5t).
ReferenceSignalSet continuous_six();

// Six biased sampled-hold sensors (period 5 s, biases
// -0.55, 1, 0.6, -0.9, -0.6, 0.4). Agent i uses derive_seed(seed, i).
ReferenceSignalSet sampled_hold_six(std::uint64_t seed);

ReferenceSignalSet constants(const std::vector<double>& values);

}  // namespace catalog

}  // namespace dac
