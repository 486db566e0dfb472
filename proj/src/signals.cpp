#include "dac/signals.hpp"

#include <cmath>

#include "dac/random.hpp"

namespace dac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double formula(const Signal& s, double t) {
  return std::visit(
      overloaded{
          [t](const Sinusoid& x) { return x.amplitude * std::sin(x.frequency * t + x.phase); },
          [t](const SumOfSinusoids& x) {
            double v = 0.0;
            for (const auto& term : x.terms) {
              v += term.amplitude * std::sin(term.frequency * t + term.phase);
            }
            return v;
          },
          [t](const Ramp& x) { return x.slope * t; },
          [t](const Atan& x) { return x.scale * std::atan(x.rate * t); },
          [t](const Cosine& x) { return x.amplitude * std::cos(x.frequency * t + x.phase); },
          [](const Constant& x) { return x.value; },
          [t](const SampledHold& x) {
            const auto m = static_cast<std::int64_t>(std::floor(t / x.period));
            const auto [w, phi] = x.draw(m);
            const double tm = static_cast<double>(m) * x.period;
            return x.offset + std::sin(w * tm + phi) + x.bias;
          },
      },
      s);
}

}  // namespace

std::pair<double, double> SampledHold::draw(std::int64_t m) const {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(m)));
  const auto [z0, z1] = standard_normal_pair(rng);
  return {frequency_std * z0, phase_std * z1};
}

double value(const Signal& s, double t) { return t < 0.0 ? 0.0 : formula(s, t); }

double value_left(const Signal& s, double t) {
  if (t <= 0.0) return 0.0;
  if (const auto* held = std::get_if<SampledHold>(&s)) {
    const double k = t / held->period;
    if (k == std::floor(k)) return formula(s, t - 0.5 * held->period);
  }
  return formula(s, t);
}

double derivative(const Signal& s, double t) {
  if (t < 0.0) return 0.0;
  return std::visit(
      overloaded{
          [t](const Sinusoid& x) {
            return x.amplitude * x.frequency * std::cos(x.frequency * t + x.phase);
          },
          [t](const SumOfSinusoids& x) {
            double v = 0.0;
            for (const auto& term : x.terms) {
              v += term.amplitude * term.frequency * std::cos(term.frequency * t + term.phase);
            }
            return v;
          },
          [](const Ramp& x) { return x.slope; },
          [t](const Atan& x) {
            const double u = x.rate * t;
            return x.scale * x.rate / (1.0 + u * u);
          },
          [t](const Cosine& x) {
            return -x.amplitude * x.frequency * std::sin(x.frequency * t + x.phase);
          },
          [](const Constant&) { return 0.0; },
          [](const SampledHold&) { return 0.0; },
      },
      s);
}

std::string signal_kind(const Signal& s) {
  return std::visit(overloaded{
                        [](const Sinusoid&) { return std::string("sinusoid"); },
                        [](const SumOfSinusoids&) { return std::string("sum_of_sinusoids"); },
                        [](const Ramp&) { return std::string("ramp"); },
                        [](const Atan&) { return std::string("atan"); },
                        [](const Cosine&) { return std::string("cosine"); },
                        [](const Constant&) { return std::string("constant"); },
                        [](const SampledHold&) { return std::string("sampled_hold"); },
                    },
                    s);
}

Eigen::VectorXd ReferenceSignalSet::at(double t) const {
  Eigen::VectorXd r(size());
  for (int i = 0; i < size(); ++i) r(i) = value(signals_[i], t);
  return r;
}

Eigen::VectorXd ReferenceSignalSet::at_left(double t) const {
  Eigen::VectorXd r(size());
  for (int i = 0; i < size(); ++i) r(i) = value_left(signals_[i], t);
  return r;
}

Eigen::VectorXd ReferenceSignalSet::derivative_at(double t) const {
  Eigen::VectorXd r(size());
  for (int i = 0; i < size(); ++i) r(i) = derivative(signals_[i], t);
  return r;
}

namespace catalog {

ReferenceSignalSet continuous_six() {
  return ReferenceSignalSet({
      Sinusoid{0.55, 0.8, 0.0},
      SumOfSinusoids{{Sinusoid{0.5, 0.7, 0.0}, Sinusoid{0.5, 0.6, 0.0}}},
      Ramp{0.1},
      Atan{2.0, 0.5},
      Cosine{0.1, 2.0, 0.0},
      Sinusoid{0.5, 0.5, 0.0},
  });
}

ReferenceSignalSet sampled_hold_six(std::uint64_t seed) {
  const double biases[] = {-0.55, 1.0, 0.6, -0.9, -0.6, 0.4};
  std::vector<Signal> signals;
  for (int i = 0; i < 6; ++i) {
    SampledHold s;
    s.bias = biases[i];
    s.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    signals.emplace_back(s);
  }
  return ReferenceSignalSet(std::move(signals));
}

ReferenceSignalSet constants(const std::vector<double>& values) {
  std::vector<Signal> signals;
  for (double v : values) signals.emplace_back(Constant{v});
  return ReferenceSignalSet(std::move(signals));
}

}  // namespace catalog

}  // namespace dac
