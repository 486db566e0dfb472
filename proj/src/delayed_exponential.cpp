#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dac/errors.hpp"
#include "dac/sim.hpp"

namespace dac {

namespace {

namespace mp = boost::multiprecision;

// Highest l with a nonzero term: C(k - (l-1) d, l) vanishes once
// k - (l-1) d < l.
int term_count(int k, int d) { return k + d < 0 ? -1 : (k + d) / (d + 1); }

// log10 of the largest |C(p, l)| ||A||^l over all terms for k <= k_max.
double magnitude_estimate(double norm, int d, int k_max) {
  double worst = 0.0;
  const double log_norm = norm > 0.0 ? std::log10(norm) : -300.0;
  for (int l = 1; l <= term_count(k_max, d); ++l) {
    const double p = k_max - (l - 1.0) * d;
    const double log_binom = (std::lgamma(p + 1.0) - std::lgamma(l + 1.0) - std::lgamma(p - l + 1.0)) /
                             std::log(10.0);
    worst = std::max(worst, log_binom + l * log_norm);
  }
  return worst;
}

template <class Real>
using Dense = std::vector<Real>;  // row-major m x m

template <class Real>
std::vector<Eigen::MatrixXd> sequence_impl(const Eigen::MatrixXd& a, int d, int k_max) {
  const Eigen::Index m = a.rows();
  const int l_max = std::max(0, term_count(k_max, d));

  std::vector<Dense<Real>> powers(l_max + 1, Dense<Real>(m * m, Real(0)));
  for (Eigen::Index i = 0; i < m; ++i) powers[0][i * m + i] = 1;
  Dense<Real> base(m * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) base[i * m + j] = Real(a(i, j));
  }
  for (int l = 1; l <= l_max; ++l) {
    auto& out = powers[l];
    const auto& prev = powers[l - 1];
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index q = 0; q < m; ++q) {
        const Real& lhs = prev[i * m + q];
        if (lhs == 0) continue;
        for (Eigen::Index j = 0; j < m; ++j) out[i * m + j] += lhs * base[q * m + j];
      }
    }
  }

  std::vector<Eigen::MatrixXd> result;
  result.reserve(k_max + d + 1);
  Dense<Real> acc(m * m);
  for (int k = -d; k <= k_max; ++k) {
    std::fill(acc.begin(), acc.end(), Real(0));
    Real binom = 1;  // C(p_l, l), p_l = k - (l-1) d
    for (int l = 0; l <= term_count(k, d); ++l) {
      if (l > 0) {
        // C(p, l) = prod_{i<l} (p - i) / l!
        binom = 1;
        const long p = static_cast<long>(k) - static_cast<long>(l - 1) * d;
        for (int i = 0; i < l; ++i) binom *= Real(p - i);
        for (int i = 2; i <= l; ++i) binom /= i;
      }
      const auto& pw = powers[l];
      for (std::size_t e = 0; e < acc.size(); ++e) acc[e] += binom * pw[e];
    }
    Eigen::MatrixXd x(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) x(i, j) = static_cast<double>(acc[i * m + j]);
    }
    result.push_back(std::move(x));
  }
  return result;
}

}  // namespace

std::vector<Eigen::MatrixXd> delayed_exponential_sequence(const Eigen::MatrixXd& a, int d, int k_max) {
  if (a.rows() != a.cols()) throw InputError("delayed_exponential: matrix must be square");
  if (d < 0) throw InputError("delayed_exponential: d must be nonnegative");
  if (k_max < -d) throw InputError("delayed_exponential: k must be at least -d");
  if (!a.allFinite()) throw InputError("delayed_exponential: matrix must be finite");

  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  const double digits = magnitude_estimate(norm, d, k_max) + 25.0;
  if (digits <= 50) return sequence_impl<mp::cpp_bin_float_50>(a, d, k_max);
  if (digits <= 100) return sequence_impl<mp::cpp_bin_float_100>(a, d, k_max);
  if (digits <= 200) return sequence_impl<mp::number<mp::cpp_bin_float<200>>>(a, d, k_max);
  if (digits <= 500) return sequence_impl<mp::number<mp::cpp_bin_float<500>>>(a, d, k_max);
  throw NumericalError("delayed_exponential: terms reach 1e" + std::to_string(static_cast<int>(digits)) +
                       ", beyond the supported precision");
}

Eigen::MatrixXd delayed_exponential(const Eigen::MatrixXd& a, int d, int k) {
  return delayed_exponential_sequence(a, d, k).back();
}

Eigen::MatrixXd delayed_exponential_recurrence(const Eigen::MatrixXd& a, int d, int k) {
  if (a.rows() != a.cols()) throw InputError("delayed_exponential: matrix must be square");
  if (d < 0) throw InputError("delayed_exponential: d must be nonnegative");
  if (k < -d) throw InputError("delayed_exponential: k must be at least -d");
  const Eigen::Index m = a.rows();
  // history[i] holds X(i - d)
  std::vector<Eigen::MatrixXd> history(d + 1, Eigen::MatrixXd::Identity(m, m));
  if (k <= 0) return history[k + d];
  for (int step = 0; step < k; ++step) {
    Eigen::MatrixXd next = history.back() + a * history.front();
    history.erase(history.begin());
    history.push_back(std::move(next));
  }
  return history.back();
}

}  // namespace dac
