#include "dac/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "dac/errors.hpp"

namespace dac {

namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kSymmetryTol = 1e-10;
constexpr int kKroneckerMaxOrder = 30;

bool by_real_then_imag(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void pair_conjugates(Eigen::VectorXcd& mu, double scale) {
  const Eigen::Index m = mu.size();
  std::vector<bool> used(m, false);
  const double tol = 1e-10 * std::max(1.0, scale);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (used[i] || mu(i).imag() <= 0.0) continue;
    Eigen::Index best = -1;
    double best_gap = tol;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j == i || used[j] || mu(j).imag() >= 0.0) continue;
      const double gap = std::abs(mu(j) - std::conj(mu(i)));
      if (gap <= best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    if (best < 0) continue;
    const double re = 0.5 * (mu(i).real() + mu(best).real());
    const double im = 0.5 * (mu(i).imag() - mu(best).imag());
    mu(i) = {re, im};
    mu(best) = {re, -im};
    used[i] = used[best] = true;
  }
}

Eigen::MatrixXd lyapunov_kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
  const Eigen::Index m = a.rows();
  const Eigen::Index mm = m * m;
  // vec(A^T Q A) = (A^T kron A^T) vec(Q), column-major vec.
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(mm, mm);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      system.block(i * m, j * m, m, m) -= a(j, i) * a.transpose();
    }
  }
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(c.data(), mm);
  const Eigen::VectorXd q = system.partialPivLu().solve(rhs);
  return Eigen::Map<const Eigen::MatrixXd>(q.data(), m, m);
}

// Squared Smith iteration: after j sweeps P holds the first 2^j terms of
// sum_k (A^T)^k C A^k.
Eigen::MatrixXd lyapunov_doubling(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
  Eigen::MatrixXd p = c;
  Eigen::MatrixXd power = a;
  for (int sweep = 0; sweep < 64; ++sweep) {
    const Eigen::MatrixXd increment = power.transpose() * p * power;
    p += increment;
    power = (power * power).eval();
    if (increment.cwiseAbs().maxCoeff() <= 1e-17 * p.cwiseAbs().maxCoeff() &&
        power.cwiseAbs().maxCoeff() <= 1e-17) {
      return p;
    }
  }
  throw NumericalError("solve_discrete_lyapunov: doubling iteration did not converge");
}

}  // namespace

Eigen::VectorXcd eig_general(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InputError("eig_general: matrix must be square");
  if (a.size() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_general: QR iteration did not converge");
  }
  Eigen::VectorXcd mu = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  const double scale = a.cwiseAbs().rowwise().sum().maxCoeff();
  const Eigen::MatrixXcd ac = a.cast<std::complex<double>>();
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const Eigen::VectorXcd v = vectors.col(i).normalized();
    const double residual = (ac * v - mu(i) * v).norm();
    if (!(residual <= kResidualTol * scale)) {
      throw NumericalError("eig_general: eigenpair residual " + std::to_string(residual) +
                           " exceeds tolerance");
    }
  }
  pair_conjugates(mu, scale);
  std::sort(mu.data(), mu.data() + mu.size(), by_real_then_imag);
  return mu;
}

Eigen::VectorXd eig_symmetric(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols()) throw InputError("eig_symmetric: matrix must be square");
  if (s.size() == 0) return {};
  if ((s - s.transpose()).cwiseAbs().rowwise().sum().maxCoeff() > kSymmetryTol) {
    throw InputError("eig_symmetric: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_symmetric: iteration did not converge");
  }
  return solver.eigenvalues();  // already ascending
}

double spectral_radius(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return eig_general(a).cwiseAbs().maxCoeff();
}

bool is_schur(const Eigen::MatrixXd& a, double margin) { return spectral_radius(a) < 1.0 - margin; }

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
  if (a.rows() != a.cols() || c.rows() != c.cols() || a.rows() != c.rows()) {
    throw InputError("solve_discrete_lyapunov: A and C must be square and of equal size");
  }
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * std::max(1.0, c.cwiseAbs().maxCoeff())) {
    throw InputError("solve_discrete_lyapunov: C must be symmetric");
  }
  if (!is_schur(a)) {
    throw InadmissibleError("solve_discrete_lyapunov: A is not Schur stable");
  }
  Eigen::MatrixXd q = a.rows() <= kKroneckerMaxOrder ? lyapunov_kronecker(a, c)
                                                     : lyapunov_doubling(a, c);
  q = (0.5 * (q + q.transpose())).eval();

  const double c_norm = c.cwiseAbs().rowwise().sum().maxCoeff();
  const Eigen::MatrixXd residual = a.transpose() * q * a - q + c;
  // Tolerance scales with ||Q|| as well: near the unit circle Q is large
  // and the residual is limited by rounding in A^T Q A.
  const double q_norm = q.cwiseAbs().rowwise().sum().maxCoeff();
  if (residual.cwiseAbs().rowwise().sum().maxCoeff() > 1e-8 * std::max(c_norm, 1e-6 * q_norm)) {
    throw NumericalError("solve_discrete_lyapunov: residual check failed");
  }
  return q;
}

Spectrum compute_spectrum(const Eigen::MatrixXd& laplacian) {
  Spectrum s;
  s.laplacian_eigs = eig_general(laplacian);
  s.sym_eigs = eig_symmetric(0.5 * (laplacian + laplacian.transpose()));
  s.zero_tol = 1e-8 * std::max(1.0, laplacian.cwiseAbs().rowwise().sum().maxCoeff());
  s.lambda2_hat = s.sym_eigs.size() > 1 ? s.sym_eigs(1) : 0.0;
  s.lambdaN_hat = s.sym_eigs(s.sym_eigs.size() - 1);
  return s;
}

std::vector<std::complex<double>> Spectrum::nonzero_eigs() const {
  std::vector<std::complex<double>> out;
  int zeros = 0;
  for (Eigen::Index i = 0; i < laplacian_eigs.size(); ++i) {
    const auto mu = laplacian_eigs(i);
    if (std::abs(mu) <= zero_tol) {
      ++zeros;
    } else if (mu.real() <= 0.0) {
      throw ModelError("Laplacian has a nonzero eigenvalue with nonpositive real part; graph is not SCWB");
    } else {
      out.push_back(mu);
    }
  }
  if (zeros != 1) {
    throw ModelError("Laplacian must have exactly one zero eigenvalue (found " +
                     std::to_string(zeros) + "); graph is not SCWB");
  }
  return out;
}

}  // namespace dac
