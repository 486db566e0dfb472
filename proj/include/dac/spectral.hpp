#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dac {

// Eigenvalues of a Laplacian and of its symmetric part.
struct Spectrum {
  Eigen::VectorXcd laplacian_eigs;  // sorted by real part, lambda_1 ~ 0 first
  Eigen::VectorXd sym_eigs;         // ascending
  double lambda2_hat = 0.0;
  double lambdaN_hat = 0.0;
  double zero_tol = 0.0;  // threshold used to recognise lambda_1 = 0

  // Eigenvalues lambda_2..lambda_n. Throws ModelError unless exactly one
  // eigenvalue sits within zero_tol of the origin and all others have
  // positive real part, which is what a SCWB Laplacian must satisfy.
  std::vector<std::complex<double>> nonzero_eigs() const;
};

// Dense nonsymmetric eigenvalues (Hessenberg + shifted QR). Each returned
// value is residual-checked against its eigenvector; conjugate pairs are
// averaged so the output is exactly closed under conjugation. Sorted by
// real part, then imaginary part.
Eigen::VectorXcd eig_general(const Eigen::MatrixXd& a);

// Symmetric eigenvalues, ascending. Throws InputError if
// ||S - S^T||_inf > 1e-10.
Eigen::VectorXd eig_symmetric(const Eigen::MatrixXd& s);

double spectral_radius(const Eigen::MatrixXd& a);

// spectral_radius(a) < 1 - margin
bool is_schur(const Eigen::MatrixXd& a, double margin = 0.0);

// Solves A^T Q A - Q = -C for symmetric Q. Throws InadmissibleError when A
// is not Schur stable and NumericalError when the residual check fails.
Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c);

Spectrum compute_spectrum(const Eigen::MatrixXd& laplacian);

// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& a);

}  // namespace dac
