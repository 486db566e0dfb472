#include <gtest/gtest.h>

#include <numbers>

#include "dac/errors.hpp"
#include "dac/generators.hpp"
#include "dac/random.hpp"
#include "dac/spectral.hpp"

namespace {

TEST(Spectral, RingMatchesCirculantFormula) {
  const auto eigs = dac::eig_general(dac::laplacian(dac::graphs::six_ring()));
  ASSERT_EQ(eigs.size(), 6);
  std::vector<std::complex<double>> expected;
  for (int k = 0; k < 6; ++k) expected.push_back(1.0 - std::polar(1.0, 2.0 * std::numbers::pi * k / 6.0));
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    double best = 1e9;
    for (const auto& e : expected) best = std::min(best, std::abs(eigs(i) - e));
    EXPECT_LT(best, 1e-12);
  }
  // Sorted by real part, zero eigenvalue first.
  EXPECT_LT(std::abs(eigs(0)), 1e-12);
  for (Eigen::Index i = 1; i < eigs.size(); ++i) EXPECT_LE(eigs(i - 1).real(), eigs(i).real() + 1e-15);
}

TEST(Spectral, ConjugatePairsAreExact) {
  dac::Rng rng(5);
  Eigen::MatrixXd a(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) a(i, j) = dac::uniform(rng, -1.0, 1.0);
  const auto eigs = dac::eig_general(a);
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (eigs(i).imag() == 0.0) continue;
    bool found = false;
    for (Eigen::Index j = 0; j < eigs.size(); ++j) found |= eigs(j) == std::conj(eigs(i));
    EXPECT_TRUE(found);
  }
}

TEST(Spectral, SymmetricEigenvalues) {
  const auto s = dac::eig_symmetric(dac::laplacian(dac::graphs::undirected_path(2)));
  EXPECT_NEAR(s(0), 0.0, 1e-15);
  EXPECT_NEAR(s(1), 2.0, 1e-15);
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 3, 4;
  EXPECT_THROW(dac::eig_symmetric(bad), dac::InputError);
}

TEST(Spectral, SpectrumOfRing) {
  const auto spec = dac::compute_spectrum(dac::laplacian(dac::graphs::six_ring()));
  const auto nz = spec.nonzero_eigs();
  EXPECT_EQ(nz.size(), 5u);
  // Symmetric part of the ring Laplacian is half the undirected cycle Laplacian.
  EXPECT_NEAR(spec.lambda2_hat, 0.5, 1e-12);
  EXPECT_NEAR(spec.lambdaN_hat, 2.0, 1e-12);
}

TEST(Spectral, NonScwbSpectrumRejected) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a(0, 1) = a(1, 0) = a(2, 3) = a(3, 2) = 1.0;  // two components
  const auto spec = dac::compute_spectrum(dac::laplacian(dac::Digraph(a)));
  EXPECT_THROW(spec.nonzero_eigs(), dac::ModelError);
}

TEST(Spectral, RadiusNormAndSchur) {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, -0.5, 1;  // mu^2 - mu + 0.5 = 0
  EXPECT_NEAR(dac::spectral_radius(a), std::sqrt(0.5), 1e-14);
  EXPECT_TRUE(dac::is_schur(a));
  EXPECT_FALSE(dac::is_schur(a, 0.3));
  Eigen::MatrixXd d = Eigen::Vector2d(3.0, -4.0).asDiagonal();
  EXPECT_NEAR(dac::spectral_norm(d), 4.0, 1e-14);
}

TEST(Spectral, LyapunovScalarClosedForm) {
  Eigen::MatrixXd a(1, 1), c(1, 1);
  a << 0.6;
  c << 2.0;
  const auto q = dac::solve_discrete_lyapunov(a, c);
  EXPECT_NEAR(q(0, 0), 2.0 / (1.0 - 0.36), 1e-14);
}

TEST(Spectral, LyapunovResidualBothSolvers) {
  dac::Rng rng(17);
  for (int n : {4, 12, 36}) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = dac::uniform(rng, -1.0, 1.0);
    a *= 0.9 / dac::spectral_radius(a);
    const Eigen::MatrixXd c = Eigen::MatrixXd::Identity(n, n);
    const auto q = dac::solve_discrete_lyapunov(a, c);
    EXPECT_LT((a.transpose() * q * a - q + c).cwiseAbs().maxCoeff(), 1e-9 * q.cwiseAbs().maxCoeff());
    EXPECT_LT((q - q.transpose()).norm(), 1e-12);
    EXPECT_GT(dac::eig_symmetric(q)(0), 0.0);
  }
}

TEST(Spectral, LyapunovRejectsUnstableAndBadShapes) {
  Eigen::MatrixXd a(1, 1), c(1, 1);
  a << 1.01;
  c << 1.0;
  EXPECT_THROW(dac::solve_discrete_lyapunov(a, c), dac::InadmissibleError);
  EXPECT_THROW(dac::solve_discrete_lyapunov(Eigen::MatrixXd::Zero(2, 2), c), dac::InputError);
  Eigen::MatrixXd nonsym(2, 2);
  nonsym << 1, 2, 0, 1;
  EXPECT_THROW(dac::solve_discrete_lyapunov(Eigen::MatrixXd::Zero(2, 2), nonsym), dac::InputError);
}

}  // namespace
