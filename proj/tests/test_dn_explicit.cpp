#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "dnzeta/dn_explicit.hpp"
#include "oracles.hpp"

using namespace dnzeta;
using dn_explicit::AnnulusGeometry;

TEST(AnnulusBlock, MatchesFiniteDifferenceNormalDerivative) {
  for (double rho : {1.5, 2.0, std::exp(1.0), 10.0}) {
    const auto geom = AnnulusGeometry::from_rho(rho);
    for (int n = -32; n <= 32; ++n) {
      if (n == 0) continue;
      const Eigen::MatrixXd got = dn_explicit::annulus_block(geom, n).entries;
      const Eigen::Matrix2d want = oracle::annulus_block_fd(rho, n);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          EXPECT_NEAR(got(i, j), want(i, j), 1e-9 * std::max(1.0, std::abs(want(i, j))))
              << "rho=" << rho << " n=" << n << " (" << i << "," << j << ")";
        }
      }
    }
  }
}

TEST(AnnulusBlock, ModeZeroHasConstantKernel) {
  const auto geom = AnnulusGeometry::from_rho(3.0);
  const Eigen::MatrixXd m = dn_explicit::annulus_block(geom, 0).entries;
  EXPECT_NEAR((m * Eigen::Vector2d(1.0, 1.0)).norm(), 0.0, 1e-15);
  // log-radius solution u = s / a: outer derivative 1/(rho a), inner -1/a
  EXPECT_NEAR(m(0, 0), 1.0 / (3.0 * std::log(3.0)), 1e-15);
  EXPECT_NEAR(m(1, 0), -1.0 / std::log(3.0), 1e-15);
}

TEST(AnnulusBlock, SymmetrizedIsSymmetric) {
  for (double rho : {1.5, 10.0}) {
    const auto geom = AnnulusGeometry::from_rho(rho);
    for (int n : {0, 1, 5}) {
      const Eigen::MatrixXd s = dn_explicit::symmetrized(geom, dn_explicit::annulus_block(geom, n));
      EXPECT_NEAR(s(0, 1), s(1, 0), 1e-14 * std::max(1.0, std::abs(s(0, 1))));
    }
  }
}

TEST(AnnulusEigenvalues, MatchDenseEigensolver) {
  for (double rho : {1.5, 2.0, std::exp(1.0), 10.0, 100.0}) {
    const auto geom = AnnulusGeometry::from_rho(rho);
    for (int n = 1; n <= 20; ++n) {
      const Eigen::MatrixXd s = dn_explicit::symmetrized(geom, dn_explicit::annulus_block(geom, n));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
      const auto [lp, lm] = dn_explicit::annulus_eigenvalues(geom, n);
      EXPECT_NEAR(lp, es.eigenvalues()(1), 1e-12 * lp);
      EXPECT_NEAR(lm, es.eigenvalues()(0), 1e-11 * std::max(lm, 1e-3 * lp));
      EXPECT_NEAR(lp * lm, n * n / rho, 1e-13 * n * n / rho);
    }
    const Eigen::MatrixXd s0 = dn_explicit::symmetrized(geom, dn_explicit::annulus_block(geom, 0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(s0);
    EXPECT_NEAR(es0.eigenvalues()(0), 0.0, 1e-14);
    EXPECT_NEAR(dn_explicit::annulus_mode0_eigenvalue(geom), (1.0 + rho) / (rho * std::log(rho)), 1e-14);
  }
  EXPECT_THROW(dn_explicit::annulus_eigenvalues(AnnulusGeometry::from_rho(2.0), 0), DomainError);
}

TEST(AnnulusDet, RatioIsTwoPiOverLogRho) {
  for (double rho : {1.5, 2.0, std::exp(1.0), 10.0, 100.0}) {
    const auto geom = AnnulusGeometry::from_rho(rho);
    const auto r = dn_explicit::annulus_det_prime(geom);
    EXPECT_NEAR(r.value, 2.0 * kPi / std::log(rho), 1e-12 * r.value) << rho;
    EXPECT_NEAR(*r.boundary_length, 2.0 * kPi * (1.0 + rho), 1e-12 * *r.boundary_length);
    EXPECT_LE(r.error_estimate, 1e-12 * r.value);
    EXPECT_EQ(r.method, DetMethod::zeta_pipeline);
  }
}

TEST(AnnulusDet, InvalidRadius) {
  EXPECT_THROW(AnnulusGeometry::from_rho(1.0), DomainError);
  EXPECT_THROW(AnnulusGeometry::from_rho(0.3), DomainError);
}

TEST(DiscDet, EqualsBoundaryLength) {
  for (double R : {0.5, 1.0, 7.0}) {
    const auto r = dn_explicit::disc_det_prime(R);
    EXPECT_NEAR(*r.det_prime, 2.0 * kPi * R, 1e-12 * 2.0 * kPi * R);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
  }
  EXPECT_THROW(dn_explicit::disc_det_prime(0.0), DomainError);
}

TEST(CylinderDet, BridgeIdentity) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(0.1, 20.0);
  for (int i = 0; i < 10; ++i) {
    const double ell = dist(rng);
    const dn_explicit::CylinderGeometry geom(ell);
    EXPECT_NEAR(ell / kPi, 2.0 * kPi / std::log(std::exp(2.0 * kPi * kPi / ell)), 1e-12);
    EXPECT_NEAR(dn_explicit::cylinder_det_prime(geom).value, ell / kPi, 1e-12 * ell / kPi) << ell;
  }
}

TEST(CylinderDet, VerySmallEllAvoidsOverflow) {
  const auto r = dn_explicit::cylinder_det_prime(dn_explicit::CylinderGeometry(0.01));
  EXPECT_NEAR(r.value, 0.01 / kPi, 1e-12 * 0.01 / kPi);
}

TEST(UniformizingMap, PeriodAndImage) {
  const double ell = 1.3;
  const cplx z(0.4, 0.9);
  const cplx w = dn_explicit::uniformizing_map(z, ell);
  EXPECT_NEAR(std::abs(dn_explicit::uniformizing_map(z * std::exp(ell), ell) - w), 0.0, 1e-9 * std::abs(w));
  const double rho = std::exp(2.0 * kPi * kPi / ell);
  EXPECT_GT(std::abs(w), 1.0);
  EXPECT_LT(std::abs(w), rho);
  // boundary rays go to the boundary circles
  EXPECT_NEAR(std::abs(dn_explicit::uniformizing_map(cplx(-1.0, 1e-300), ell)), 1.0, 1e-9);
  EXPECT_NEAR(std::abs(dn_explicit::uniformizing_map(cplx(2.0, 1e-300), ell)) / rho, 1.0, 1e-9);
  EXPECT_THROW(dn_explicit::uniformizing_map(cplx(1.0, -1.0), ell), DomainError);
}

TEST(ScatteringMode0, SpecialValuesAndTaylor) {
  EXPECT_NEAR(std::abs(dn_explicit::cylinder_scattering_mode0(0.5) - 1.0), 0.0, 1e-14);
  EXPECT_EQ(dn_explicit::cylinder_scattering_mode0(1.0), cplx(0.0));
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const cplx s = dn_explicit::cylinder_scattering_mode0(1.0 - h);
    EXPECT_LE(std::abs(s / (0.5 * kPi * h * h) - 1.0), 10.0 * h) << h;
  }
}

TEST(CylinderPoisson, ResidualSmall) {
  std::vector<double> grid;
  for (double r = -3.0; r <= 3.0; r += 0.25) {
    if (std::abs(r) > 0.1) grid.push_back(r);
  }
  for (double lambda : {0.75, 0.9, 0.99}) {
    EXPECT_LE(dn_explicit::cylinder_poisson_check(lambda, grid), 1e-6) << lambda;
  }
  EXPECT_THROW(dn_explicit::cylinder_poisson_check(0.9, {0.001}), DomainError);
}
