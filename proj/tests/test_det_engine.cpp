#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "dnzeta/det_engine.hpp"
#include "dnzeta/dn_explicit.hpp"
#include "oracles.hpp"

using namespace dnzeta;
using namespace dnzeta::det_engine;

namespace {

struct AdmissibleInputs {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> unit{0.0, 1.0};
  explicit AdmissibleInputs(unsigned seed) : rng(seed) {}

  struct Sample {
    SurfaceTopology topo;
    double ell, log_zp, log_z0;
  };
  Sample next() {
    for (;;) {
      const int g = static_cast<int>(4 * unit(rng));
      const int n = 1 + static_cast<int>(4 * unit(rng));
      SurfaceTopology t(g, n);
      if (t.euler() >= 0) continue;
      return {t, 0.01 + 30.0 * unit(rng), -20.0 + 40.0 * unit(rng), -20.0 + 40.0 * unit(rng)};
    }
  }
};

}  // namespace

TEST(Topology, EulerCharacteristic) {
  EXPECT_EQ(SurfaceTopology(0, 1).euler(), 1);
  EXPECT_EQ(SurfaceTopology(0, 2).euler(), 0);
  EXPECT_EQ(SurfaceTopology(2, 3).euler(), -5);
  EXPECT_EQ(SurfaceTopology::from_euler(-3).euler(), -3);
  EXPECT_THROW(SurfaceTopology(0, 0), DomainError);
  EXPECT_THROW(SurfaceTopology(-1, 1), DomainError);
}

TEST(Beta, Examples) {
  EXPECT_NEAR(beta(SurfaceTopology::from_euler(-1), 2 * kPi), 1.0, 1e-15);
  EXPECT_EQ(beta(SurfaceTopology::from_euler(0), 3.0), 0.0);
  EXPECT_NEAR(beta(SurfaceTopology::from_euler(1), 2 * kPi), -1.0, 1e-15);
  EXPECT_THROW(beta(SurfaceTopology(0, 1), 0.0), DomainError);
}

TEST(ZeroVolume, Examples) {
  EXPECT_NEAR(zero_volume(SurfaceTopology(0, 1)), -2 * kPi, 1e-15);
  EXPECT_EQ(zero_volume(SurfaceTopology(0, 2)), 0.0);
  EXPECT_NEAR(zero_volume(SurfaceTopology(2, 3)), 10 * kPi, 1e-14);
}

TEST(ZeroVolume, NumericCylinder) {
  const auto f1 = zero_volume_cylinder_numeric(1.0);
  const auto f3 = zero_volume_cylinder_numeric(3.0);
  EXPECT_LE(std::abs(f1.V), 1e-8);
  EXPECT_LE(std::abs(f3.V), 1e-8);
  // Vol{x > eps} = 2 l sinh(log(2/eps)) = l (2/eps - eps/2): c0 = 2 l
  EXPECT_NEAR(f1.c0, 2.0, 1e-10);
  EXPECT_NEAR(f3.c0 / f1.c0, 3.0, 1e-10);
}

TEST(FunctionalEquation, Cases) {
  const LogZeta z_const = [](cplx) { return cplx(0.0); };
  const LogZeta z_lin = [](cplx l) { return 0.3 * l * l; };
  // chi = 0: only the zeta quotient
  const cplx lam(0.3, 0.2);
  EXPECT_NEAR(std::abs(functional_equation_rhs(lam, SurfaceTopology(0, 2), z_lin) -
                       (z_lin(1.0 - lam) - z_lin(lam))),
              0.0, 1e-15);
  // symmetry point
  EXPECT_NEAR(std::abs(functional_equation_rhs(0.5, SurfaceTopology(1, 3), z_lin)), 0.0, 1e-14);
  // disc with Z = 1: pure Gamma / Barnes factor, S(lambda) S(1 - lambda) = 1
  const cplx a = functional_equation_rhs(lam, SurfaceTopology(0, 1), z_const);
  const cplx b = functional_equation_rhs(1.0 - lam, SurfaceTopology(0, 1), z_const);
  EXPECT_NEAR(std::abs(a + b), 0.0, 1e-13);
  const double want = -((1.0 - 2.0 * 0.25) * std::log(2 * kPi) + std::lgamma(0.25) - std::lgamma(0.75) +
                        2.0 * (specfun::log_barnes_g(0.25).value.real() - specfun::log_barnes_g(0.75).value.real()));
  EXPECT_NEAR(functional_equation_rhs(0.25, SurfaceTopology(0, 1), z_const).real(), want, 1e-13);
}

TEST(Theorem2, ThreeCases) {
  EXPECT_EQ(theorem2_value(SurfaceTopology::from_euler(1), {}).value, 1.0);
  EXPECT_NEAR(theorem2_value(SurfaceTopology::from_euler(0), CylinderData{kPi * kPi}).value, kPi, 1e-15);
  EXPECT_EQ(theorem2_value(SurfaceTopology::from_euler(-1), LimitData{2.5}).value, -2.5);
  EXPECT_THROW(theorem2_value(SurfaceTopology::from_euler(-1), {}), UnsupportedContinuationError);
  EXPECT_THROW(theorem2_value(SurfaceTopology::from_euler(0), {}), DomainError);
}

TEST(Theorem2, CylinderMatchesAnnulusPipeline) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> dist(0.1, 20.0);
  for (int i = 0; i < 10; ++i) {
    const double ell = dist(rng);
    const double t2 = theorem2_value(SurfaceTopology(0, 2), CylinderData{ell}).value;
    const double ann = dn_explicit::annulus_det_prime(dn_explicit::AnnulusGeometry::from_alpha(2 * kPi * kPi / ell)).value;
    EXPECT_NEAR(t2, ann, 1e-12 * t2);
  }
}

TEST(ScatteringRoute, RescaledMatchesTheorem2) {
  for (double ell : {0.3, 1.0, 2.5, 6.0}) {
    const auto r = cylinder_scattering_route(ell);
    EXPECT_NEAR(*r.det_prime, 2.0 * ell * ell / kPi, 1e-10 * 2.0 * ell * ell / kPi);
    const double t2 = theorem2_value(SurfaceTopology(0, 2), CylinderData{ell}).value;
    EXPECT_NEAR(r.value, t2, 1e-10 * t2);
  }
}

TEST(Sarnak, Examples) {
  const double eta = 2.0 * oracle::kZetaPrimeMinusOne - 0.25 + 0.5 * std::log(2 * kPi);
  EXPECT_NEAR(sarnak_det(1.0, SurfaceTopology::from_euler(-1)), std::exp(2 * eta), 1e-13);
  EXPECT_EQ(sarnak_det(0.37, SurfaceTopology::from_euler(0)), 0.37);
  for (double z : {0.01, 0.7, 12.0}) {
    const auto t = SurfaceTopology(1, 2);
    EXPECT_NEAR(std::log(sarnak_det(z, t)), sarnak_log_det(std::log(z), t), 1e-13);
  }
  EXPECT_THROW(sarnak_det(-1.0, SurfaceTopology(1, 1)), DomainError);
}

TEST(Dirichlet, AtOneTwoPaths) {
  AdmissibleInputs gen(3);
  for (int i = 0; i < 1000; ++i) {
    const auto s = gen.next();
    const double full = dirichlet_log_det(1.0, s.log_z0, s.topo, s.ell);
    const double simple = dirichlet_log_det_at_one(s.log_z0, s.topo, s.ell);
    ASSERT_LE(std::abs(std::expm1(full - simple)), 1e-12) << i;
  }
  EXPECT_THROW(dirichlet_det(1.0, 0.0, SurfaceTopology(0, 2), 1.0), DomainError);
}

TEST(Dirichlet, ConstantsCD) {
  AdmissibleInputs gen(4);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen.next();
    for (double lam : {1.0, 1.7, 2.7, 5.0}) {
      const double a = dirichlet_log_det(lam, s.log_z0, s.topo, s.ell);
      const double b = dirichlet_log_det_cd(lam, s.log_z0, s.topo, s.ell);
      ASSERT_NEAR(a, b, 1e-12 * (1.0 + std::abs(a)));
    }
    const auto [C, D] = dirichlet_constants(s.topo, s.ell);
    const double chi = s.topo.euler();
    EXPECT_EQ(C, -chi);
    EXPECT_NEAR(D, chi * (0.5 * std::log(2 * kPi) - 2 * oracle::kZetaPrimeMinusOne + 0.25) + s.ell / 8.0,
                1e-12 * (1.0 + std::abs(D)));
  }
}

TEST(Dirichlet, HeatAsymptotics) {
  const SurfaceTopology t(1, 2);
  const double ell = 4.0;
  EXPECT_NEAR(dirichlet_log_det(40.0, 0.0, t, ell), heat_asymptotic_log_det(40.0, t, ell),
              1e-5 * std::abs(heat_asymptotic_log_det(40.0, t, ell)));
  // leading coefficient of lambda^2 log lambda from a fit over [30, 60]
  const int n = 16;
  Eigen::MatrixXd A(n, 4);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const double l = 30.0 + 2.0 * i;
    A(i, 0) = l * l * std::log(l);
    A(i, 1) = l * l;
    A(i, 2) = l;
    A(i, 3) = std::log(l);
    y(i) = dirichlet_log_det(l, 0.0, t, ell);
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  const double a1 = heat_coefficients(t, ell).a1;
  EXPECT_NEAR(c(0), -2.0 * a1, 0.01 * std::abs(2.0 * a1));
  const auto h = heat_coefficients(t, ell);
  EXPECT_EQ(h.a1, -0.5 * t.euler());
  EXPECT_NEAR(h.a2, -ell / (8.0 * std::sqrt(kPi)), 1e-16);
  EXPECT_NEAR(h.a3, t.euler() / 6.0, 1e-16);
}

TEST(Theorem4, ExampleAndSign) {
  const SurfaceTopology t = SurfaceTopology::from_euler(-2);
  const auto r = theorem4_pipeline(std::log(0.7), std::log(1.3), t, 5.0);
  EXPECT_NEAR(r.value, *r.alternate_value, 1e-12 * r.value);
  EXPECT_NEAR(r.value, -0.7 * std::exp(1.25) / (1.3 * 1.3 * 2 * kPi * -2.0), 1e-13);
  EXPECT_GT(r.value, 0.0);
  EXPECT_EQ(r.method, DetMethod::theorem4_pipeline);
  const auto small = theorem4_pipeline(std::log(0.7), std::log(1.3), SurfaceTopology::from_euler(-1), 1e-12);
  EXPECT_NEAR(small.value, 0.7 / (1.3 * 1.3 * 2 * kPi), 1e-12);
  EXPECT_THROW(theorem4_pipeline(0.0, 0.0, SurfaceTopology(0, 2), 1.0), DomainError);
}

TEST(Theorem4, TwoPathAgreementOnRandomInputs) {
  AdmissibleInputs gen(8);
  for (int i = 0; i < 1000; ++i) {
    const auto s = gen.next();
    const auto r = theorem4_pipeline(s.log_zp, s.log_z0, s.topo, s.ell);
    ASSERT_LE(std::abs(r.value - *r.alternate_value), 1e-12 * r.value) << i;
  }
}

TEST(LengthSpectrumRelation, ConsistencyAndSensitivity) {
  const SurfaceTopology t = SurfaceTopology::from_euler(-1);
  const double lzp = std::log(0.9), lz0 = std::log(1.1), ell = 2.0;
  const double rhs = length_spectrum_rhs(lzp, lz0, t, ell);
  // closed form for chi < 0 with the limit (2 pi)^{chi-1} [lambda^{chi-1} R] reproduces the doubling formula
  const double limit = std::pow(2 * kPi, t.euler() - 1) * rhs;
  const double via_t2 = theorem2_value(t, LimitData{limit}).value;
  const double via_t4 = theorem4_pipeline(lzp, lz0, t, ell).value;
  EXPECT_NEAR(via_t2, via_t4, 1e-13 * via_t4);
  EXPECT_EQ(length_spectrum_relation(rhs, lzp, lz0, t, ell), 0.0);
  EXPECT_NEAR(length_spectrum_relation(rhs + 3e-4, lzp, lz0, t, ell), 3e-4, 1e-13);
}
