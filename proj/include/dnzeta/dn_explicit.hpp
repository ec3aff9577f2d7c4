#pragma once

// DN maps of the flat disc, the flat annulus A_rho = {1 < |z| < rho} and the
// hyperbolic cylinder with closed geodesic of length l.
//
// Annulus, Fourier mode n, data (f_outer, f_inner), interior normal -d/dr on
// |z| = rho and +d/dr on |z| = 1:
//
//   N_n = (n / sinh(n a)) [[e^{-a} cosh(n a), -e^{-a}], [-1, cosh(n a)]],  a = ln rho
//   N_0 = (1 / ln rho) [[1/rho, -1/rho], [-1, 1]]
//
// N_n is self-adjoint for the arc-length weights diag(rho, 1); `symmetrized`
// returns W^{1/2} N W^{-1/2}. Both have the same eigenvalues.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "dnzeta/errors.hpp"
#include "dnzeta/numeric.hpp"
#include "dnzeta/report.hpp"
#include "dnzeta/specfun.hpp"
#include "dnzeta/zeta_reg.hpp"

namespace dnzeta::dn_explicit {

/// Everything is derived from alpha = ln rho so rho = e^{2 pi^2 / l} for small l
/// never has to be formed.
struct AnnulusGeometry {
  double alpha = 0.0;

  static AnnulusGeometry from_rho(double rho) {
    if (!(rho > 1.0) || !std::isfinite(rho)) throw DomainError("annulus: rho must be > 1");
    return from_alpha(std::log(rho));
  }
  static AnnulusGeometry from_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("annulus: alpha = ln rho must be > 0");
    return AnnulusGeometry{alpha};
  }

  double rho() const { return std::exp(alpha); }
  /// ln l(boundary) = ln 2pi + ln(1 + rho).
  double log_boundary_length() const { return std::log(2.0 * kPi) + alpha + std::log1p(std::exp(-alpha)); }
  double boundary_length() const { return 2.0 * kPi * (1.0 + rho()); }
};

enum class GeometryTag { disc, annulus };

struct DnBlock {
  int mode = 0;
  Eigen::MatrixXd entries;
  GeometryTag geometry = GeometryTag::annulus;
};

/// Mode-n block in the (outer, inner) trace basis.
inline DnBlock annulus_block(const AnnulusGeometry& geom, int n) {
  const double a = geom.alpha;
  Eigen::MatrixXd m(2, 2);
  if (n == 0) {
    const double e = std::exp(-a);
    m << e / a, -e / a, -1.0 / a, 1.0 / a;
  } else {
    const double k = std::abs(static_cast<double>(n));
    const double x = k * a;
    const double coth = 1.0 + 2.0 / std::expm1(2.0 * x);
    const double csch = 2.0 * std::exp(-x) / (-std::expm1(-2.0 * x));
    const double e = std::exp(-a);
    m << k * e * coth, -k * e * csch, -k * csch, k * coth;
  }
  return DnBlock{n, std::move(m), GeometryTag::annulus};
}

/// W^{1/2} N W^{-1/2} with W = diag(rho, 1); symmetric.
inline Eigen::MatrixXd symmetrized(const AnnulusGeometry& geom, const DnBlock& block) {
  const double s = std::exp(0.5 * geom.alpha);
  Eigen::MatrixXd m = block.entries;
  m(0, 1) *= s;
  m(1, 0) /= s;
  return m;
}

namespace detail {

struct AnnulusMode {
  double eps_plus;  // lambda_+ = |n| (1 + eps_plus)
  double eps_minus;  // lambda_- = |n| e^{-a} (1 + eps_minus)
};

// With d = coth(|n| a) - 1, the eigenvalues of N_n / |n| solve
//   x^2 - (1 + d)(1 + e^{-a}) x + e^{-a} = 0,
// written around x = 1 so that eps_+ = x_+ - 1 keeps full relative accuracy.
inline AnnulusMode annulus_mode(double alpha, int n) {
  const double x = std::abs(static_cast<double>(n)) * alpha;
  const double d = 2.0 / std::expm1(2.0 * x);
  // e^{-a/2} cosh(a/2), coth(a/2) and 1/sinh(a/2), finite for any a > 0
  const double ech = 0.5 * (1.0 + std::exp(-alpha));
  const double coth = 1.0 / std::tanh(0.5 * alpha);
  const double ish = 2.0 * std::exp(-0.5 * alpha) / (-std::expm1(-alpha));
  const double t = 1.0 + d;
  const double q = d * (2.0 + d);
  const double root_over_sh = std::sqrt(t * t + q * ish * ish);
  const double eps_plus = d * ech * (1.0 + (2.0 + d) * coth / (root_over_sh + 1.0));
  return {eps_plus, -eps_plus / (1.0 + eps_plus)};
}

// |eps_{n,+-}| <= C e^{-2 a n}.
inline zeta_reg::DecayBound annulus_decay(double alpha) {
  const double ech = 0.5 * (1.0 + std::exp(-alpha));
  const double coth = 1.0 / std::tanh(0.5 * alpha);
  const double d1 = 2.0 / std::expm1(2.0 * alpha);
  const double c = 2.0 / (-std::expm1(-2.0 * alpha)) * ech * (1.0 + 0.5 * (2.0 + d1) * coth);
  return {c, 2.0 * alpha};
}

}  // namespace detail

/// (lambda_+, lambda_-) of mode n != 0; lambda_+ lambda_- = n^2 e^{-a}.
inline std::pair<double, double> annulus_eigenvalues(const AnnulusGeometry& geom, int n) {
  if (n == 0) throw DomainError("annulus_eigenvalues: n = 0 has a kernel; use annulus_block");
  const auto mode = detail::annulus_mode(geom.alpha, n);
  const double k = std::abs(static_cast<double>(n));
  return {k * (1.0 + mode.eps_plus), k * std::exp(-geom.alpha) / (1.0 + mode.eps_plus)};
}

/// Nonzero eigenvalue of N_0: (1 + rho) / (rho ln rho).
inline double annulus_mode0_eigenvalue(const AnnulusGeometry& geom) {
  return (1.0 + std::exp(-geom.alpha)) / geom.alpha;
}

/// The two eigenvalue families of the annulus (modes n and -n give the same
/// pair, hence multiplicity 2) and the head eigenvalue of mode 0.
struct AnnulusSequences {
  zeta_reg::EigenSequence plus;
  zeta_reg::EigenSequence minus;
};

inline AnnulusSequences annulus_sequences(const AnnulusGeometry& geom) {
  const auto bound = detail::annulus_decay(geom.alpha);
  const double a = geom.alpha;
  const auto eps_plus = [a](int n) { return detail::annulus_mode(a, n).eps_plus; };
  const auto eps_minus = [a](int n) { return detail::annulus_mode(a, n).eps_minus; };
  return {zeta_reg::EigenSequence::from_corrections(
              1.0, 1.0, eps_plus, bound, {{annulus_mode0_eigenvalue(geom), 1}}, 2),
          zeta_reg::EigenSequence::from_corrections_log(1.0, -a, eps_minus, bound, {}, 2)};
}

/// det'(N) of A_rho through the regularized zeta function. value = det'/l.
inline DetReport annulus_det_prime(const AnnulusGeometry& geom) {
  const auto seqs = annulus_sequences(geom);
  const auto full = zeta_reg::combine(seqs.plus, seqs.minus);
  const auto det = zeta_reg::log_det(full);
  const double log_len = geom.log_boundary_length();
  const double log_ratio = det.log_value - log_len;

  DetReport r;
  r.method = DetMethod::zeta_pipeline;
  r.value = std::exp(log_ratio);
  r.log_det_prime = det.log_value;
  if (geom.alpha < 700.0) {
    r.det_prime = std::exp(det.log_value);
    r.boundary_length = geom.boundary_length();
  }
  r.inputs = {{"rho", geom.rho()}, {"alpha", geom.alpha}};
  const double rounding = 8.0 * kEps * (std::abs(det.log_value) + std::abs(log_len) + geom.alpha);
  r.error_estimate = r.value * (det.truncation_error + rounding);
  return r;
}

/// 2 pi / ln rho.
inline double annulus_ratio_closed_form(const AnnulusGeometry& geom) { return 2.0 * kPi / geom.alpha; }

/// Unit-free disc of radius R: spectrum {n/R, twice each} plus the kernel.
inline DetReport disc_det_prime(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("disc: radius must be > 0");
  const auto seq = zeta_reg::EigenSequence::pure(1.0, 1.0 / radius, 2);
  const auto det = zeta_reg::log_det(seq);
  const double len = 2.0 * kPi * radius;
  DetReport r;
  r.method = DetMethod::zeta_pipeline;
  r.log_det_prime = det.log_value;
  r.det_prime = std::exp(det.log_value);
  r.boundary_length = len;
  r.value = std::exp(det.log_value - std::log(len));
  r.inputs = {{"radius", radius}};
  r.error_estimate = r.value * 8.0 * kEps * (std::abs(det.log_value) + std::abs(std::log(len)));
  return r;
}

struct CylinderGeometry {
  double ell = 0.0;

  explicit CylinderGeometry(double l) : ell(l) {
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("cylinder: ell must be > 0");
  }
  /// ln of the conformally equivalent annulus radius, 2 pi^2 / l.
  double bridge_alpha() const { return 2.0 * kPi * kPi / ell; }
  double bridge_rho() const { return std::exp(bridge_alpha()); }
};

/// det'(N)/l for the hyperbolic cylinder, l(gamma)/pi, evaluated on the
/// conformally equivalent annulus.
inline DetReport cylinder_det_prime(const CylinderGeometry& geom) {
  DetReport r = annulus_det_prime(AnnulusGeometry::from_alpha(geom.bridge_alpha()));
  r.det_prime.reset();
  r.log_det_prime.reset();
  r.boundary_length.reset();
  r.alternate_value = geom.ell / kPi;
  r.inputs = {{"ell", geom.ell}, {"bridge_alpha", geom.bridge_alpha()}};
  return r;
}

/// U(z) = exp(2 i pi log z / l + 2 pi^2 / l), the upper half-plane modulo
/// z -> e^l z onto the annulus 1 < |w| < e^{2 pi^2 / l}.
inline cplx uniformizing_map(cplx z, double ell) {
  if (!(ell > 0.0)) throw DomainError("uniformizing_map: ell must be > 0");
  if (!(z.imag() > 0.0)) throw DomainError("uniformizing_map: z must lie in the upper half-plane");
  const cplx i(0.0, 1.0);
  return std::exp(2.0 * i * kPi * std::log(z) / ell + 2.0 * kPi * kPi / ell);
}

/// S(lambda) on constants for the hyperbolic cylinder:
/// 2^{2 lambda - 1} (Gamma(lambda/2) / Gamma((1 - lambda)/2))^2.
inline cplx cylinder_scattering_mode0(cplx lambda) {
  const cplx ratio = specfun::gamma(0.5 * lambda) * specfun::rgamma(0.5 * (1.0 - lambda));
  return std::pow(cplx(2.0, 0.0), 2.0 * lambda - 1.0) * ratio * ratio;
}

/// Radial part of the generalized eigenfunction of the cylinder at real lambda:
///   u = s^{lambda-1} F((1-lambda)/2, 1-lambda/2; 3/2-lambda; -1/s^2)
///     + K s^{-lambda} F(lambda/2, (lambda+1)/2; lambda+1/2; -1/s^2),  s = |sinh r|,
/// K = (Gamma(lambda/2)/Gamma((1-lambda)/2))^2 Gamma(1/2-lambda)/Gamma(lambda-1/2).
inline double cylinder_mode0_solution(double lambda, double r) {
  const double s = std::abs(std::sinh(r));
  const double z = -1.0 / (s * s);
  const cplx g = specfun::gamma(0.5 * lambda) * specfun::rgamma(0.5 * (1.0 - lambda));
  const cplx k = g * g * specfun::gamma(0.5 - lambda) * specfun::rgamma(lambda - 0.5);
  const cplx f1 = specfun::hyp2f1(0.5 * (1.0 - lambda), 1.0 - 0.5 * lambda, 1.5 - lambda, z).value;
  const cplx f2 = specfun::hyp2f1(0.5 * lambda, 0.5 * (lambda + 1.0), lambda + 0.5, z).value;
  return (std::pow(s, lambda - 1.0) * f1 + k * std::pow(s, -lambda) * f2).real();
}

/// max over the grid of |-u'' - tanh(r) u' - lambda(1-lambda) u|, five-point
/// differences with step h.
inline double cylinder_poisson_check(double lambda, const std::vector<double>& r_grid, double h = 1e-3) {
  if (!(lambda > 0.5 && lambda < 1.5)) throw DomainError("cylinder_poisson_check: lambda must lie in (0.5, 1.5)");
  double worst = 0.0;
  for (double r : r_grid) {
    if (std::abs(r) <= 2.0 * h + 1e-2) throw DomainError("cylinder_poisson_check: grid too close to r = 0");
    const auto u = [lambda](double x) { return cylinder_mode0_solution(lambda, x); };
    const double um2 = u(r - 2.0 * h);
    const double um1 = u(r - h);
    const double u0 = u(r);
    const double up1 = u(r + h);
    const double up2 = u(r + 2.0 * h);
    const double d1 = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h);
    const double d2 = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h);
    const double res = -d2 - std::tanh(r) * d1 - lambda * (1.0 - lambda) * u0;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace dnzeta::dn_explicit
