#pragma once

// Determinant formulas for surfaces with boundary: the three cases of
// det'(N)/l(boundary), the functional equation of det S(lambda), the Dirichlet
// determinant of a surface with geodesic boundary, and the doubling formula
//
//   det'(N)/l = -Z'_G(1) e^{l/4} / (Z_G0(1)^2 2 pi chi).
//
// Values that need Selberg zeta functions at lambda = 1 are inputs.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <variant>
#include <vector>

#include "dnzeta/errors.hpp"
#include "dnzeta/hyperbolic.hpp"
#include "dnzeta/numeric.hpp"
#include "dnzeta/report.hpp"
#include "dnzeta/specfun.hpp"
#include "dnzeta/zeta_dyn.hpp"

namespace dnzeta::det_engine {

struct SurfaceTopology {
  int genus = 0;
  int boundary_components = 1;

  SurfaceTopology(int g, int n) : genus(g), boundary_components(n) {
    if (g < 0) throw DomainError("SurfaceTopology: genus must be >= 0");
    if (n < 1) throw DomainError("SurfaceTopology: need at least one boundary component");
  }
  /// Genus-0 surface with 2 - chi boundary circles.
  static SurfaceTopology from_euler(int chi) {
    if (chi > 1) throw DomainError("SurfaceTopology: chi <= 1 for surfaces with boundary");
    return SurfaceTopology(0, 2 - chi);
  }
  int euler() const noexcept { return 2 - 2 * genus - boundary_components; }
};

/// beta = -2 pi chi / l.
inline double beta(const SurfaceTopology& t, double boundary_length) {
  if (!(boundary_length > 0.0)) throw DomainError("beta: boundary length must be > 0");
  return -2.0 * kPi * t.euler() / boundary_length;
}

/// Renormalized volume -2 pi chi.
inline double zero_volume(const SurfaceTopology& t) { return -2.0 * kPi * t.euler(); }

struct ZeroVolumeFit {
  double V = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double max_fit_residual = 0.0;
};

/// Hyperbolic cylinder dr^2 + cosh^2 r dt^2, t in [0, l), with boundary
/// defining function x = 2 e^{-|r|}. Vol{x > eps} is integrated numerically and
/// fitted by c0/eps + V + c1 eps.
inline ZeroVolumeFit zero_volume_cylinder_numeric(double ell, std::vector<double> eps = {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125}) {
  if (!(ell > 0.0)) throw DomainError("zero_volume_cylinder_numeric: ell must be > 0");
  if (eps.size() < 3) throw DomainError("zero_volume_cylinder_numeric: need at least three cutoffs");
  const auto rule = numeric::gauss_legendre(20);
  Eigen::MatrixXd A(static_cast<Eigen::Index>(eps.size()), 3);
  Eigen::VectorXd y(static_cast<Eigen::Index>(eps.size()));
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double e = eps[i];
    if (!(e > 0.0 && e < 2.0)) throw DomainError("zero_volume_cylinder_numeric: cutoffs must lie in (0, 2)");
    const double r_max = std::log(2.0 / e);
    const std::size_t panels = 4 + static_cast<std::size_t>(std::ceil(r_max));
    const double half = numeric::integrate([](double r) { return std::cosh(r); }, 0.0, r_max, panels, rule);
    const auto row = static_cast<Eigen::Index>(i);
    A(row, 0) = 1.0 / e;
    A(row, 1) = 1.0;
    A(row, 2) = e;
    y(row) = 2.0 * ell * half;
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  ZeroVolumeFit fit;
  fit.c0 = c(0);
  fit.V = c(1);
  fit.c1 = c(2);
  fit.max_fit_residual = (A * c - y).cwiseAbs().maxCoeff();
  if (!std::isfinite(fit.V)) throw ContractViolation("zero_volume_fit", "least-squares fit failed");
  return fit;
}

using LogZeta = std::function<cplx(cplx)>;

/// log det S(lambda) = log Z(1-lambda) - log Z(lambda)
///   - chi [(1-2 lambda) ln 2pi + ln Gamma(lambda) + 2 ln G(lambda) - ln Gamma(1-lambda) - 2 ln G(1-lambda)].
inline cplx functional_equation_rhs(cplx lambda, const SurfaceTopology& t, const LogZeta& log_z) {
  const double chi = t.euler();
  cplx bracket = 0.0;
  if (chi != 0) {
    using specfun::log_barnes_g;
    using specfun::log_gamma;
    const cplx mu = 1.0 - lambda;
    bracket = (1.0 - 2.0 * lambda) * kLog2Pi + log_gamma(lambda).value + 2.0 * log_barnes_g(lambda).value -
              log_gamma(mu).value - 2.0 * log_barnes_g(mu).value;
  }
  return log_z(1.0 - lambda) - log_z(lambda) - chi * bracket;
}

struct CylinderData {
  double ell;
};
struct LimitData {
  /// lim_{lambda -> 0} (2 pi lambda)^{chi - 1} R(lambda)
  double value;
};
using Theorem2Input = std::variant<std::monostate, CylinderData, LimitData>;

/// det'(N)/l: 1 for chi = 1, l(gamma)/pi for chi = 0, limit/chi for chi < 0.
inline DetReport theorem2_value(const SurfaceTopology& t, const Theorem2Input& data) {
  DetReport r;
  r.method = DetMethod::closed_form;
  const int chi = t.euler();
  r.inputs = {{"chi", static_cast<double>(chi)}};
  if (chi == 1) {
    r.value = 1.0;
  } else if (chi == 0) {
    const auto* cyl = std::get_if<CylinderData>(&data);
    if (!cyl) throw DomainError("theorem2_value: chi = 0 needs the closed geodesic length");
    if (!(cyl->ell > 0.0)) throw DomainError("theorem2_value: ell must be > 0");
    r.value = cyl->ell / kPi;
    r.inputs.push_back({"ell", cyl->ell});
  } else {
    const auto* lim = std::get_if<LimitData>(&data);
    if (!lim) {
      throw UnsupportedContinuationError(
          "theorem2_value: chi < 0 needs lim (2 pi lambda)^{chi-1} R(lambda) at 0, which requires continuing "
          "R below its convergence abscissa; supply the limit");
    }
    r.value = lim->value / chi;
    r.inputs.push_back({"limit", lim->value});
  }
  r.error_estimate = 2.0 * kEps * std::abs(r.value);
  return r;
}

/// Cylinder through the scattering operator for the representative l^2 dt^2:
/// det' S(1) = (2/pi) lim R(mu)/mu^2 = 2 l^2/pi, boundary length 2l.
inline DetReport cylinder_scattering_route(double ell) {
  const auto spec = hyperbolic::cyclic_spectrum(ell);
  const double limit = zeta_dyn::ruelle_limit_order(spec, ell);
  DetReport r;
  r.method = DetMethod::functional_equation;
  r.det_prime = 2.0 / kPi * limit;
  r.boundary_length = 2.0 * ell;
  r.value = *r.det_prime / *r.boundary_length;
  r.inputs = {{"ell", ell}};
  r.error_estimate = 1e-13 * r.value;
  return r;
}

/// log det'(Delta_M) = log Z'_G(1) - 2 eta chi(X), M the double of X.
inline double sarnak_log_det(double log_zprime_g1, const SurfaceTopology& half) {
  return log_zprime_g1 - 2.0 * specfun::eta_constant() * half.euler();
}

inline double sarnak_det(double zprime_g1, const SurfaceTopology& half) {
  if (!(zprime_g1 > 0.0)) throw DomainError("sarnak_det: Z'_G(1) must be positive");
  return zprime_g1 * std::exp(-2.0 * specfun::eta_constant() * half.euler());
}

namespace detail {
inline void require_negative_chi(const SurfaceTopology& t, const char* who) {
  if (t.euler() >= 0) throw DomainError(std::string(who) + ": needs chi < 0");
}
}  // namespace detail

/// log det(Delta_X - lambda(1-lambda)) = log Z_G0(lambda)
///   - chi [eta - l (1 - 2 lambda)/(8 chi) + lambda(1-lambda) + (lambda-1) ln 2pi - 2 ln G(lambda) - ln Gamma(lambda)].
inline double dirichlet_log_det(double lambda, double log_z_g0, const SurfaceTopology& t, double boundary_length) {
  detail::require_negative_chi(t, "dirichlet_det");
  if (!(boundary_length > 0.0)) throw DomainError("dirichlet_det: boundary length must be > 0");
  const double chi = t.euler();
  const double bracket = specfun::eta_constant() - boundary_length * (1.0 - 2.0 * lambda) / (8.0 * chi) +
                         lambda * (1.0 - lambda) + (lambda - 1.0) * kLog2Pi -
                         2.0 * specfun::log_barnes_g(lambda).value.real() - specfun::log_gamma(lambda).value.real();
  return log_z_g0 - chi * bracket;
}

inline double dirichlet_det(double lambda, double log_z_g0, const SurfaceTopology& t, double boundary_length) {
  return std::exp(dirichlet_log_det(lambda, log_z_g0, t, boundary_length));
}

/// lambda = 1: log Z_G0(1) - chi eta - l/8.
inline double dirichlet_log_det_at_one(double log_z_g0, const SurfaceTopology& t, double boundary_length) {
  detail::require_negative_chi(t, "dirichlet_det");
  return log_z_g0 - t.euler() * specfun::eta_constant() - boundary_length / 8.0;
}

struct DirichletConstants {
  double C;
  double D;
};

/// C = -chi, D = chi (ln(2pi)/2 - 2 zeta'(-1) + 1/4) + l/8.
inline DirichletConstants dirichlet_constants(const SurfaceTopology& t, double boundary_length) {
  const double chi = t.euler();
  return {-chi, chi * (0.5 * kLog2Pi - 2.0 * specfun::zeta_prime_minus_one() + 0.25) + boundary_length / 8.0};
}

/// Same determinant written as
///   Z_G0 e^{-l lambda/4 + C lambda(1-lambda) + D} (G(lambda)^{-2} (2 pi)^lambda / Gamma(lambda))^{-chi}.
inline double dirichlet_log_det_cd(double lambda, double log_z_g0, const SurfaceTopology& t, double boundary_length) {
  detail::require_negative_chi(t, "dirichlet_det");
  const auto [C, D] = dirichlet_constants(t, boundary_length);
  const double chi = t.euler();
  const double gamma_part = -2.0 * specfun::log_barnes_g(lambda).value.real() + lambda * kLog2Pi -
                            specfun::log_gamma(lambda).value.real();
  return log_z_g0 - boundary_length * lambda / 4.0 + C * lambda * (1.0 - lambda) + D - chi * gamma_part;
}

struct HeatCoefficients {
  double a1;
  double a2;
  double a3;
};

/// Tr e^{-t Delta} ~ t^{-1}(a1 + a2 t^{1/2} + a3 t).
inline HeatCoefficients heat_coefficients(const SurfaceTopology& t, double boundary_length) {
  const double chi = t.euler();
  return {-0.5 * chi, -boundary_length / (8.0 * std::sqrt(kPi)), chi / 6.0};
}

/// Large-lambda expansion of log det(Delta - lambda(1-lambda)) from the heat
/// coefficients, x = lambda(lambda-1):
///   -a1 x log x + a1 x + 2 sqrt(pi) a2 (lambda - 1/2) + a3 log x.
inline double heat_asymptotic_log_det(double lambda, const SurfaceTopology& t, double boundary_length) {
  const auto h = heat_coefficients(t, boundary_length);
  const double x = lambda * (lambda - 1.0);
  return -h.a1 * x * std::log(x) + h.a1 * x + 2.0 * std::sqrt(kPi) * h.a2 * (lambda - 0.5) + h.a3 * std::log(x);
}

/// det'(N)/l for X with geodesic boundary, two ways:
///   value: -Z'_G(1) e^{l/4} / (Z_G0(1)^2 2 pi chi)
///   alternate_value: det'(Delta_M) / det(Delta_X)^2 * 2 / vol(M), vol(M) = -4 pi chi,
///     with det'(Delta_M) and det(Delta_X) from the formulas above.
inline DetReport theorem4_pipeline(double log_zprime_g1, double log_z_g0_1, const SurfaceTopology& t,
                                   double boundary_length) {
  detail::require_negative_chi(t, "theorem4_pipeline");
  if (!(boundary_length > 0.0)) throw DomainError("theorem4_pipeline: boundary length must be > 0");
  if (!std::isfinite(log_zprime_g1) || !std::isfinite(log_z_g0_1)) {
    throw DomainError("theorem4_pipeline: zeta inputs must be positive and finite");
  }
  const double chi = t.euler();
  const double vol = -4.0 * kPi * chi;

  const double log_det_m = sarnak_log_det(log_zprime_g1, t);
  const double log_det_x = dirichlet_log_det_at_one(log_z_g0_1, t, boundary_length);
  const double log_composed = log_det_m - 2.0 * log_det_x + std::log(2.0 / vol);

  const double log_closed =
      log_zprime_g1 + boundary_length / 4.0 - 2.0 * log_z_g0_1 - std::log(2.0 * kPi * (-chi));

  DetReport r;
  r.method = DetMethod::theorem4_pipeline;
  r.value = std::exp(log_closed);
  r.alternate_value = std::exp(log_composed);
  r.boundary_length = boundary_length;
  r.det_prime = r.value * boundary_length;
  r.inputs = {{"log_zprime_g1", log_zprime_g1},
              {"log_z_g0_1", log_z_g0_1},
              {"chi", chi},
              {"boundary_length", boundary_length}};
  const double scale = std::abs(log_zprime_g1) + boundary_length + 2.0 * std::abs(log_z_g0_1) + 8.0;
  r.error_estimate = r.value * 8.0 * kEps * scale;
  return r;
}

/// -(Z'_G(1) / Z_G0(1)^2) e^{l/4} (2 pi)^{-chi}.
inline double length_spectrum_rhs(double log_zprime_g1, double log_z_g0_1, const SurfaceTopology& t,
                                  double boundary_length) {
  return -std::exp(log_zprime_g1 - 2.0 * log_z_g0_1 + boundary_length / 4.0 - t.euler() * kLog2Pi);
}

/// |supplied [lambda^{chi-1} R(lambda)]_{lambda=0} - rhs|.
inline double length_spectrum_relation(double supplied_limit, double log_zprime_g1, double log_z_g0_1,
                                       const SurfaceTopology& t, double boundary_length) {
  return std::abs(supplied_limit - length_spectrum_rhs(log_zprime_g1, log_z_g0_1, t, boundary_length));
}

}  // namespace dnzeta::det_engine
