#pragma once

// Fourier truncations of DN maps on the disc and the annulus, and the
// conformal family N_t = e^{-tW/2} N_0 e^{-tW/2}, W the truncated
// multiplication operator by omega_0.
//
// Basis: on a circle of radius R the arc-length orthonormal functions
//   1/sqrt(2 pi R), cos(n theta)/sqrt(pi R), sin(n theta)/sqrt(pi R),  n = 1..K,
// ordered (const, cos 1, sin 1, cos 2, sin 2, ...). The annulus stacks the
// outer circle (radius rho) over the inner one.
//
// For zero-mean omega_0 the trace of W vanishes, and
//   d/dt log pdet(N_t) = -tr(W (1 - P_t)) = tr(W P_t),
// P_t the projector on the kernel e^{tW/2} 1. This tends to
// d/dt log l_t, l_t = int e^{t omega_0} dl, as K grows.

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dnzeta/dn_explicit.hpp"
#include "dnzeta/errors.hpp"
#include "dnzeta/numeric.hpp"

namespace dnzeta::numeric_dn {

struct DiscGeometry {
  double radius = 1.0;
};
struct AnnulusGeometry {
  double rho = 2.0;
};
using Geometry = std::variant<DiscGeometry, AnnulusGeometry>;

/// omega(theta) = cos[0] + sum_n cos[n] cos(n theta) + sin[n-1] sin(n theta).
struct ConformalFactor {
  std::vector<double> cos;
  std::vector<double> sin;

  double mean() const { return cos.empty() ? 0.0 : cos[0]; }
  int degree() const {
    return static_cast<int>(std::max(cos.empty() ? 0 : cos.size() - 1, sin.size()));
  }
  double operator()(double theta) const {
    double v = mean();
    for (std::size_t n = 1; n < cos.size(); ++n) v += cos[n] * std::cos(static_cast<double>(n) * theta);
    for (std::size_t n = 1; n <= sin.size(); ++n) v += sin[n - 1] * std::sin(static_cast<double>(n) * theta);
    return v;
  }
};

struct TruncatedOperator {
  int K = 0;
  Eigen::MatrixXd matrix;
  Geometry geometry;
  /// Unit kernel vector.
  Eigen::VectorXd kernel;
};

namespace detail {

inline int block_size(int K) { return 2 * K + 1; }
inline int circles(const Geometry& g) { return std::holds_alternative<DiscGeometry>(g) ? 1 : 2; }

// Fourier coefficients of the constant 1 in the orthonormal basis.
inline Eigen::VectorXd constant_vector(const Geometry& g, int K) {
  const int m = block_size(K);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(circles(g) * m);
  if (const auto* d = std::get_if<DiscGeometry>(&g)) {
    v(0) = std::sqrt(2.0 * kPi * d->radius);
  } else {
    const auto& a = std::get<AnnulusGeometry>(g);
    v(0) = std::sqrt(2.0 * kPi * a.rho);
    v(m) = std::sqrt(2.0 * kPi);
  }
  return v;
}

// Sum of circle radii: l_t = radii * int e^{t omega} dtheta.
inline double radius_sum(const Geometry& g) {
  if (const auto* d = std::get_if<DiscGeometry>(&g)) return d->radius;
  return std::get<AnnulusGeometry>(g).rho + 1.0;
}

// psi_j(theta) on the unit circle, with (1/2pi) int psi_i psi_j = delta_ij.
inline double basis_function(int j, double theta) {
  if (j == 0) return 1.0;
  const int n = (j + 1) / 2;
  return std::sqrt(2.0) * ((j % 2 == 1) ? std::cos(n * theta) : std::sin(n * theta));
}

}  // namespace detail

inline TruncatedOperator build_dn_truncated(const Geometry& geom, int K) {
  if (K < 1) throw DomainError("build_dn_truncated: K must be >= 1");
  const int m = detail::block_size(K);
  TruncatedOperator op;
  op.K = K;
  op.geometry = geom;
  if (const auto* d = std::get_if<DiscGeometry>(&geom)) {
    if (!(d->radius > 0.0)) throw DomainError("build_dn_truncated: radius must be > 0");
    op.matrix = Eigen::MatrixXd::Zero(m, m);
    for (int j = 1; j < m; ++j) op.matrix(j, j) = static_cast<double>((j + 1) / 2) / d->radius;
  } else {
    const auto& a = std::get<AnnulusGeometry>(geom);
    const auto ag = dn_explicit::AnnulusGeometry::from_rho(a.rho);
    op.matrix = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (int j = 0; j < m; ++j) {
      const int n = (j + 1) / 2;
      const auto block = dn_explicit::symmetrized(ag, dn_explicit::annulus_block(ag, n));
      op.matrix(j, j) = block(0, 0);
      op.matrix(j, m + j) = block(0, 1);
      op.matrix(m + j, j) = block(1, 0);
      op.matrix(m + j, m + j) = block(1, 1);
    }
    op.matrix = 0.5 * (op.matrix + op.matrix.transpose());
  }
  op.kernel = detail::constant_vector(geom, K).normalized();
  return op;
}

/// Truncated multiplication by omega on one circle, exact trapezoid rule.
inline Eigen::MatrixXd multiplication_matrix(const ConformalFactor& omega, int K) {
  const int m = detail::block_size(K);
  const int nodes = 2 * (2 * K + omega.degree()) + 4;
  std::vector<double> w(static_cast<std::size_t>(nodes));
  std::vector<double> theta(static_cast<std::size_t>(nodes));
  for (int q = 0; q < nodes; ++q) {
    theta[static_cast<std::size_t>(q)] = 2.0 * kPi * q / nodes;
    w[static_cast<std::size_t>(q)] = omega(theta[static_cast<std::size_t>(q)]);
  }
  Eigen::MatrixXd basis(nodes, m);
  for (int q = 0; q < nodes; ++q) {
    for (int j = 0; j < m; ++j) basis(q, j) = detail::basis_function(j, theta[static_cast<std::size_t>(q)]);
  }
  Eigen::MatrixXd weighted = basis;
  for (int q = 0; q < nodes; ++q) weighted.row(q) *= w[static_cast<std::size_t>(q)] / nodes;
  Eigen::MatrixXd out = basis.transpose() * weighted;
  return 0.5 * (out + out.transpose());
}

/// W for the geometry: one block per boundary circle.
inline Eigen::MatrixXd multiplication_operator(const Geometry& geom, const ConformalFactor& omega, int K) {
  const Eigen::MatrixXd w = multiplication_matrix(omega, K);
  if (detail::circles(geom) == 1) return w;
  const auto m = w.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  out.topLeftCorner(m, m) = w;
  out.bottomRightCorner(m, m) = w;
  return out;
}

namespace detail {

inline Eigen::MatrixXd symmetric_exp(const Eigen::MatrixXd& a, double s) {
  if (s == 0.0) return Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const Eigen::VectorXd e = (s * es.eigenvalues().array()).exp().matrix();
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().transpose();
}

// Orthonormal-basis coefficients of e^{s omega} on the unit circle.
inline Eigen::VectorXd exp_coefficients(const ConformalFactor& omega, double s, int K) {
  const int m = block_size(K);
  const int nodes = 8 * (K + omega.degree()) + 64;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
  for (int q = 0; q < nodes; ++q) {
    const double th = 2.0 * kPi * q / nodes;
    const double f = std::exp(s * omega(th));
    for (int j = 0; j < m; ++j) c(j) += f * basis_function(j, th) / nodes;
  }
  return c;
}

}  // namespace detail

inline constexpr double kKernelAlignmentTol = 1e-8;

/// N_t = e^{-tW/2} N_0 e^{-tW/2}. Throws TruncationError when the kernel
/// e^{tW/2} 1 departs from the coefficients of e^{t omega/2} by more than 1e-8
/// (relative), i.e. K is too small for omega and t.
inline TruncatedOperator conformal_family(const TruncatedOperator& op, const ConformalFactor& omega, double t) {
  const Eigen::MatrixXd W = multiplication_operator(op.geometry, omega, op.K);
  const Eigen::MatrixXd E = detail::symmetric_exp(W, -0.5 * t);
  TruncatedOperator out = op;
  out.matrix = E * op.matrix * E;
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose());

  const Eigen::VectorXd x = detail::symmetric_exp(W, 0.5 * t) * detail::constant_vector(op.geometry, op.K);
  // expected: coefficients of e^{t omega / 2} on each circle, scaled like the constant
  const Eigen::VectorXd c = detail::exp_coefficients(omega, 0.5 * t, op.K);
  const Eigen::VectorXd v0 = detail::constant_vector(op.geometry, op.K);
  Eigen::VectorXd expected = Eigen::VectorXd::Zero(x.size());
  const auto m = c.size();
  for (int circle = 0; circle < detail::circles(op.geometry); ++circle) {
    expected.segment(circle * m, m) = v0(circle * m) * c;
  }
  const double mismatch = (x - expected).norm() / expected.norm();
  if (!(mismatch <= kKernelAlignmentTol)) {
    throw TruncationError("kernel_alignment", "K = " + std::to_string(op.K) +
                                                  " too small for omega at t = " + std::to_string(t) +
                                                  " (kernel mismatch " + std::to_string(mismatch) + ")");
  }
  out.kernel = x.normalized();
  return out;
}

struct PseudoDet {
  double log_value = 0.0;
  double kernel_eigenvalue = 0.0;
  /// |<kernel eigenvector, expected kernel>|
  double kernel_overlap = 0.0;
  /// Rounding estimate of log_value: eigensolver error eps |N| per eigenvalue
  /// plus the summation error.
  double rounding = 0.0;
};

inline constexpr double kKernelThreshold = 1e-9;

/// Product of the nonzero eigenvalues; exactly one eigenvalue, aligned with
/// op.kernel, is dropped.
inline PseudoDet pseudo_log_det(const TruncatedOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix);
  const auto& ev = es.eigenvalues();
  Eigen::Index k0 = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (std::abs(ev(i)) < std::abs(ev(k0))) k0 = i;
  }
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  PseudoDet pd;
  pd.kernel_eigenvalue = ev(k0);
  pd.kernel_overlap = std::abs(es.eigenvectors().col(k0).dot(op.kernel));
  if (std::abs(ev(k0)) > kKernelThreshold * scale) {
    throw ContractViolation("kernel_dimension", "no eigenvalue below the kernel threshold");
  }
  if (pd.kernel_overlap < 1.0 - 1e-6) {
    throw ContractViolation("kernel_tracking", "kernel eigenvector lost (overlap " +
                                                   std::to_string(pd.kernel_overlap) + ")");
  }
  numeric::CompensatedSum<double> sum;
  double inverse_sum = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (i == k0) continue;
    if (!(ev(i) > kKernelThreshold * scale)) {
      throw ContractViolation("kernel_dimension", "second small or negative eigenvalue");
    }
    sum += std::log(ev(i));
    inverse_sum += 1.0 / ev(i);
  }
  pd.log_value = sum.value();
  pd.rounding = kEps * (scale * inverse_sum + sum.magnitude());
  return pd;
}

/// l_t = (sum of radii) * int_0^{2pi} e^{t omega} dtheta, trapezoid rule.
inline double boundary_length_quadrature(const Geometry& geom, const ConformalFactor& omega, double t,
                                         int nodes = 512) {
  numeric::CompensatedSum<double> sum;
  for (int q = 0; q < nodes; ++q) sum += std::exp(t * omega(2.0 * kPi * q / nodes));
  return detail::radius_sum(geom) * 2.0 * kPi * sum.value() / nodes;
}

namespace detail {

// Complex Fourier coefficients c_{-d..d} of omega.
inline std::vector<cplx> complex_coefficients(const ConformalFactor& omega) {
  const int d = omega.degree();
  std::vector<cplx> c(static_cast<std::size_t>(2 * d + 1), 0.0);
  c[static_cast<std::size_t>(d)] = omega.mean();
  for (int n = 1; n <= d; ++n) {
    const double a = n < static_cast<int>(omega.cos.size()) ? omega.cos[static_cast<std::size_t>(n)] : 0.0;
    const double b = n <= static_cast<int>(omega.sin.size()) ? omega.sin[static_cast<std::size_t>(n - 1)] : 0.0;
    c[static_cast<std::size_t>(d + n)] = cplx(0.5 * a, -0.5 * b);
    c[static_cast<std::size_t>(d - n)] = cplx(0.5 * a, 0.5 * b);
  }
  return c;
}

inline std::vector<cplx> convolve(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  std::vector<cplx> out(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

}  // namespace detail

/// Same length from the power series of e^{t omega}; the means of omega^j are
/// the constant coefficients of exact trigonometric-polynomial powers.
inline double boundary_length_series(const Geometry& geom, const ConformalFactor& omega, double t) {
  const auto c = detail::complex_coefficients(omega);
  std::vector<cplx> power{1.0};
  numeric::CompensatedSum<double> sum;
  sum += 1.0;
  double coef = 1.0;
  for (int j = 1; j < 400; ++j) {
    power = detail::convolve(power, c);
    coef *= t / j;
    const double mean = power[(power.size() - 1) / 2].real();
    const double term = coef * mean;
    sum += term;
    double bound = 0.0;
    for (const auto& v : c) bound += std::abs(v);
    if (std::abs(coef) * std::pow(bound, j) < 1e-18 * std::abs(sum.value()) && j > 4) break;
  }
  return detail::radius_sum(geom) * 2.0 * kPi * sum.value();
}

struct DerivativeCheck {
  double max_residual = 0.0;
  /// Largest rounding level of the difference quotients; residuals below it are noise.
  double noise_floor = 0.0;
  std::vector<double> t;
  std::vector<double> residual;
};

/// max over t of |d/dt [log pdet(N_t) - log l_t]|, central differences with step h.
inline DerivativeCheck derivative_identity_check(const Geometry& geom, const ConformalFactor& omega,
                                                 const std::vector<double>& t_grid, int K, double h = 1e-3) {
  if (std::abs(omega.mean()) > 0.0) throw DomainError("derivative_identity_check: omega must have zero mean");
  const auto op = build_dn_truncated(geom, K);
  const auto f = [&](double t) {
    const auto pd = pseudo_log_det(conformal_family(op, omega, t));
    const double log_len = std::log(boundary_length_quadrature(geom, omega, t));
    return std::pair{pd.log_value - log_len, pd.rounding + kEps * std::abs(log_len)};
  };
  DerivativeCheck out;
  for (double t : t_grid) {
    const auto [fp, rp] = f(t + h);
    const auto [fm, rm] = f(t - h);
    const double d = (fp - fm) / (2.0 * h);
    out.noise_floor = std::max(out.noise_floor, (rp + rm) / (2.0 * h));
    out.t.push_back(t);
    out.residual.push_back(std::abs(d));
    out.max_residual = std::max(out.max_residual, std::abs(d));
  }
  return out;
}

struct ConvergenceRow {
  int K;
  double max_residual;
  double noise_floor;
};

/// Residuals nonincreasing in K, up to the rounding floor of each pair of rows.
inline bool monotone(const std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double slack = std::max(rows[i].noise_floor, rows[i - 1].noise_floor);
    if (rows[i].max_residual > rows[i - 1].max_residual + slack) return false;
  }
  return true;
}

inline std::vector<ConvergenceRow> k_convergence_table(const Geometry& geom, const ConformalFactor& omega,
                                                       const std::vector<double>& t_grid,
                                                       const std::vector<int>& Ks) {
  std::vector<ConvergenceRow> rows;
  for (int K : Ks) {
    const auto check = derivative_identity_check(geom, omega, t_grid, K);
    rows.push_back({K, check.max_residual, check.noise_floor});
  }
  return rows;
}

}  // namespace dnzeta::numeric_dn
