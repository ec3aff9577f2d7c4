#pragma once

// Ruelle and Selberg zeta functions as truncated Euler products over a length
// spectrum, in log space:
//
//   log R(lambda) = sum_c m_c log(1 - e^{-lambda l_c})
//   log Z(lambda) = sum_{k>=0} log R(lambda + k)
//   log Z_G0(lambda) = sum_{k>=0} [ sum_j 2 log(1 - e^{-(lambda+2k) l_j})
//        + sum_c m_c (log(1 - (-1)^{n_c} e^{-(lambda+2k) l_c}) + log(1 - e^{-(lambda+2k+1) l_c})) ]
//
// Only entries with l <= complete_up_to are used. Classes beyond it are
// bounded through N(l) <= A e^{delta l}, A = 2 max(N(L), 1) e^{-delta L}:
//
//   sum_{l > L} |log(1 - e^{-lambda l})| <= sigma A e^{(delta - sigma) L} / ((sigma - delta)(1 - e^{-sigma L}))
//
// with sigma = Re lambda. The counting constant comes from the spectrum itself,
// so the bound is heuristic.

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "dnzeta/errors.hpp"
#include "dnzeta/hyperbolic.hpp"
#include "dnzeta/numeric.hpp"

namespace dnzeta::zeta_dyn {

using hyperbolic::LengthSpectrum;

struct ZetaValue {
  cplx log_value;
  double tail_bound = 0.0;
  double convergence_abscissa_used = 0.0;
  /// Number of shifted Ruelle factors summed (Selberg products only).
  int k_terms = 0;
};

inline constexpr double kFactorCutoff = 1e-16;

/// e^z - 1 without cancellation.
inline cplx expm1(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

/// log(1 - sign e^{-w}), Re w > 0, sign = +-1.
inline cplx log_one_minus_exp(cplx w, double sign = 1.0) {
  const cplx e = std::exp(-w);
  if (sign > 0.0 && std::abs(w) < 0.5) return std::log(-expm1(-w));
  return numeric::log1p(-sign * e);
}

namespace detail {

inline void check_region(cplx lambda, double delta_hint) {
  if (!(lambda.real() > delta_hint)) {
    throw ConvergenceRegionError("Euler product needs Re lambda > " + std::to_string(delta_hint) +
                                 ", got " + std::to_string(lambda.real()));
  }
}

inline double counting_tail(const LengthSpectrum& spec, double sigma, double delta) {
  if (spec.exhaustive) return 0.0;
  const double L = spec.complete_up_to;
  const double count = static_cast<double>(std::max<long long>(spec.count_up_to(L), 1));
  const double a = 2.0 * count * std::exp(-delta * L);
  const double denom = (sigma - delta) * (-std::expm1(-sigma * L));
  return sigma * a * std::exp((delta - sigma) * L) / denom;
}

inline double total_multiplicity(const LengthSpectrum& spec) {
  double m = 0.0;
  for (const auto& e : spec.entries) {
    if (e.length <= spec.complete_up_to) m += e.multiplicity;
  }
  return m;
}

inline double min_length(const LengthSpectrum& spec) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : spec.entries) {
    if (e.length <= spec.complete_up_to) m = std::min(m, e.length);
  }
  return m;
}

// Sum over entries of m log(1 - e^{-lambda l}) without region checks.
inline cplx ruelle_sum(const LengthSpectrum& spec, cplx lambda) {
  numeric::CompensatedSum<cplx> sum;
  for (const auto& e : spec.entries) {
    if (e.length > spec.complete_up_to) continue;
    sum += static_cast<double>(e.multiplicity) * log_one_minus_exp(lambda * e.length);
  }
  return sum.value();
}

}  // namespace detail

/// log R(lambda) for Re lambda > delta_hint.
inline ZetaValue ruelle(const LengthSpectrum& spec, cplx lambda, double delta_hint) {
  detail::check_region(lambda, delta_hint);
  ZetaValue v;
  v.log_value = detail::ruelle_sum(spec, lambda);
  v.tail_bound = detail::counting_tail(spec, lambda.real(), delta_hint);
  v.convergence_abscissa_used = delta_hint;
  return v;
}

/// log Z(lambda) = sum_k log R(lambda + k). With k_terms absent the product
/// stops at the first K with m_total e^{-(Re lambda + K) l_min} < 1e-16.
inline ZetaValue selberg(const LengthSpectrum& spec, cplx lambda, double delta_hint,
                         std::optional<int> k_terms = std::nullopt) {
  detail::check_region(lambda, delta_hint);
  const double sigma = lambda.real();
  const double m_tot = detail::total_multiplicity(spec);
  const double l_min = detail::min_length(spec);
  int K = 0;
  if (k_terms) {
    if (*k_terms < 1) throw DomainError("selberg: k_terms must be positive");
    K = *k_terms;
  } else if (m_tot > 0.0) {
    while (m_tot * std::exp(-(sigma + K) * l_min) >= kFactorCutoff) ++K;
  }
  numeric::CompensatedSum<cplx> sum;
  double tail = 0.0;
  for (int k = 0; k < K; ++k) {
    const cplx lk = lambda + static_cast<double>(k);
    sum += detail::ruelle_sum(spec, lk);
    tail += detail::counting_tail(spec, lk.real(), delta_hint);
  }
  // factors k >= K: each listed class contributes at most 2 e^{-(sigma+k) l}
  if (m_tot > 0.0) {
    const double x = std::exp(-(sigma + K) * l_min);
    tail += 2.0 * m_tot * x / (-std::expm1(-l_min));
  }
  if (!spec.exhaustive) {
    const double L = spec.complete_up_to;
    tail += detail::counting_tail(spec, sigma + K, delta_hint) / (-std::expm1(-L));
  }
  ZetaValue v;
  v.log_value = sum.value();
  v.tail_bound = tail;
  v.convergence_abscissa_used = delta_hint;
  v.k_terms = K;
  return v;
}

struct RzCheck {
  double residual = 0.0;
  /// Sum of the tail bounds of the three evaluations plus 1e-13.
  double allowed = 0.0;
};

/// |log R(lambda) - (log Z(lambda) - log Z(lambda + 1))|.
inline RzCheck check_rz_identity(const LengthSpectrum& spec, cplx lambda, double delta_hint) {
  const auto r = ruelle(spec, lambda, delta_hint);
  const auto z0 = selberg(spec, lambda, delta_hint);
  const auto z1 = selberg(spec, lambda + 1.0, delta_hint);
  RzCheck c;
  c.residual = std::abs(r.log_value - (z0.log_value - z1.log_value));
  c.allowed = r.tail_bound + z0.tail_bound + z1.tail_bound + 1e-13;
  return c;
}

/// log Z_G0(lambda). Every entry must carry its reflection count n_c.
inline ZetaValue selberg_boundary(std::span<const double> boundary_lengths, const LengthSpectrum& spec,
                                  cplx lambda, double delta_hint) {
  detail::check_region(lambda, delta_hint);
  for (double l : boundary_lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("selberg_boundary: boundary lengths must be positive");
  }
  for (const auto& e : spec.entries) {
    if (!e.reflections) throw DomainError("selberg_boundary: spectrum entry without a reflections count");
    if (*e.reflections < 0) throw DomainError("selberg_boundary: negative reflections count");
  }
  const double sigma = lambda.real();
  double m_tot = 2.0 * static_cast<double>(boundary_lengths.size()) + 2.0 * detail::total_multiplicity(spec);
  double l_min = detail::min_length(spec);
  for (double l : boundary_lengths) l_min = std::min(l_min, l);

  int K = 0;
  if (m_tot > 0.0) {
    while (m_tot * std::exp(-(sigma + 2.0 * K) * l_min) >= kFactorCutoff) ++K;
  }
  numeric::CompensatedSum<cplx> sum;
  double tail = 0.0;
  for (int k = 0; k < K; ++k) {
    const cplx lk = lambda + 2.0 * static_cast<double>(k);
    for (double l : boundary_lengths) sum += 2.0 * log_one_minus_exp(lk * l);
    for (const auto& e : spec.entries) {
      if (e.length > spec.complete_up_to) continue;
      const double sign = (*e.reflections % 2 == 0) ? 1.0 : -1.0;
      const double m = static_cast<double>(e.multiplicity);
      sum += m * log_one_minus_exp(lk * e.length, sign);
      sum += m * log_one_minus_exp((lk + 1.0) * e.length);
    }
    tail += detail::counting_tail(spec, lk.real(), delta_hint) +
            detail::counting_tail(spec, lk.real() + 1.0, delta_hint);
  }
  if (m_tot > 0.0) {
    const double x = std::exp(-(sigma + 2.0 * K) * l_min);
    tail += 2.0 * m_tot * x / (-std::expm1(-2.0 * l_min));
  }
  if (!spec.exhaustive) {
    const double L = spec.complete_up_to;
    tail += 2.0 * detail::counting_tail(spec, sigma + 2.0 * K, delta_hint) / (-std::expm1(-2.0 * L));
  }
  ZetaValue v;
  v.log_value = sum.value();
  v.tail_bound = tail;
  v.convergence_abscissa_used = delta_hint;
  v.k_terms = K;
  return v;
}

/// Closed forms for the cyclic group of length ell.
inline cplx ruelle_cyclic(double ell, cplx lambda) { return 2.0 * log_one_minus_exp(lambda * ell); }

inline cplx selberg_cyclic(double ell, cplx lambda, int k_terms) {
  cplx sum = 0.0;
  for (int k = 0; k < k_terms; ++k) sum += 2.0 * log_one_minus_exp((lambda + static_cast<double>(k)) * ell);
  return sum;
}

inline bool is_cyclic(const LengthSpectrum& spec, double ell, double tol = 1e-12) {
  if (spec.entries.size() == 1) {
    return spec.entries[0].multiplicity == 2 && std::abs(spec.entries[0].length - ell) <= tol * ell;
  }
  if (spec.entries.size() != 2) return false;
  for (const auto& e : spec.entries) {
    if (e.multiplicity != 1 || std::abs(e.length - ell) > tol * ell) return false;
  }
  return true;
}

/// R(mu) / mu^2 at the nodes mu and its Neville tableau.
struct LimitTable {
  std::vector<double> mu;
  std::vector<std::vector<double>> tableau;
  double value() const { return tableau.back().front(); }
};

inline LimitTable ruelle_limit_table(const LengthSpectrum& spec, double ell, std::span<const double> mu) {
  if (!is_cyclic(spec, ell)) {
    throw DomainError("ruelle_limit_order: the limit at 0 is only available for cyclic spectra");
  }
  std::vector<double> f;
  for (double m : mu) {
    if (!(m > 0.0)) throw DomainError("ruelle_limit_order: nodes must be positive");
    const double log_r = detail::ruelle_sum(spec, cplx(m, 0.0)).real();
    f.push_back(std::exp(log_r - 2.0 * std::log(m)));
  }
  LimitTable t;
  t.mu.assign(mu.begin(), mu.end());
  t.tableau = numeric::neville_tableau(mu, f);
  return t;
}

/// lim_{mu -> 0} R(mu) / mu^2 for the cyclic spectrum; equals ell^2.
inline double ruelle_limit_order(const LengthSpectrum& spec, double ell) {
  static constexpr double kNodes[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
  return ruelle_limit_table(spec, ell, kNodes).value();
}

}  // namespace dnzeta::zeta_dyn
