#pragma once

// Special-function kernel: log-Gamma, Barnes G, Riemann zeta (and its
// s-derivative), Gauss 2F1 and the constant
//   eta = 2 zeta'(-1) - 1/4 + (1/2) log(2 pi).
//
// Results are double precision. Asymptotic series, recurrence shifts and the
// Euler-Maclaurin sums run in long double, other sums are compensated.
// Logarithms are on the principal branch: log_gamma and log_barnes_g are the
// analytic continuations that are real on the positive axis (sum of principal
// logs under the recurrence), so on the negative real axis they return the
// limit from the upper half-plane.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "dnzeta/errors.hpp"
#include "dnzeta/numeric.hpp"

namespace dnzeta::specfun {

struct EvalResult {
  cplx value;
  double abs_error_estimate = 0.0;
};

namespace detail {

inline constexpr double kPoleTol = 1e-12;
inline constexpr double kStirlingThreshold = 15.0;
inline constexpr double kBarnesThreshold = 12.0;

using ld = long double;
using lcplx = std::complex<long double>;
inline constexpr ld kLog2PiL = 1.837877066409345483560659472811235279722794947275566825634L;
inline constexpr double kLdEps = static_cast<double>(std::numeric_limits<ld>::epsilon());

inline lcplx widen(cplx z) { return {z.real(), z.imag()}; }
inline cplx narrow(lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// Stirling series for log Gamma(z), Re z >= 15, in long double.
inline lcplx stirling_log_gamma(lcplx z, double& err) {
  const lcplx inv = ld(1) / z;
  const lcplx inv2 = inv * inv;
  lcplx series = 0;
  lcplx power = inv;
  double last = 0.0;
  for (std::size_t k = 1; k < numeric::kBernoulliEven.size(); ++k) {
    const ld coef = static_cast<ld>(numeric::bernoulli_even(k)) / (ld(2 * k) * ld(2 * k - 1));
    const lcplx term = coef * power;
    series += term;
    last = static_cast<double>(std::abs(term));
    if (last < 1e-21 * static_cast<double>(std::abs(series))) break;
    power *= inv2;
  }
  const lcplx lz = std::log(z);
  err = last + 4.0 * kLdEps * static_cast<double>(std::abs(z * lz) + std::abs(z));
  return (z - ld(0.5)) * lz - z + ld(0.5) * kLog2PiL + series;
}

// log Gamma(z) in long double; shifts up to Re z >= 15.
inline lcplx log_gamma_ld(lcplx z, double& err) {
  if (z.real() >= kStirlingThreshold) return stirling_log_gamma(z, err);
  const int shift = static_cast<int>(std::ceil(kStirlingThreshold - static_cast<double>(z.real())));
  lcplx logs = 0;
  ld mag = 0;
  for (int k = 0; k < shift; ++k) {
    const lcplx t = std::log(z + static_cast<ld>(k));
    logs += t;
    mag += std::abs(t);
  }
  const lcplx far = stirling_log_gamma(z + static_cast<ld>(shift), err);
  err += 4.0 * kLdEps * static_cast<double>(std::abs(far) + mag);
  return far - logs;
}

inline void check_gamma_pole(cplx z, const char* who) {
  if (numeric::is_nonpositive_integer(z, kPoleTol)) {
    throw PoleError(std::string(who) + ": pole at nonpositive integer " + std::to_string(z.real()));
  }
}

}  // namespace detail

/// Principal-branch log Gamma(z).
inline EvalResult log_gamma(cplx z) {
  detail::check_gamma_pole(z, "log_gamma");
  double err = 0.0;
  const cplx value = detail::narrow(detail::log_gamma_ld(detail::widen(z), err));
  return {value, err + kEps * std::abs(value)};
}

inline EvalResult log_gamma(double x) { return log_gamma(cplx(x, 0.0)); }

/// Gamma(z).
inline cplx gamma(cplx z) { return std::exp(log_gamma(z).value); }

/// 1/Gamma(z); entire, exactly zero at z = 0, -1, -2, ...
inline cplx rgamma(cplx z) {
  if (z.real() >= 0.5) return std::exp(-log_gamma(z).value);
  // 1/Gamma(z) = z (z+1) ... (z+n-1) / Gamma(z+n); the product carries the zeros.
  const int shift = static_cast<int>(std::ceil(0.5 - z.real()));
  cplx product = 1.0;
  for (int k = 0; k < shift; ++k) {
    const cplx factor = z + static_cast<double>(k);
    if (std::abs(factor) <= detail::kPoleTol) return 0.0;
    product *= factor;
  }
  return product * std::exp(-log_gamma(z + static_cast<double>(shift)).value);
}

/// Parameters of the Euler-Maclaurin evaluation of zeta. Exposed so tests can
/// compare two internal precisions.
struct ZetaParams {
  int head_terms = 20;  // N: explicit terms n < N (grown with |s|)
  int corrections = 14;  // m: Bernoulli corrections
};

namespace detail {

struct ZetaPair {
  cplx value;
  cplx derivative;
  double value_err;
  double derivative_err;
  lcplx derivative_ld;
};

// Euler-Maclaurin for zeta(s) and zeta'(s), differentiated term by term:
//   zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//             + sum_j B_{2j}/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1} + R
// The terms are formed in long double: at s = -1 they reach N^2 log N while
// the result is O(0.1).
inline ZetaPair zeta_em(cplx s_in, ZetaParams params) {
  using ld = long double;
  using lcplx = std::complex<ld>;
  if (std::abs(s_in - 1.0) < detail::kPoleTol) throw PoleError("riemann_zeta: pole at s = 1");
  const lcplx s(s_in.real(), s_in.imag());
  const int n_head = params.head_terms + static_cast<int>(std::ceil(std::abs(s_in)));
  const ld big_n = static_cast<ld>(n_head);
  const ld log_n = std::log(big_n);

  numeric::CompensatedSum<lcplx> val;
  numeric::CompensatedSum<lcplx> der;
  for (int n = 1; n < n_head; ++n) {
    const ld ln = std::log(static_cast<ld>(n));
    const lcplx p = std::exp(-s * ln);
    val += p;
    der += -ln * p;
  }
  const lcplx n_pow = std::exp(-s * log_n);  // N^{-s}
  const lcplx sm1 = s - ld(1);
  val += big_n * n_pow / sm1;
  der += big_n * n_pow * (-log_n / sm1 - ld(1) / (sm1 * sm1));
  val += ld(0.5) * n_pow;
  der += ld(-0.5) * log_n * n_pow;

  // P_j(s) = s (s+1) ... (s+2j-2), carried with its derivative.
  lcplx poly = s;
  lcplx dpoly = 1;
  ld factorial = 2;  // (2j)!
  ld n_inv = ld(1) / big_n;  // N^{-2j+1}
  double last_val = 0.0;
  double last_der = 0.0;
  const int corrections =
      std::min<int>(params.corrections, static_cast<int>(numeric::kBernoulliEven.size()) - 1);
  for (int j = 1; j <= corrections; ++j) {
    const ld coef = static_cast<ld>(numeric::bernoulli_even(static_cast<std::size_t>(j))) / factorial;
    const lcplx base = coef * n_pow * n_inv;
    const lcplx tv = base * poly;
    const lcplx td = base * (dpoly - log_n * poly);
    val += tv;
    der += td;
    last_val = static_cast<double>(std::abs(tv));
    last_der = static_cast<double>(std::abs(td));
    const lcplx f1 = s + static_cast<ld>(2 * j - 1);
    const lcplx f2 = s + static_cast<ld>(2 * j);
    dpoly = dpoly * f1 * f2 + poly * (f1 + f2);
    poly = poly * f1 * f2;
    factorial *= (ld(2) * j + 1) * (ld(2) * j + 2);
    n_inv /= big_n * big_n;
  }
  const lcplx v = val.value();
  const lcplx d = der.value();
  // Bernoulli constants are double-rounded: relative 1e-16 on each correction.
  return {cplx(static_cast<double>(v.real()), static_cast<double>(v.imag())),
          cplx(static_cast<double>(d.real()), static_cast<double>(d.imag())),
          last_val + 8.0 * kLdEps * val.magnitude() + kEps * std::abs(cplx(v.real(), v.imag())),
          last_der + 8.0 * kLdEps * der.magnitude() + kEps * std::abs(cplx(d.real(), d.imag())),
          d};
}

}  // namespace detail

/// Riemann zeta(s) by analytic continuation; documented for |s| <= 60.
inline EvalResult riemann_zeta(cplx s, ZetaParams params = {}) {
  const auto r = detail::zeta_em(s, params);
  return {r.value, r.value_err};
}

/// d/ds zeta(s).
inline EvalResult zeta_derivative(cplx s, ZetaParams params = {}) {
  const auto r = detail::zeta_em(s, params);
  return {r.derivative, r.derivative_err};
}

namespace detail {
inline ld zeta_prime_minus_one_ld() {
  static const ld value = zeta_em(cplx(-1.0, 0.0), ZetaParams{}).derivative_ld.real();
  return value;
}
}  // namespace detail

/// zeta'(-1), computed once.
inline double zeta_prime_minus_one() { return static_cast<double>(detail::zeta_prime_minus_one_ld()); }

/// eta = 2 zeta'(-1) - 1/4 + (1/2) log(2 pi).
inline double eta_constant(ZetaParams params = {}) {
  const double zp = zeta_derivative(cplx(-1.0, 0.0), params).value.real();
  return 2.0 * zp - 0.25 + 0.5 * kLog2Pi;
}

namespace detail {

// log G(w+1) for Re w >= 12, long double:
//   w^2/2 log w - 3w^2/4 + (w/2) log 2pi - (1/12) log w + zeta'(-1)
//   + sum_k B_{2k+2} / (4k(k+1) w^{2k})
inline lcplx barnes_asymptotic(lcplx w, double& err) {
  const lcplx lw = std::log(w);
  const lcplx w2 = w * w;
  const lcplx inv2 = ld(1) / w2;
  lcplx series = 0;
  lcplx power = inv2;
  double last = 0.0;
  for (std::size_t k = 1; k + 1 < numeric::kBernoulliEven.size(); ++k) {
    const ld coef = static_cast<ld>(numeric::bernoulli_even(k + 1)) / (ld(4) * ld(k) * ld(k + 1));
    const lcplx term = coef * power;
    series += term;
    last = static_cast<double>(std::abs(term));
    if (last < 1e-21) break;
    power *= inv2;
  }
  err = last + 4.0 * kLdEps * static_cast<double>(std::abs(w2 * lw));
  return ld(0.5) * w2 * lw - ld(0.75) * w2 + ld(0.5) * w * kLog2PiL - lw / ld(12) + zeta_prime_minus_one_ld() +
         series;
}

}  // namespace detail

/// Principal-branch log G(z), G the Barnes double gamma, G(z+1) = Gamma(z) G(z),
/// G(1) = 1. Throws BarnesZeroError at z = 0, -1, -2, ... where G vanishes.
inline EvalResult log_barnes_g(cplx z_in) {
  if (numeric::is_nonpositive_integer(z_in, detail::kPoleTol)) {
    throw BarnesZeroError("log_barnes_g: G has a zero at " + std::to_string(z_in.real()));
  }
  using detail::ld;
  const detail::lcplx z = detail::widen(z_in);
  const int shift = std::max(0, static_cast<int>(std::ceil(detail::kBarnesThreshold + 1.0 - z_in.real())));
  // log G(z) = log G(z + shift) - sum_{j<shift} log Gamma(z + j)
  //          = log G(z + shift) - shift log Gamma(z) - sum_{i<shift} (shift-1-i) log(z + i)
  double err = 0.0;
  detail::lcplx value = detail::barnes_asymptotic(z + static_cast<ld>(shift) - ld(1), err);
  if (shift > 0) {
    double lg_err = 0.0;
    const detail::lcplx lg = detail::log_gamma_ld(z, lg_err);
    err += shift * lg_err;
    detail::lcplx sum = static_cast<ld>(shift) * lg;
    ld mag = std::abs(sum);
    for (int i = 0; i + 1 < shift; ++i) {
      const detail::lcplx t = static_cast<ld>(shift - 1 - i) * std::log(z + static_cast<ld>(i));
      sum += t;
      mag += std::abs(t);
    }
    err += 4.0 * detail::kLdEps * static_cast<double>(std::abs(value) + mag);
    value -= sum;
  }
  const cplx out = detail::narrow(value);
  return {out, err + kEps * std::abs(out)};
}

inline EvalResult log_barnes_g(double x) { return log_barnes_g(cplx(x, 0.0)); }

namespace detail {

inline EvalResult hyp2f1_series(cplx a, cplx b, cplx c, cplx z) {
  numeric::CompensatedSum<cplx> sum;
  cplx term = 1.0;
  sum += term;
  double last = 1.0;
  for (int n = 0; n < 4000; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
    last = std::abs(term);
    if (last == 0.0) break;
    if (n > 4 && last < 1e-17 * std::abs(sum.value())) break;
  }
  const double tail = last * std::abs(z) / std::max(1e-300, 1.0 - std::abs(z));
  return {sum.value(), tail + 8.0 * kEps * sum.magnitude()};
}

inline constexpr double kSeriesRadius = 0.5;

// Direct series or Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)).
inline std::optional<EvalResult> hyp2f1_near(cplx a, cplx b, cplx c, cplx z) {
  if (std::abs(z) <= kSeriesRadius) return hyp2f1_series(a, b, c, z);
  const cplx w = z / (z - 1.0);
  if (std::abs(w) <= kSeriesRadius) {
    const EvalResult inner = hyp2f1_series(a, c - b, c, w);
    const cplx pref = std::exp(-a * std::log(1.0 - z));
    const cplx value = pref * inner.value;
    return EvalResult{value, std::abs(pref) * inner.abs_error_estimate + 4.0 * kEps * std::abs(value)};
  }
  return std::nullopt;
}

// Continuation along the ray from the origin by Taylor re-expansion of
// z(1-z) F'' + [c - (a+b+1) z] F' - ab F = 0, each step half the distance to
// the nearest singular point. Requires Re z <= 0, so the ray stays away from 1.
inline EvalResult hyp2f1_ode(cplx a, cplx b, cplx c, cplx z) {
  const cplx dir = z / std::abs(z);
  cplx z0 = 0.5 * dir;
  const EvalResult f0 = hyp2f1_series(a, b, c, z0);
  const EvalResult d0 = hyp2f1_series(a + 1.0, b + 1.0, c + 1.0, z0);
  cplx f = f0.value;
  cplx df = a * b / c * d0.value;
  double err = f0.abs_error_estimate + 8.0 * kEps * std::abs(f);
  const cplx q1 = -(a + b + 1.0);
  const cplx r = -a * b;
  for (int step = 0; step < 10000 && std::abs(z0) < std::abs(z); ++step) {
    const double radius = std::min(std::abs(z0), std::abs(z0 - 1.0));
    const double len = std::min(0.5 * radius, std::abs(z) - std::abs(z0));
    const cplx h = len * dir;
    const cplx p0 = z0 - z0 * z0;
    const cplx p1 = 1.0 - 2.0 * z0;
    const cplx q0 = c - (a + b + 1.0) * z0;
    // c_n h^n, advanced by the recurrence of the ODE at z0
    cplx cm = f;
    cplx cn = df * h;
    numeric::CompensatedSum<cplx> val;
    numeric::CompensatedSum<cplx> der;
    val += cm;
    val += cn;
    der += cn;
    for (int n = 0; n < 2000; ++n) {
      const double dn = static_cast<double>(n);
      const cplx next = -((p1 * dn + q0) * (dn + 1.0) * cn * h +
                          (-dn * (dn - 1.0) + q1 * dn + r) * cm * h * h) /
                        (p0 * (dn + 2.0) * (dn + 1.0));
      val += next;
      der += (dn + 2.0) * next;
      cm = cn;
      cn = next;
      if (n > 4 && std::abs(cn) + std::abs(cm) < 1e-18 * (std::abs(val.value()) + std::abs(der.value()))) break;
    }
    const cplx f_new = val.value();
    const double scale = std::abs(f_new) > 0.0 ? std::abs(f_new) / std::max(std::abs(f), 1e-300) : 1.0;
    err = err * std::max(1.0, scale) + 8.0 * kEps * val.magnitude();
    f = f_new;
    df = der.value() / h;
    z0 += h;
  }
  return {f, err};
}

}  // namespace detail

/// Gauss hypergeometric 2F1(a, b; c; z).
///
/// Covered domain: |z| <= 1/2 (series), |z/(z-1)| <= 1/2 (Pfaff), the closed
/// left half-plane Re z <= 0 (ODE continuation along the ray from 0), and
/// |1/z| <= 1/2 through the 1/z connection formula when b - a is not an
/// integer. Anything else raises DomainError.
inline EvalResult hyp2f1(cplx a, cplx b, cplx c, cplx z) {
  if (numeric::is_nonpositive_integer(c, detail::kPoleTol)) {
    throw PoleError("hyp2f1: c is a nonpositive integer");
  }
  if (auto near = detail::hyp2f1_near(a, b, c, z)) return *near;
  if (z.real() <= 0.0) return detail::hyp2f1_ode(a, b, c, z);

  const cplx bma = b - a;
  const bool integer_gap = std::abs(bma.imag()) < 1e-12 &&
                           std::abs(bma.real() - std::round(bma.real())) < 1e-12;
  const cplx zi = 1.0 / z;
  if (integer_gap || std::abs(z) <= 1.0 + 1e-15) {
    throw DomainError("hyp2f1: argument outside the covered domain");
  }
  // F = G(c)G(b-a)/(G(b)G(c-a)) (-z)^{-a} F(a, a-c+1; a-b+1; 1/z) + (a <-> b)
  const auto term = [&](cplx p, cplx q) -> EvalResult {
    const auto inner = detail::hyp2f1_near(p, p - c + 1.0, p - q + 1.0, zi);
    if (!inner) throw DomainError("hyp2f1: argument outside the covered domain");
    const cplx coef = gamma(c) * gamma(q - p) * rgamma(q) * rgamma(c - p);
    const cplx pref = coef * std::exp(-p * std::log(-z));
    return {pref * inner->value, std::abs(pref) * inner->abs_error_estimate};
  };
  const EvalResult t1 = term(a, b);
  const EvalResult t2 = term(b, a);
  const cplx value = t1.value + t2.value;
  const double err = t1.abs_error_estimate + t2.abs_error_estimate +
                     16.0 * kEps * (std::abs(t1.value) + std::abs(t2.value));
  return {value, err};
}

}  // namespace dnzeta::specfun
