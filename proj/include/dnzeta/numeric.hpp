#pragma once

// Small numerical utilities shared by the modules: compensated summation,
// Bernoulli numbers, Gauss-Legendre rules and polynomial extrapolation.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <type_traits>
#include <vector>

#include "dnzeta/errors.hpp"

namespace dnzeta {

using cplx = std::complex<double>;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLog2Pi = 1.8378770664093454835606594728112;

namespace numeric {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <typename T>
struct real_of {
  using type = T;
};
template <typename T>
struct real_of<std::complex<T>> {
  using type = T;
};

/// Neumaier (improved Kahan) summation.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) noexcept {
    if constexpr (is_complex_v<T>) {
      re_.add(x.real());
      im_.add(x.imag());
    } else {
      const T t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
      } else {
        comp_ += (x - t) + sum_;
      }
      sum_ = t;
      abs_sum_ += std::abs(x);
    }
  }

  CompensatedSum& operator+=(T x) noexcept {
    add(x);
    return *this;
  }

  T value() const noexcept {
    if constexpr (is_complex_v<T>) {
      return {re_.value(), im_.value()};
    } else {
      return sum_ + comp_;
    }
  }

  /// Sum of magnitudes of the added terms; scale for rounding estimates.
  double magnitude() const noexcept {
    if constexpr (is_complex_v<T>) {
      return re_.magnitude() + im_.magnitude();
    } else {
      return static_cast<double>(abs_sum_);
    }
  }

 private:
  struct Empty {};
  using Real = typename real_of<T>::type;
  using Part = std::conditional_t<is_complex_v<T>, CompensatedSum<Real>, Empty>;
  T sum_{};
  T comp_{};
  Real abs_sum_{};
  [[no_unique_address]] Part re_{};
  [[no_unique_address]] Part im_{};
};

/// Even-index Bernoulli numbers B_0, B_2, ..., B_30.
inline constexpr std::array<double, 16> kBernoulliEven = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

/// B_{2j}.
inline constexpr double bernoulli_even(std::size_t j) { return kBernoulliEven.at(j); }

inline bool is_nonpositive_integer(cplx z, double tol) {
  if (std::abs(z.imag()) > tol || z.real() > tol) return false;
  return std::abs(z.real() - std::round(z.real())) <= tol;
}

/// log(1+z) without cancellation for small |z|.
inline cplx log1p(cplx z) {
  if (std::abs(z) < 1e-3) {
    // five terms leave an error below |z|^6/6 < 2e-19
    cplx term = z;
    cplx sum = 0.0;
    for (int k = 1; k <= 6; ++k) {
      sum += term / static_cast<double>(k);
      term *= -z;
    }
    return sum;
  }
  return std::log(1.0 + z);
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
inline GaussRule gauss_legendre(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

/// Composite Gauss-Legendre quadrature of f over [a, b] with `panels` panels.
template <typename F>
double integrate(F&& f, double a, double b, std::size_t panels, const GaussRule& rule) {
  CompensatedSum<double> sum;
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    const double mid = lo + 0.5 * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += 0.5 * width * rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    }
  }
  return sum.value();
}

/// Neville extrapolation to h = 0 of samples (h_i, f_i).
/// Returns the full tableau; tableau[j][i] uses nodes i..i+j.
inline std::vector<std::vector<double>> neville_tableau(std::span<const double> h,
                                                        std::span<const double> f) {
  if (h.size() != f.size() || h.empty()) throw DomainError("neville_tableau: size mismatch");
  std::vector<std::vector<double>> table;
  table.emplace_back(f.begin(), f.end());
  for (std::size_t j = 1; j < h.size(); ++j) {
    const auto& prev = table.back();
    std::vector<double> next(prev.size() - 1);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      next[i] = (h[i] * prev[i + 1] - h[i + j] * prev[i]) / (h[i] - h[i + j]);
    }
    table.push_back(std::move(next));
  }
  return table;
}

}  // namespace numeric
}  // namespace dnzeta
