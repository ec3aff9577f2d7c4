#pragma once

// Regularized determinants of sequences
//
//   u_n = c n^k (1 + eps_n),  n >= 1, each value repeated `tail_multiplicity` times,
//
// plus finitely many positive head eigenvalues. With zeta_u(s) = sum u_n^{-s},
//
//   zeta_u(0)  = zeta(0)
//   zeta_u'(0) = k zeta'(0) - sum ln(1 + eps_n)           (c = 1)
//
// for |eps_n| <= C e^{-a n}. A prefactor c only multiplies the sum by c^{-s}:
//
//   d/ds [c^{-s} zeta_u(s)]_{s=0} = -ln(c) zeta(0) + zeta_u'(0)
//
// so log det = -d/ds zeta(0) = m [-k zeta'(0) + ln(c) zeta(0) + sum ln(1 + eps_n)]
//            + sum_head mult ln(lambda).
// Each head eigenvalue adds its multiplicity to zeta(0).

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "dnzeta/errors.hpp"
#include "dnzeta/numeric.hpp"
#include "dnzeta/specfun.hpp"

namespace dnzeta::zeta_reg {

struct HeadEigenvalue {
  double value = 0.0;
  int multiplicity = 1;
};

/// |eps_n| <= C e^{-a n}.
struct DecayBound {
  double C = 0.0;
  double a = 1.0;
};

/// Smallest N with C e^{-aN} / (1 - e^{-a}) < tol.
inline int default_tail_length(DecayBound bound, double tol = 1e-14) {
  if (!(bound.a > 0.0) || !(bound.C >= 0.0)) throw DomainError("default_tail_length: need a > 0, C >= 0");
  if (bound.C == 0.0) return 0;
  const double geom = -std::expm1(-bound.a);
  const double n = (std::log(bound.C / (tol * geom))) / bound.a;
  return std::max(0, static_cast<int>(std::ceil(n)));
}

/// sum_{n > N} |ln(1 + eps_n)| for |eps_n| <= C e^{-a n}.
inline double log_tail_bound(DecayBound bound, std::size_t n_supplied) {
  if (bound.C == 0.0) return 0.0;
  const double first = bound.C * std::exp(-bound.a * static_cast<double>(n_supplied + 1));
  if (first >= 1.0) return std::numeric_limits<double>::infinity();
  // |ln(1+x)| <= |x| / (1 - |x|)
  return first / (-std::expm1(-bound.a)) / (1.0 - first);
}

class EigenSequence;
EigenSequence combine(const EigenSequence& u, const EigenSequence& v);

class EigenSequence {
 public:
  EigenSequence(double k, double c, std::vector<double> corrections, DecayBound bound,
                std::vector<HeadEigenvalue> head, int tail_multiplicity)
      : k_(k),
        log_c_(c > 0.0 ? std::log(c) : std::numeric_limits<double>::quiet_NaN()),
        corrections_(std::move(corrections)),
        bound_(bound),
        head_(std::move(head)),
        tail_multiplicity_(tail_multiplicity) {
    validate();
    tail_log_bound_ = log_tail_bound(bound_, corrections_.size());
  }

  /// eps == 0.
  static EigenSequence pure(double k, double c, int tail_multiplicity,
                            std::vector<HeadEigenvalue> head = {}) {
    return EigenSequence(k, c, {}, DecayBound{0.0, 1.0}, std::move(head), tail_multiplicity);
  }

  /// Samples eps_n for n = 1..N with N = default_tail_length(bound) unless given.
  static EigenSequence from_corrections(double k, double c, const std::function<double(int)>& eps,
                                        DecayBound bound, std::vector<HeadEigenvalue> head,
                                        int tail_multiplicity, int n_tail = -1) {
    if (n_tail < 0) n_tail = default_tail_length(bound);
    std::vector<double> values(static_cast<std::size_t>(n_tail));
    for (int n = 1; n <= n_tail; ++n) values[static_cast<std::size_t>(n - 1)] = eps(n);
    return EigenSequence(k, c, std::move(values), bound, std::move(head), tail_multiplicity);
  }

  /// As from_corrections, with the prefactor given as ln c (c may underflow).
  static EigenSequence from_corrections_log(double k, double log_c, const std::function<double(int)>& eps,
                                            DecayBound bound, std::vector<HeadEigenvalue> head,
                                            int tail_multiplicity, int n_tail = -1) {
    auto seq = from_corrections(k, 1.0, eps, bound, std::move(head), tail_multiplicity, n_tail);
    seq.log_c_ = log_c;
    seq.validate();
    return seq;
  }

  double power() const noexcept { return k_; }
  double prefactor() const noexcept { return std::exp(log_c_); }
  double log_prefactor() const noexcept { return log_c_; }
  const std::vector<double>& corrections() const noexcept { return corrections_; }
  DecayBound bound() const noexcept { return bound_; }
  const std::vector<HeadEigenvalue>& head() const noexcept { return head_; }
  int tail_multiplicity() const noexcept { return tail_multiplicity_; }
  double tail_log_bound() const noexcept { return tail_log_bound_; }

  /// Every eigenvalue multiplied by t > 0.
  EigenSequence scaled(double t) const {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("EigenSequence::scaled: t must be positive");
    EigenSequence out = *this;
    out.log_c_ += std::log(t);
    for (auto& h : out.head_) h.value *= t;
    out.validate();
    return out;
  }

 private:
  EigenSequence() = default;

  void validate() const {
    if (!(k_ > 0.0) || !std::isfinite(k_)) throw DomainError("EigenSequence: power k must be > 0");
    if (!std::isfinite(log_c_)) throw DomainError("EigenSequence: prefactor c must be > 0 and finite");
    if (tail_multiplicity_ < 1) throw DomainError("EigenSequence: tail multiplicity must be >= 1");
    if (!(bound_.a > 0.0) || !(bound_.C >= 0.0) || !std::isfinite(bound_.C)) {
      throw DomainError("EigenSequence: decay bound needs a > 0, C >= 0");
    }
    for (const auto& h : head_) {
      if (!(h.value > 0.0) || !std::isfinite(h.value)) {
        throw DomainError("EigenSequence: head eigenvalues must be positive");
      }
      if (h.multiplicity < 1) throw DomainError("EigenSequence: head multiplicity must be >= 1");
    }
    for (std::size_t i = 0; i < corrections_.size(); ++i) {
      const double e = corrections_[i];
      const double n = static_cast<double>(i + 1);
      if (!std::isfinite(e) || !(1.0 + e > 0.0)) {
        throw DomainError("EigenSequence: 1 + eps_" + std::to_string(i + 1) + " must be positive");
      }
      const double cap = bound_.C * std::exp(-bound_.a * n);
      if (std::abs(e) > cap * (1.0 + 8.0 * kEps) + 8.0 * kEps) {
        throw DomainError("EigenSequence: eps_" + std::to_string(i + 1) +
                          " violates the declared exponential bound");
      }
    }
  }

  double k_ = 1.0;
  double log_c_ = 0.0;
  std::vector<double> corrections_;
  DecayBound bound_;
  std::vector<HeadEigenvalue> head_;
  int tail_multiplicity_ = 1;
  double tail_log_bound_ = 0.0;

  friend EigenSequence combine(const EigenSequence& u, const EigenSequence& v);
};

struct RegularizedDet {
  double log_value = 0.0;
  double zeta_at_zero = 0.0;
  double truncation_error = 0.0;
};

inline double zeta_at_zero(const EigenSequence& seq) {
  double z = static_cast<double>(seq.tail_multiplicity()) * specfun::riemann_zeta(0.0).value.real();
  for (const auto& h : seq.head()) z += h.multiplicity;
  return z;
}

inline RegularizedDet log_det(const EigenSequence& seq) {
  const double z0 = specfun::riemann_zeta(0.0).value.real();
  const double zp0 = specfun::zeta_derivative(0.0).value.real();
  numeric::CompensatedSum<double> family;
  family += -seq.power() * zp0;
  family += seq.log_prefactor() * z0;
  numeric::CompensatedSum<double> eps_sum;
  for (double e : seq.corrections()) eps_sum += std::log1p(e);
  family += eps_sum.value();

  numeric::CompensatedSum<double> total;
  total += static_cast<double>(seq.tail_multiplicity()) * family.value();
  for (const auto& h : seq.head()) total += static_cast<double>(h.multiplicity) * std::log(h.value);

  RegularizedDet out;
  out.log_value = total.value();
  out.zeta_at_zero = zeta_at_zero(seq);
  out.truncation_error = static_cast<double>(seq.tail_multiplicity()) * seq.tail_log_bound();
  return out;
}

/// Termwise product w_n = u_n v_n; heads are concatenated.
inline EigenSequence combine(const EigenSequence& u, const EigenSequence& v) {
  if (u.tail_multiplicity() != v.tail_multiplicity()) {
    throw DomainError("combine: tail multiplicities differ");
  }
  EigenSequence w;
  w.k_ = u.k_ + v.k_;
  w.log_c_ = u.log_c_ + v.log_c_;
  w.tail_multiplicity_ = u.tail_multiplicity_;
  const std::size_t n = std::max(u.corrections_.size(), v.corrections_.size());
  w.corrections_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double eu = i < u.corrections_.size() ? u.corrections_[i] : 0.0;
    const double ev = i < v.corrections_.size() ? v.corrections_[i] : 0.0;
    w.corrections_[i] = eu + ev + eu * ev;
  }
  w.bound_ = DecayBound{u.bound_.C + v.bound_.C + u.bound_.C * v.bound_.C,
                        std::min(u.bound_.a, v.bound_.a)};
  w.head_ = u.head_;
  w.head_.insert(w.head_.end(), v.head_.begin(), v.head_.end());
  w.validate();
  // ln((1+eu)(1+ev)) splits, so the dropped tails add.
  w.tail_log_bound_ = u.tail_log_bound_ + v.tail_log_bound_;
  return w;
}

}  // namespace dnzeta::zeta_reg
