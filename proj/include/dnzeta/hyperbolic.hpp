#pragma once

// PSL(2,R): Mobius transforms, translation lengths, and length spectra of free
// (Schottky-type) groups from cyclically reduced words.
//
// Letters: 2i is generator i, 2i+1 its inverse. A primitive conjugacy class of
// a free group is a cyclically reduced aperiodic cyclic word; its canonical
// representative is the Lyndon rotation (strictly smaller than every proper
// rotation).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dnzeta/errors.hpp"
#include "dnzeta/numeric.hpp"

namespace dnzeta::hyperbolic {

inline constexpr double kMobiusTol = 1e-12;

struct MobiusTransform {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  MobiusTransform() = default;
  /// Rescales to unit determinant; det <= 0 is rejected.
  MobiusTransform(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
    const double det = a * d - b * c;
    if (!(det > 0.0) || !std::isfinite(det)) {
      throw DomainError("MobiusTransform: determinant must be positive");
    }
    const double s = 1.0 / std::sqrt(det);
    a *= s;
    b *= s;
    c *= s;
    d *= s;
  }

  static MobiusTransform raw(double a, double b, double c, double d) {
    MobiusTransform m;
    m.a = a;
    m.b = b;
    m.c = c;
    m.d = d;
    return m;
  }

  double trace() const noexcept { return a + d; }
  double det() const noexcept { return a * d - b * c; }
  MobiusTransform inverse() const noexcept { return raw(d, -b, -c, a); }
  bool is_hyperbolic() const noexcept { return std::abs(trace()) > 2.0 + kMobiusTol; }
  bool is_identity(double tol = 1e-9) const noexcept {
    const double s = a >= 0 ? 1.0 : -1.0;  // PSL: +-I
    return std::abs(s * a - 1.0) <= tol && std::abs(s * d - 1.0) <= tol && std::abs(b) <= tol &&
           std::abs(c) <= tol;
  }
  cplx apply(cplx z) const { return (a * z + b) / (c * z + d); }

  friend MobiusTransform operator*(const MobiusTransform& x, const MobiusTransform& y) noexcept {
    return raw(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
  }
};

/// Equality in PSL(2,R) up to tol.
inline bool psl_equal(const MobiusTransform& x, const MobiusTransform& y, double tol = 1e-9) {
  const auto close = [tol](const MobiusTransform& p, const MobiusTransform& q, double s) {
    const double scale = 1.0 + std::max({std::abs(p.a), std::abs(p.b), std::abs(p.c), std::abs(p.d)});
    return std::abs(p.a - s * q.a) <= tol * scale && std::abs(p.b - s * q.b) <= tol * scale &&
           std::abs(p.c - s * q.c) <= tol * scale && std::abs(p.d - s * q.d) <= tol * scale;
  };
  return close(x, y, 1.0) || close(x, y, -1.0);
}

/// 2 acosh(|tr|/2).
inline double translation_length(const MobiusTransform& m) {
  if (!m.is_hyperbolic()) {
    throw DomainError("translation_length: element is not hyperbolic (|tr| = " +
                      std::to_string(std::abs(m.trace())) + ")");
  }
  return 2.0 * std::acosh(0.5 * std::abs(m.trace()));
}

/// Hyperbolic element with repelling fixed point x_minus, attracting fixed
/// point x_plus and translation length ell.
inline MobiusTransform hyperbolic_with_axis(double x_minus, double x_plus, double ell) {
  if (!(ell > 0.0) || x_minus == x_plus) throw DomainError("hyperbolic_with_axis: degenerate axis");
  const double lam = std::exp(0.5 * ell);
  // A = [[x+, x-], [1, 1]] maps 0 -> x-, inf -> x+; M = A diag(lam, 1/lam) A^{-1}.
  const double det = x_plus - x_minus;
  const double a = (x_plus * lam - x_minus / lam) / det;
  const double b = (-x_plus * x_minus * lam + x_plus * x_minus / lam) / det;
  const double c = (lam - 1.0 / lam) / det;
  const double d = (-x_minus * lam + x_plus / lam) / det;
  return MobiusTransform(a, b, c, d);
}

using Word = std::vector<int>;

inline constexpr int inverse_letter(int x) noexcept { return x ^ 1; }

class GroupPresentation {
 public:
  explicit GroupPresentation(std::vector<MobiusTransform> generators, std::vector<std::string> labels = {})
      : generators_(std::move(generators)), labels_(std::move(labels)) {
    if (generators_.empty()) throw DomainError("GroupPresentation: no generators");
    if (labels_.empty()) {
      for (std::size_t i = 0; i < generators_.size(); ++i) labels_.push_back(std::string(1, static_cast<char>('a' + i % 26)));
    }
    if (labels_.size() != generators_.size()) throw DomainError("GroupPresentation: label count mismatch");
    screen(4);
  }

  std::size_t rank() const noexcept { return generators_.size(); }
  const std::vector<MobiusTransform>& generators() const noexcept { return generators_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  MobiusTransform letter(int x) const {
    const auto& g = generators_.at(static_cast<std::size_t>(x / 2));
    return (x & 1) ? g.inverse() : g;
  }

  MobiusTransform evaluate(const Word& w) const {
    MobiusTransform m;
    for (int x : w) m = m * letter(x);
    return m;
  }

  /// Lowercase single-letter labels print inverses in uppercase, others as label^-1.
  std::string format(const Word& w) const {
    const bool simple = std::all_of(labels_.begin(), labels_.end(), [](const std::string& s) {
      return s.size() == 1 && std::islower(static_cast<unsigned char>(s[0]));
    });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto& lab = labels_.at(static_cast<std::size_t>(w[i] / 2));
      if (simple) {
        out += (w[i] & 1) ? static_cast<char>(std::toupper(static_cast<unsigned char>(lab[0]))) : lab[0];
      } else {
        if (i) out += '.';
        out += lab;
        if (w[i] & 1) out += "^-1";
      }
    }
    return out;
  }

 private:
  // Every nontrivial reduced word up to max_len must be hyperbolic.
  void screen(int max_len) const {
    const int letters = static_cast<int>(2 * generators_.size());
    Word w;
    std::vector<MobiusTransform> prefix{MobiusTransform{}};
    const auto rec = [&](auto&& self, int depth) -> void {
      if (depth == max_len) return;
      for (int x = 0; x < letters; ++x) {
        if (!w.empty() && x == inverse_letter(w.back())) continue;
        w.push_back(x);
        prefix.push_back(prefix.back() * letter(x));
        if (!prefix.back().is_hyperbolic()) {
          throw DomainError("GroupPresentation: word " + format(w) +
                            " is not hyperbolic; the group is not free convex co-compact");
        }
        self(self, depth + 1);
        prefix.pop_back();
        w.pop_back();
      }
    };
    rec(rec, 0);
  }

  std::vector<MobiusTransform> generators_;
  std::vector<std::string> labels_;
};

struct SpectrumEntry {
  double length = 0.0;
  int multiplicity = 1;
  std::optional<int> reflections;
  std::string word;
};

struct LengthSpectrum {
  std::vector<SpectrumEntry> entries;
  double cutoff = 0.0;
  double complete_up_to = 0.0;
  /// false when complete_up_to rests on the heuristic displacement bound.
  bool certified = true;
  /// No primitive classes exist beyond the listed entries (elementary groups).
  bool exhaustive = false;

  /// Number of primitive classes (with multiplicity) of length <= L.
  long long count_up_to(double L) const {
    long long n = 0;
    for (const auto& e : entries) {
      if (e.length <= L) n += e.multiplicity;
    }
    return n;
  }
  double min_length() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) m = std::min(m, e.length);
    return m;
  }

  void sort() {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const SpectrumEntry& x, const SpectrumEntry& y) { return x.length < y.length; });
  }
};

class PartialSpectrumError : public ContractViolation {
 public:
  PartialSpectrumError(const std::string& what, LengthSpectrum partial)
      : ContractViolation("word_budget", what), partial_(std::move(partial)) {}
  const LengthSpectrum& partial() const noexcept { return partial_; }

 private:
  LengthSpectrum partial_;
};

namespace detail {

// Hyperbolic distance between the geodesics with endpoints {x1, y1}, {x2, y2};
// nullopt if they cross.
inline std::optional<double> geodesic_distance(double x1, double y1, double x2, double y2) {
  // z -> (z - x1) / (z - y1) sends the first geodesic to [0, inf].
  const auto f = [x1, y1](double z) { return (z - x1) / (z - y1); };
  double p = f(x2);
  double q = f(y2);
  if (p * q <= 0.0) return std::nullopt;
  p = std::abs(p);
  q = std::abs(q);
  if (p > q) std::swap(p, q);
  return std::acosh((q + p) / (q - p));
}

}  // namespace detail

struct DisplacementBound {
  double d = 0.0;
  bool certified = false;
  /// Certified only: pair[x * letters + y] bounds the length of the axis
  /// segment between consecutive letters x, y of a cyclic word.
  std::vector<double> pair;
  int letters = 0;

  double pair_bound(int x, int y) const { return pair[static_cast<std::size_t>(x * letters + y)]; }
};

/// Lower bounds for translation lengths of cyclically reduced words.
///
/// If the isometric circles I(x) = {|cz + d| = 1} of all generators and
/// inverses are pairwise disjoint, the region outside them is a fundamental
/// domain. The axis of a cyclic word x_1 ... x_n crosses it n times; the
/// crossing between letters x, y runs from I(x^{-1}) to I(y), so
///   l(w) >= sum_i D(x_i, x_{i+1}) >= n d.
/// D is taken as the smaller of the two reading orders. Otherwise
/// d = 0.5 min l(w)/|w| over |w| <= 3 and the bound is not certified.
inline DisplacementBound displacement_bound(const GroupPresentation& g) {
  const int letters = static_cast<int>(2 * g.rank());
  if (g.rank() == 1) {
    const double l = translation_length(g.generators()[0]);
    return {l, true, std::vector<double>(4, l), 2};
  }
  struct Circle {
    double lo, hi;
  };
  std::vector<Circle> circles;
  bool ok = true;
  for (int x = 0; x < letters; ++x) {
    const auto m = g.letter(x);
    if (std::abs(m.c) < 1e-14) {
      ok = false;
      break;
    }
    const double center = -m.d / m.c;
    const double radius = 1.0 / std::abs(m.c);
    circles.push_back({center - radius, center + radius});
  }
  std::vector<double> dist(static_cast<std::size_t>(letters * letters), 0.0);
  for (int i = 0; ok && i < letters; ++i) {
    for (int j = i + 1; j < letters; ++j) {
      const auto& ci = circles[static_cast<std::size_t>(i)];
      const auto& cj = circles[static_cast<std::size_t>(j)];
      const bool disjoint = ci.hi < cj.lo || cj.hi < ci.lo;
      const auto dd = disjoint ? detail::geodesic_distance(ci.lo, ci.hi, cj.lo, cj.hi) : std::nullopt;
      if (!dd || !(*dd > 0.0)) {
        ok = false;
        break;
      }
      dist[static_cast<std::size_t>(i * letters + j)] = *dd;
      dist[static_cast<std::size_t>(j * letters + i)] = *dd;
    }
  }
  if (ok) {
    DisplacementBound b;
    b.certified = true;
    b.letters = letters;
    b.pair.assign(static_cast<std::size_t>(letters * letters), 0.0);
    b.d = std::numeric_limits<double>::infinity();
    const auto D = [&](int i, int j) { return dist[static_cast<std::size_t>(i * letters + j)]; };
    for (int x = 0; x < letters; ++x) {
      for (int y = 0; y < letters; ++y) {
        if (y == inverse_letter(x)) continue;
        const double v = std::min(D(inverse_letter(x), y), D(inverse_letter(y), x));
        b.pair[static_cast<std::size_t>(x * letters + y)] = v;
        b.d = std::min(b.d, v);
      }
    }
    return b;
  }

  double ratio = std::numeric_limits<double>::infinity();
  const auto visit = [&](const Word& w) {
    if (inverse_letter(w.front()) == w.back() && w.size() > 1) return;
    ratio = std::min(ratio, translation_length(g.evaluate(w)) / static_cast<double>(w.size()));
  };
  for (int x = 0; x < letters; ++x) {
    visit({x});
    for (int y = 0; y < letters; ++y) {
      if (y == inverse_letter(x)) continue;
      visit({x, y});
      for (int z = 0; z < letters; ++z) {
        if (z == inverse_letter(y)) continue;
        visit({x, y, z});
      }
    }
  }
  DisplacementBound b;
  b.d = 0.5 * ratio;
  b.certified = false;
  b.letters = letters;
  return b;
}

struct EnumerationOptions {
  /// Longest word enumerated; derived from the cutoff when absent.
  std::optional<int> max_word_length;
  /// Upper limit on DFS nodes.
  std::size_t word_budget = 20'000'000;
};

namespace detail {

// Lyndon test by Duval: w is Lyndon iff its factorization has one factor.
inline bool is_lyndon(const Word& w) {
  const std::size_t n = w.size();
  std::size_t i = 0;
  std::size_t j = 1;
  while (j < n && w[i] <= w[j]) {
    i = (w[i] < w[j]) ? 0 : i + 1;
    ++j;
  }
  return j == n && i == 0;
}

}  // namespace detail

/// Primitive oriented classes with length <= complete_up_to. gamma and
/// gamma^{-1} are distinct entries.
///
/// complete_up_to is L_max, or min(L_max, W d) when a word length W is given.
/// With a certified bound, prefixes whose crossing sum already exceeds it are
/// pruned; otherwise every word up to ceil(L_max / d) letters is visited.
inline LengthSpectrum enumerate_primitive_classes(const GroupPresentation& g, double L_max,
                                                  const EnumerationOptions& opts = {}) {
  if (!(L_max > 0.0)) throw DomainError("enumerate_primitive_classes: cutoff must be > 0");
  const auto bound = displacement_bound(g);
  LengthSpectrum spec;
  spec.cutoff = L_max;
  spec.certified = bound.certified;

  int max_len = std::numeric_limits<int>::max();
  if (g.rank() == 1) {
    max_len = 1;
    spec.complete_up_to = L_max;
    spec.exhaustive = true;
  } else if (opts.max_word_length) {
    max_len = *opts.max_word_length;
    if (max_len < 1) throw DomainError("enumerate_primitive_classes: max word length must be >= 1");
    spec.complete_up_to = std::min(L_max, static_cast<double>(max_len) * bound.d);
  } else {
    if (!std::isfinite(L_max)) throw DomainError("enumerate_primitive_classes: need a finite cutoff or a word length");
    max_len = std::max(1, static_cast<int>(std::ceil(L_max / bound.d)));
    spec.complete_up_to = L_max;
  }
  const double keep = spec.complete_up_to;
  const double prune_at = keep * (1.0 + 1e-10) + 1e-10;
  const bool prune = bound.certified && g.rank() > 1;
  std::vector<double> crossing{0.0};

  const int letters = static_cast<int>(2 * g.rank());
  std::size_t visited = 0;
  Word w;
  std::vector<MobiusTransform> prefix{MobiusTransform{}};
  struct Found {
    double length;
    Word word;
  };
  std::vector<Found> found;

  const auto finish = [&](LengthSpectrum& s) {
    std::sort(found.begin(), found.end(), [](const Found& x, const Found& y) {
      if (x.length != y.length) return x.length < y.length;
      return x.word < y.word;
    });
    s.entries.clear();
    for (const auto& f : found) s.entries.push_back({f.length, 1, std::nullopt, g.format(f.word)});
  };

  const auto rec = [&](auto&& self) -> void {
    for (int x = w.empty() ? 0 : w.front(); x < letters; ++x) {
      if (!w.empty() && x == inverse_letter(w.back())) continue;
      const double sum = w.empty() ? 0.0 : crossing.back() + (prune ? bound.pair_bound(w.back(), x) : 0.0);
      if (prune && sum > prune_at) continue;
      if (++visited > opts.word_budget) {
        LengthSpectrum partial = spec;
        finish(partial);
        throw PartialSpectrumError("enumeration exceeded the word budget of " +
                                       std::to_string(opts.word_budget) + " words",
                                   partial);
      }
      w.push_back(x);
      prefix.push_back(prefix.back() * g.letter(x));
      crossing.push_back(sum);
      const bool cyclic = w.size() == 1 || inverse_letter(w.front()) != w.back();
      if (cyclic && detail::is_lyndon(w)) {
        const auto& m = prefix.back();
        if (m.is_hyperbolic()) {
          const double len = translation_length(m);
          if (len <= keep) found.push_back({len, w});
        }
      }
      if (static_cast<int>(w.size()) < max_len) self(self);
      crossing.pop_back();
      prefix.pop_back();
      w.pop_back();
    }
  };
  rec(rec);
  finish(spec);
  return spec;
}

/// Spectrum of the cyclic group generated by one element of length ell: the
/// class and its inverse.
inline LengthSpectrum cyclic_spectrum(double ell) {
  if (!(ell > 0.0) || !std::isfinite(ell)) throw DomainError("cyclic_spectrum: ell must be > 0");
  LengthSpectrum s;
  s.entries = {{ell, 1, std::nullopt, "a"}, {ell, 1, std::nullopt, "A"}};
  s.cutoff = ell;
  s.complete_up_to = ell;
  s.exhaustive = true;
  return s;
}

struct ExponentEstimate {
  double delta = 0.0;
  /// Coefficient of determination of the fit; 1 for elementary groups.
  double r_squared = 1.0;
  std::size_t samples = 0;
};

/// Least-squares fit of log(l N(l)) ~ delta l + b on the counting function of
/// the spectrum over [L/2, L]; rank-1 groups return 0.
inline ExponentEstimate exponent_estimate(const LengthSpectrum& spec, std::size_t rank) {
  if (rank == 1) return {0.0, 1.0, spec.entries.size()};
  const double L = spec.complete_up_to;
  std::vector<double> xs;
  std::vector<double> ys;
  long long count = 0;
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    const auto& e = spec.entries[i];
    count += e.multiplicity;
    if (e.length > L) break;
    const bool last_of_tie = i + 1 == spec.entries.size() || spec.entries[i + 1].length > e.length;
    if (e.length >= 0.5 * L && last_of_tie) {
      xs.push_back(e.length);
      ys.push_back(std::log(e.length * static_cast<double>(count)));
    }
  }
  if (spec.count_up_to(L) < 10 || xs.size() < 3) {
    throw DomainError("exponent_estimate: fewer than 10 classes below the cutoff");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0.0) throw DomainError("exponent_estimate: degenerate length data");
  const double slope = sxy / sxx;
  ExponentEstimate est;
  est.delta = std::clamp(slope, 0.0, 1.0);
  est.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  est.samples = xs.size();
  return est;
}

inline ExponentEstimate exponent_estimate(const GroupPresentation& g, double L_max,
                                          const EnumerationOptions& opts = {}) {
  return exponent_estimate(enumerate_primitive_classes(g, L_max, opts), g.rank());
}

/// The two-generator Schottky pair used for examples and tests:
/// g1 = [[cosh(t/2), sinh(t/2)], [sinh(t/2), cosh(t/2)]], g2 = D g1 D^{-1},
/// D = diag(s, 1/s).
inline GroupPresentation schottky_pair(double t, double s) {
  const double ch = std::cosh(0.5 * t);
  const double sh = std::sinh(0.5 * t);
  MobiusTransform g1(ch, sh, sh, ch);
  MobiusTransform g2(ch, s * s * sh, sh / (s * s), ch);
  return GroupPresentation({g1, g2}, {"a", "b"});
}

}  // namespace dnzeta::hyperbolic
