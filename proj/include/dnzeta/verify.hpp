#pragma once

// Self-checks exposed through `dnzeta verify`. Each suite compares library
// output against closed forms or against a second evaluation path.

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dnzeta/det_engine.hpp"
#include "dnzeta/dn_explicit.hpp"
#include "dnzeta/hyperbolic.hpp"
#include "dnzeta/numeric_dn.hpp"
#include "dnzeta/specfun.hpp"
#include "dnzeta/zeta_dyn.hpp"
#include "dnzeta/zeta_reg.hpp"

namespace dnzeta::verify {

struct Check {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  std::string message;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  double max_error() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.error);
    return m;
  }
  void add(std::string what, double err, double tol) {
    checks.push_back({std::move(what), err, tol, err <= tol});
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"appendix", "bridge",   "lemma",    "functional",
                                                 "theorem4", "numericdn"};
  return names;
}

namespace detail {

inline double rel(double x, double ref) { return std::abs(x - ref) / std::max(1.0, std::abs(ref)); }

inline std::string summary(const SuiteResult& r, const std::string& what, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s max err %s %.0e (observed %.3e)", what.c_str(), r.passed() ? "<" : ">=", tol,
                r.max_error());
  return buf;
}

// For suites whose checks carry different tolerances.
inline std::string ratio_summary(const SuiteResult& r, const std::string& what) {
  double worst = 0.0;
  std::size_t ok = 0;
  for (const auto& c : r.checks) {
    worst = std::max(worst, c.tolerance > 0.0 ? c.error / c.tolerance : (c.error > 0.0 ? 1e300 : 0.0));
    ok += c.passed ? 1 : 0;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %zu/%zu checks within tolerance (worst error/tolerance %.3e)", what.c_str(),
                ok, r.checks.size(), worst);
  return buf;
}

}  // namespace detail

inline SuiteResult appendix_suite() {
  SuiteResult r{"appendix", {}, {}};
  for (double rho : {1.5, 2.0, std::exp(1.0), 10.0, 100.0}) {
    const auto geom = dn_explicit::AnnulusGeometry::from_rho(rho);
    const double got = dn_explicit::annulus_det_prime(geom).value;
    const double want = 2.0 * kPi / std::log(rho);
    r.add("annulus rho=" + std::to_string(rho), std::abs(got - want) / want, 1e-12);
  }
  for (double R : {0.5, 1.0, 7.0}) {
    const auto rep = dn_explicit::disc_det_prime(R);
    r.add("disc R=" + std::to_string(R), std::abs(*rep.det_prime - 2.0 * kPi * R) / (2.0 * kPi * R), 1e-12);
  }
  r.message = detail::summary(r, "annulus and disc det'/l", 1e-12);
  return r;
}

inline SuiteResult bridge_suite(unsigned seed = 20240611) {
  SuiteResult r{"bridge", {}, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.1, 20.0);
  for (int i = 0; i < 10; ++i) {
    const double ell = dist(rng);
    const dn_explicit::CylinderGeometry geom(ell);
    const double identity = std::abs(ell / kPi - 2.0 * kPi / geom.bridge_alpha());
    const double pipeline = std::abs(dn_explicit::cylinder_det_prime(geom).value - ell / kPi) / (ell / kPi);
    r.add("ell=" + std::to_string(ell), std::max(identity, pipeline), 1e-12);
  }
  r.message = detail::summary(r, "cylinder↔annulus identity", 1e-12);
  return r;
}

inline SuiteResult lemma_suite(unsigned seed = 7, int samples = 200) {
  using zeta_reg::EigenSequence;
  SuiteResult r{"lemma", {}, {}};
  const double log2pi = kLog2Pi;
  r.add("circle spectrum det = 2 pi",
        std::abs(zeta_reg::log_det(EigenSequence::pure(1.0, 1.0, 2)).log_value - log2pi), 1e-13);
  r.add("zeta(0) with head", std::abs(zeta_reg::zeta_at_zero(EigenSequence::pure(1.0, 1.0, 1, {{5.0, 1}})) - 0.5),
        1e-15);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto random_seq = [&](int mult) {
    const double k = 0.5 + 2.0 * unit(rng);
    const double c = 0.2 + 3.0 * unit(rng);
    const double C = 0.9 * unit(rng);
    const double a = 0.3 + 2.0 * unit(rng);
    const double phase = 6.0 * unit(rng);
    std::vector<zeta_reg::HeadEigenvalue> head;
    if (unit(rng) < 0.5) head.push_back({0.1 + 5.0 * unit(rng), 1 + static_cast<int>(3 * unit(rng))});
    return EigenSequence::from_corrections(
        k, c, [=](int n) { return C * std::cos(phase * n) * std::exp(-a * n); }, {C, a}, head, mult);
  };
  double add_err = 0.0;
  double scale_err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int mult = 1 + static_cast<int>(3 * unit(rng));
    const auto u = random_seq(mult);
    const auto v = random_seq(mult);
    const double lu = zeta_reg::log_det(u).log_value;
    const double lv = zeta_reg::log_det(v).log_value;
    const double lw = zeta_reg::log_det(zeta_reg::combine(u, v)).log_value;
    add_err = std::max(add_err, std::abs(lw - lu - lv) / (1.0 + std::abs(lu) + std::abs(lv)));
    const double t = 0.1 + 10.0 * unit(rng);
    const double ls = zeta_reg::log_det(u.scaled(t)).log_value;
    scale_err = std::max(scale_err, std::abs(ls - lu - std::log(t) * zeta_reg::zeta_at_zero(u)) / (1.0 + std::abs(lu)));
  }
  r.add("additivity", add_err, 1e-12);
  r.add("scaling law", scale_err, 1e-12);
  r.message = detail::summary(r, "regularized determinant lemma", 1e-12);
  return r;
}

inline SuiteResult functional_suite() {
  SuiteResult r{"functional", {}, {}};
  // cyclic group
  for (double ell : {0.5, 1.0, 3.0}) {
    const auto spec = hyperbolic::cyclic_spectrum(ell);
    for (double lam : {1.5, 2.0, 3.0}) {
      const auto c = zeta_dyn::check_rz_identity(spec, lam, 0.0);
      r.add("cyclic R=Z/Z", c.residual, std::min(c.allowed, 1e-14));
    }
    r.add("cyclic R closed form",
          std::abs(zeta_dyn::ruelle(spec, 1.0, 0.0).log_value - 2.0 * std::log(-std::expm1(-ell))), 1e-14);
  }
  // Schottky pair, words up to length 12
  const auto g = hyperbolic::schottky_pair(3.0, std::sqrt(3.0));
  hyperbolic::EnumerationOptions opts;
  opts.max_word_length = 12;
  const auto spec = hyperbolic::enumerate_primitive_classes(g, 40.0, opts);
  const double delta = hyperbolic::exponent_estimate(spec, g.rank()).delta;
  for (double lam : {1.5, 2.0, 3.0}) {
    const auto c = zeta_dyn::check_rz_identity(spec, lam, delta);
    r.add("schottky R=Z/Z lambda=" + std::to_string(lam), c.residual, c.allowed);
  }
  // scattering route on the cylinder
  for (double ell : {0.5, 1.0, 2.0}) {
    const auto rep = det_engine::cylinder_scattering_route(ell);
    r.add("scattering det' ell=" + std::to_string(ell),
          std::abs(*rep.det_prime - 2.0 * ell * ell / kPi) / (2.0 * ell * ell / kPi), 1e-10);
  }
  // mode-0 Taylor expansion at lambda = 1
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const cplx s = dn_explicit::cylinder_scattering_mode0(1.0 - h);
    const double ratio = std::abs(s / (0.5 * kPi * h * h) - 1.0);
    r.add("mode-0 taylor h=" + std::to_string(h), ratio, 10.0 * h);
  }
  r.message = detail::ratio_summary(r, "zeta identities and scattering");
  return r;
}

inline SuiteResult theorem4_suite(unsigned seed = 11, int samples = 200) {
  SuiteResult r{"theorem4", {}, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double path_err = 0.0;
  double dir_err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int g = static_cast<int>(3 * unit(rng));
    const int n = 1 + static_cast<int>(3 * unit(rng));
    const det_engine::SurfaceTopology topo(g, n);
    if (topo.euler() >= 0) continue;
    const double ell = 0.5 + 20.0 * unit(rng);
    const double lz1 = -5.0 + 10.0 * unit(rng);
    const double lz0 = -5.0 + 10.0 * unit(rng);
    const auto rep = det_engine::theorem4_pipeline(lz1, lz0, topo, ell);
    path_err = std::max(path_err, std::abs(rep.value - *rep.alternate_value) / rep.value);
    const double a = det_engine::dirichlet_log_det(1.0, lz0, topo, ell);
    const double b = det_engine::dirichlet_log_det_at_one(lz0, topo, ell);
    const double c = det_engine::dirichlet_log_det_cd(1.0, lz0, topo, ell);
    dir_err = std::max({dir_err, std::abs(std::expm1(a - b)), std::abs(std::expm1(c - b))});
  }
  r.add("doubling two-path", path_err, 1e-12);
  r.add("dirichlet lambda=1 two-path", dir_err, 1e-12);
  r.message = detail::summary(r, "doubling formula", 1e-12);
  return r;
}

inline SuiteResult numericdn_suite() {
  SuiteResult r{"numericdn", {}, {}};
  const numeric_dn::Geometry disc = numeric_dn::DiscGeometry{1.0};
  numeric_dn::ConformalFactor omega;
  omega.cos = {0.0, 0.3};
  std::vector<double> ts;
  for (int i = 0; i <= 10; ++i) ts.push_back(0.1 * i);
  const auto rows = numeric_dn::k_convergence_table(disc, omega, ts, {16, 32, 64});
  for (const auto& row : rows) r.add("K=" + std::to_string(row.K), row.max_residual, 1e-6);
  r.add("monotone in K", numeric_dn::monotone(rows) ? 0.0 : 1.0, 0.0);
  r.add("length quadrature vs series",
        std::abs(numeric_dn::boundary_length_quadrature(disc, omega, 1.0) -
                 numeric_dn::boundary_length_series(disc, omega, 1.0)),
        1e-12);
  r.message = detail::summary(r, "conformal derivative identity", 1e-6);
  return r;
}

/// Runs one suite by name, or all of them for "all".
inline std::vector<SuiteResult> run(const std::string& suite) {
  std::vector<SuiteResult> out;
  const bool all = suite == "all";
  if (all || suite == "appendix") out.push_back(appendix_suite());
  if (all || suite == "bridge") out.push_back(bridge_suite());
  if (all || suite == "lemma") out.push_back(lemma_suite());
  if (all || suite == "functional") out.push_back(functional_suite());
  if (all || suite == "theorem4") out.push_back(theorem4_suite());
  if (all || suite == "numericdn") out.push_back(numericdn_suite());
  if (out.empty()) throw DomainError("verify: unknown suite \"" + suite + "\"");
  return out;
}

}  // namespace dnzeta::verify
