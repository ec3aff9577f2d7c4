// dnzeta: command-line front end.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical contract violated.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dnzeta/dnzeta.hpp"
#include "dnzeta/io.hpp"

namespace {

using dnzeta::cplx;
using dnzeta::io::json;
namespace io = dnzeta::io;

enum class Format { json, csv, plain };

struct RunConfig {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> params;
  Format format = Format::json;

  void set(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
  void set(const std::string& key, double value) { params.emplace_back(key, io::format_double(value)); }

  std::string canonical() const {
    std::string s = subcommand;
    for (const auto& [k, v] : params) s += ";" + k + "=" + v;
    return s;
  }
  std::string fingerprint() const { return io::fingerprint(canonical()); }
};

json header(const RunConfig& cfg) {
  json j;
  j["schema"] = io::kSchemaVersion;
  j["command"] = cfg.subcommand;
  j["config_fingerprint"] = cfg.fingerprint();
  return j;
}

void emit(const RunConfig& cfg, json body) {
  if (cfg.format == Format::plain) {
    std::cout << "# " << cfg.subcommand << " (config " << cfg.fingerprint() << ")\n";
    for (auto it = body.begin(); it != body.end(); ++it) {
      if (it.key() == "schema" || it.key() == "command" || it.key() == "config_fingerprint") continue;
      const auto& v = it.value();
      std::cout << it.key() << " = " << (v.is_number_float() ? io::format_double(v.get<double>()) : v.dump()) << "\n";
    }
    return;
  }
  std::cout << io::dump(body);
}

json report_body(const RunConfig& cfg, const dnzeta::DetReport& r) {
  json j = header(cfg);
  const json body = io::to_json(r);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

// -- subcommands ----------------------------------------------------------------

int run_annulus(RunConfig& cfg, double rho, std::optional<int> modes) {
  cfg.set("rho", rho);
  if (modes) cfg.set("modes", std::to_string(*modes));
  if (!(rho > 1.0)) throw dnzeta::DomainError("annulus: rho must be > 1");
  const auto geom = dnzeta::dn_explicit::AnnulusGeometry::from_rho(rho);
  const auto rep = dnzeta::dn_explicit::annulus_det_prime(geom);
  json j = header(cfg);
  j["ratio"] = rep.value;
  j["ratio_closed_form"] = dnzeta::dn_explicit::annulus_ratio_closed_form(geom);
  const json body = io::to_json(rep);
  for (auto it = body.begin(); it != body.end(); ++it) {
    if (it.key() != "value") j[it.key()] = it.value();
  }
  if (modes) {
    if (*modes < 0) throw dnzeta::DomainError("annulus: --modes must be >= 0");
    json ev = json::array();
    json m0;
    m0["n"] = 0;
    m0["eigenvalues"] = {0.0, dnzeta::dn_explicit::annulus_mode0_eigenvalue(geom)};
    ev.push_back(m0);
    for (int n = 1; n <= *modes; ++n) {
      const auto [lp, lm] = dnzeta::dn_explicit::annulus_eigenvalues(geom, n);
      json m;
      m["n"] = n;
      m["eigenvalues"] = {lp, lm};
      ev.push_back(m);
    }
    j["modes"] = ev;
  }
  emit(cfg, j);
  return 0;
}

int run_disc(RunConfig& cfg, double radius) {
  cfg.set("radius", radius);
  emit(cfg, report_body(cfg, dnzeta::dn_explicit::disc_det_prime(radius)));
  return 0;
}

int run_cylinder(RunConfig& cfg, double ell) {
  cfg.set("ell", ell);
  const dnzeta::dn_explicit::CylinderGeometry geom(ell);
  const auto rep = dnzeta::dn_explicit::cylinder_det_prime(geom);
  const auto scat = dnzeta::det_engine::cylinder_scattering_route(ell);
  json j = report_body(cfg, rep);
  j["bridge_rho_log"] = geom.bridge_alpha();
  j["scattering_det_prime"] = *scat.det_prime;
  j["scattering_boundary_length"] = *scat.boundary_length;
  j["scattering_ratio"] = scat.value;
  emit(cfg, j);
  return 0;
}

int run_spectrum(RunConfig& cfg, const std::string& gen_path, int max_word, std::optional<double> cutoff,
                 std::size_t budget, const std::string& out_path) {
  cfg.set("generators", gen_path);
  cfg.set("max_word_len", std::to_string(max_word));
  if (cutoff) cfg.set("cutoff", *cutoff);
  cfg.set("word_budget", std::to_string(budget));
  const auto g = io::generators_from_json(io::read_json_file(gen_path));
  dnzeta::hyperbolic::EnumerationOptions opts;
  opts.max_word_length = max_word;
  opts.word_budget = budget;
  const double L = cutoff.value_or(std::numeric_limits<double>::infinity());
  const auto spec = dnzeta::hyperbolic::enumerate_primitive_classes(g, L, opts);
  io::write_text_file(out_path, io::dump(io::to_json(spec)));
  json j = header(cfg);
  j["out"] = out_path;
  j["classes"] = spec.entries.size();
  j["complete_up_to"] = spec.complete_up_to;
  j["certified"] = spec.certified;
  if (!spec.entries.empty()) j["min_length"] = spec.min_length();
  j["delta_estimate"] = nullptr;
  if (g.rank() > 1) {
    try {
      const auto est = dnzeta::hyperbolic::exponent_estimate(spec, g.rank());
      j["delta_estimate"] = est.delta;
      j["delta_fit_r_squared"] = est.r_squared;
    } catch (const dnzeta::DomainError&) {
      // too few classes for a fit
    }
  } else {
    j["delta_estimate"] = 0.0;
  }
  emit(cfg, j);
  return 0;
}

int run_zeta(RunConfig& cfg, const std::string& spec_path, const std::string& kind, const std::string& grid,
             std::optional<double> delta_opt) {
  cfg.set("spectrum", spec_path);
  cfg.set("kind", kind);
  cfg.set("lambda", grid);
  if (delta_opt) cfg.set("delta", *delta_opt);
  const auto file = io::spectrum_from_json(io::read_json_file(spec_path));
  const auto lambdas = io::parse_lambda_grid(grid);
  if (kind == "selberg-g0" && file.boundary_lengths.empty()) {
    throw dnzeta::DomainError("zeta: selberg-g0 needs \"boundary_lengths\" in the spectrum file");
  }

  // exhaustive spectra converge everywhere; otherwise fit the counting function
  double delta = 1.0;
  if (delta_opt) {
    delta = *delta_opt;
  } else if (file.spectrum.exhaustive) {
    delta = 0.0;
  } else if (file.spectrum.count_up_to(file.spectrum.complete_up_to) >= 10) {
    try {
      delta = dnzeta::hyperbolic::exponent_estimate(file.spectrum, 2).delta;
    } catch (const dnzeta::DomainError&) {
      delta = 1.0;
    }
  }

  std::vector<std::pair<double, dnzeta::zeta_dyn::ZetaValue>> rows;
  for (double lam : lambdas) {
    const cplx l(lam, 0.0);
    if (kind == "ruelle") {
      rows.emplace_back(lam, dnzeta::zeta_dyn::ruelle(file.spectrum, l, delta));
    } else if (kind == "selberg") {
      rows.emplace_back(lam, dnzeta::zeta_dyn::selberg(file.spectrum, l, delta));
    } else {
      rows.emplace_back(lam, dnzeta::zeta_dyn::selberg_boundary(file.boundary_lengths, file.spectrum, l, delta));
    }
  }

  if (cfg.format == Format::csv) {
    std::cout << "# config " << cfg.fingerprint() << " schema " << io::kSchemaVersion << "\n";
    std::cout << io::zeta_csv_header();
    for (const auto& [lam, v] : rows) std::cout << io::zeta_csv_row(cplx(lam, 0.0), v);
    return 0;
  }
  json j = header(cfg);
  j["kind"] = kind;
  j["delta"] = delta;
  j["complete_up_to"] = file.spectrum.complete_up_to;
  json values = json::array();
  for (const auto& [lam, v] : rows) {
    json r;
    r["lambda"] = lam;
    r["log_value"] = v.log_value.real();
    r["arg"] = v.log_value.imag();
    r["tail_bound"] = v.tail_bound;
    if (v.k_terms > 0) r["k_terms"] = v.k_terms;
    values.push_back(std::move(r));
  }
  j["values"] = std::move(values);
  if (cfg.format == Format::plain) {
    std::cout << "# zeta " << kind << " (config " << cfg.fingerprint() << ")\n";
    for (const auto& [lam, v] : rows) {
      std::cout << "lambda " << io::format_double(lam) << "  log " << io::format_double(v.log_value.real())
                << "  tail_bound " << io::format_double(v.tail_bound) << "\n";
    }
    return 0;
  }
  std::cout << io::dump(j);
  return 0;
}

int run_detdn(RunConfig& cfg, int chi, std::optional<double> ell, std::optional<double> limit) {
  cfg.set("chi", std::to_string(chi));
  if (ell) cfg.set("ell", *ell);
  if (limit) cfg.set("limit", *limit);
  const auto topo = dnzeta::det_engine::SurfaceTopology::from_euler(chi);
  dnzeta::det_engine::Theorem2Input data;
  if (ell) data = dnzeta::det_engine::CylinderData{*ell};
  if (limit) data = dnzeta::det_engine::LimitData{*limit};
  emit(cfg, report_body(cfg, dnzeta::det_engine::theorem2_value(topo, data)));
  return 0;
}

int run_theorem4(RunConfig& cfg, double zg1, double zg01, int chi, double ell) {
  cfg.set("zg1", zg1);
  cfg.set("zg01", zg01);
  cfg.set("chi", std::to_string(chi));
  cfg.set("ell", ell);
  if (!(zg1 > 0.0) || !(zg01 > 0.0)) throw dnzeta::DomainError("theorem4: zeta values must be positive");
  const auto topo = dnzeta::det_engine::SurfaceTopology::from_euler(chi);
  const auto rep = dnzeta::det_engine::theorem4_pipeline(std::log(zg1), std::log(zg01), topo, ell);
  json j = report_body(cfg, rep);
  j["two_path_rel_diff"] = std::abs(rep.value - *rep.alternate_value) / rep.value;
  j["log_det_laplacian_double"] = dnzeta::det_engine::sarnak_log_det(std::log(zg1), topo);
  j["log_det_dirichlet"] = dnzeta::det_engine::dirichlet_log_det_at_one(std::log(zg01), topo, ell);
  j["length_spectrum_rhs"] = dnzeta::det_engine::length_spectrum_rhs(std::log(zg1), std::log(zg01), topo, ell);
  emit(cfg, j);
  return 0;
}

int run_verify(RunConfig& cfg, const std::string& suite) {
  cfg.set("suite", suite);
  const auto results = dnzeta::verify::run(suite);
  bool ok = true;
  if (cfg.format == Format::json) {
    json j = header(cfg);
    json arr = json::array();
    for (const auto& r : results) {
      ok = ok && r.passed();
      json s;
      s["suite"] = r.name;
      s["passed"] = r.passed();
      s["message"] = r.message;
      s["max_error"] = r.max_error();
      json checks = json::array();
      for (const auto& c : r.checks) {
        json cj;
        cj["name"] = c.name;
        cj["error"] = c.error;
        cj["tolerance"] = c.tolerance;
        cj["passed"] = c.passed;
        checks.push_back(std::move(cj));
      }
      s["checks"] = std::move(checks);
      arr.push_back(std::move(s));
    }
    j["suites"] = std::move(arr);
    std::cout << io::dump(j);
  } else {
    for (const auto& r : results) {
      ok = ok && r.passed();
      std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.message << "\n";
      if (!r.passed()) {
        for (const auto& c : r.checks) {
          if (!c.passed) std::cout << "  failed " << c.name << ": " << c.error << " > " << c.tolerance << "\n";
        }
      }
    }
  }
  if (!ok) std::cerr << "error [verification]: suite failed\n";
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinants of Dirichlet-to-Neumann maps and dynamical zeta functions"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));

  double rho = 0, radius = 0, ell = 0, zg1 = 0, zg01 = 0;
  std::optional<int> modes;
  auto* annulus = app.add_subcommand("annulus", "det'(N)/l for the annulus 1 < |z| < rho");
  annulus->add_option("--rho", rho)->required();
  annulus->add_option("--modes", modes, "List eigenvalues of modes 0..K");

  auto* disc = app.add_subcommand("disc", "det'(N) for the disc of radius R");
  disc->add_option("--radius", radius)->required();

  auto* cylinder = app.add_subcommand("cylinder", "hyperbolic cylinder with closed geodesic of length L");
  cylinder->add_option("--ell", ell)->required();

  std::string gen_path, out_path;
  int max_word = 0;
  std::optional<double> cutoff;
  auto* spectrum = app.add_subcommand("spectrum", "enumerate primitive classes of a Schottky group");
  spectrum->add_option("--generators", gen_path)->required();
  spectrum->add_option("--max-word-len", max_word)->required();
  spectrum->add_option("--cutoff", cutoff, "Length cutoff");
  spectrum->add_option("--out", out_path)->required();
  std::size_t budget = dnzeta::hyperbolic::EnumerationOptions{}.word_budget;
  spectrum->add_option("--word-budget", budget, "Maximum number of words visited");

  std::string spec_path, kind, grid;
  std::optional<double> delta;
  auto* zeta = app.add_subcommand("zeta", "Ruelle or Selberg zeta on a lambda grid");
  zeta->add_option("--spectrum", spec_path)->required();
  zeta->add_option("--kind", kind)->required()->check(CLI::IsMember({"ruelle", "selberg", "selberg-g0"}));
  zeta->add_option("--lambda", grid, "A or A:B:STEP")->required();
  zeta->add_option("--delta", delta, "Convergence abscissa");

  int chi = 0;
  std::optional<double> det_ell, limit;
  auto* detdn = app.add_subcommand("detdn", "det'(N)/l from the Euler characteristic");
  detdn->add_option("--chi", chi)->required();
  auto* ell_opt = detdn->add_option("--ell", det_ell, "Closed geodesic length (chi = 0)");
  auto* limit_opt = detdn->add_option("--limit", limit, "lim (2 pi lambda)^{chi-1} R(lambda) at 0 (chi < 0)");
  ell_opt->excludes(limit_opt);

  int t4_chi = 0;
  auto* theorem4 = app.add_subcommand("theorem4", "det'(N)/l from Z'_G(1) and Z_G0(1)");
  theorem4->add_option("--zg1", zg1, "Z'_G(1)")->required();
  theorem4->add_option("--zg01", zg01, "Z_G0(1)")->required();
  theorem4->add_option("--chi", t4_chi)->required();
  theorem4->add_option("--ell", ell, "Boundary length")->required();

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run self-checks");
  std::vector<std::string> suites = dnzeta::verify::suite_names();
  suites.push_back("all");
  verify->add_option("--suite", suite)->check(CLI::IsMember(suites));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  cfg.format = format == "csv" ? Format::csv : format == "plain" ? Format::plain : Format::json;
  try {
    if (cfg.format == Format::csv && !zeta->parsed()) throw dnzeta::DomainError("--format csv is only available for zeta");
    if (annulus->parsed()) {
      cfg.subcommand = "annulus";
      return run_annulus(cfg, rho, modes);
    }
    if (disc->parsed()) {
      cfg.subcommand = "disc";
      return run_disc(cfg, radius);
    }
    if (cylinder->parsed()) {
      cfg.subcommand = "cylinder";
      return run_cylinder(cfg, ell);
    }
    if (spectrum->parsed()) {
      cfg.subcommand = "spectrum";
      return run_spectrum(cfg, gen_path, max_word, cutoff, budget, out_path);
    }
    if (zeta->parsed()) {
      cfg.subcommand = "zeta";
      return run_zeta(cfg, spec_path, kind, grid, delta);
    }
    if (detdn->parsed()) {
      cfg.subcommand = "detdn";
      return run_detdn(cfg, chi, det_ell, limit);
    }
    if (theorem4->parsed()) {
      cfg.subcommand = "theorem4";
      return run_theorem4(cfg, zg1, zg01, t4_chi, ell);
    }
    if (verify->parsed()) {
      cfg.subcommand = "verify";
      return run_verify(cfg, suite);
    }
  } catch (const dnzeta::ContractViolation& e) {
    std::cerr << "error [" << e.invariant() << "]: " << e.what() << "\n";
    return 2;
  } catch (const dnzeta::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
