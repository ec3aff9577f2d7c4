#pragma once

// JSON and CSV input/output. Output numbers are written with %.16e so that
// files are byte-identical across runs.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "dnzeta/errors.hpp"
#include "dnzeta/hyperbolic.hpp"
#include "dnzeta/numeric_dn.hpp"
#include "dnzeta/report.hpp"
#include "dnzeta/zeta_dyn.hpp"

namespace dnzeta::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed input file.
class FormatError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline std::string format_double(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

namespace detail {

inline std::string escape(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

inline void dump(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + escape(it.key()) + ": ";
        dump(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump(v, out, indent, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case json::value_t::string:
      out += escape(j.get<std::string>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Deterministic pretty printer; floats as %.16e.
inline std::string dump(const json& j, int indent = 2) {
  std::string out;
  detail::dump(j, out, indent, 0);
  return out + "\n";
}

/// FNV-1a 64-bit hash, hex.
inline std::string fingerprint(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("malformed JSON in " + path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

namespace detail {

inline double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw FormatError(where + ": missing \"" + key + "\"");
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  throw FormatError(where + ": \"" + key + "\" must be a number");
}

}  // namespace detail

// -- length spectra ---------------------------------------------------------

inline json to_json(const hyperbolic::LengthSpectrum& s, const std::vector<double>& boundary_lengths = {}) {
  json j;
  j["cutoff"] = s.cutoff;
  j["complete_up_to"] = s.complete_up_to;
  if (!s.certified) j["certified"] = false;
  if (s.exhaustive) j["exhaustive"] = true;
  json entries = json::array();
  for (const auto& e : s.entries) {
    json r;
    r["length"] = e.length;
    r["multiplicity"] = e.multiplicity;
    if (e.reflections) r["reflections"] = *e.reflections;
    if (!e.word.empty()) r["word"] = e.word;
    entries.push_back(std::move(r));
  }
  j["entries"] = std::move(entries);
  if (!boundary_lengths.empty()) j["boundary_lengths"] = boundary_lengths;
  return j;
}

struct SpectrumFile {
  hyperbolic::LengthSpectrum spectrum;
  std::vector<double> boundary_lengths;
};

inline SpectrumFile spectrum_from_json(const json& j) {
  const std::string where = "spectrum";
  if (!j.is_object()) throw FormatError("spectrum: top level must be an object");
  SpectrumFile f;
  auto& s = f.spectrum;
  s.cutoff = detail::number(j, "cutoff", where);
  s.complete_up_to = detail::number(j, "complete_up_to", where);
  s.certified = j.value("certified", true);
  s.exhaustive = j.value("exhaustive", false);
  if (!(s.complete_up_to > 0.0)) throw FormatError("spectrum: complete_up_to must be > 0");
  if (!j.contains("entries") || !j.at("entries").is_array()) throw FormatError("spectrum: missing \"entries\" array");
  std::size_t i = 0;
  for (const auto& e : j.at("entries")) {
    const std::string w = "spectrum entry " + std::to_string(i++);
    if (!e.is_object()) throw FormatError(w + ": must be an object");
    hyperbolic::SpectrumEntry r;
    r.length = detail::number(e, "length", w);
    if (!(r.length > 0.0) || !std::isfinite(r.length)) throw FormatError(w + ": length must be positive");
    r.multiplicity = e.contains("multiplicity") ? static_cast<int>(detail::number(e, "multiplicity", w)) : 1;
    if (r.multiplicity < 1) throw FormatError(w + ": multiplicity must be >= 1");
    if (e.contains("reflections")) {
      const double refl = detail::number(e, "reflections", w);
      if (refl < 0 || refl != std::floor(refl)) throw FormatError(w + ": reflections must be a nonnegative integer");
      r.reflections = static_cast<int>(refl);
    }
    if (e.contains("word") && e.at("word").is_string()) r.word = e.at("word").get<std::string>();
    s.entries.push_back(std::move(r));
  }
  s.sort();
  if (j.contains("boundary_lengths")) {
    if (!j.at("boundary_lengths").is_array()) throw FormatError("spectrum: boundary_lengths must be an array");
    for (const auto& v : j.at("boundary_lengths")) {
      if (!v.is_number() || !(v.get<double>() > 0.0)) throw FormatError("spectrum: boundary lengths must be positive");
      f.boundary_lengths.push_back(v.get<double>());
    }
  }
  return f;
}

// -- generators ---------------------------------------------------------------

inline hyperbolic::GroupPresentation generators_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j.at("generators").is_array()) {
    throw FormatError("generators: expected {\"generators\": [...]}");
  }
  std::vector<hyperbolic::MobiusTransform> gens;
  std::vector<std::string> labels;
  std::size_t i = 0;
  for (const auto& g : j.at("generators")) {
    const std::string w = "generator " + std::to_string(i++);
    if (!g.is_object()) throw FormatError(w + ": must be an object");
    gens.emplace_back(detail::number(g, "a", w), detail::number(g, "b", w), detail::number(g, "c", w),
                      detail::number(g, "d", w));
    labels.push_back(g.contains("label") && g.at("label").is_string() ? g.at("label").get<std::string>()
                                                                       : std::string(1, static_cast<char>('a' + labels.size())));
  }
  return hyperbolic::GroupPresentation(std::move(gens), std::move(labels));
}

// -- conformal factor ---------------------------------------------------------

/// {"cos": [a0, a1, ...], "sin": [b1, ...]} or a plain list of cosine coefficients.
inline numeric_dn::ConformalFactor conformal_factor_from_json(const json& j) {
  numeric_dn::ConformalFactor w;
  const auto read = [](const json& arr, const char* what) {
    if (!arr.is_array()) throw FormatError(std::string("omega: ") + what + " must be an array");
    std::vector<double> v;
    for (const auto& x : arr) {
      if (!x.is_number()) throw FormatError(std::string("omega: ") + what + " entries must be numbers");
      v.push_back(x.get<double>());
    }
    return v;
  };
  if (j.is_array()) {
    w.cos = read(j, "coefficients");
  } else if (j.is_object()) {
    if (j.contains("cos")) w.cos = read(j.at("cos"), "cos");
    if (j.contains("sin")) w.sin = read(j.at("sin"), "sin");
  } else {
    throw FormatError("omega: expected an array or {\"cos\": [...], \"sin\": [...]}");
  }
  return w;
}

// -- reports ------------------------------------------------------------------

inline json to_json(const DetReport& r) {
  json j;
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  if (r.alternate_value) j["alternate_value"] = *r.alternate_value;
  if (r.log_det_prime) j["log_det_prime"] = *r.log_det_prime;
  if (r.det_prime) j["det_prime"] = *r.det_prime;
  if (r.boundary_length) j["boundary_length"] = *r.boundary_length;
  j["error_estimate"] = r.error_estimate;
  json inputs;
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  j["inputs"] = std::move(inputs);
  return j;
}

// -- lambda grids -------------------------------------------------------------

/// "A" or "A:B:STEP", endpoints included within 1e-12.
inline std::vector<double> parse_lambda_grid(const std::string& text) {
  const auto parse = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw DomainError("invalid lambda grid \"" + text + "\"");
    }
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) return {parse(parts[0])};
  if (parts.size() != 3) throw DomainError("invalid lambda grid \"" + text + "\": expected A or A:B:STEP");
  const double a = parse(parts[0]);
  const double b = parse(parts[1]);
  const double step = parse(parts[2]);
  if (!(step > 0.0) || b < a) throw DomainError("invalid lambda grid \"" + text + "\": need A <= B and STEP > 0");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double x = a + static_cast<double>(i) * step;
    if (x > b + 1e-12) break;
    out.push_back(x);
    if (out.size() > 1000000) throw DomainError("lambda grid too large");
  }
  return out;
}

inline std::string zeta_csv_header() { return "re_lambda,im_lambda,log_abs,arg,tail_bound\n"; }

inline std::string zeta_csv_row(cplx lambda, const zeta_dyn::ZetaValue& v) {
  return format_double(lambda.real()) + "," + format_double(lambda.imag()) + "," +
         format_double(v.log_value.real()) + "," + format_double(v.log_value.imag()) + "," +
         format_double(v.tail_bound) + "\n";
}

}  // namespace dnzeta::io
