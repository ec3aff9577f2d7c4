#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dnzeta {

enum class DetMethod { closed_form, zeta_pipeline, functional_equation, theorem4_pipeline };

inline const char* to_string(DetMethod m) {
  switch (m) {
    case DetMethod::closed_form:
      return "closed_form";
    case DetMethod::zeta_pipeline:
      return "zeta_pipeline";
    case DetMethod::functional_equation:
      return "functional_equation";
    case DetMethod::theorem4_pipeline:
      return "theorem4_pipeline";
  }
  return "unknown";
}

/// Result of a determinant evaluation. `value` is always det'(N) / l(boundary);
/// the unnormalized determinant is filled in when the geometry fixes it.
struct DetReport {
  double value = 0.0;
  DetMethod method = DetMethod::closed_form;
  std::optional<double> log_det_prime;
  std::optional<double> det_prime;
  std::optional<double> boundary_length;
  std::vector<std::pair<std::string, double>> inputs;
  double error_estimate = 0.0;

  /// Second value for reports that carry two independent evaluations.
  std::optional<double> alternate_value;
};

}  // namespace dnzeta
