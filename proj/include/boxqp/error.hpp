#pragma once

#include <stdexcept>
#include <string>

namespace boxqp {

/// Failure categories surfaced by the library. The CLI maps these onto exit codes.
enum class Errc {
  dimension_mismatch,
  out_of_box,
  invalid_argument,
  dimension_cap,
  numerical_failure,
  certificate_invalid,
  infeasible_witness,
  inconsistent_bounds,
  malformed_json,
  version_mismatch,
  symmetry_violation,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::out_of_box: return "out_of_box";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::dimension_cap: return "dimension_cap";
    case Errc::numerical_failure: return "numerical_failure";
    case Errc::certificate_invalid: return "certificate_invalid";
    case Errc::infeasible_witness: return "infeasible_witness";
    case Errc::inconsistent_bounds: return "inconsistent_bounds";
    case Errc::malformed_json: return "malformed_json";
    case Errc::version_mismatch: return "version_mismatch";
    case Errc::symmetry_violation: return "symmetry_violation";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace boxqp
