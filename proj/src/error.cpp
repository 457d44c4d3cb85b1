#include "bremsim/error.hpp"

namespace bremsim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::config_syntax: return "config syntax error";
    case ErrorCode::config_semantic: return "config error";
    case ErrorCode::aliasing: return "aliasing guard";
    case ErrorCode::domain_overflow: return "domain overflow";
    case ErrorCode::stability: return "stability guard";
    case ErrorCode::window_incomplete: return "window incomplete";
    case ErrorCode::trapped_particle: return "trapped particle";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::impulse_drift: return "impulse drift";
    case ErrorCode::fit_underdetermined: return "fit underdetermined";
    case ErrorCode::validation_failure: return "validation failure";
  }
  return "error";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::config_syntax:
    case ErrorCode::config_semantic:
      return 1;
    case ErrorCode::validation_failure:
      return 3;
    default:
      return 2;
  }
}

namespace {
std::string compose(ErrorCode code, const std::string& message, const std::string& field) {
  std::string out = to_string(code);
  if (!field.empty()) out += " [" + field + "]";
  out += ": " + message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::string field)
    : std::runtime_error(compose(code, message, field)), code_(code), field_(std::move(field)) {}

Error Error::with_context(const std::string& prefix) const {
  Error copy = *this;
  static_cast<std::runtime_error&>(copy) = std::runtime_error(prefix + ": " + what());
  return copy;
}

}  // namespace bremsim
