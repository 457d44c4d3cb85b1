#pragma once

#include <stdexcept>
#include <string>

namespace bremsim {

enum class ErrorCode {
  config_syntax,
  config_semantic,
  aliasing,
  domain_overflow,
  stability,
  window_incomplete,
  trapped_particle,
  non_convergence,
  impulse_drift,
  fit_underdetermined,
  validation_failure,
};

const char* to_string(ErrorCode code);

// Process exit status for the CLI: 1 config, 2 numerical guard, 3 validation.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message, std::string field = {});

  ErrorCode code() const noexcept { return code_; }
  // Dotted config path of the offending field, empty when not tied to one.
  const std::string& field() const noexcept { return field_; }

  Error with_context(const std::string& prefix) const;

private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace bremsim
