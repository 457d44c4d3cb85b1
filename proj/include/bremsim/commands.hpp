#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "bremsim/apparatus.hpp"
#include "bremsim/config.hpp"

namespace bremsim {

struct CommandOptions {
  std::string out_dir;  // empty: the config's output.dir
  bool strict = false;  // warnings become errors
  std::ostream* log = nullptr;  // progress and warnings; null for silence
};

// Each returns the process exit code. Errors surface as bremsim::Error.
int cmd_propagate(const RunConfig& cfg, const CommandOptions& opts);
int cmd_radiate(const RunConfig& cfg, const CommandOptions& opts);
int cmd_sweep(const RunConfig& cfg, const CommandOptions& opts);
// sweep_csv: a file written by `sweep`, or empty for optics-only output.
int cmd_apparatus(const RunConfig& cfg, const std::string& sweep_csv, const CommandOptions& opts);
int cmd_validate(const CommandOptions& opts);

}  // namespace bremsim
