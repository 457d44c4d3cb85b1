#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bremsim/apparatus.hpp"
#include "bremsim/potentials.hpp"
#include "bremsim/propagator.hpp"
#include "bremsim/quantum_state.hpp"
#include "bremsim/sweep.hpp"

namespace bremsim {

// Settings that only apply to `sweep`. dt and record_stride of 0 mean auto:
// dt by rule plus halving until the shortest packet's energies settle.
struct SweepSection {
  SweepConfig config;
  double dt = 0.0;
  std::size_t record_stride = 0;
  bool refine_dt = true;
  unsigned threads = 0;
  bool enforce_impulse = true;

  friend bool operator==(const SweepSection&, const SweepSection&) = default;
};

struct RunConfig {
  PhysicalConstants constants;
  Grid1D grid{-400.0, 400.0, 16384};
  PacketSpec packet{Envelope::supergaussian, 8, 0.0, 10.0, 5.0};
  PotentialSpec potential{PotentialShape::gaussian_bump, 0.625, 1.0, 0.0, 0.1};
  PropagationConfig propagation;
  // Keep stepping past n_steps until the force has switched off.
  bool extend_transit = true;
  std::optional<SweepSection> sweep;
  std::optional<ApparatusInputs> apparatus;
  bool deterministic = true;
  std::string output_dir = "out";

  SimulationDefaults simulation() const;
  // Sweep section as written, or the default ladder of eight lengths from
  // 10 to 100 delta fitted over the full range.
  SweepSection sweep_or_default() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Parses `key = value` lines; `#` starts a comment. Auto values are resolved
// and every cross-field rule is checked before returning. Throws
// Error(config_syntax) with line and column, or Error(config_semantic) naming
// the field.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// Fully resolved text that parses back to an equal RunConfig.
std::string serialize(const RunConfig& cfg);

// Cross-field checks run by parse_config.
void validate(const RunConfig& cfg);

// FNV-1a over the serialized form.
std::uint64_t config_hash(const RunConfig& cfg);
std::string config_hash_hex(const RunConfig& cfg);

}  // namespace bremsim
