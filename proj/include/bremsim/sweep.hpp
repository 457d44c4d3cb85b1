#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bremsim/potentials.hpp"
#include "bremsim/propagator.hpp"
#include "bremsim/quantum_state.hpp"

namespace bremsim {

// Packet-length sweep at fixed (V0, delta, p0): only L varies between runs.
struct SweepConfig {
  std::vector<double> lengths;
  PotentialSpec potential;
  Envelope envelope = Envelope::supergaussian;
  int order = 8;
  double p0 = 5.0;
  double fit_min = 0.0;
  double fit_max = 0.0;
  // Gap between the packet's reach and the force extent at t = 0.
  double margin = 5.0;

  // Geometric ladder of `points` lengths from l_min to l_max inclusive.
  static std::vector<double> ladder(double l_min, double l_max, std::size_t points);

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct SimulationDefaults {
  PhysicalConstants constants;
  Grid1D grid{-400.0, 400.0, 16384};
  double dt = 0.0;                // 0: dt rule, then Richardson refinement
  std::size_t record_stride = 0;  // 0: auto
  Method method = Method::split_step;
  unsigned threads = 0;           // 0: BREMSIM_THREADS or hardware concurrency
  bool refine_dt = true;
  bool enforce_impulse = true;
  TransitOptions transit;
};

// dt <= 0.1 hbar / max(|V0|, E_kin).
double default_time_step(double v0_amplitude, double kinetic_energy, double hbar);

// Record spacing of at most delta/10 in travelled distance.
std::size_t default_record_stride(double width, double speed, double dt);

struct RunLayout {
  PacketSpec packet;
  PropagationConfig propagation;
};

// Starts the packet with its reach `margin` clear of the force region and
// sizes the window for the centroid to end symmetrically on the far side.
RunLayout layout_for_length(const SweepConfig& cfg, const SimulationDefaults& sim, double length, double dt);

struct SweepRow {
  double length = 0.0;
  double e_hydro = 0.0;
  double e_qed = 0.0;
  double e_classical = 0.0;
  double impulse = 0.0;
  std::size_t steps = 0;  // time steps taken, extensions included
};

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;   // ln prefactor
  double slope_ci = 0.0;    // 95% half-width; NaN with fewer than 3 points
  std::size_t points = 0;

  double evaluate(double length) const;
};

// Least-squares fit of ln y = intercept + slope ln x. Throws
// Error(fit_underdetermined) with fewer than two points or non-positive data.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct SweepFits {
  std::optional<PowerLawFit> hydro;
  std::optional<PowerLawFit> qed;
  std::string error;  // why the fits are missing, empty when present
};

// Fits e_hydro and e_qed over rows with fit_min <= L <= fit_max.
SweepFits fit_rows(const std::vector<SweepRow>& rows, double fit_min, double fit_max);

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by L
  SweepFits fits;
  double impulse_drift = 0.0;  // max |I - mean| / |mean|
  double dt = 0.0;
  double richardson_change = 0.0;
  double kappa = 0.0;
  double width = 1.0;
  double p0 = 0.0;
  double amplitude = 0.0;  // V0
  PhysicalConstants constants;

  double slope_hydro() const;
  double slope_qed() const;
};

inline constexpr double kImpulseDriftLimit = 0.01;
inline constexpr double kRichardsonTolerance = 0.05;
inline constexpr double kWeakForceFraction = 0.1;

// One propagate + radiate per L, concurrently. Per-run errors are rethrown
// with the offending L attached; Error(impulse_drift) when the impulse varies
// by more than 1% and sim.enforce_impulse is set.
SweepResult run_sweep(const SweepConfig& cfg, const SimulationDefaults& sim);

unsigned sweep_threads(unsigned requested);

}  // namespace bremsim
