#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bremsim/sweep.hpp"

namespace bremsim {

// CODATA 2018 recommended values (exact where the 2019 SI fixes them).
namespace si {
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double planck = 6.62607015e-34;        // J s, exact
inline constexpr double elementary_charge = 1.602176634e-19;  // C, exact
inline constexpr double electron_mass = 9.1093837015e-31;     // kg
inline constexpr double speed_of_light = 299792458.0;         // m/s, exact
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double electron_volt = elementary_charge;       // J
}  // namespace si

// All fields SI: energies in J, fields in V/m and T, angle in rad.
struct ApparatusInputs {
  double beam_energy = 10e3 * si::electron_volt;
  double energy_spread = 0.1 * si::electron_volt;
  double e_field = 5.93e5;
  double b_field = 1e-2;
  double half_angle = 0.0;  // 0 after defaults(): filled in for R = 10 nm
  double mass = si::electron_mass;
  double charge = si::elementary_charge;

  // 10 keV electrons, 0.1 eV spread, Wien fields for ~5.93e7 m/s and a cone
  // giving 10 nm resolution.
  static ApparatusInputs defaults();

  void validate() const;
  // Non-relativistic sqrt(2 E_b / M).
  double speed() const;
  // h / sqrt(2 M E_b).
  double de_broglie_wavelength() const;

  friend bool operator==(const ApparatusInputs&, const ApparatusInputs&) = default;
};

// hbar v / (2 dE).
double coherence_length(double speed, double energy_spread, double hbar = si::hbar);

struct Optics {
  double resolution = 0.0;      // 0.61 lambda / sin(alpha)
  double depth_of_focus = 0.0;  // lambda / sin^2(alpha)
};
Optics optics(double wavelength, double half_angle);

// E / B; throws for B <= 0.
double wien_velocity(double e_field, double b_field);

struct FeasibilityReport {
  ApparatusInputs inputs;
  double speed = 0.0;
  double wavelength = 0.0;
  double coherence_length = 0.0;
  Optics optics;
  double wien_speed = 0.0;

  bool have_sweep = false;
  // Simulation length unit in metres, chosen so the simulated p0 maps onto the
  // beam speed.
  double length_unit = 0.0;
  double time_unit = 0.0;
  double force_width = 0.0;      // delta in metres
  double force_step = 0.0;       // |V0| in J
  double length_in_units = 0.0;  // coherence length / length_unit
  bool extrapolated = false;
  double loss_hydro = 0.0;  // J per particle
  double loss_qed = 0.0;
  std::optional<double> ratio;  // loss_qed / loss_hydro, unset when undefined

  std::vector<std::string> flags;

  std::string text() const;
  std::string key_values() const;
};

inline constexpr double kRelativisticWarning = 0.3;
inline constexpr double kWienMismatch = 0.01;

FeasibilityReport feasibility_report(const ApparatusInputs& inputs, const SweepResult* sweep = nullptr);

}  // namespace bremsim
