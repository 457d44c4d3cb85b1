#include "bremsim/apparatus.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "bremsim/error.hpp"

namespace bremsim {

ApparatusInputs ApparatusInputs::defaults() {
  ApparatusInputs in;
  const double sin_alpha = 0.61 * in.de_broglie_wavelength() / 10e-9;
  in.half_angle = std::asin(sin_alpha);
  return in;
}

void ApparatusInputs::validate() const {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::config_semantic, "must be positive and finite", field);
  };
  positive(beam_energy, "apparatus.beam_energy");
  positive(energy_spread, "apparatus.energy_spread");
  positive(e_field, "apparatus.e_field");
  positive(b_field, "apparatus.b_field");
  positive(half_angle, "apparatus.half_angle");
  positive(mass, "apparatus.mass");
  positive(charge, "apparatus.charge");
  if (!(half_angle < std::numbers::pi / 2))
    throw Error(ErrorCode::config_semantic, "cone half-angle must be below pi/2", "apparatus.half_angle");
  if (!(speed() < si::speed_of_light))
    throw Error(ErrorCode::config_semantic, "beam speed must stay below c", "apparatus.beam_energy");
}

double ApparatusInputs::speed() const { return std::sqrt(2.0 * beam_energy / mass); }

double ApparatusInputs::de_broglie_wavelength() const {
  return si::planck / std::sqrt(2.0 * mass * beam_energy);
}

double coherence_length(double speed, double energy_spread, double hbar) {
  if (!(speed > 0.0) || !(energy_spread > 0.0))
    throw Error(ErrorCode::config_semantic, "coherence length needs v > 0 and dE > 0");
  return hbar * speed / (2.0 * energy_spread);
}

Optics optics(double wavelength, double half_angle) {
  if (!(half_angle > 0.0) || half_angle > std::numbers::pi / 2)
    throw Error(ErrorCode::config_semantic, "cone half-angle must lie in (0, pi/2]", "apparatus.half_angle");
  const double s = std::sin(half_angle);
  return {0.61 * wavelength / s, wavelength / (s * s)};
}

double wien_velocity(double e_field, double b_field) {
  if (!(b_field > 0.0)) throw Error(ErrorCode::config_semantic, "Wien filter needs B > 0", "apparatus.b_field");
  return e_field / b_field;
}

FeasibilityReport feasibility_report(const ApparatusInputs& inputs, const SweepResult* sweep) {
  inputs.validate();
  FeasibilityReport r;
  r.inputs = inputs;
  r.speed = inputs.speed();
  r.wavelength = inputs.de_broglie_wavelength();
  r.coherence_length = coherence_length(r.speed, inputs.energy_spread);
  r.optics = optics(r.wavelength, inputs.half_angle);
  r.wien_speed = wien_velocity(inputs.e_field, inputs.b_field);

  if (r.wien_speed >= kRelativisticWarning * si::speed_of_light)
    r.flags.push_back("Wien velocity at or above 0.3 c: non-relativistic treatment invalid");
  if (std::abs(r.wien_speed - r.speed) > kWienMismatch * r.speed)
    r.flags.push_back("Wien velocity does not match the beam speed");

  if (!sweep) return r;
  r.have_sweep = true;
  const auto& k = sweep->constants;
  if (!(std::abs(sweep->p0) > 0.0))
    throw Error(ErrorCode::config_semantic, "sweep has no momentum to map onto the beam", "sweep.p0");

  // Simulation units (l, tau, mass unit mu) map hbar_sim and M_sim onto the SI
  // values; l is pinned by mapping the simulated speed onto the beam speed.
  const double mass_unit = inputs.mass / k.mass;
  r.length_unit = std::abs(sweep->p0) * si::hbar / (k.hbar * inputs.mass * r.speed);
  r.time_unit = k.hbar * mass_unit * r.length_unit * r.length_unit / si::hbar;
  const double energy_unit = mass_unit * r.length_unit * r.length_unit / (r.time_unit * r.time_unit);
  r.force_width = sweep->width * r.length_unit;
  r.force_step = std::abs(sweep->amplitude) * energy_unit;
  r.length_in_units = r.coherence_length / r.length_unit;

  if (r.coherence_length < r.force_width)
    r.flags.push_back("outside suppression regime: coherence length below the force width");

  double lo = 0.0, hi = 0.0;
  if (!sweep->rows.empty()) {
    lo = sweep->rows.front().length;
    hi = sweep->rows.back().length;
  }
  r.extrapolated = r.length_in_units < lo || r.length_in_units > hi;
  if (r.extrapolated) r.flags.push_back("losses extrapolated beyond the simulated length range");

  bool all_zero = true;
  for (const auto& row : sweep->rows) all_zero = all_zero && row.e_hydro == 0.0 && row.e_qed == 0.0;

  // E_SI = kappa_SI * (E_sim / kappa_sim) * l^2 / tau^3.
  const double kappa_si = inputs.charge * inputs.charge /
                          (6.0 * std::numbers::pi * si::vacuum_permittivity * std::pow(si::speed_of_light, 3));
  const double scale = kappa_si / sweep->kappa * r.length_unit * r.length_unit / std::pow(r.time_unit, 3);
  if (all_zero) {
    r.loss_hydro = 0.0;
    r.loss_qed = 0.0;
  } else if (sweep->fits.hydro && sweep->fits.qed) {
    r.loss_hydro = scale * sweep->fits.hydro->evaluate(r.length_in_units);
    r.loss_qed = scale * sweep->fits.qed->evaluate(r.length_in_units);
  } else {
    r.loss_hydro = r.loss_qed = std::nan("");
    r.flags.push_back("no power-law fit available: " + sweep->fits.error);
  }
  if (r.loss_hydro > 0.0 && std::isfinite(r.loss_qed)) r.ratio = r.loss_qed / r.loss_hydro;
  return r;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string FeasibilityReport::text() const {
  std::ostringstream os;
  os << "Beam\n"
     << "  energy            " << num(inputs.beam_energy / si::electron_volt) << " eV\n"
     << "  speed             " << num(speed) << " m/s\n"
     << "  de Broglie        " << num(wavelength) << " m\n"
     << "  energy spread     " << num(inputs.energy_spread / si::electron_volt) << " eV\n"
     << "  coherence length  " << num(coherence_length) << " m  (hbar v / 2 dE)\n"
     << "Optics\n"
     << "  half-angle        " << num(inputs.half_angle) << " rad\n"
     << "  resolution        " << num(optics.resolution) << " m\n"
     << "  depth of focus    " << num(optics.depth_of_focus) << " m\n"
     << "Wien filter\n"
     << "  E / B             " << num(inputs.e_field) << " V/m / " << num(inputs.b_field) << " T\n"
     << "  pass velocity     " << num(wien_speed) << " m/s\n";
  if (have_sweep) {
    os << "Predicted loss per particle\n"
       << "  length unit       " << num(length_unit) << " m\n"
       << "  force width       " << num(force_width) << " m\n"
       << "  force step        " << num(force_step / si::electron_volt) << " eV\n"
       << "  L / length unit   " << num(length_in_units) << (extrapolated ? "  (extrapolated)" : "") << "\n"
       << "  hydrodynamic      " << num(loss_hydro) << " J\n"
       << "  conventional      " << num(loss_qed) << " J\n"
       << "  ratio qed/hydro   " << (ratio ? num(*ratio) : std::string("undefined")) << "\n";
  }
  if (!flags.empty()) {
    os << "Flags\n";
    for (const auto& f : flags) os << "  - " << f << "\n";
  }
  return os.str();
}

std::string FeasibilityReport::key_values() const {
  std::ostringstream os;
  os << "beam_energy_J=" << num(inputs.beam_energy) << "\n"
     << "speed_m_per_s=" << num(speed) << "\n"
     << "wavelength_m=" << num(wavelength) << "\n"
     << "energy_spread_J=" << num(inputs.energy_spread) << "\n"
     << "coherence_length_m=" << num(coherence_length) << "\n"
     << "coherence_convention=hbar*v/(2*dE)\n"
     << "half_angle_rad=" << num(inputs.half_angle) << "\n"
     << "resolution_m=" << num(optics.resolution) << "\n"
     << "depth_of_focus_m=" << num(optics.depth_of_focus) << "\n"
     << "wien_velocity_m_per_s=" << num(wien_speed) << "\n";
  if (have_sweep) {
    os << "length_unit_m=" << num(length_unit) << "\n"
       << "time_unit_s=" << num(time_unit) << "\n"
       << "force_width_m=" << num(force_width) << "\n"
       << "force_step_J=" << num(force_step) << "\n"
       << "length_in_units=" << num(length_in_units) << "\n"
       << "extrapolated=" << (extrapolated ? "true" : "false") << "\n"
       << "loss_hydro_J=" << num(loss_hydro) << "\n"
       << "loss_qed_J=" << num(loss_qed) << "\n"
       << "ratio_qed_over_hydro=" << (ratio ? num(*ratio) : std::string("undefined")) << "\n";
  }
  for (std::size_t i = 0; i < flags.size(); ++i) os << "flag." << i << "=" << flags[i] << "\n";
  return os.str();
}

}  // namespace bremsim
