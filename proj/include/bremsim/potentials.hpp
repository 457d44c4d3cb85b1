#pragma once

#include <string>
#include <string_view>

namespace bremsim {

// Closed-form catalog of the electrostatic potential energy V(x) the particle
// moves in. Forces always come from the analytic derivative, never from
// differencing sampled values.
//
//   gaussian_bump       V0 exp(-u^2 / 2 delta^2)
//   rectangular_smooth  V0 [sigma((u + delta/2)/s) - sigma((u - delta/2)/s)]
//   tanh_step_pair      V0/2 [tanh((u + delta/2)/s) - tanh((u - delta/2)/s)]
//   erf_step            V0/2 [1 + erf(u / (sqrt(2) delta))]
//   uniform_force       -V0 u           (V0 is the force, constant everywhere)
//
// with u = x - center and sigma the logistic function. The first three are
// bumps: V -> 0 on both sides, so the net impulse of a transit is zero. The
// erf_step has a localized Gaussian force of width delta with net impulse.
enum class PotentialShape { gaussian_bump, rectangular_smooth, tanh_step_pair, erf_step, uniform_force };

std::string_view to_string(PotentialShape shape);
PotentialShape parse_potential_shape(std::string_view name);

struct PotentialSpec {
  PotentialShape shape = PotentialShape::gaussian_bump;
  double amplitude = 0.0;  // V0 (energy), or force for uniform_force
  double width = 1.0;      // delta
  double center = 0.0;     // xc
  double smoothness = 0.1; // s, only used by the smoothed rectangles

  // Throws Error(config_semantic) naming the violated rule.
  void validate() const;

  bool is_bump() const noexcept;
  bool is_symmetric() const noexcept;
  bool is_localized() const noexcept { return shape != PotentialShape::uniform_force; }

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

double value(const PotentialSpec& spec, double x);
double gradient(const PotentialSpec& spec, double x);

// Distance from the center beyond which |gradient| has fallen below ~1e-16 of
// its peak; infinite for uniform_force.
double force_extent(const PotentialSpec& spec);

// Largest |V| over [x_lo, x_hi], used by integrator guards.
double max_abs_value(const PotentialSpec& spec, double x_lo, double x_hi);

}  // namespace bremsim
