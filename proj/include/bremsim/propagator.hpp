#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "bremsim/potentials.hpp"
#include "bremsim/quantum_state.hpp"

namespace bremsim {

enum class Method { split_step, crank_nicolson };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

struct PropagationConfig {
  // Negative dt evolves backward in time; config files only accept dt > 0.
  double dt = 0.01;
  std::size_t n_steps = 1;
  std::size_t record_stride = 1;
  Method method = Method::split_step;

  void validate() const;
  double duration() const noexcept { return dt * static_cast<double>(n_steps); }

  friend bool operator==(const PropagationConfig&, const PropagationConfig&) = default;
};

// Observables recorded every record_stride steps, including t = 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> mean_x;
  std::vector<double> mean_p;
  std::vector<double> mean_a;
  std::vector<double> mean_a_sq;
  std::vector<double> norms;

  std::size_t size() const noexcept { return times.size(); }
};

struct PropagationResult {
  WaveFunction final_state;
  Trajectory trajectory;
  std::size_t steps = 0;
};

inline constexpr double kCrankNicolsonResidual = 1e-10;

// Advances psi0 under i hbar dpsi/dt = [P^2/2M + V(x)] psi.
//
// split_step: exp(-iV dt/2hbar) exp(-iT dt/hbar) exp(-iV dt/2hbar) per step,
// kinetic factor applied on the momentum lattice.
// crank_nicolson: (1 + i H dt/2hbar) psi' = (1 - i H dt/2hbar) psi, solved by
// a kinetic-preconditioned fixed-point iteration to relative residual 1e-10.
//
// Guards: Error(stability) if |dt| p_s^2 / 2M hbar >= pi for the occupied
// momentum support p_s; Error(aliasing) if more than 1e-8 probability reaches
// the outer 10% of the momentum lattice; Error(domain_overflow) if
// probability accumulates in the outer 1/32 of the grid; Error(non_convergence)
// on a failed Crank-Nicolson solve.
PropagationResult propagate(const WaveFunction& psi0, const PotentialSpec& v, const PropagationConfig& cfg,
                            const PhysicalConstants& k);

// Runs cfg, then keeps extending in segments of extension_steps until the
// force has switched off at the last record: |<a>| <= accel_clearance * peak
// and <a^2> <= accel_sq_clearance * peak. The trailing edge of a dispersing
// packet can linger in the force region well after its centroid has left.
struct TransitOptions {
  double accel_clearance = 1e-7;
  double accel_sq_clearance = 1e-11;
  std::size_t extension_steps = 0;  // 0: n_steps / 8 rounded to the stride
  std::size_t max_extensions = 64;
};

PropagationResult propagate_through(const WaveFunction& psi0, const PotentialSpec& v, const PropagationConfig& cfg,
                                    const PhysicalConstants& k, const TransitOptions& opts = {});

// max over interior records of |d<p>/dt (central difference) - M <a>|.
double ehrenfest_residual(const Trajectory& traj, const PhysicalConstants& k);

// Root-mean-square width sqrt(<x^2> - <x>^2) of a free Gaussian whose initial
// position variance is sigma0_sq.
double free_gaussian_width(double sigma0_sq, double t, const PhysicalConstants& k);

// L2 distance sqrt(sum |a - b|^2 dx) between states on the same grid.
double l2_distance(const WaveFunction& a, const WaveFunction& b);

}  // namespace bremsim
