#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "bremsim/potentials.hpp"
#include "bremsim/propagator.hpp"
#include "bremsim/quantum_state.hpp"

namespace bremsim {

// Endpoint check applied before integrating: the recorded window must start
// and end with the force switched off (|end value| <= 1e-6 of the peak).
enum class WindowPolicy { require_complete, allow_open };

inline constexpr double kWindowTolerance = 1e-6;

// kappa * int <a>^2 dt, trapezoid on the recorded samples.
double e_rad_hydro(const Trajectory& traj, const PhysicalConstants& k,
                   WindowPolicy policy = WindowPolicy::require_complete);
// kappa * int <a^2> dt.
double e_rad_qed(const Trajectory& traj, const PhysicalConstants& k,
                 WindowPolicy policy = WindowPolicy::require_complete);

struct ImpulseEstimate {
  double integrated_force = 0.0;  // int M <a> dt
  double momentum_change = 0.0;   // <p>(T) - <p>(0)
  double force_scale = 0.0;       // int M |<a>| dt

  // |difference| relative to max(|momentum_change|, force_scale); zero when
  // both vanish. Symmetric kicks have ~zero net impulse, so the total kick
  // magnitude is the meaningful scale there.
  double relative_discrepancy() const noexcept;
};

ImpulseEstimate impulse(const Trajectory& traj, const PhysicalConstants& k);

struct ClassicalTrajectory {
  std::vector<double> times;
  std::vector<double> x;
  std::vector<double> v;
  std::vector<double> a;
};

struct ClassicalRadiation {
  double energy = 0.0;
  ClassicalTrajectory trajectory;
};

// Point charge under M dv/dt = -dV/dx, RK4 with the radiated energy carried
// as an extra state component. Stops once the particle has left the force
// region moving outward; Error(trapped_particle) if that does not happen
// within max_steps.
ClassicalRadiation e_rad_classical(double x0, double v0, const PotentialSpec& v, const PhysicalConstants& k,
                                   double dt, std::size_t max_steps = 50'000'000);

// Power per solid angle (q^2 / 4 pi c^3) a^2 sin^2 theta.
double angular_pattern(double a_mean, double theta, const PhysicalConstants& k);
// kappa a^2
double total_power(double a_mean, const PhysicalConstants& k);
// Composite Simpson over theta with n_theta intervals (even), phi analytic.
double integrate_pattern_over_sphere(double a_mean, const PhysicalConstants& k, std::size_t n_theta);

// (q/2M) int psi* { P (mu x)^(m-1) + (mu x)^(m-1) P } psi dx, with mu the
// direction cosine between the observation direction and the x axis. The
// imaginary part is rounding residue of the Hermitian symmetrization.
std::complex<double> moment_I(int m, double direction_cosine, const WaveFunction& psi, const PhysicalConstants& k);

// |B| = (q / c^2 R0) |a| sin theta for the far-field magnetic amplitude.
double farfield_amplitude(double a_mean, double direction_cosine, double r0, const PhysicalConstants& k);

struct RadiationRecord {
  double e_rad_hydro = 0.0;
  double e_rad_qed = 0.0;
  double e_rad_classical = 0.0;
  double impulse = 0.0;
  double impulse_discrepancy = 0.0;
  double transit_time = 0.0;
  // kappa * impulse^2 v / (M^2 L): long-packet estimate, present when the
  // packet length is known.
  std::optional<double> hydro_estimate;
  // Relative change of each energy when every other record is dropped.
  double quadrature_change_hydro = 0.0;
  double quadrature_change_qed = 0.0;
  std::vector<double> times;
  std::vector<double> power_hydro;
  std::vector<double> power_qed;
};

struct RadiateOptions {
  WindowPolicy policy = WindowPolicy::require_complete;
  bool classical = true;
  double classical_dt = 0.0;  // 0: derive from the trajectory's record spacing
  std::optional<double> packet_length;
};

RadiationRecord radiate(const Trajectory& traj, const PotentialSpec& v, const PhysicalConstants& k,
                        const RadiateOptions& opts = {});

}  // namespace bremsim
