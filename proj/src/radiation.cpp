#include "bremsim/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bremsim/error.hpp"

namespace bremsim {

namespace {

double trapezoid(std::span<const double> t, std::span<const double> f, std::size_t step = 1,
                 std::size_t last = std::numeric_limits<std::size_t>::max()) {
  if (t.size() < 2) return 0.0;
  last = std::min(last, t.size() - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + step <= last; i += step) sum += 0.5 * (f[i] + f[i + step]) * (t[i + step] - t[i]);
  return sum;
}

std::vector<double> squared(std::span<const double> a) {
  std::vector<double> out(a.size());
  std::transform(a.begin(), a.end(), out.begin(), [](double x) { return x * x; });
  return out;
}

void check_window(std::span<const double> series, const char* what) {
  if (series.empty()) throw Error(ErrorCode::window_incomplete, "empty trajectory");
  double peak = 0.0;
  for (double s : series) peak = std::max(peak, std::abs(s));
  if (peak == 0.0) return;
  const double start = std::abs(series.front()) / peak;
  const double end = std::abs(series.back()) / peak;
  if (start > kWindowTolerance || end > kWindowTolerance) {
    std::ostringstream os;
    os << what << " at the window ends is " << std::max(start, end)
       << " of its peak (limit 1e-6); the packet has not fully traversed the force region";
    throw Error(ErrorCode::window_incomplete, os.str());
  }
}

double relative_change(double coarse, double fine) {
  if (fine == 0.0) return coarse == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(coarse - fine) / std::abs(fine);
}

}  // namespace

double e_rad_hydro(const Trajectory& traj, const PhysicalConstants& k, WindowPolicy policy) {
  if (policy == WindowPolicy::require_complete) check_window(traj.mean_a, "<a>");
  return k.kappa() * trapezoid(traj.times, squared(traj.mean_a));
}

double e_rad_qed(const Trajectory& traj, const PhysicalConstants& k, WindowPolicy policy) {
  if (policy == WindowPolicy::require_complete) check_window(traj.mean_a_sq, "<a^2>");
  return k.kappa() * trapezoid(traj.times, traj.mean_a_sq);
}

double ImpulseEstimate::relative_discrepancy() const noexcept {
  const double scale = std::max(std::abs(momentum_change), force_scale);
  if (scale == 0.0) return 0.0;
  return std::abs(integrated_force - momentum_change) / scale;
}

ImpulseEstimate impulse(const Trajectory& traj, const PhysicalConstants& k) {
  ImpulseEstimate out;
  if (traj.size() == 0) return out;
  std::vector<double> abs_a(traj.mean_a.size());
  std::transform(traj.mean_a.begin(), traj.mean_a.end(), abs_a.begin(), [](double a) { return std::abs(a); });
  out.integrated_force = k.mass * trapezoid(traj.times, traj.mean_a);
  out.force_scale = k.mass * trapezoid(traj.times, abs_a);
  out.momentum_change = traj.mean_p.back() - traj.mean_p.front();
  return out;
}

ClassicalRadiation e_rad_classical(double x0, double v0, const PotentialSpec& v, const PhysicalConstants& k,
                                   double dt, std::size_t max_steps) {
  if (!(dt > 0.0)) throw Error(ErrorCode::config_semantic, "classical integrator needs dt > 0");
  if (v0 == 0.0) throw Error(ErrorCode::config_semantic, "classical integrator needs v0 != 0");
  const double extent = force_extent(v);
  auto accel = [&](double x) { return -gradient(v, x) / k.mass; };
  auto outside_moving_away = [&](double x, double vel) {
    const double u = x - v.center;
    return std::abs(u) > extent && u * vel > 0.0;
  };

  ClassicalRadiation out;
  auto& tr = out.trajectory;
  double t = 0.0, x = x0, vel = v0, energy = 0.0;
  auto push = [&] {
    tr.times.push_back(t);
    tr.x.push_back(x);
    tr.v.push_back(vel);
    tr.a.push_back(accel(x));
  };
  push();
  std::size_t step = 0;
  while (!outside_moving_away(x, vel)) {
    if (++step > max_steps) {
      std::ostringstream os;
      os << "particle did not leave the force region within " << max_steps << " steps (x = " << x
         << ", v = " << vel << ")";
      throw Error(ErrorCode::trapped_particle, os.str());
    }
    // State (x, v, E) with dE/dt = a(x)^2.
    const double a1 = accel(x);
    const double x2 = x + 0.5 * dt * vel, v2 = vel + 0.5 * dt * a1;
    const double a2 = accel(x2);
    const double x3 = x + 0.5 * dt * v2, v3 = vel + 0.5 * dt * a2;
    const double a3 = accel(x3);
    const double x4 = x + dt * v3, v4 = vel + dt * a3;
    const double a4 = accel(x4);
    x += dt / 6.0 * (vel + 2.0 * v2 + 2.0 * v3 + v4);
    vel += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    energy += dt / 6.0 * (a1 * a1 + 2.0 * a2 * a2 + 2.0 * a3 * a3 + a4 * a4);
    t += dt;
    push();
  }
  out.energy = k.kappa() * energy;
  return out;
}

double angular_pattern(double a_mean, double theta, const PhysicalConstants& k) {
  const double s = std::sin(theta);
  return k.charge * k.charge / (4.0 * std::numbers::pi * k.c * k.c * k.c) * a_mean * a_mean * s * s;
}

double total_power(double a_mean, const PhysicalConstants& k) { return k.kappa() * a_mean * a_mean; }

double integrate_pattern_over_sphere(double a_mean, const PhysicalConstants& k, std::size_t n_theta) {
  if (n_theta < 2 || n_theta % 2 != 0)
    throw Error(ErrorCode::config_semantic, "Simpson rule needs an even interval count >= 2");
  const double h = std::numbers::pi / static_cast<double>(n_theta);
  double sum = 0.0;
  for (std::size_t i = 0; i <= n_theta; ++i) {
    const double theta = h * static_cast<double>(i);
    const double w = (i == 0 || i == n_theta) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * angular_pattern(a_mean, theta, k) * std::sin(theta);
  }
  return 2.0 * std::numbers::pi * sum * h / 3.0;
}

std::complex<double> moment_I(int m, double direction_cosine, const WaveFunction& psi, const PhysicalConstants& k) {
  if (m < 1) throw Error(ErrorCode::config_semantic, "moment order must be >= 1");
  const auto& g = psi.grid;
  const auto n = g.size();
  std::vector<double> weight(n);
  std::vector<Complex> weighted(n);
  for (std::size_t j = 0; j < n; ++j) {
    weight[j] = std::pow(direction_cosine * g.x(j), m - 1);
    weighted[j] = weight[j] * psi.amplitudes[j];
  }
  const Complex minus_i_hbar(0.0, -k.hbar);
  const auto d_weighted = spectral_derivative(g, weighted);
  const auto d_psi = spectral_derivative(g, psi.amplitudes);
  Complex sum = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    sum += std::conj(psi.amplitudes[j]) * minus_i_hbar * (d_weighted[j] + weight[j] * d_psi[j]);
  return sum * g.dx() * k.charge / (2.0 * k.mass);
}

double farfield_amplitude(double a_mean, double direction_cosine, double r0, const PhysicalConstants& k) {
  if (!(r0 > 0.0)) throw Error(ErrorCode::config_semantic, "observation distance R0 must be > 0");
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - direction_cosine * direction_cosine));
  return k.charge / (k.c * k.c * r0) * std::abs(a_mean) * sin_theta;
}

RadiationRecord radiate(const Trajectory& traj, const PotentialSpec& v, const PhysicalConstants& k,
                        const RadiateOptions& opts) {
  RadiationRecord r;
  r.e_rad_hydro = e_rad_hydro(traj, k, opts.policy);
  r.e_rad_qed = e_rad_qed(traj, k, opts.policy);

  const auto imp = impulse(traj, k);
  r.impulse = imp.integrated_force;
  r.impulse_discrepancy = imp.relative_discrepancy();

  r.times = traj.times;
  r.power_hydro.resize(traj.size());
  r.power_qed.resize(traj.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    r.power_hydro[i] = total_power(traj.mean_a[i], k);
    r.power_qed[i] = k.kappa() * traj.mean_a_sq[i];
    peak = std::max(peak, traj.mean_a_sq[i]);
  }
  if (peak > 0.0) {
    std::size_t first = traj.size(), last = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (traj.mean_a_sq[i] >= kWindowTolerance * peak) {
        first = std::min(first, i);
        last = i;
      }
    }
    r.transit_time = traj.times[last] - traj.times[first];
  }

  if (traj.size() >= 3) {
    const std::size_t last = 2 * ((traj.size() - 1) / 2);
    const auto a2 = squared(traj.mean_a);
    r.quadrature_change_hydro = relative_change(trapezoid(traj.times, a2, 2, last), trapezoid(traj.times, a2, 1, last));
    r.quadrature_change_qed =
        relative_change(trapezoid(traj.times, traj.mean_a_sq, 2, last), trapezoid(traj.times, traj.mean_a_sq, 1, last));
  }

  const double x0 = traj.mean_x.empty() ? 0.0 : traj.mean_x.front();
  const double v0 = traj.mean_p.empty() ? 0.0 : traj.mean_p.front() / k.mass;
  if (opts.packet_length && v0 != 0.0)
    r.hydro_estimate = k.kappa() * r.impulse * r.impulse * std::abs(v0) / (k.mass * k.mass * *opts.packet_length);

  r.e_rad_classical = std::numeric_limits<double>::quiet_NaN();
  if (opts.classical && v.is_localized() && v0 != 0.0) {
    const double dt = opts.classical_dt > 0.0 ? opts.classical_dt : 0.01 * v.width / std::abs(v0);
    r.e_rad_classical = e_rad_classical(x0, v0, v, k, dt).energy;
  }
  return r;
}

}  // namespace bremsim
