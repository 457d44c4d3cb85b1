#include "bremsim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>

#include "bremsim/error.hpp"
#include "bremsim/propagator.hpp"
#include "bremsim/quantum_state.hpp"
#include "bremsim/radiation.hpp"

namespace bremsim {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Scenario {
  Grid1D grid{-80.0, 80.0, 2048};
  PacketSpec packet{Envelope::gaussian, 2, -25.0, 2.0, 3.0};
  PotentialSpec potential{PotentialShape::erf_step, 0.2, 1.0, 0.0, 0.1};
  PhysicalConstants k;
};

PropagationResult run(const Scenario& s, double dt, std::size_t steps, std::size_t stride, Method m) {
  const auto psi = make_packet(s.packet, s.grid, s.k);
  return propagate(psi, s.potential, {dt, steps, stride, m}, s.k);
}

CheckResult norm_check() {
  Scenario s;
  const auto r = run(s, 0.01, 2000, 10, Method::split_step);
  double worst = 0.0;
  for (double n : r.trajectory.norms) worst = std::max(worst, std::abs(n - 1.0));
  return {"norm conservation", worst <= kNormTolerance, "max |norm - 1| = " + sci(worst)};
}

CheckResult ehrenfest_check() {
  Scenario s;
  const double t_end = 16.0;
  const double dt = 0.02;
  const auto coarse = run(s, dt, static_cast<std::size_t>(t_end / dt), 1, Method::split_step);
  const auto fine = run(s, dt / 2, static_cast<std::size_t>(t_end / dt * 2), 1, Method::split_step);
  const double rc = ehrenfest_residual(coarse.trajectory, s.k);
  const double rf = ehrenfest_residual(fine.trajectory, s.k);
  double peak = 0.0;
  for (double a : coarse.trajectory.mean_a) peak = std::max(peak, std::abs(a) * s.k.mass);
  const double ratio = rc / rf;
  const bool ok = rc <= 1e-3 * peak && std::abs(ratio - 4.0) <= 0.5;
  return {"Ehrenfest residual", ok,
          "residual " + sci(rc) + " (peak force " + sci(peak) + "), dt-halving ratio " + sci(ratio)};
}

CheckResult cauchy_schwarz_check() {
  Scenario s;
  s.potential = {PotentialShape::gaussian_bump, 0.3, 1.0, 0.0, 0.1};
  const auto r = run(s, 0.01, 1600, 4, Method::split_step);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
    const double a = r.trajectory.mean_a[i];
    const double excess = a * a - r.trajectory.mean_a_sq[i];
    worst = std::max(worst, excess / std::max(r.trajectory.mean_a_sq[i], 1e-300));
  }
  const auto rec = radiate(r.trajectory, s.potential, s.k, {WindowPolicy::allow_open, false, 0.0, {}});
  const bool ok = worst <= 1e-12 && rec.e_rad_hydro <= rec.e_rad_qed;
  return {"Cauchy-Schwarz <a>^2 <= <a^2>", ok,
          "worst relative excess " + sci(worst) + ", E_hydro/E_qed = " + sci(rec.e_rad_hydro / rec.e_rad_qed)};
}

CheckResult free_gaussian_check() {
  Scenario s;
  s.grid = Grid1D(-100.0, 100.0, 4096);
  s.packet = {Envelope::gaussian, 2, -5.0, 1.5, 1.0};
  s.potential = {PotentialShape::gaussian_bump, 0.0, 1.0, 0.0, 0.1};
  const double dt = 0.01;
  const auto psi = make_packet(s.packet, s.grid, s.k);
  const auto r = propagate(psi, s.potential, {dt, 1000, 1000, Method::split_step}, s.k);
  const double sigma0_sq = position_variance(psi);
  const double expected = free_gaussian_width(sigma0_sq, r.final_state.time, s.k);
  const double got = std::sqrt(position_variance(r.final_state));
  const double rel = std::abs(got - expected) / expected;
  return {"free Gaussian width law", rel <= 1e-6, "relative error " + sci(rel)};
}

CheckResult cross_method_check() {
  Scenario s;
  s.grid = Grid1D(-120.0, 120.0, 4096);
  s.packet = {Envelope::gaussian, 2, -30.0, 4.0, 3.0};
  const double dt = 0.01;
  const std::size_t steps = 2000;
  const RadiateOptions opts{WindowPolicy::require_complete, false, 0.0, {}};
  const auto psi = make_packet(s.packet, s.grid, s.k);
  auto through = [&](Method m) {
    return radiate(propagate_through(psi, s.potential, {dt, steps, 2, m}, s.k).trajectory, s.potential, s.k, opts);
  };
  const auto a = through(Method::split_step);
  const auto b = through(Method::crank_nicolson);
  const double dh = std::abs(a.e_rad_hydro - b.e_rad_hydro) / std::abs(b.e_rad_hydro);
  const double dq = std::abs(a.e_rad_qed - b.e_rad_qed) / std::abs(b.e_rad_qed);
  return {"split-step vs Crank-Nicolson", dh <= 0.01 && dq <= 0.01,
          "relative differences hydro " + sci(dh) + ", qed " + sci(dq)};
}

CheckResult dipole_check() {
  PhysicalConstants k;
  double worst = 0.0;
  for (double a : {1e-3, 0.5, 7.0}) {
    const double p = total_power(a, k);
    worst = std::max(worst, std::abs(integrate_pattern_over_sphere(a, k, 256) - p) / p);
  }
  return {"dipole pattern sphere integral", worst <= 1e-8, "relative error " + sci(worst)};
}

CheckResult moment_check() {
  PhysicalConstants k;
  k.charge = 1.7;
  const Grid1D grid(-40.0, 40.0, 1024);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    PacketSpec spec{trial % 2 ? Envelope::gaussian : Envelope::supergaussian, 4, -5.0 + 10.0 * u(rng),
                    1.0 + 2.0 * u(rng), -4.0 + 8.0 * u(rng)};
    const auto psi = make_packet(spec, grid, k);
    const auto I = moment_I(1, 2.0 * u(rng) - 1.0, psi, k);
    const double expected = k.charge * expect_momentum(psi, k) / k.mass;
    worst = std::max(worst, std::abs(I - expected) / std::max(std::abs(expected), 1.0));
  }
  return {"first moment equals q<p>/M", worst <= 1e-10, "worst deviation " + sci(worst)};
}

}  // namespace

std::vector<CheckResult> run_validation_suite() {
  const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks{
      {"norm conservation", norm_check},
      {"Ehrenfest residual", ehrenfest_check},
      {"Cauchy-Schwarz <a>^2 <= <a^2>", cauchy_schwarz_check},
      {"free Gaussian width law", free_gaussian_check},
      {"split-step vs Crank-Nicolson", cross_method_check},
      {"dipole pattern sphere integral", dipole_check},
      {"first moment equals q<p>/M", moment_check},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : checks) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("error: ") + e.what()});
    }
  }
  return out;
}

}  // namespace bremsim
