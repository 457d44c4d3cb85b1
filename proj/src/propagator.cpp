#include "bremsim/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bremsim/error.hpp"
#include "bremsim/fft.hpp"

namespace bremsim {

std::string_view to_string(Method m) {
  return m == Method::split_step ? "split_step" : "crank_nicolson";
}

Method parse_method(std::string_view name) {
  if (name == "split_step") return Method::split_step;
  if (name == "crank_nicolson") return Method::crank_nicolson;
  throw Error(ErrorCode::config_semantic, "unknown method '" + std::string(name) + "'", "propagation.method");
}

void PropagationConfig::validate() const {
  if (!(dt != 0.0) || !std::isfinite(dt))
    throw Error(ErrorCode::config_semantic, "dt must be nonzero and finite", "propagation.dt");
  if (n_steps < 1) throw Error(ErrorCode::config_semantic, "n_steps must be >= 1", "propagation.n_steps");
  if (record_stride < 1)
    throw Error(ErrorCode::config_semantic, "record_stride must be >= 1", "propagation.record_stride");
  if (n_steps % record_stride != 0)
    throw Error(ErrorCode::config_semantic, "record_stride must divide n_steps", "propagation.record_stride");
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Accumulates the Trajectory and enforces the mid-run guards.
class Recorder {
public:
  Recorder(const Grid1D& grid, const PotentialSpec& v, const PhysicalConstants& k, std::size_t capacity)
      : grid_(grid), k_(k), spectrum_(grid.size()) {
    const auto n = grid.size();
    accel_.resize(n);
    for (std::size_t j = 0; j < n; ++j) accel_[j] = -gradient(v, grid.x(j)) / k.mass;
    edge_ = std::max<std::size_t>(1, n / 32);
    for (std::size_t m = 0; m < n; ++m)
      if (std::abs(grid.k(m)) > kAliasingFraction * grid.k_max()) alias_bins_.push_back(m);
    for (auto* a : {&traj_.times, &traj_.mean_x, &traj_.mean_p, &traj_.mean_a, &traj_.mean_a_sq, &traj_.norms})
      a->reserve(capacity);
  }

  void record(std::span<const Complex> psi, double t) {
    const double dx = grid_.dx();
    double nrm = 0, mx = 0, ma = 0, ma2 = 0, edge = 0;
    const auto n = psi.size();
    for (std::size_t j = 0; j < n; ++j) {
      const double rho = std::norm(psi[j]);
      nrm += rho;
      mx += rho * grid_.x(j);
      ma += rho * accel_[j];
      ma2 += rho * accel_[j] * accel_[j];
    }
    for (std::size_t j = 0; j < edge_; ++j) edge += std::norm(psi[j]) + std::norm(psi[n - 1 - j]);
    edge *= dx;

    auto buf = spectrum_.buffer();
    std::copy(psi.begin(), psi.end(), buf.begin());
    spectrum_.forward_in_place();
    // |psi~_m|^2 dk = |FFT_m|^2 dx / n
    const double w = dx / static_cast<double>(n);
    double mp = 0, alias = 0;
    for (std::size_t m = 0; m < n; ++m) mp += grid_.k(m) * std::norm(buf[m]);
    for (std::size_t m : alias_bins_) alias += std::norm(buf[m]);
    alias *= w;

    if (traj_.size() == 0) edge_limit_ = std::max(kTailTolerance, 1.5 * edge);
    if (alias > kTailTolerance)
      throw Error(ErrorCode::aliasing, "momentum weight " + fmt(alias) +
                                           " beyond 0.9 of the lattice edge at t = " + fmt(t));
    if (edge > edge_limit_)
      throw Error(ErrorCode::domain_overflow,
                  "probability " + fmt(edge) + " reached the grid boundary zone at t = " + fmt(t));

    traj_.times.push_back(t);
    traj_.norms.push_back(nrm * dx);
    traj_.mean_x.push_back(mx * dx);
    traj_.mean_p.push_back(k_.hbar * mp * w);
    traj_.mean_a.push_back(ma * dx);
    traj_.mean_a_sq.push_back(ma2 * dx);
  }

  Trajectory take() { return std::move(traj_); }

private:
  const Grid1D& grid_;
  const PhysicalConstants& k_;
  FftPlan spectrum_;
  std::vector<double> accel_;
  std::vector<std::size_t> alias_bins_;
  std::size_t edge_ = 1;
  double edge_limit_ = kTailTolerance;
  Trajectory traj_;
};

void check_preconditions(const WaveFunction& psi0, const PotentialSpec& v, const PropagationConfig& cfg,
                         const PhysicalConstants& k) {
  k.validate();
  v.validate();
  cfg.validate();
  const double n0 = norm(psi0);
  if (std::abs(n0 - 1.0) > kNormTolerance)
    throw Error(ErrorCode::config_semantic, "initial state is not normalized (norm " + fmt(n0) + ")");
  const double p_s = momentum_support(psi0, k);
  const double phase = std::abs(cfg.dt) * p_s * p_s / (2.0 * k.mass * k.hbar);
  if (phase >= std::numbers::pi)
    throw Error(ErrorCode::stability, "kinetic phase per step " + fmt(phase) +
                                          " at the occupied momentum support reaches pi; reduce dt",
                "propagation.dt");
}

PropagationResult run_split_step(const WaveFunction& psi0, const PotentialSpec& v, const PropagationConfig& cfg,
                                 const PhysicalConstants& k) {
  const auto& g = psi0.grid;
  const auto n = g.size();
  FftPlan plan(n);
  auto psi = plan.buffer();
  std::copy(psi0.amplitudes.begin(), psi0.amplitudes.end(), psi.begin());

  std::vector<Complex> half_v(n), full_v(n), kinetic(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double phase = -value(v, g.x(j)) * cfg.dt / (2.0 * k.hbar);
    half_v[j] = std::polar(1.0, phase);
    full_v[j] = std::polar(1.0, 2.0 * phase);
  }
  for (std::size_t m = 0; m < n; ++m) {
    const double km = g.k(m);
    kinetic[m] = std::polar(inv_n, -k.hbar * km * km * cfg.dt / (2.0 * k.mass));
  }

  const std::size_t blocks = cfg.n_steps / cfg.record_stride;
  Recorder rec(g, v, k, blocks + 1);
  rec.record(psi, psi0.time);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t j = 0; j < n; ++j) psi[j] *= half_v[j];
    for (std::size_t s = 0; s < cfg.record_stride; ++s) {
      plan.forward_in_place();
      for (std::size_t m = 0; m < n; ++m) psi[m] *= kinetic[m];
      plan.backward_in_place();
      if (s + 1 < cfg.record_stride)
        for (std::size_t j = 0; j < n; ++j) psi[j] *= full_v[j];
    }
    for (std::size_t j = 0; j < n; ++j) psi[j] *= half_v[j];
    const double t = psi0.time + cfg.dt * static_cast<double>((b + 1) * cfg.record_stride);
    rec.record(psi, t);
  }

  WaveFunction out{g, std::vector<Complex>(psi.begin(), psi.end()), psi0.time + cfg.duration()};
  return {std::move(out), rec.take(), cfg.n_steps};
}

PropagationResult run_crank_nicolson(const WaveFunction& psi0, const PotentialSpec& v,
                                     const PropagationConfig& cfg, const PhysicalConstants& k) {
  const auto& g = psi0.grid;
  const auto n = g.size();
  FftPlan plan(n);
  auto buf = plan.buffer();
  const double tau = cfg.dt / (2.0 * k.hbar);
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> pot(n), kin(n);
  for (std::size_t j = 0; j < n; ++j) pot[j] = value(v, g.x(j));
  for (std::size_t m = 0; m < n; ++m) {
    const double km = g.k(m);
    kin[m] = k.hbar * k.hbar * km * km / (2.0 * k.mass);
  }
  std::vector<Complex> precond(n);
  for (std::size_t m = 0; m < n; ++m) precond[m] = inv_n / Complex(1.0, tau * kin[m]);

  std::vector<Complex> psi(psi0.amplitudes), rhs(n), next(n);
  const Complex i_tau(0.0, tau);

  const std::size_t blocks = cfg.n_steps / cfg.record_stride;
  Recorder rec(g, v, k, blocks + 1);
  rec.record(psi, psi0.time);
  constexpr int kMaxIterations = 200;
  for (std::size_t step = 1; step <= cfg.n_steps; ++step) {
    // rhs = (1 - i tau H) psi
    std::copy(psi.begin(), psi.end(), buf.begin());
    plan.forward_in_place();
    for (std::size_t m = 0; m < n; ++m) buf[m] *= kin[m] * inv_n;
    plan.backward_in_place();
    double rhs_norm = 0;
    for (std::size_t j = 0; j < n; ++j) {
      rhs[j] = psi[j] - i_tau * (buf[j] + pot[j] * psi[j]);
      rhs_norm += std::norm(rhs[j]);
    }
    rhs_norm = std::sqrt(rhs_norm);

    double residual = 0;
    int it = 0;
    for (; it < kMaxIterations; ++it) {
      for (std::size_t j = 0; j < n; ++j) buf[j] = rhs[j] - i_tau * pot[j] * psi[j];
      plan.forward_in_place();
      for (std::size_t m = 0; m < n; ++m) buf[m] *= precond[m];
      plan.backward_in_place();
      // A next - rhs = i tau V (next - current), exactly, for this splitting.
      residual = 0;
      for (std::size_t j = 0; j < n; ++j) residual += std::norm(tau * pot[j] * (buf[j] - psi[j]));
      residual = std::sqrt(residual) / rhs_norm;
      std::copy(buf.begin(), buf.end(), psi.begin());
      if (residual <= 1e-13) break;
    }
    if (!(residual <= kCrankNicolsonResidual))
      throw Error(ErrorCode::non_convergence, "Crank-Nicolson solve stalled at relative residual " +
                                                  fmt(residual) + " (step " + std::to_string(step) + ")");
    if (step % cfg.record_stride == 0) rec.record(psi, psi0.time + cfg.dt * static_cast<double>(step));
  }
  WaveFunction out{g, std::move(psi), psi0.time + cfg.duration()};
  return {std::move(out), rec.take(), cfg.n_steps};
}

}  // namespace

PropagationResult propagate(const WaveFunction& psi0, const PotentialSpec& v, const PropagationConfig& cfg,
                            const PhysicalConstants& k) {
  check_preconditions(psi0, v, cfg, k);
  if (cfg.method == Method::split_step) return run_split_step(psi0, v, cfg, k);
  return run_crank_nicolson(psi0, v, cfg, k);
}

namespace {
bool force_cleared(const Trajectory& t, const TransitOptions& opts) {
  double peak_a = 0.0, peak_a2 = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    peak_a = std::max(peak_a, std::abs(t.mean_a[i]));
    peak_a2 = std::max(peak_a2, t.mean_a_sq[i]);
  }
  return std::abs(t.mean_a.back()) <= opts.accel_clearance * peak_a &&
         t.mean_a_sq.back() <= opts.accel_sq_clearance * peak_a2;
}

void append(Trajectory& into, const Trajectory& more) {
  // The first record of a continuation duplicates the last one stored.
  auto tail = [](auto& dst, const auto& src) { dst.insert(dst.end(), src.begin() + 1, src.end()); };
  tail(into.times, more.times);
  tail(into.mean_x, more.mean_x);
  tail(into.mean_p, more.mean_p);
  tail(into.mean_a, more.mean_a);
  tail(into.mean_a_sq, more.mean_a_sq);
  tail(into.norms, more.norms);
}
}  // namespace

PropagationResult propagate_through(const WaveFunction& psi0, const PotentialSpec& v, const PropagationConfig& cfg,
                                    const PhysicalConstants& k, const TransitOptions& opts) {
  auto result = propagate(psi0, v, cfg, k);
  PropagationConfig ext = cfg;
  ext.n_steps = opts.extension_steps ? opts.extension_steps : cfg.n_steps / 8;
  ext.n_steps = std::max(cfg.record_stride, ext.n_steps / cfg.record_stride * cfg.record_stride);
  for (std::size_t i = 0; i < opts.max_extensions && !force_cleared(result.trajectory, opts); ++i) {
    auto more = propagate(result.final_state, v, ext, k);
    append(result.trajectory, more.trajectory);
    result.final_state = std::move(more.final_state);
    result.steps += more.steps;
  }
  return result;
}

double ehrenfest_residual(const Trajectory& traj, const PhysicalConstants& k) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const double dpdt = (traj.mean_p[i + 1] - traj.mean_p[i - 1]) / (traj.times[i + 1] - traj.times[i - 1]);
    worst = std::max(worst, std::abs(dpdt - k.mass * traj.mean_a[i]));
  }
  return worst;
}

double free_gaussian_width(double sigma0_sq, double t, const PhysicalConstants& k) {
  const double r = k.hbar * t / (2.0 * k.mass * sigma0_sq);
  return std::sqrt(sigma0_sq * (1.0 + r * r));
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
  if (!(a.grid == b.grid)) throw Error(ErrorCode::config_semantic, "l2_distance: grids differ");
  double s = 0;
  for (std::size_t j = 0; j < a.amplitudes.size(); ++j) s += std::norm(a.amplitudes[j] - b.amplitudes[j]);
  return std::sqrt(s * a.grid.dx());
}

}  // namespace bremsim
