#include "bremsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "bremsim/error.hpp"
#include "bremsim/radiation.hpp"

namespace bremsim {

std::vector<double> SweepConfig::ladder(double l_min, double l_max, std::size_t points) {
  if (points == 0 || !(l_min > 0.0) || !(l_max >= l_min))
    throw Error(ErrorCode::config_semantic, "ladder needs 0 < L_min <= L_max and at least one point", "sweep.L_min");
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = l_min;
    return out;
  }
  const double ratio = std::log(l_max / l_min) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = l_min * std::exp(ratio * static_cast<double>(i));
  out.back() = l_max;
  return out;
}

double default_time_step(double v0_amplitude, double kinetic_energy, double hbar) {
  const double scale = std::max(std::abs(v0_amplitude), kinetic_energy);
  if (!(scale > 0.0)) throw Error(ErrorCode::config_semantic, "dt rule needs nonzero V0 or kinetic energy");
  return 0.1 * hbar / scale;
}

std::size_t default_record_stride(double width, double speed, double dt) {
  const double spacing = 0.1 * width;
  const double per_step = std::abs(speed * dt);
  if (!(per_step > 0.0)) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(spacing / per_step)));
}

RunLayout layout_for_length(const SweepConfig& cfg, const SimulationDefaults& sim, double length, double dt) {
  const auto& k = sim.constants;
  RunLayout out;
  out.packet.envelope = cfg.envelope;
  out.packet.order = cfg.order;
  out.packet.length = length;
  out.packet.p0 = cfg.p0;
  const double gap = out.packet.reach() + force_extent(cfg.potential) + cfg.margin;
  const double dir = cfg.p0 >= 0.0 ? 1.0 : -1.0;
  out.packet.x0 = cfg.potential.center - dir * gap;

  const double speed = std::abs(cfg.p0) / k.mass;
  if (!(speed > 0.0)) throw Error(ErrorCode::config_semantic, "sweep needs p0 != 0", "sweep.p0");
  const double duration = 2.0 * gap / speed;
  auto& prop = out.propagation;
  prop.dt = dt;
  prop.method = sim.method;
  prop.record_stride = sim.record_stride ? sim.record_stride : default_record_stride(cfg.potential.width, speed, dt);
  const auto blocks = static_cast<std::size_t>(std::ceil(duration / (dt * static_cast<double>(prop.record_stride))));
  prop.n_steps = std::max<std::size_t>(1, blocks) * prop.record_stride;
  return out;
}

double PowerLawFit::evaluate(double length) const { return std::exp(intercept + slope * std::log(length)); }

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::fit_underdetermined, "x and y sizes differ");
  if (x.size() < 2)
    throw Error(ErrorCode::fit_underdetermined,
                "power-law fit needs at least two points, got " + std::to_string(x.size()));
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw Error(ErrorCode::fit_underdetermined, "log-log fit needs strictly positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::fit_underdetermined, "power-law fit needs distinct lengths");
  PowerLawFit fit;
  fit.points = x.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.slope_ci = std::numeric_limits<double>::quiet_NaN();
  if (x.size() >= 3) {
    double ssr = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
      ssr += r * r;
    }
    const double dof = n - 2.0;
    const double se = std::sqrt(ssr / dof / sxx);
    boost::math::students_t dist(dof);
    fit.slope_ci = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  }
  return fit;
}

SweepFits fit_rows(const std::vector<SweepRow>& rows, double fit_min, double fit_max) {
  SweepFits out;
  std::vector<double> l, h, q;
  for (const auto& r : rows) {
    if (r.length >= fit_min && r.length <= fit_max) {
      l.push_back(r.length);
      h.push_back(r.e_hydro);
      q.push_back(r.e_qed);
    }
  }
  try {
    out.hydro = fit_power_law(l, h);
    out.qed = fit_power_law(l, q);
  } catch (const Error& e) {
    out.hydro.reset();
    out.qed.reset();
    out.error = e.what();
  }
  return out;
}

double SweepResult::slope_hydro() const {
  return fits.hydro ? fits.hydro->slope : std::numeric_limits<double>::quiet_NaN();
}
double SweepResult::slope_qed() const {
  return fits.qed ? fits.qed->slope : std::numeric_limits<double>::quiet_NaN();
}

unsigned sweep_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BREMSIM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

SweepRow run_point(const SweepConfig& cfg, const SimulationDefaults& sim, double length, double dt) {
  const auto layout = layout_for_length(cfg, sim, length, dt);
  const auto psi0 = make_packet(layout.packet, sim.grid, sim.constants);
  const auto res = propagate_through(psi0, cfg.potential, layout.propagation, sim.constants, sim.transit);
  RadiateOptions opts;
  opts.packet_length = length;
  const auto rec = radiate(res.trajectory, cfg.potential, sim.constants, opts);
  return {length, rec.e_rad_hydro, rec.e_rad_qed, rec.e_rad_classical, rec.impulse, res.steps};
}

double rel_change(double coarse, double fine) {
  if (fine == 0.0) return coarse == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(coarse - fine) / std::abs(fine);
}

std::string length_context(double l) {
  std::ostringstream os;
  os << "L=" << l;
  return os.str();
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, const SimulationDefaults& sim) {
  sim.constants.validate();
  cfg.potential.validate();
  if (cfg.lengths.empty()) throw Error(ErrorCode::config_semantic, "sweep needs at least one length", "sweep.L_values");
  for (std::size_t i = 0; i < cfg.lengths.size(); ++i) {
    if (!(cfg.lengths[i] > 0.0))
      throw Error(ErrorCode::config_semantic, "lengths must be positive", "sweep.L_values");
    if (i > 0 && !(cfg.lengths[i] > cfg.lengths[i - 1]))
      throw Error(ErrorCode::config_semantic, "lengths must be strictly increasing", "sweep.L_values");
  }
  if (!cfg.potential.is_localized())
    throw Error(ErrorCode::config_semantic, "sweeps need a localized force", "potential.shape");
  const double e_kin = cfg.p0 * cfg.p0 / (2.0 * sim.constants.mass);
  if (std::abs(cfg.potential.amplitude) > kWeakForceFraction * e_kin)
    throw Error(ErrorCode::config_semantic, "weak-force regime requires |V0| <= 0.1 E_kin", "potential.V0");

  SweepResult result;
  result.kappa = sim.constants.kappa();
  result.width = cfg.potential.width;
  result.p0 = cfg.p0;
  result.amplitude = cfg.potential.amplitude;
  result.constants = sim.constants;

  double dt = sim.dt > 0.0 ? sim.dt : default_time_step(cfg.potential.amplitude, e_kin, sim.constants.hbar);
  if (sim.refine_dt) {
    // Halve until E_rad moves by at most 5% between dt and dt/2 on the
    // shortest packet.
    const double l0 = cfg.lengths.front();
    for (int attempt = 0; attempt < 8; ++attempt) {
      try {
        const auto coarse = run_point(cfg, sim, l0, dt);
        const auto fine = run_point(cfg, sim, l0, dt / 2);
        result.richardson_change =
            std::max(rel_change(coarse.e_hydro, fine.e_hydro), rel_change(coarse.e_qed, fine.e_qed));
      } catch (const Error& e) {
        throw e.with_context(length_context(l0));
      }
      if (result.richardson_change <= kRichardsonTolerance) break;
      dt /= 2;
    }
  }
  result.dt = dt;

  const auto n = cfg.lengths.size();
  result.rows.resize(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        result.rows[i] = run_point(cfg, sim, cfg.lengths[i], dt);
      } catch (const Error& e) {
        errors[i] = std::make_exception_ptr(e.with_context(length_context(cfg.lengths[i])));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<unsigned>(sweep_threads(sim.threads), static_cast<unsigned>(n));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::sort(result.rows.begin(), result.rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.length < b.length; });
  result.fits = fit_rows(result.rows, cfg.fit_min, cfg.fit_max);

  double mean = 0.0;
  for (const auto& r : result.rows) mean += r.impulse;
  mean /= static_cast<double>(n);
  double drift = 0.0;
  for (const auto& r : result.rows) {
    const double d = std::abs(r.impulse - mean);
    drift = std::max(drift, mean == 0.0 ? (d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                                        : d / std::abs(mean));
  }
  result.impulse_drift = drift;
  if (sim.enforce_impulse && drift > kImpulseDriftLimit) {
    std::ostringstream os;
    os << "impulse varies by " << drift << " relative across the sweep (limit 0.01)";
    throw Error(ErrorCode::impulse_drift, os.str());
  }
  return result;
}

}  // namespace bremsim
