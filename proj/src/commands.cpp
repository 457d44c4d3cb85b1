#include "bremsim/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bremsim/error.hpp"
#include "bremsim/output.hpp"
#include "bremsim/propagator.hpp"
#include "bremsim/radiation.hpp"
#include "bremsim/sweep.hpp"
#include "bremsim/validation.hpp"

namespace bremsim {

namespace {

namespace fs = std::filesystem;

fs::path output_dir(const RunConfig& cfg, const CommandOptions& opts) {
  fs::path dir = opts.out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(opts.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::config_semantic, "cannot create output directory: " + ec.message(), "output.dir");
  return dir;
}

std::ofstream open(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw Error(ErrorCode::config_semantic, "cannot write " + p.string(), "output.dir");
  return os;
}

void log(const CommandOptions& opts, const std::string& line) {
  if (opts.log) *opts.log << line << "\n";
}

void warn(const CommandOptions& opts, ErrorCode code, const std::string& msg) {
  if (opts.strict) throw Error(code, msg + " (strict mode)");
  log(opts, "warning: " + msg);
}

PropagationResult run_propagation(const RunConfig& cfg, const CommandOptions& opts) {
  const auto psi0 = make_packet(cfg.packet, cfg.grid, cfg.constants);
  if (!momentum_support_check(psi0, cfg.constants, 0.1))
    warn(opts, ErrorCode::stability, "packet has momentum weight above 0.9 c; non-relativistic treatment is invalid");
  auto res = cfg.extend_transit && cfg.potential.is_localized()
                 ? propagate_through(psi0, cfg.potential, cfg.propagation, cfg.constants)
                 : propagate(psi0, cfg.potential, cfg.propagation, cfg.constants);
  std::ostringstream os;
  os << "propagated " << res.steps << " steps to t = " << res.final_state.time;
  log(opts, os.str());
  return res;
}

}  // namespace

int cmd_propagate(const RunConfig& cfg, const CommandOptions& opts) {
  const auto dir = output_dir(cfg, opts);
  const auto res = run_propagation(cfg, opts);
  auto os = open(dir / "trajectory.csv");
  write_metadata(os, run_metadata(cfg, "trajectory", cfg.propagation.dt));
  write_trajectory_csv(os, res.trajectory);
  log(opts, "wrote " + (dir / "trajectory.csv").string());
  return 0;
}

int cmd_radiate(const RunConfig& cfg, const CommandOptions& opts) {
  const auto dir = output_dir(cfg, opts);
  const auto res = run_propagation(cfg, opts);
  RadiateOptions ro;
  ro.packet_length = cfg.packet.length;
  const auto rec = radiate(res.trajectory, cfg.potential, cfg.constants, ro);
  if (rec.quadrature_change_hydro > 1e-3 || rec.quadrature_change_qed > 1e-3)
    warn(opts, ErrorCode::stability, "energies change by more than 1e-3 when every other record is dropped");
  if (rec.impulse_discrepancy > 1e-3)
    warn(opts, ErrorCode::stability, "impulse from the force and from the momentum change disagree by " +
                                         format_number(rec.impulse_discrepancy));

  const auto meta = run_metadata(cfg, "radiation", cfg.propagation.dt);
  {
    auto os = open(dir / "trajectory.csv");
    write_metadata(os, run_metadata(cfg, "trajectory", cfg.propagation.dt));
    write_trajectory_csv(os, res.trajectory);
  }
  {
    auto os = open(dir / "radiation.csv");
    write_metadata(os, meta);
    write_radiation_csv(os, rec);
  }
  {
    auto os = open(dir / "radiation_summary.csv");
    write_metadata(os, run_metadata(cfg, "radiation_summary", cfg.propagation.dt));
    write_radiation_summary(os, rec);
  }
  if (opts.log) {
    *opts.log << "E_hydro     = " << format_number(rec.e_rad_hydro) << "\n"
              << "E_qed       = " << format_number(rec.e_rad_qed) << "\n"
              << "E_classical = " << format_number(rec.e_rad_classical) << "\n"
              << "impulse     = " << format_number(rec.impulse) << "\n";
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const CommandOptions& opts) {
  const auto dir = output_dir(cfg, opts);
  const auto section = cfg.sweep_or_default();
  RunConfig resolved = cfg;
  resolved.sweep = section;
  auto sim = resolved.simulation();
  const bool enforce = sim.enforce_impulse;
  sim.enforce_impulse = false;  // rows are written before the drift verdict

  const auto result = run_sweep(section.config, sim);
  auto meta = run_metadata(resolved, "sweep", result.dt, sweep_metadata(result, section.config));
  {
    auto os = open(dir / "sweep.csv");
    write_metadata(os, meta);
    write_sweep_csv(os, result);
  }
  {
    auto os = open(dir / "sweep_fits.csv");
    write_metadata(os, meta);
    write_fit_csv(os, result);
  }
  {
    auto os = open(dir / "sweep_meta.txt");
    write_sidecar(os, meta);
  }
  if (opts.log) {
    *opts.log << "dt = " << format_number(result.dt) << " (Richardson change "
              << format_number(result.richardson_change) << ")\n";
    for (const auto& r : result.rows)
      *opts.log << "L = " << format_number(r.length) << "  E_hydro = " << format_number(r.e_hydro)
                << "  E_qed = " << format_number(r.e_qed) << "  impulse = " << format_number(r.impulse) << "\n";
    if (result.fits.hydro)
      *opts.log << "slope_hydro = " << format_number(result.fits.hydro->slope) << " +- "
                << format_number(result.fits.hydro->slope_ci) << "\n"
                << "slope_qed   = " << format_number(result.fits.qed->slope) << " +- "
                << format_number(result.fits.qed->slope_ci) << "\n";
    else
      *opts.log << "fit error: " << result.fits.error << "\n";
    *opts.log << "impulse drift = " << format_number(result.impulse_drift) << "\n";
  }
  if (!result.fits.hydro) throw Error(ErrorCode::fit_underdetermined, result.fits.error);
  if (enforce && result.impulse_drift > kImpulseDriftLimit)
    throw Error(ErrorCode::impulse_drift, "impulse varies by " + format_number(result.impulse_drift) +
                                              " relative across the sweep (limit 0.01)");
  return 0;
}

int cmd_apparatus(const RunConfig& cfg, const std::string& sweep_csv, const CommandOptions& opts) {
  const auto dir = output_dir(cfg, opts);
  const auto inputs = cfg.apparatus.value_or(ApparatusInputs::defaults());
  std::optional<SweepResult> sweep;
  if (!sweep_csv.empty()) {
    std::ifstream in(sweep_csv);
    if (!in) throw Error(ErrorCode::config_syntax, "cannot read sweep CSV '" + sweep_csv + "'");
    sweep = read_sweep_csv(in);
  }
  const auto report = feasibility_report(inputs, sweep ? &*sweep : nullptr);
  RunConfig with_inputs = cfg;
  with_inputs.apparatus = inputs;
  const auto meta = run_metadata(with_inputs, "apparatus", sweep ? sweep->dt : cfg.propagation.dt);
  {
    auto os = open(dir / "apparatus.txt");
    write_metadata(os, meta);
    os << report.text();
  }
  {
    auto os = open(dir / "apparatus.kv");
    write_metadata(os, meta);
    os << report.key_values();
  }
  if (opts.log) *opts.log << report.text();
  for (const auto& f : report.flags)
    if (opts.strict) throw Error(ErrorCode::config_semantic, f + " (strict mode)");
  return 0;
}

int cmd_validate(const CommandOptions& opts) {
  bool all = true;
  for (const auto& c : run_validation_suite()) {
    all = all && c.passed;
    if (opts.log) *opts.log << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  return all ? 0 : exit_code_for(ErrorCode::validation_failure);
}

}  // namespace bremsim
