#include "bremsim/output.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "bremsim/error.hpp"
#include "bremsim/propagator.hpp"
#include "bremsim/quantum_state.hpp"

namespace bremsim {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

MetadataFields run_metadata(const RunConfig& cfg, std::string_view kind, double dt, const MetadataFields& extra) {
  const auto& k = cfg.constants;
  MetadataFields f{
      {"schema", std::string(kSchemaVersion)},
      {"kind", std::string(kind)},
      {"config_hash", config_hash_hex(cfg)},
      {"constants", "hbar=" + format_number(k.hbar) + " mass=" + format_number(k.mass) +
                        " charge=" + format_number(k.charge) + " c=" + format_number(k.c) +
                        " kappa=" + format_number(k.kappa())},
      {"dt", format_number(dt)},
      {"grid", "x_min=" + format_number(cfg.grid.x_min()) + " x_max=" + format_number(cfg.grid.x_max()) +
                   " n=" + std::to_string(cfg.grid.size())},
      {"method", std::string(to_string(cfg.propagation.method))},
      {"tolerances", "tail=" + format_number(kTailTolerance) + " norm=" + format_number(kNormTolerance) +
                         " aliasing_fraction=" + format_number(kAliasingFraction) +
                         " cn_residual=" + format_number(kCrankNicolsonResidual) +
                         " window=" + format_number(kWindowTolerance) +
                         " impulse_drift=" + format_number(kImpulseDriftLimit) +
                         " richardson=" + format_number(kRichardsonTolerance)},
  };
  f.insert(f.end(), extra.begin(), extra.end());
  return f;
}

void write_metadata(std::ostream& os, const MetadataFields& fields) {
  for (const auto& [key, value] : fields) os << "# " << key << ": " << value << "\n";
}

void write_sidecar(std::ostream& os, const MetadataFields& fields) {
  for (const auto& [key, value] : fields) os << key << "=" << value << "\n";
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << "t,mean_x,mean_p,mean_a,mean_a_sq,norm\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << format_number(t.times[i]) << ',' << format_number(t.mean_x[i]) << ',' << format_number(t.mean_p[i])
       << ',' << format_number(t.mean_a[i]) << ',' << format_number(t.mean_a_sq[i]) << ','
       << format_number(t.norms[i]) << "\n";
  }
}

void write_radiation_csv(std::ostream& os, const RadiationRecord& rec) {
  os << "t,power_hydro,power_qed\n";
  for (std::size_t i = 0; i < rec.times.size(); ++i)
    os << format_number(rec.times[i]) << ',' << format_number(rec.power_hydro[i]) << ','
       << format_number(rec.power_qed[i]) << "\n";
}

void write_radiation_summary(std::ostream& os, const RadiationRecord& rec) {
  os << "e_hydro,e_qed,e_classical,impulse,transit_time\n"
     << format_number(rec.e_rad_hydro) << ',' << format_number(rec.e_rad_qed) << ','
     << format_number(rec.e_rad_classical) << ',' << format_number(rec.impulse) << ','
     << format_number(rec.transit_time) << "\n";
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  os << "L,e_hydro,e_qed,e_classical,impulse\n";
  for (const auto& row : r.rows)
    os << format_number(row.length) << ',' << format_number(row.e_hydro) << ',' << format_number(row.e_qed) << ','
       << format_number(row.e_classical) << ',' << format_number(row.impulse) << "\n";
}

void write_fit_csv(std::ostream& os, const SweepResult& r) {
  os << "law,slope,slope_ci,intercept,points\n";
  auto row = [&](const char* law, const std::optional<PowerLawFit>& f) {
    if (!f) return;
    os << law << ',' << format_number(f->slope) << ',' << format_number(f->slope_ci) << ','
       << format_number(f->intercept) << ',' << f->points << "\n";
  };
  row("hydro", r.fits.hydro);
  row("qed", r.fits.qed);
}

MetadataFields sweep_metadata(const SweepResult& r, const SweepConfig& cfg) {
  return {
      {"sweep.kappa", format_number(r.kappa)},
      {"sweep.width", format_number(r.width)},
      {"sweep.p0", format_number(r.p0)},
      {"sweep.V0", format_number(r.amplitude)},
      {"sweep.hbar", format_number(r.constants.hbar)},
      {"sweep.mass", format_number(r.constants.mass)},
      {"sweep.charge", format_number(r.constants.charge)},
      {"sweep.c", format_number(r.constants.c)},
      {"sweep.fit_min", format_number(cfg.fit_min)},
      {"sweep.fit_max", format_number(cfg.fit_max)},
      {"sweep.dt", format_number(r.dt)},
      {"sweep.richardson_change", format_number(r.richardson_change)},
      {"sweep.impulse_drift", format_number(r.impulse_drift)},
      {"sweep.fit_error", r.fits.error.empty() ? "none" : r.fits.error},
  };
}

SweepResult read_sweep_csv(std::istream& is) {
  std::map<std::string, std::string> meta;
  std::vector<SweepRow> rows;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::config_syntax, "sweep CSV line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(": ");
      if (colon != std::string::npos) meta[line.substr(2, colon - 2)] = line.substr(colon + 2);
      continue;
    }
    if (!header_seen) {
      if (line != "L,e_hydro,e_qed,e_classical,impulse") fail("unexpected column header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail("bad number '" + cell + "'");
      }
    }
    if (v.size() != 5) fail("expected 5 columns");
    rows.push_back({v[0], v[1], v[2], v[3], v[4]});
  }
  if (!header_seen) fail("missing column header");
  auto get = [&](const std::string& key) {
    const auto it = meta.find(key);
    if (it == meta.end()) throw Error(ErrorCode::config_syntax, "sweep CSV lacks metadata '" + key + "'");
    return std::stod(it->second);
  };
  SweepResult r;
  r.rows = rows;
  r.kappa = get("sweep.kappa");
  r.width = get("sweep.width");
  r.p0 = get("sweep.p0");
  r.amplitude = get("sweep.V0");
  r.constants.hbar = get("sweep.hbar");
  r.constants.mass = get("sweep.mass");
  r.constants.charge = get("sweep.charge");
  r.constants.c = get("sweep.c");
  r.dt = get("sweep.dt");
  r.richardson_change = get("sweep.richardson_change");
  r.impulse_drift = get("sweep.impulse_drift");
  r.fits = fit_rows(r.rows, get("sweep.fit_min"), get("sweep.fit_max"));
  return r;
}

}  // namespace bremsim
