#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bremsim/config.hpp"
#include "bremsim/propagator.hpp"
#include "bremsim/radiation.hpp"
#include "bremsim/sweep.hpp"

namespace bremsim {

inline constexpr std::string_view kSchemaVersion = "bremsim-csv/1";

using MetadataFields = std::vector<std::pair<std::string, std::string>>;

// Schema, config hash, constants, dt, grid and tolerances, plus `extra`.
MetadataFields run_metadata(const RunConfig& cfg, std::string_view kind, double dt, const MetadataFields& extra = {});

// Writes each field as a "# key: value" line.
void write_metadata(std::ostream& os, const MetadataFields& fields);
// key=value lines, for sidecar files.
void write_sidecar(std::ostream& os, const MetadataFields& fields);

std::string format_number(double v);

// t,mean_x,mean_p,mean_a,mean_a_sq,norm
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
// t,power_hydro,power_qed
void write_radiation_csv(std::ostream& os, const RadiationRecord& rec);
// e_hydro,e_qed,e_classical,impulse,transit_time
void write_radiation_summary(std::ostream& os, const RadiationRecord& rec);
// L,e_hydro,e_qed,e_classical,impulse
void write_sweep_csv(std::ostream& os, const SweepResult& result);
// law,slope,slope_ci,intercept,points
void write_fit_csv(std::ostream& os, const SweepResult& result);

// Sweep metadata needed to reload a sweep CSV.
MetadataFields sweep_metadata(const SweepResult& result, const SweepConfig& cfg);

// Reloads a CSV written by write_sweep_csv with sweep_metadata in its header
// and refits over the recorded window.
SweepResult read_sweep_csv(std::istream& is);

}  // namespace bremsim
