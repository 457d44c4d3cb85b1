#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bremsim/commands.hpp"
#include "bremsim/config.hpp"
#include "bremsim/error.hpp"

namespace {

bremsim::RunConfig load(const std::string& path, const std::string& method) {
  auto cfg = path.empty() ? bremsim::parse_config("") : bremsim::load_config(path);
  if (!method.empty()) {
    cfg.propagation.method = bremsim::parse_method(method);
    bremsim::validate(cfg);
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radiation from driven charged wave packets"};
  app.require_subcommand(1);

  std::string config_path, out_dir, method, sweep_csv;
  bool strict = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
    sub->add_option("--method", method, "Propagator")->check(CLI::IsMember({"split_step", "crank_nicolson"}));
    sub->add_flag("--strict", strict, "Treat warnings as errors");
  };
  auto* propagate = app.add_subcommand("propagate", "Propagate one packet and write its trajectory");
  auto* radiate = app.add_subcommand("radiate", "Propagate and integrate the radiated energy");
  auto* sweep = app.add_subcommand("sweep", "Packet-length sweep with power-law fits");
  auto* apparatus = app.add_subcommand("apparatus", "Apparatus feasibility report");
  auto* validate = app.add_subcommand("validate", "Run the invariant suite");
  for (auto* sub : {propagate, radiate, sweep, apparatus}) common(sub);
  validate->add_flag("--strict", strict, "Treat warnings as errors");
  apparatus->add_option("--sweep", sweep_csv, "sweep.csv from a previous sweep")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  bremsim::CommandOptions opts{out_dir, strict, &std::cout};
  try {
    if (validate->parsed()) return bremsim::cmd_validate(opts);
    const auto cfg = load(config_path, method);
    if (propagate->parsed()) return bremsim::cmd_propagate(cfg, opts);
    if (radiate->parsed()) return bremsim::cmd_radiate(cfg, opts);
    if (sweep->parsed()) return bremsim::cmd_sweep(cfg, opts);
    if (apparatus->parsed()) return bremsim::cmd_apparatus(cfg, sweep_csv, opts);
  } catch (const bremsim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bremsim::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
