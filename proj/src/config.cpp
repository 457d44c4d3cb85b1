#include "bremsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include "bremsim/error.hpp"

namespace bremsim {

SimulationDefaults RunConfig::simulation() const {
  SimulationDefaults sim;
  sim.constants = constants;
  sim.grid = grid;
  sim.method = propagation.method;
  if (sweep) {
    sim.dt = sweep->dt;
    sim.record_stride = sweep->record_stride;
    sim.refine_dt = sweep->refine_dt;
    sim.threads = sweep->threads;
    sim.enforce_impulse = sweep->enforce_impulse;
  }
  return sim;
}

SweepSection RunConfig::sweep_or_default() const {
  if (sweep) return *sweep;
  SweepSection s;
  s.config.lengths = SweepConfig::ladder(10.0 * potential.width, 100.0 * potential.width, 8);
  s.config.potential = potential;
  s.config.envelope = packet.envelope;
  s.config.order = packet.order;
  s.config.p0 = packet.p0;
  s.config.fit_min = s.config.lengths.front();
  s.config.fit_max = s.config.lengths.back();
  return s;
}

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;  // 1-based column of the value
};

[[noreturn]] void syntax(const Entry& e, std::size_t column, const std::string& msg) {
  throw Error(ErrorCode::config_syntax,
              "line " + std::to_string(e.line) + ", column " + std::to_string(column) + ": " + msg, e.key);
}

[[noreturn]] void semantic(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::config_semantic, msg, field);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

using UnitTable = std::map<std::string, double, std::less<>>;

const UnitTable kSimUnits{{"", 1.0}, {"su", 1.0}};
const UnitTable kEnergyUnits{{"J", 1.0}, {"eV", si::electron_volt}, {"keV", 1e3 * si::electron_volt},
                             {"MeV", 1e6 * si::electron_volt}};
const UnitTable kEFieldUnits{{"V/m", 1.0}, {"kV/m", 1e3}, {"MV/m", 1e6}};
const UnitTable kBFieldUnits{{"T", 1.0}, {"mT", 1e-3}, {"uT", 1e-6}};
const UnitTable kAngleUnits{{"rad", 1.0}, {"mrad", 1e-3}, {"urad", 1e-6}, {"deg", std::numbers::pi / 180.0}};

double parse_number(const Entry& e, std::string_view text, std::size_t column, const UnitTable& units,
                    bool require_unit) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) syntax(e, column, "expected a number, found '" + s + "'");
  if (!std::isfinite(v)) syntax(e, column, "number is not finite");
  const std::string unit = trim(std::string_view(end));
  if (require_unit && unit.empty()) {
    std::string allowed;
    for (const auto& [name, f] : units) allowed += (allowed.empty() ? "" : ", ") + name;
    semantic(e.key, "value needs an explicit unit (one of " + allowed + ")");
  }
  const auto it = units.find(unit);
  if (it == units.end()) {
    std::string allowed;
    for (const auto& [name, f] : units)
      if (!name.empty()) allowed += (allowed.empty() ? "" : ", ") + name;
    semantic(e.key, "unit '" + unit + "' not accepted here (expected " + allowed + ")");
  }
  return v * it->second;
}

double sim_number(const Entry& e) { return parse_number(e, e.value, e.column, kSimUnits, false); }

std::size_t integer(const Entry& e) {
  std::size_t v = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  const auto [ptr, ec] = std::from_chars(b, end, v);
  if (ec != std::errc{} || ptr != end) syntax(e, e.column + (ptr - b), "expected a non-negative integer");
  return v;
}

bool boolean(const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  syntax(e, e.column, "expected true or false");
}

std::vector<double> number_list(const Entry& e) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= e.value.size()) {
    auto comma = e.value.find(',', start);
    if (comma == std::string::npos) comma = e.value.size();
    const auto piece = std::string_view(e.value).substr(start, comma - start);
    const auto skip = piece.find_first_not_of(" \t");
    if (skip == std::string_view::npos) syntax(e, e.column + start, "empty list element");
    out.push_back(parse_number(e, trim(piece), e.column + start + skip, kSimUnits, false));
    start = comma + 1;
  }
  return out;
}

struct State {
  RunConfig cfg;
  double x_min = -400.0, x_max = 400.0;
  std::size_t n = 16384;
  bool x0_auto = true, dt_auto = true, steps_auto = true, stride_auto = true;

  bool have_sweep = false;
  SweepSection sweep;
  std::vector<double> lengths;
  double l_min = 0.0, l_max = 0.0;
  std::size_t points = 0;
  bool have_fit_min = false, have_fit_max = false;

  bool have_apparatus = false;
  ApparatusInputs apparatus = ApparatusInputs::defaults();
};

bool is_auto(const Entry& e) { return e.value == "auto"; }

using Handler = std::function<void(const Entry&, State&)>;

const std::map<std::string, Handler, std::less<>>& handlers() {
  static const std::map<std::string, Handler, std::less<>> table = [] {
    std::map<std::string, Handler, std::less<>> h;
    h["constants.hbar"] = [](const Entry& e, State& s) { s.cfg.constants.hbar = sim_number(e); };
    h["constants.mass"] = [](const Entry& e, State& s) { s.cfg.constants.mass = sim_number(e); };
    h["constants.charge"] = [](const Entry& e, State& s) { s.cfg.constants.charge = sim_number(e); };
    h["constants.c"] = [](const Entry& e, State& s) { s.cfg.constants.c = sim_number(e); };

    h["grid.x_min"] = [](const Entry& e, State& s) { s.x_min = sim_number(e); };
    h["grid.x_max"] = [](const Entry& e, State& s) { s.x_max = sim_number(e); };
    h["grid.n"] = [](const Entry& e, State& s) { s.n = integer(e); };

    h["packet.envelope"] = [](const Entry& e, State& s) {
      if (e.value == "gaussian") s.cfg.packet.envelope = Envelope::gaussian;
      else if (e.value == "supergaussian") s.cfg.packet.envelope = Envelope::supergaussian;
      else semantic(e.key, "envelope must be gaussian or supergaussian");
    };
    h["packet.order"] = [](const Entry& e, State& s) { s.cfg.packet.order = static_cast<int>(integer(e)); };
    h["packet.x0"] = [](const Entry& e, State& s) {
      s.x0_auto = is_auto(e);
      if (!s.x0_auto) s.cfg.packet.x0 = sim_number(e);
    };
    h["packet.L"] = [](const Entry& e, State& s) { s.cfg.packet.length = sim_number(e); };
    h["packet.p0"] = [](const Entry& e, State& s) { s.cfg.packet.p0 = sim_number(e); };

    h["potential.shape"] = [](const Entry& e, State& s) { s.cfg.potential.shape = parse_potential_shape(e.value); };
    h["potential.V0"] = [](const Entry& e, State& s) { s.cfg.potential.amplitude = sim_number(e); };
    h["potential.width"] = [](const Entry& e, State& s) { s.cfg.potential.width = sim_number(e); };
    h["potential.center"] = [](const Entry& e, State& s) { s.cfg.potential.center = sim_number(e); };
    h["potential.smoothness"] = [](const Entry& e, State& s) { s.cfg.potential.smoothness = sim_number(e); };

    h["propagation.dt"] = [](const Entry& e, State& s) {
      s.dt_auto = is_auto(e);
      if (!s.dt_auto) s.cfg.propagation.dt = sim_number(e);
    };
    h["propagation.n_steps"] = [](const Entry& e, State& s) {
      s.steps_auto = is_auto(e);
      if (!s.steps_auto) s.cfg.propagation.n_steps = integer(e);
    };
    h["propagation.record_stride"] = [](const Entry& e, State& s) {
      s.stride_auto = is_auto(e);
      if (!s.stride_auto) s.cfg.propagation.record_stride = integer(e);
    };
    h["propagation.method"] = [](const Entry& e, State& s) { s.cfg.propagation.method = parse_method(e.value); };
    h["propagation.extend_transit"] = [](const Entry& e, State& s) { s.cfg.extend_transit = boolean(e); };

    auto sw = [](auto f) {
      return [f](const Entry& e, State& s) {
        s.have_sweep = true;
        f(e, s);
      };
    };
    h["sweep.L_values"] = sw([](const Entry& e, State& s) { s.lengths = number_list(e); });
    h["sweep.L_min"] = sw([](const Entry& e, State& s) { s.l_min = sim_number(e); });
    h["sweep.L_max"] = sw([](const Entry& e, State& s) { s.l_max = sim_number(e); });
    h["sweep.points"] = sw([](const Entry& e, State& s) { s.points = integer(e); });
    h["sweep.fit_min"] = sw([](const Entry& e, State& s) {
      s.have_fit_min = true;
      s.sweep.config.fit_min = sim_number(e);
    });
    h["sweep.fit_max"] = sw([](const Entry& e, State& s) {
      s.have_fit_max = true;
      s.sweep.config.fit_max = sim_number(e);
    });
    h["sweep.margin"] = sw([](const Entry& e, State& s) { s.sweep.config.margin = sim_number(e); });
    h["sweep.dt"] = sw([](const Entry& e, State& s) { s.sweep.dt = is_auto(e) ? 0.0 : sim_number(e); });
    h["sweep.record_stride"] = sw([](const Entry& e, State& s) {
      s.sweep.record_stride = is_auto(e) ? 0 : integer(e);
    });
    h["sweep.refine_dt"] = sw([](const Entry& e, State& s) { s.sweep.refine_dt = boolean(e); });
    h["sweep.threads"] = sw([](const Entry& e, State& s) { s.sweep.threads = static_cast<unsigned>(integer(e)); });
    h["sweep.enforce_impulse"] = sw([](const Entry& e, State& s) { s.sweep.enforce_impulse = boolean(e); });

    auto ap = [](auto f) {
      return [f](const Entry& e, State& s) {
        s.have_apparatus = true;
        f(e, s);
      };
    };
    h["apparatus.beam_energy"] = ap([](const Entry& e, State& s) {
      s.apparatus.beam_energy = parse_number(e, e.value, e.column, kEnergyUnits, true);
    });
    h["apparatus.energy_spread"] = ap([](const Entry& e, State& s) {
      s.apparatus.energy_spread = parse_number(e, e.value, e.column, kEnergyUnits, true);
    });
    h["apparatus.e_field"] = ap([](const Entry& e, State& s) {
      s.apparatus.e_field = parse_number(e, e.value, e.column, kEFieldUnits, true);
    });
    h["apparatus.b_field"] = ap([](const Entry& e, State& s) {
      s.apparatus.b_field = parse_number(e, e.value, e.column, kBFieldUnits, true);
    });
    h["apparatus.half_angle"] = ap([](const Entry& e, State& s) {
      s.apparatus.half_angle = parse_number(e, e.value, e.column, kAngleUnits, true);
    });

    h["output.dir"] = [](const Entry& e, State& s) { s.cfg.output_dir = e.value; };
    h["determinism"] = [](const Entry& e, State&) {
      if (!boolean(e)) semantic(e.key, "runs are always deterministic; determinism = false is not supported");
    };
    return h;
  }();
  return table;
}

std::vector<Entry> tokenize(std::string_view text) {
  std::vector<Entry> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    pos = nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) {
      if (nl == text.size()) break;
      continue;
    }
    Entry e;
    e.line = line_no;
    const auto eq = line.find('=');
    const auto first = line.find_first_not_of(" \t");
    if (eq == std::string_view::npos) {
      e.key = trim(line);
      syntax(e, first + 1, "expected 'key = value'");
    }
    e.key = trim(line.substr(0, eq));
    if (e.key.empty()) syntax(e, first + 1, "missing key before '='");
    for (std::size_t i = 0; i < e.key.size(); ++i) {
      const char c = e.key[i];
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'))
        syntax(e, first + 1 + i, std::string("invalid character '") + c + "' in key");
    }
    const auto rest = line.substr(eq + 1);
    const auto vstart = rest.find_first_not_of(" \t");
    if (vstart == std::string_view::npos) syntax(e, eq + 2, "missing value after '='");
    e.value = trim(rest);
    e.column = eq + 2 + vstart;
    out.push_back(std::move(e));
    if (nl == text.size()) break;
  }
  return out;
}

std::size_t largest_divisor_at_most(std::size_t n, std::size_t cap) {
  for (std::size_t d = std::min(n, std::max<std::size_t>(cap, 1)); d > 1; --d)
    if (n % d == 0) return d;
  return 1;
}

void resolve(State& s) {
  auto& c = s.cfg;
  c.grid = Grid1D(s.x_min, s.x_max, s.n);
  c.constants.validate();
  c.packet.validate();
  c.potential.validate();

  const double speed = std::abs(c.packet.p0) / c.constants.mass;
  const double gap = c.packet.reach() + force_extent(c.potential) + 5.0;
  if (s.x0_auto) {
    if (c.potential.is_localized())
      c.packet.x0 = c.potential.center - (c.packet.p0 >= 0.0 ? 1.0 : -1.0) * gap;
    else
      c.packet.x0 = c.potential.center;
  }
  auto& p = c.propagation;
  if (s.dt_auto) {
    const double e_kin = c.packet.p0 * c.packet.p0 / (2.0 * c.constants.mass);
    const double v_max = c.potential.is_localized() ? std::abs(c.potential.amplitude)
                                                    : max_abs_value(c.potential, s.x_min, s.x_max);
    p.dt = default_time_step(v_max, e_kin, c.constants.hbar);
  }
  if (!(p.dt > 0.0)) semantic("propagation.dt", "dt must be positive");
  if (s.steps_auto) {
    if (!c.potential.is_localized() || !(speed > 0.0))
      semantic("propagation.n_steps", "auto duration needs a localized force and p0 != 0; set n_steps");
    const double duration = 2.0 * std::abs(c.potential.center - c.packet.x0) / speed;
    const std::size_t stride = s.stride_auto ? default_record_stride(c.potential.width, speed, p.dt)
                                              : std::max<std::size_t>(p.record_stride, 1);
    p.record_stride = stride;
    const auto blocks = static_cast<std::size_t>(std::ceil(duration / (p.dt * static_cast<double>(stride))));
    p.n_steps = std::max<std::size_t>(blocks, 1) * stride;
  } else if (s.stride_auto) {
    const std::size_t target = speed > 0.0 ? default_record_stride(c.potential.width, speed, p.dt) : 1;
    p.record_stride = largest_divisor_at_most(p.n_steps, target);
  }

  if (s.have_sweep) {
    auto& sc = s.sweep.config;
    if (!s.lengths.empty()) {
      if (s.l_min != 0.0 || s.l_max != 0.0 || s.points != 0)
        semantic("sweep.L_values", "give either L_values or L_min/L_max/points, not both");
      sc.lengths = s.lengths;
    } else {
      if (s.points == 0) semantic("sweep.points", "sweep needs L_values or L_min, L_max and points");
      sc.lengths = SweepConfig::ladder(s.l_min, s.l_max, s.points);
    }
    sc.potential = c.potential;
    sc.envelope = c.packet.envelope;
    sc.order = c.packet.order;
    sc.p0 = c.packet.p0;
    if (!s.have_fit_min) sc.fit_min = *std::min_element(sc.lengths.begin(), sc.lengths.end());
    if (!s.have_fit_max) sc.fit_max = *std::max_element(sc.lengths.begin(), sc.lengths.end());
    c.sweep = s.sweep;
  }
  if (s.have_apparatus) c.apparatus = s.apparatus;
}

// Converts a runtime guard raised by the packet builder into a load-time
// diagnostic for the same field.
void check_packet(const PacketSpec& packet, const Grid1D& grid, const PhysicalConstants& k,
                  const std::string& prefix) {
  try {
    (void)make_packet(packet, grid, k);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::domain_overflow)
      semantic(e.field(), prefix + "tail-tolerance rule violated: " + std::string(e.what()));
    if (e.code() == ErrorCode::aliasing)
      semantic(e.field(), prefix + "aliasing guard violated: " + std::string(e.what()));
    throw;
  }
}

void check_transit(const PacketSpec& packet, const PropagationConfig& prop, const Grid1D& grid,
                   const PhysicalConstants& k, const std::string& field, const std::string& prefix) {
  const double t = prop.duration();
  const double x_end = packet.x0 + packet.p0 / k.mass * t;
  const double spread = 6.0 * k.hbar * t / (k.mass * packet.length);
  const double half = packet.reach() + spread;
  const double edge = grid.dx() * static_cast<double>(grid.size() / 32);
  if (x_end - half < grid.x_min() + edge || x_end + half > grid.x_max() - edge) {
    std::ostringstream os;
    os << prefix << "transit ends at x = " << x_end << " with half-width " << half
       << ", outside the grid minus its edge zone";
    semantic(field, os.str());
  }
}

}  // namespace

void validate(const RunConfig& c) {
  c.constants.validate();
  c.packet.validate();
  c.potential.validate();
  c.propagation.validate();
  if (!(c.propagation.dt > 0.0)) semantic("propagation.dt", "dt must be positive");
  check_packet(c.packet, c.grid, c.constants, "");
  check_transit(c.packet, c.propagation, c.grid, c.constants, "propagation.n_steps", "");

  if (c.sweep) {
    const auto& s = *c.sweep;
    const auto& sc = s.config;
    if (sc.lengths.empty()) semantic("sweep.L_values", "sweep needs at least one length");
    for (std::size_t i = 0; i < sc.lengths.size(); ++i) {
      if (!(sc.lengths[i] > 0.0)) semantic("sweep.L_values", "lengths must be positive");
      if (i > 0 && !(sc.lengths[i] > sc.lengths[i - 1]))
        semantic("sweep.L_values", "lengths must be strictly increasing");
    }
    if (!(sc.fit_min <= sc.fit_max)) semantic("sweep.fit_min", "fit window needs fit_min <= fit_max");
    const auto inside = std::count_if(sc.lengths.begin(), sc.lengths.end(),
                                      [&](double l) { return l >= sc.fit_min && l <= sc.fit_max; });
    if (inside < 2) semantic("sweep.fit_min", "at least two lengths must lie inside the fit window");
    if (sc.lengths.back() / sc.potential.width < 10.0)
      semantic("sweep.L_values", "largest length must reach at least 10 delta");
    if (!sc.potential.is_localized()) semantic("potential.shape", "sweeps need a localized force");
    if (!(std::abs(sc.p0) > 0.0)) semantic("packet.p0", "sweeps need p0 != 0");
    const double e_kin = sc.p0 * sc.p0 / (2.0 * c.constants.mass);
    if (std::abs(sc.potential.amplitude) > kWeakForceFraction * e_kin)
      semantic("potential.V0", "weak-force regime requires |V0| <= 0.1 E_kin");
    if (s.dt < 0.0) semantic("sweep.dt", "dt must be positive or auto");
    if (!(sc.margin >= 0.0)) semantic("sweep.margin", "margin must be non-negative");

    const auto sim = c.simulation();
    const double dt = s.dt > 0.0 ? s.dt : default_time_step(sc.potential.amplitude, e_kin, c.constants.hbar);
    for (double l : sc.lengths) {
      std::ostringstream prefix;
      prefix << "sweep point L=" << l << ": ";
      const auto layout = layout_for_length(sc, sim, l, dt);
      check_packet(layout.packet, c.grid, c.constants, prefix.str());
      check_transit(layout.packet, layout.propagation, c.grid, c.constants, "sweep.L_values", prefix.str());
    }
  }
  if (c.apparatus) c.apparatus->validate();
}

RunConfig parse_config(std::string_view text) {
  State s;
  std::set<std::string, std::less<>> seen;
  const auto& table = handlers();
  for (const auto& e : tokenize(text)) {
    if (!seen.insert(e.key).second) syntax(e, 1, "duplicate key '" + e.key + "'");
    const auto it = table.find(e.key);
    if (it == table.end()) semantic(e.key, "unknown key");
    it->second(e, s);
  }
  resolve(s);
  validate(s.cfg);
  return s.cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config_syntax, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const Error& e) {
    throw e.with_context(path);
  }
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize(const RunConfig& c) {
  std::ostringstream os;
  os << "constants.hbar = " << num(c.constants.hbar) << "\n"
     << "constants.mass = " << num(c.constants.mass) << "\n"
     << "constants.charge = " << num(c.constants.charge) << "\n"
     << "constants.c = " << num(c.constants.c) << "\n"
     << "grid.x_min = " << num(c.grid.x_min()) << "\n"
     << "grid.x_max = " << num(c.grid.x_max()) << "\n"
     << "grid.n = " << c.grid.size() << "\n"
     << "packet.envelope = " << (c.packet.envelope == Envelope::gaussian ? "gaussian" : "supergaussian") << "\n"
     << "packet.order = " << c.packet.order << "\n"
     << "packet.x0 = " << num(c.packet.x0) << "\n"
     << "packet.L = " << num(c.packet.length) << "\n"
     << "packet.p0 = " << num(c.packet.p0) << "\n"
     << "potential.shape = " << to_string(c.potential.shape) << "\n"
     << "potential.V0 = " << num(c.potential.amplitude) << "\n"
     << "potential.width = " << num(c.potential.width) << "\n"
     << "potential.center = " << num(c.potential.center) << "\n"
     << "potential.smoothness = " << num(c.potential.smoothness) << "\n"
     << "propagation.dt = " << num(c.propagation.dt) << "\n"
     << "propagation.n_steps = " << c.propagation.n_steps << "\n"
     << "propagation.record_stride = " << c.propagation.record_stride << "\n"
     << "propagation.method = " << to_string(c.propagation.method) << "\n"
     << "propagation.extend_transit = " << (c.extend_transit ? "true" : "false") << "\n";
  if (c.sweep) {
    const auto& s = *c.sweep;
    os << "sweep.L_values = ";
    for (std::size_t i = 0; i < s.config.lengths.size(); ++i) os << (i ? ", " : "") << num(s.config.lengths[i]);
    os << "\n"
       << "sweep.fit_min = " << num(s.config.fit_min) << "\n"
       << "sweep.fit_max = " << num(s.config.fit_max) << "\n"
       << "sweep.margin = " << num(s.config.margin) << "\n"
       << "sweep.dt = " << (s.dt > 0.0 ? num(s.dt) : std::string("auto")) << "\n"
       << "sweep.record_stride = " << (s.record_stride ? std::to_string(s.record_stride) : std::string("auto"))
       << "\n"
       << "sweep.refine_dt = " << (s.refine_dt ? "true" : "false") << "\n"
       << "sweep.threads = " << s.threads << "\n"
       << "sweep.enforce_impulse = " << (s.enforce_impulse ? "true" : "false") << "\n";
  }
  if (c.apparatus) {
    const auto& a = *c.apparatus;
    os << "apparatus.beam_energy = " << num(a.beam_energy) << " J\n"
       << "apparatus.energy_spread = " << num(a.energy_spread) << " J\n"
       << "apparatus.e_field = " << num(a.e_field) << " V/m\n"
       << "apparatus.b_field = " << num(a.b_field) << " T\n"
       << "apparatus.half_angle = " << num(a.half_angle) << " rad\n";
  }
  os << "output.dir = " << c.output_dir << "\n";
  return os.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : serialize(cfg)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash_hex(const RunConfig& cfg) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  return buf;
}

}  // namespace bremsim
