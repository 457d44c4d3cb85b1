#include <doctest.h>

#include <string>

#include "bremsim/config.hpp"
#include "bremsim/error.hpp"

using namespace bremsim;

namespace {

Error parse_error(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("config parsed unexpectedly: " << text);
  return Error(ErrorCode::config_syntax, "");
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("empty config fills in the documented defaults") {
  const auto c = parse_config("");
  CHECK(c.constants == PhysicalConstants{});
  CHECK(c.grid == Grid1D(-400.0, 400.0, 16384));
  CHECK(c.packet.envelope == Envelope::supergaussian);
  CHECK(c.packet.order == 8);
  CHECK(c.packet.length == 10.0);
  CHECK(c.packet.p0 == 5.0);
  CHECK(c.potential.shape == PotentialShape::gaussian_bump);
  CHECK(c.potential.amplitude == 0.625);
  CHECK(c.propagation.dt == doctest::Approx(0.008));
  CHECK(c.propagation.record_stride == 2);
  CHECK(c.propagation.n_steps % c.propagation.record_stride == 0);
  const double gap = c.packet.reach() + force_extent(c.potential) + 5.0;
  CHECK(c.packet.x0 == doctest::Approx(-gap));
  CHECK(c.propagation.duration() >= 2 * gap / 5.0);
  CHECK_FALSE(c.sweep);
  CHECK_FALSE(c.apparatus);
  CHECK(c.deterministic);
  CHECK(c.output_dir == "out");
  CHECK(c.sweep_or_default().config.lengths.size() == 8);
}

TEST_CASE("explicit values and comments") {
  const auto c = parse_config(
      "# header\n"
      "grid.x_min = -100   # trailing\n"
      "grid.x_max = 100su\n"
      "grid.n = 4096\n"
      "packet.envelope = gaussian\n"
      "packet.L = 2\n"
      "packet.x0 = -30\n"
      "packet.p0 = 3\n"
      "potential.shape = erf_step\n"
      "potential.V0 = 0.2\n"
      "propagation.dt = 0.01\n"
      "propagation.n_steps = 1000\n"
      "propagation.record_stride = auto\n"
      "propagation.method = crank_nicolson\n");
  CHECK(c.grid.x_max() == 100.0);
  CHECK(c.packet.x0 == -30.0);
  CHECK(c.propagation.method == Method::crank_nicolson);
  CHECK(c.propagation.n_steps == 1000);
  CHECK(1000 % c.propagation.record_stride == 0);
  CHECK(c.propagation.record_stride <= 3);
}

TEST_CASE("round trip is exact") {
  const std::string text =
      "potential.shape = erf_step\n"
      "sweep.L_min = 10\nsweep.L_max = 100\nsweep.points = 8\nsweep.fit_min = 20\n"
      "apparatus.beam_energy = 10 keV\napparatus.energy_spread = 100 meV_never\n";
  // unit typo is rejected first
  CHECK(parse_error(text).code() == ErrorCode::config_semantic);

  const auto a = parse_config(
      "potential.shape = erf_step\n"
      "sweep.L_min = 10\nsweep.L_max = 100\nsweep.points = 8\nsweep.fit_min = 20\n"
      "apparatus.beam_energy = 10 keV\napparatus.energy_spread = 0.1 eV\napparatus.half_angle = 0.75 mrad\n"
      "output.dir = results/run1\n");
  REQUIRE(a.sweep);
  REQUIRE(a.apparatus);
  const auto b = parse_config(serialize(a));
  CHECK(a == b);
  CHECK(serialize(a) == serialize(b));
  CHECK(config_hash(a) == config_hash(b));
  CHECK(a.apparatus->half_angle == doctest::Approx(7.5e-4));
  CHECK(a.sweep->config.fit_min == 20.0);
  CHECK(a.sweep->config.fit_max == 100.0);
  CHECK(a.sweep->config.potential.shape == PotentialShape::erf_step);
}

TEST_CASE("hash changes with content") {
  CHECK(config_hash(parse_config("")) != config_hash(parse_config("packet.L = 11\n")));
  CHECK(config_hash_hex(parse_config("")).size() == 16);
}

TEST_CASE("syntax errors carry line and column") {
  auto e = parse_error("grid.n = 4096\n  packet.L 10\n");
  CHECK(e.code() == ErrorCode::config_syntax);
  CHECK(contains(e.what(), "line 2, column 3"));

  e = parse_error("packet.L = ten\n");
  CHECK(e.code() == ErrorCode::config_syntax);
  CHECK(contains(e.what(), "line 1, column 12"));
  CHECK(e.field() == "packet.L");

  e = parse_error("grid.n = 40x6\n");
  CHECK(contains(e.what(), "column 12"));

  e = parse_error("packet.L =\n");
  CHECK(e.code() == ErrorCode::config_syntax);

  e = parse_error("pack et.L = 3\n");
  CHECK(contains(e.what(), "column 5"));

  e = parse_error("packet.L = 3\npacket.L = 4\n");
  CHECK(contains(e.what(), "duplicate"));

  e = parse_error("sweep.L_values = 10, , 30\n");
  CHECK(e.code() == ErrorCode::config_syntax);
}

TEST_CASE("semantic errors name the field and rule") {
  auto e = parse_error("packet.L = 390\npacket.x0 = 0\npropagation.n_steps = 10\n");
  CHECK(e.code() == ErrorCode::config_semantic);
  CHECK(e.field() == "packet.L");
  CHECK(contains(e.what(), "tail-tolerance"));

  e = parse_error("grid.n = 1000\n");
  CHECK(e.field() == "grid.n");

  e = parse_error("packet.p0 = 60\npotential.V0 = 0\n");
  CHECK(e.field() == "packet.p0");
  CHECK(contains(e.what(), "aliasing"));

  e = parse_error("packet.colour = red\n");
  CHECK(e.field() == "packet.colour");

  e = parse_error("propagation.n_steps = 10000000\n");
  CHECK(e.field() == "propagation.n_steps");

  e = parse_error("propagation.n_steps = 100\npropagation.record_stride = 7\n");
  CHECK(e.field() == "propagation.record_stride");

  e = parse_error("potential.shape = rectangular_smooth\npotential.smoothness = 0.5\n");
  CHECK(e.field() == "potential.smoothness");

  e = parse_error("determinism = false\n");
  CHECK(e.field() == "determinism");
}

TEST_CASE("sweep rules") {
  CHECK(parse_error("sweep.L_values = 10, 20\nsweep.fit_min = 15\n").field() == "sweep.fit_min");
  CHECK(parse_error("sweep.L_values = 20, 10\n").field() == "sweep.L_values");
  CHECK(parse_error("sweep.L_values = 2, 4, 8\n").field() == "sweep.L_values");
  CHECK(parse_error("sweep.L_values = 10, 20\npotential.V0 = 2\n").field() == "potential.V0");
  CHECK(parse_error("sweep.L_values = 10, 300\n").field() == "packet.L");
  CHECK(parse_error("sweep.L_values = 10, 20\nsweep.L_min = 5\n").field() == "sweep.L_values");
  const auto c = parse_config("sweep.L_values = 10, 20, 40\nsweep.threads = 2\n");
  CHECK(c.sweep->config.lengths.size() == 3);
  CHECK(c.simulation().threads == 2);
  CHECK(c.simulation().dt == 0.0);
}

TEST_CASE("apparatus values require SI units") {
  CHECK(parse_error("apparatus.beam_energy = 10000\n").field() == "apparatus.beam_energy");
  CHECK(parse_error("apparatus.b_field = 10 keV\n").field() == "apparatus.b_field");
  CHECK(parse_error("apparatus.b_field = 0 T\n").field() == "apparatus.b_field");
  CHECK(parse_error("packet.L = 10 m\n").field() == "packet.L");
  const auto c = parse_config("apparatus.b_field = 10 mT\napparatus.e_field = 593 kV/m\n");
  CHECK(c.apparatus->b_field == doctest::Approx(0.01));
  CHECK(c.apparatus->e_field == doctest::Approx(5.93e5));
  CHECK(c.apparatus->half_angle > 0.0);
}
