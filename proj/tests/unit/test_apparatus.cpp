#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "bremsim/apparatus.hpp"
#include "bremsim/error.hpp"

using namespace bremsim;

namespace {

// CODATA 2018, typed in independently of the library table.
constexpr double kHbar = 1.054571817e-34;
constexpr double kH = 6.62607015e-34;
constexpr double kE = 1.602176634e-19;
constexpr double kMe = 9.1093837015e-31;
constexpr double kC = 299792458.0;
constexpr double kEps0 = 8.8541878128e-12;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

SweepResult power_law_sweep(double a_hydro, double a_qed) {
  SweepResult s;
  s.p0 = 5.0;
  s.amplitude = 0.625;
  s.width = 1.0;
  s.kappa = s.constants.kappa();
  for (double l : SweepConfig::ladder(10, 100, 8)) s.rows.push_back({l, a_hydro / l, a_qed, 0.0, -0.1});
  s.fits = fit_rows(s.rows, 10, 100);
  return s;
}

}  // namespace

TEST_CASE("coherence length") {
  const double l = coherence_length(5.93e7, 0.1 * kE);
  CHECK(rel(l, kHbar * 5.93e7 / (2 * 0.1 * kE)) < 1e-12);
  CHECK(l == doctest::Approx(1.95e-7).epsilon(0.005));
  CHECK(rel(coherence_length(5.93e7, 0.2 * kE), l / 2) < 1e-14);
  CHECK(coherence_length(5.93e7, 1e10) < 1e-30);
  CHECK_THROWS_AS(coherence_length(0.0, 1.0), Error);
  CHECK_THROWS_AS(coherence_length(1.0, -1.0), Error);
}

TEST_CASE("optics inverts to tens of microns depth of focus") {
  const double lambda = 12.2e-12;
  const double sin_a = 0.61 * lambda / 10e-9;
  CHECK(sin_a == doctest::Approx(7.4e-4).epsilon(0.01));
  const auto o = optics(lambda, std::asin(sin_a));
  CHECK(rel(o.resolution, 10e-9) < 1e-12);
  CHECK(rel(o.depth_of_focus, lambda / (sin_a * sin_a)) < 1e-12);
  CHECK(o.depth_of_focus > 15e-6);
  CHECK(o.depth_of_focus < 30e-6);
  CHECK(o.depth_of_focus == doctest::Approx(22e-6).epsilon(0.01));
}

TEST_CASE("optics powers of sin(alpha)") {
  const double lambda = 1e-11;
  const auto full = optics(lambda, std::numbers::pi / 2);
  CHECK(rel(full.resolution, 0.61 * lambda) < 1e-15);
  CHECK(rel(full.depth_of_focus, lambda) < 1e-15);
  const double s = 0.01;
  const auto a = optics(lambda, std::asin(s));
  const auto b = optics(lambda, std::asin(s / 2));
  CHECK(rel(b.resolution, 2 * a.resolution) < 1e-12);
  CHECK(rel(b.depth_of_focus, 4 * a.depth_of_focus) < 1e-12);
  CHECK_THROWS_AS(optics(lambda, 0.0), Error);
  CHECK_THROWS_AS(optics(lambda, 2.0), Error);
}

TEST_CASE("property: apparatus lengths scale with the length unit") {
  for (double scale : {1e-3, 2.0, 1e4}) {
    const auto a = optics(1e-11, 0.01);
    const auto b = optics(1e-11 * scale, 0.01);
    CHECK(rel(b.resolution, a.resolution * scale) < 1e-14);
    CHECK(rel(b.depth_of_focus, a.depth_of_focus * scale) < 1e-14);
    // a speed in length/time carries one power of the length unit
    CHECK(rel(coherence_length(5e7 * scale, 1e-20), coherence_length(5e7, 1e-20) * scale) < 1e-14);
  }
}

TEST_CASE("Wien velocity") {
  CHECK(rel(wien_velocity(1e5, 1e-2), 1e7) < 1e-12);
  CHECK(wien_velocity(2e5, 2e-2) == wien_velocity(1e5, 1e-2));
  CHECK_THROWS_AS(wien_velocity(1e5, 0.0), Error);
}

TEST_CASE("default inputs") {
  const auto in = ApparatusInputs::defaults();
  const double v = std::sqrt(2 * 1e4 * kE / kMe);
  CHECK(rel(in.speed(), v) < 1e-14);
  CHECK(rel(in.de_broglie_wavelength(), kH / std::sqrt(2 * kMe * 1e4 * kE)) < 1e-14);
  CHECK(in.speed() == doctest::Approx(5.93e7).epsilon(0.001));
  CHECK(in.de_broglie_wavelength() == doctest::Approx(12.26e-12).epsilon(0.001));
  CHECK(rel(optics(in.de_broglie_wavelength(), in.half_angle).resolution, 10e-9) < 1e-12);
  CHECK_NOTHROW(in.validate());

  auto bad = in;
  bad.half_angle = 2.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = in;
  bad.beam_energy = 1e-12;  // ~6 MeV: faster than light non-relativistically
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = in;
  bad.energy_spread = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("report recomputes the optics consistently") {
  const auto in = ApparatusInputs::defaults();
  const auto r = feasibility_report(in);
  const double v = std::sqrt(2 * in.beam_energy / kMe);
  const double lambda = kH / (kMe * v);
  const double s = std::sin(in.half_angle);
  CHECK(rel(r.speed, v) < 1e-12);
  CHECK(rel(r.wavelength, lambda) < 1e-12);
  CHECK(rel(r.coherence_length, kHbar * v / (2 * in.energy_spread)) < 1e-12);
  CHECK(rel(r.optics.resolution, 0.61 * lambda / s) < 1e-12);
  CHECK(rel(r.optics.depth_of_focus, lambda / (s * s)) < 1e-12);
  CHECK(rel(r.wien_speed, in.e_field / in.b_field) < 1e-12);
  CHECK_FALSE(r.have_sweep);
  CHECK(r.flags.empty());
  CHECK(r.text().find("depth of focus") != std::string::npos);
  CHECK(r.key_values().find("coherence_convention=hbar*v/(2*dE)") != std::string::npos);
}

TEST_CASE("report converts simulated losses to SI") {
  const auto in = ApparatusInputs::defaults();
  const auto sweep = power_law_sweep(3e-9, 5e-9);
  const auto r = feasibility_report(in, &sweep);
  const double v = std::sqrt(2 * in.beam_energy / kMe);
  const double ell = 5.0 * kHbar / (kMe * v);
  const double tau = kMe * ell * ell / kHbar;
  const double kappa_si = kE * kE / (6 * std::numbers::pi * kEps0 * kC * kC * kC);
  const double l = kHbar * v / (2 * in.energy_spread) / ell;
  const double scale = kappa_si / sweep.kappa * ell * ell / (tau * tau * tau);
  CHECK(rel(r.length_unit, ell) < 1e-12);
  CHECK(rel(r.length_in_units, l) < 1e-12);
  CHECK(rel(r.loss_hydro, scale * 3e-9 / l) < 1e-9);
  CHECK(rel(r.loss_qed, scale * 5e-9) < 1e-9);
  REQUIRE(r.ratio);
  CHECK(rel(*r.ratio, 5.0 / 3.0 * l) < 1e-9);
  CHECK(rel(r.force_step, 0.625 * kHbar * kHbar / (kMe * ell * ell)) < 1e-12);
  CHECK(r.extrapolated);
}

TEST_CASE("zero-field sweep predicts no loss and an undefined ratio") {
  auto sweep = power_law_sweep(0.0, 0.0);
  sweep.amplitude = 0.0;
  for (auto& row : sweep.rows) row = {row.length, 0.0, 0.0, 0.0, 0.0};
  sweep.fits = fit_rows(sweep.rows, 10, 100);
  const auto r = feasibility_report(ApparatusInputs::defaults(), &sweep);
  CHECK(r.loss_hydro == 0.0);
  CHECK(r.loss_qed == 0.0);
  CHECK_FALSE(r.ratio);
  CHECK(r.key_values().find("ratio_qed_over_hydro=undefined") != std::string::npos);
}

TEST_CASE("coherence length below the force width is flagged") {
  auto sweep = power_law_sweep(3e-9, 5e-9);
  sweep.width = 1e5;
  const auto r = feasibility_report(ApparatusInputs::defaults(), &sweep);
  bool flagged = false;
  for (const auto& f : r.flags) flagged = flagged || f.find("outside suppression regime") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("fast Wien filters are flagged") {
  auto in = ApparatusInputs::defaults();
  in.e_field = 1e6;
  in.b_field = 1e-2;  // 1e8 m/s > 0.3 c
  const auto r = feasibility_report(in);
  CHECK(r.flags.size() == 2);
}
