#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bremsim/error.hpp"
#include "bremsim/quantum_state.hpp"

using namespace bremsim;

namespace {

const PhysicalConstants kUnits;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("grid lattice and FFT ordering") {
  const Grid1D g(-10.0, 10.0, 16);
  CHECK(g.dx() == doctest::Approx(1.25));
  CHECK(g.x(0) == -10.0);
  CHECK(g.x(15) == doctest::Approx(8.75));
  CHECK(g.k(0) == 0.0);
  CHECK(g.k(1) == doctest::Approx(2 * std::numbers::pi / 20));
  CHECK(g.k(8) == doctest::Approx(-g.k_max()));
  CHECK(g.k(15) == doctest::Approx(-g.dk()));
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 12), Error);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 4), Error);
  CHECK_THROWS_AS(Grid1D(1.0, 1.0, 16), Error);
}

TEST_CASE("kappa") {
  PhysicalConstants k;
  k.charge = 2.0;
  k.c = 10.0;
  CHECK(k.kappa() == doctest::Approx(2.0 / 3.0 * 4.0 / 1000.0));
  k.c = -1.0;
  CHECK_THROWS_AS(k.validate(), Error);
}

TEST_CASE("packet is normalized with the requested moments") {
  const Grid1D g(-60.0, 60.0, 2048);
  for (auto env : {Envelope::gaussian, Envelope::supergaussian}) {
    const PacketSpec spec{env, 8, 3.0, 4.0, 1.5};
    const auto psi = make_packet(spec, g, kUnits);
    CHECK(std::abs(norm(psi) - 1.0) < 1e-13);
    CHECK(expect_position(psi) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(expect_momentum(psi, kUnits) == doctest::Approx(1.5).epsilon(1e-12));
  }
}

TEST_CASE("Gaussian packet variance and kinetic energy") {
  // |psi|^2 = exp(-u^2): <x^2> - <x>^2 = L^2/2, <p^2> = p0^2 + hbar^2 / (2 L^2).
  const Grid1D g(-60.0, 60.0, 4096);
  const double l = 2.5, p0 = 2.0;
  const auto psi = make_packet({Envelope::gaussian, 2, 0.0, l, p0}, g, kUnits);
  CHECK(rel(position_variance(psi), l * l / 2) < 1e-12);
  CHECK(rel(expect_kinetic(psi, kUnits), 0.5 * (p0 * p0 + 0.5 / (l * l))) < 1e-12);
}

TEST_CASE("tail probability matches direct quadrature") {
  const Grid1D g(-20.0, 20.0, 64);
  for (int m : {2, 4, 8}) {
    const PacketSpec spec{m == 2 ? Envelope::gaussian : Envelope::supergaussian, m, 2.0, 9.0, 0.0};
    auto density = [&](double x) { return std::exp(-std::pow(std::abs((x - 2.0) / 9.0), m)); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double total = GK::integrate(density, -std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity(), 15, 1e-14);
    const double outside = GK::integrate(density, -std::numeric_limits<double>::infinity(), -20.0, 15, 1e-14) +
                           GK::integrate(density, 20.0, std::numeric_limits<double>::infinity(), 15, 1e-14);
    CHECK(rel(tail_probability_outside(spec, g), outside / total) < 1e-8);
  }
}

TEST_CASE("make_packet guards") {
  const Grid1D g(-50.0, 50.0, 1024);
  try {
    (void)make_packet({Envelope::supergaussian, 8, 0.0, 45.0, 0.0}, g, kUnits);
    FAIL("expected domain overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain_overflow);
    CHECK(e.field() == "packet.L");
  }
  try {
    // pi/dx = 32.2; 0.9 of that is 29
    (void)make_packet({Envelope::gaussian, 2, 0.0, 2.0, 28.0}, g, kUnits);
    FAIL("expected aliasing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::aliasing);
  }
  CHECK_THROWS_AS(make_packet({Envelope::supergaussian, 3, 0.0, 1.0, 0.0}, g, kUnits), Error);
  CHECK_THROWS_AS(make_packet({Envelope::gaussian, 2, 0.0, -1.0, 0.0}, g, kUnits), Error);
}

TEST_CASE("momentum transform is unitary and matches the analytic Gaussian") {
  const Grid1D g(-40.0, 40.0, 1024);
  const double l = 1.5, p0 = 3.0, x0 = -2.0;
  const auto psi = make_packet({Envelope::gaussian, 2, x0, l, p0}, g, kUnits);
  const auto phi = to_momentum(psi);
  double total = 0.0, worst = 0.0;
  for (std::size_t m = 0; m < phi.size(); ++m) {
    total += std::norm(phi[m]) * g.dk();
    const double kk = g.k(m);
    const double expected = l / std::sqrt(std::numbers::pi) * std::exp(-l * l * (kk - p0) * (kk - p0));
    worst = std::max(worst, std::abs(std::norm(phi[m]) - expected));
  }
  CHECK(std::abs(total - 1.0) < 1e-12);
  CHECK(worst < 1e-12);

  const auto back = from_momentum(g, phi);
  double diff = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) diff = std::max(diff, std::abs(back.amplitudes[j] - psi.amplitudes[j]));
  CHECK(diff < 1e-13);
}

TEST_CASE("spectral derivative is exact on lattice modes") {
  const Grid1D g(0.0, 2 * std::numbers::pi, 64);
  std::vector<Complex> f(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) f[j] = std::sin(3.0 * g.x(j));
  const auto d = spectral_derivative(g, f);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(d[j] - 3.0 * std::cos(3.0 * g.x(j))) < 1e-12);
}

TEST_CASE("acceleration expectations match continuum quadrature") {
  const Grid1D g(-40.0, 40.0, 4096);
  const PotentialSpec v{PotentialShape::gaussian_bump, 0.7, 1.2, 0.5, 0.1};
  const double x0 = -0.4, l = 1.3;
  const auto psi = make_packet({Envelope::gaussian, 2, x0, l, 1.0}, g, kUnits);
  auto rho = [&](double x) { return std::exp(-std::pow((x - x0) / l, 2)) / (l * std::sqrt(std::numbers::pi)); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double a = GK::integrate([&](double x) { return -rho(x) * gradient(v, x); }, -40.0, 40.0, 15, 1e-14);
  const double a2 = GK::integrate([&](double x) { return rho(x) * std::pow(gradient(v, x), 2); }, -40.0, 40.0, 15,
                                  1e-14);
  CHECK(rel(expect_accel(psi, v, kUnits), a) < 1e-10);
  CHECK(rel(expect_accel_sq(psi, v, kUnits), a2) < 1e-10);
}

TEST_CASE("property: <a>^2 <= <a^2> for random states") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Grid1D g(-50.0, 50.0, 2048);
  for (int i = 0; i < 20; ++i) {
    const PotentialSpec v{i % 2 ? PotentialShape::gaussian_bump : PotentialShape::erf_step, 2 * u(rng) - 1,
                          0.5 + u(rng), 4 * u(rng) - 2, 0.1};
    const auto psi = make_packet({Envelope::supergaussian, 2 * (1 + i % 4), 6 * u(rng) - 3, 0.5 + 3 * u(rng),
                                  4 * u(rng) - 2},
                                 g, kUnits);
    const double a = expect_accel(psi, v, kUnits);
    CHECK(a * a <= expect_accel_sq(psi, v, kUnits) * (1 + 1e-14));
  }
}

TEST_CASE("momentum support matches a bin-sum oracle") {
  const Grid1D g(-40.0, 40.0, 1024);
  const auto psi = make_packet({Envelope::gaussian, 2, 0.0, 2.0, 1.0}, g, kUnits);
  const auto phi = to_momentum(psi);
  const double p_s = momentum_support(psi, kUnits);
  double beyond = 0.0, at_or_beyond_previous = 0.0;
  for (std::size_t m = 0; m < phi.size(); ++m) {
    const double p = std::abs(g.k(m));
    if (p > p_s) beyond += std::norm(phi[m]) * g.dk();
    if (p > p_s - g.dk() * 1.0001) at_or_beyond_previous += std::norm(phi[m]) * g.dk();
  }
  CHECK(beyond <= kTailTolerance);
  CHECK(at_or_beyond_previous > kTailTolerance);
}

TEST_CASE("superluminal weight") {
  PhysicalConstants k;
  k.c = 10.0;
  const Grid1D g(-40.0, 40.0, 2048);
  CHECK(momentum_support_check(make_packet({Envelope::gaussian, 2, 0.0, 4.0, 2.0}, g, k), k, 0.1));
  CHECK_FALSE(momentum_support_check(make_packet({Envelope::gaussian, 2, 0.0, 4.0, 9.5}, g, k), k, 0.1));
  CHECK_THROWS_AS(momentum_support_check(make_packet({Envelope::gaussian, 2, 0.0, 4.0, 2.0}, g, k), k, 1.5),
                  Error);
}

TEST_CASE("reach bounds the envelope at 1e-12 of its peak") {
  for (int m : {2, 4, 8, 16}) {
    const PacketSpec spec{m == 2 ? Envelope::gaussian : Envelope::supergaussian, m, 0.0, 3.0, 0.0};
    const double u = spec.reach() / spec.length;
    CHECK(std::exp(-std::pow(u, m)) == doctest::Approx(1e-12).epsilon(1e-9));
  }
}
