#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bremsim/error.hpp"
#include "bremsim/potentials.hpp"

using namespace bremsim;

namespace {

std::vector<PotentialSpec> catalog() {
  return {
      {PotentialShape::gaussian_bump, 0.8, 1.3, 0.4, 0.1},
      {PotentialShape::rectangular_smooth, -0.5, 2.0, -1.0, 0.2},
      {PotentialShape::tanh_step_pair, 1.1, 1.5, 0.0, 0.3},
      {PotentialShape::erf_step, 0.6, 0.9, 2.0, 0.1},
      {PotentialShape::uniform_force, 0.02, 1.0, 0.0, 0.1},
  };
}

using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

}  // namespace

TEST_CASE("gradient agrees with a central finite difference") {
  for (const auto& p : catalog()) {
    for (double x = -6.0; x <= 6.0; x += 0.37) {
      const double h = 1e-5;
      const double fd = (value(p, x + h) - value(p, x - h)) / (2 * h);
      CHECK(std::abs(gradient(p, x) - fd) <= 1e-9 + 1e-6 * std::abs(fd));
    }
  }
}

TEST_CASE("values at the centre") {
  CHECK(value({PotentialShape::gaussian_bump, 0.7, 1.0, 3.0, 0.1}, 3.0) == 0.7);
  // sigma(a) - sigma(-a) = tanh(a/2) with a = delta/2s = 5
  const PotentialSpec rect{PotentialShape::rectangular_smooth, 1.0, 1.0, 0.0, 0.1};
  CHECK(value(rect, 0.0) == doctest::Approx(std::tanh(2.5)).epsilon(1e-14));
  const PotentialSpec pair{PotentialShape::tanh_step_pair, 1.0, 1.0, 0.0, 0.1};
  CHECK(value(pair, 0.0) == doctest::Approx(std::tanh(5.0)).epsilon(1e-14));
  CHECK(value({PotentialShape::erf_step, 2.0, 1.0, 0.0, 0.1}, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("wide rectangles reach V0 in the middle") {
  const PotentialSpec rect{PotentialShape::rectangular_smooth, 0.3, 10.0, 0.0, 0.1};
  CHECK(std::abs(value(rect, 0.0) - 0.3) < 1e-6 * 0.3);
  CHECK(std::abs(value(rect, 20.0)) < 1e-12);
}

TEST_CASE("erf step transfers V0 and its force integrates to it") {
  const PotentialSpec p{PotentialShape::erf_step, 0.6, 0.9, 2.0, 0.1};
  CHECK(value(p, -50.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(value(p, 50.0) == doctest::Approx(0.6));
  const double total = GK::integrate([&](double x) { return gradient(p, x); }, -30.0, 30.0, 15, 1e-14);
  CHECK(total == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("bumps carry zero net force and are symmetric") {
  for (const auto& p : catalog()) {
    if (!p.is_bump()) continue;
    CHECK(p.is_symmetric());
    const double total = GK::integrate([&](double x) { return gradient(p, x); }, -40.0, 40.0, 15, 1e-14);
    CHECK(std::abs(total) < 1e-12);
    for (double u : {0.1, 0.7, 2.3}) CHECK(value(p, p.center + u) == doctest::Approx(value(p, p.center - u)));
  }
}

TEST_CASE("force is negligible beyond the smoothed-rectangle support") {
  for (auto shape : {PotentialShape::rectangular_smooth, PotentialShape::tanh_step_pair}) {
    for (double s : {0.05, 0.1, 0.25}) {
      const PotentialSpec p{shape, 1.0, 1.0, 0.0, s};
      const double edge = p.width * 5 + 10 * s;
      const double outside =
          2 * GK::integrate([&](double x) { return std::abs(gradient(p, x)); }, edge, edge + 60.0, 15, 1e-16);
      CHECK(outside < 1e-9);
    }
  }
  const PotentialSpec g{PotentialShape::gaussian_bump, 1.0, 1.0, 0.0, 0.1};
  const double outside =
      2 * GK::integrate([&](double x) { return std::abs(gradient(g, x)); }, 7.0, 60.0, 15, 1e-16);
  CHECK(outside < 1e-9);
}

TEST_CASE("force extent bounds the force to rounding level") {
  for (const auto& p : catalog()) {
    if (!p.is_localized()) {
      CHECK(std::isinf(force_extent(p)));
      continue;
    }
    double peak = 0.0;
    for (double x = -10; x <= 10; x += 1e-3) peak = std::max(peak, std::abs(gradient(p, x)));
    const double e = force_extent(p);
    CHECK(std::abs(gradient(p, p.center + e)) < 1e-15 * peak);
    CHECK(std::abs(gradient(p, p.center - e)) < 1e-15 * peak);
  }
}

TEST_CASE("uniform force") {
  const PotentialSpec p{PotentialShape::uniform_force, 0.02, 1.0, 1.0, 0.1};
  CHECK(gradient(p, -100.0) == -0.02);
  CHECK(value(p, 3.0) == doctest::Approx(-0.04));
  CHECK(max_abs_value(p, -10.0, 5.0) == doctest::Approx(0.22));
}

TEST_CASE("validation names the field") {
  auto field_of = [](const PotentialSpec& p) {
    try {
      p.validate();
    } catch (const Error& e) {
      return e.field();
    }
    return std::string{};
  };
  CHECK(field_of({PotentialShape::gaussian_bump, 1.0, 0.0, 0.0, 0.1}) == "potential.width");
  CHECK(field_of({PotentialShape::rectangular_smooth, 1.0, 1.0, 0.0, 0.3}) == "potential.smoothness");
  CHECK(field_of({PotentialShape::tanh_step_pair, 1.0, 1.0, 0.0, 0.0}) == "potential.smoothness");
  CHECK(field_of({PotentialShape::gaussian_bump, NAN, 1.0, 0.0, 0.1}) == "potential.V0");
  CHECK(field_of({PotentialShape::gaussian_bump, 1.0, 1.0, 0.0, 5.0}).empty());
}

TEST_CASE("shape names round-trip") {
  for (const auto& p : catalog()) CHECK(parse_potential_shape(to_string(p.shape)) == p.shape);
  CHECK_THROWS_AS(parse_potential_shape("square"), Error);
}

TEST_CASE("zero amplitude gives zero force everywhere") {
  for (auto p : catalog()) {
    p.amplitude = 0.0;
    for (double x = -5; x <= 5; x += 0.5) CHECK(gradient(p, x) == 0.0);
  }
}
