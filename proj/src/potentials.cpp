#include "bremsim/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bremsim/error.hpp"

namespace bremsim {

std::string_view to_string(PotentialShape shape) {
  switch (shape) {
    case PotentialShape::gaussian_bump: return "gaussian_bump";
    case PotentialShape::rectangular_smooth: return "rectangular_smooth";
    case PotentialShape::tanh_step_pair: return "tanh_step_pair";
    case PotentialShape::erf_step: return "erf_step";
    case PotentialShape::uniform_force: return "uniform_force";
  }
  return "unknown";
}

PotentialShape parse_potential_shape(std::string_view name) {
  for (auto s : {PotentialShape::gaussian_bump, PotentialShape::rectangular_smooth,
                 PotentialShape::tanh_step_pair, PotentialShape::erf_step, PotentialShape::uniform_force}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::config_semantic, "unknown potential shape '" + std::string(name) + "'",
              "potential.shape");
}

bool PotentialSpec::is_bump() const noexcept {
  return shape == PotentialShape::gaussian_bump || shape == PotentialShape::rectangular_smooth ||
         shape == PotentialShape::tanh_step_pair;
}

bool PotentialSpec::is_symmetric() const noexcept { return is_bump(); }

namespace {
bool uses_smoothness(PotentialShape s) {
  return s == PotentialShape::rectangular_smooth || s == PotentialShape::tanh_step_pair;
}

double logistic(double z) {
  // Branches keep exp() from overflowing for large |z|.
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logistic_slope(double z) {
  const double e = std::exp(-std::abs(z));
  return e / ((1.0 + e) * (1.0 + e));
}

double sech2(double z) {
  const double e = std::exp(-2.0 * std::abs(z));
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}
}  // namespace

void PotentialSpec::validate() const {
  if (!std::isfinite(amplitude))
    throw Error(ErrorCode::config_semantic, "amplitude must be finite", "potential.V0");
  if (!std::isfinite(center))
    throw Error(ErrorCode::config_semantic, "center must be finite", "potential.center");
  if (!(width > 0.0) || !std::isfinite(width))
    throw Error(ErrorCode::config_semantic, "width delta must be > 0", "potential.width");
  if (uses_smoothness(shape)) {
    if (!(smoothness > 0.0))
      throw Error(ErrorCode::config_semantic, "edge smoothness s must be > 0", "potential.smoothness");
    if (smoothness > width / 4.0)
      throw Error(ErrorCode::config_semantic, "edge smoothness s must satisfy s <= delta/4",
                  "potential.smoothness");
  }
}

double value(const PotentialSpec& p, double x) {
  const double u = x - p.center;
  switch (p.shape) {
    case PotentialShape::gaussian_bump:
      return p.amplitude * std::exp(-u * u / (2.0 * p.width * p.width));
    case PotentialShape::rectangular_smooth:
      return p.amplitude * (logistic((u + p.width / 2) / p.smoothness) -
                            logistic((u - p.width / 2) / p.smoothness));
    case PotentialShape::tanh_step_pair:
      return 0.5 * p.amplitude *
             (std::tanh((u + p.width / 2) / p.smoothness) - std::tanh((u - p.width / 2) / p.smoothness));
    case PotentialShape::erf_step:
      return 0.5 * p.amplitude * (1.0 + std::erf(u / (std::numbers::sqrt2 * p.width)));
    case PotentialShape::uniform_force:
      return -p.amplitude * u;
  }
  return 0.0;
}

double gradient(const PotentialSpec& p, double x) {
  const double u = x - p.center;
  switch (p.shape) {
    case PotentialShape::gaussian_bump:
      return -p.amplitude * u / (p.width * p.width) * std::exp(-u * u / (2.0 * p.width * p.width));
    case PotentialShape::rectangular_smooth:
      return p.amplitude / p.smoothness *
             (logistic_slope((u + p.width / 2) / p.smoothness) - logistic_slope((u - p.width / 2) / p.smoothness));
    case PotentialShape::tanh_step_pair:
      return 0.5 * p.amplitude / p.smoothness *
             (sech2((u + p.width / 2) / p.smoothness) - sech2((u - p.width / 2) / p.smoothness));
    case PotentialShape::erf_step: {
      const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * p.width);
      return p.amplitude * norm * std::exp(-u * u / (2.0 * p.width * p.width));
    }
    case PotentialShape::uniform_force:
      return -p.amplitude;
  }
  return 0.0;
}

double force_extent(const PotentialSpec& p) {
  switch (p.shape) {
    case PotentialShape::gaussian_bump:
    case PotentialShape::erf_step:
      // exp(-u^2/2) < 1e-18 for u > 9.1
      return 9.2 * p.width;
    case PotentialShape::rectangular_smooth:
      return p.width / 2 + 42.0 * p.smoothness;
    case PotentialShape::tanh_step_pair:
      return p.width / 2 + 22.0 * p.smoothness;
    case PotentialShape::uniform_force:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double max_abs_value(const PotentialSpec& p, double x_lo, double x_hi) {
  switch (p.shape) {
    case PotentialShape::erf_step:
    case PotentialShape::gaussian_bump:
    case PotentialShape::rectangular_smooth:
    case PotentialShape::tanh_step_pair:
      return std::abs(p.amplitude);
    case PotentialShape::uniform_force:
      return std::abs(p.amplitude) * std::max(std::abs(x_lo - p.center), std::abs(x_hi - p.center));
  }
  return 0.0;
}

}  // namespace bremsim
