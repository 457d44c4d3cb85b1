#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bremsim/potentials.hpp"

namespace bremsim {

using Complex = std::complex<double>;

// Fixed artifact tolerances.
inline constexpr double kTailTolerance = 1e-8;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kAliasingFraction = 0.9;

// Uniform periodic lattice x_j = x_min + j dx, j = 0..n-1, with the conjugate
// momentum lattice k_m = m dk folded into [-pi/dx, pi/dx) in FFT order.
class Grid1D {
public:
  // Throws Error(config_semantic) unless n >= 8 is a power of two and
  // x_max > x_min.
  Grid1D(double x_min, double x_max, std::size_t n);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return (x_max_ - x_min_) / static_cast<double>(n_); }
  double dk() const noexcept;
  double k_max() const noexcept;  // pi / dx
  double length() const noexcept { return x_max_ - x_min_; }

  double x(std::size_t j) const noexcept { return x_min_ + static_cast<double>(j) * dx(); }
  double k(std::size_t m) const noexcept;

  std::vector<double> positions() const;
  std::vector<double> wavenumbers() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
  double x_min_;
  double x_max_;
  std::size_t n_;
};

struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;
  double charge = 1.0;
  double c = 137.035999084;

  void validate() const;
  // (2/3) q^2 / c^3
  double kappa() const noexcept { return 2.0 / 3.0 * charge * charge / (c * c * c); }

  friend bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;
};

enum class Envelope { gaussian, supergaussian };

struct PacketSpec {
  Envelope envelope = Envelope::supergaussian;
  int order = 8;  // supergaussian exponent, even and >= 2
  double x0 = 0.0;
  double length = 1.0;  // L
  double p0 = 0.0;

  void validate() const;
  int effective_order() const noexcept { return envelope == Envelope::gaussian ? 2 : order; }
  // Half-width beyond which |psi|^2 < 1e-12 of the peak.
  double reach() const;

  friend bool operator==(const PacketSpec&, const PacketSpec&) = default;
};

struct WaveFunction {
  Grid1D grid;
  std::vector<Complex> amplitudes;
  double time = 0.0;
};

// Probability outside [x_min, x_max) for the packet's continuous envelope.
double tail_probability_outside(const PacketSpec& spec, const Grid1D& grid);

// Normalized N env((x - x0)/L) exp(i p0 x / hbar) with env(u) = exp(-|u|^m / 2).
// Throws Error(domain_overflow) when more than kTailTolerance probability falls
// outside the grid and Error(aliasing) when |p0| + 6 hbar/L exceeds
// kAliasingFraction * pi hbar / dx.
WaveFunction make_packet(const PacketSpec& spec, const Grid1D& grid, const PhysicalConstants& k);

double norm(const WaveFunction& psi);
void normalize(WaveFunction& psi);

// Unitary transform psi~_m = dx/sqrt(2 pi) sum_j psi_j exp(-i k_m x_j), FFT
// order; sum |psi~|^2 dk equals sum |psi|^2 dx.
std::vector<Complex> to_momentum(const WaveFunction& psi);
WaveFunction from_momentum(const Grid1D& grid, std::span<const Complex> amplitudes, double time = 0.0);

// Spectral derivative d psi / dx.
std::vector<Complex> spectral_derivative(const Grid1D& grid, std::span<const Complex> f);

double expect_position(const WaveFunction& psi);
double expect_momentum(const WaveFunction& psi, const PhysicalConstants& k);
double position_variance(const WaveFunction& psi);
double expect_kinetic(const WaveFunction& psi, const PhysicalConstants& k);
double expect_energy(const WaveFunction& psi, const PotentialSpec& v, const PhysicalConstants& k);

// <a> = (1/M) sum |psi_j|^2 F(x_j) dx with F = -dV/dx.
double expect_accel(const WaveFunction& psi, const PotentialSpec& v, const PhysicalConstants& k);
// <a^2> = (1/M^2) sum |psi_j|^2 F(x_j)^2 dx.
double expect_accel_sq(const WaveFunction& psi, const PotentialSpec& v, const PhysicalConstants& k);

// Probability in momentum bins with |p/M| > (1 - delta) c.
double superluminal_weight(const WaveFunction& psi, const PhysicalConstants& k, double delta);
// True iff superluminal_weight < 1e-10. Requires 0 < delta < 1.
bool momentum_support_check(const WaveFunction& psi, const PhysicalConstants& k, double delta);

// Smallest P with probability(|p| > P) <= kTailTolerance.
double momentum_support(const WaveFunction& psi, const PhysicalConstants& k);

}  // namespace bremsim
