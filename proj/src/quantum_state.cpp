#include "bremsim/quantum_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "bremsim/error.hpp"
#include "bremsim/fft.hpp"

namespace bremsim {

namespace {

FftPlan& cached_plan(std::size_t n) {
  thread_local std::map<std::size_t, FftPlan> plans;
  auto it = plans.find(n);
  if (it == plans.end()) it = plans.emplace(n, FftPlan(n)).first;
  return it->second;
}

// int_{u0}^{inf} exp(-|u|^m) du
double envelope_tail(double u0, int m) {
  const double a = 1.0 / m;
  if (u0 >= 0) return boost::math::tgamma(a, std::pow(u0, m)) / m;
  return 2.0 * std::tgamma(1.0 + a) - boost::math::tgamma(a, std::pow(-u0, m)) / m;
}

}  // namespace

Grid1D::Grid1D(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
  if (n < 8 || !std::has_single_bit(n))
    throw Error(ErrorCode::config_semantic, "n must be a power of two and >= 8", "grid.n");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
    throw Error(ErrorCode::config_semantic, "x_max must exceed x_min", "grid.x_max");
}

double Grid1D::dk() const noexcept { return 2.0 * std::numbers::pi / (static_cast<double>(n_) * dx()); }
double Grid1D::k_max() const noexcept { return std::numbers::pi / dx(); }

double Grid1D::k(std::size_t m) const noexcept {
  const auto half = n_ / 2;
  const double idx = m < half ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n_);
  return idx * dk();
}

std::vector<double> Grid1D::positions() const {
  std::vector<double> xs(n_);
  for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
  return xs;
}

std::vector<double> Grid1D::wavenumbers() const {
  std::vector<double> ks(n_);
  for (std::size_t m = 0; m < n_; ++m) ks[m] = k(m);
  return ks;
}

void PhysicalConstants::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(hbar)) throw Error(ErrorCode::config_semantic, "hbar must be > 0", "constants.hbar");
  if (!positive(mass)) throw Error(ErrorCode::config_semantic, "mass must be > 0", "constants.M");
  if (!positive(charge)) throw Error(ErrorCode::config_semantic, "charge must be > 0", "constants.q");
  if (!positive(c)) throw Error(ErrorCode::config_semantic, "c must be > 0", "constants.c");
  if (!positive(kappa()))
    throw Error(ErrorCode::config_semantic, "radiation prefactor (2/3)q^2/c^3 is not finite", "constants.c");
}

void PacketSpec::validate() const {
  if (!(length > 0.0) || !std::isfinite(length))
    throw Error(ErrorCode::config_semantic, "packet length L must be > 0", "packet.L");
  if (envelope == Envelope::supergaussian && (order < 2 || order % 2 != 0))
    throw Error(ErrorCode::config_semantic, "supergaussian order must be an even integer >= 2", "packet.order");
  if (!std::isfinite(x0) || !std::isfinite(p0))
    throw Error(ErrorCode::config_semantic, "x0 and p0 must be finite", "packet.x0");
}

double PacketSpec::reach() const {
  // |psi|^2 = exp(-|u|^m) drops below 1e-12 at |u| = (12 ln 10)^(1/m).
  return length * std::pow(12.0 * std::numbers::ln10, 1.0 / effective_order());
}

double tail_probability_outside(const PacketSpec& spec, const Grid1D& grid) {
  const int m = spec.effective_order();
  const double total = 2.0 * std::tgamma(1.0 + 1.0 / m);
  const double right = envelope_tail((grid.x_max() - spec.x0) / spec.length, m);
  const double left = envelope_tail((spec.x0 - grid.x_min()) / spec.length, m);
  return (right + left) / total;
}

WaveFunction make_packet(const PacketSpec& spec, const Grid1D& grid, const PhysicalConstants& k) {
  spec.validate();
  const double tail = tail_probability_outside(spec, grid);
  if (tail > kTailTolerance) {
    throw Error(ErrorCode::domain_overflow,
                "packet tails put probability " + std::to_string(tail) + " outside the grid (limit 1e-8)",
                "packet.L");
  }
  const double p_edge = std::abs(spec.p0) + 6.0 * k.hbar / spec.length;
  if (p_edge > kAliasingFraction * k.hbar * grid.k_max()) {
    throw Error(ErrorCode::aliasing,
                "|p0| + 6 hbar/L = " + std::to_string(p_edge) + " exceeds 0.9 of the momentum lattice edge",
                "packet.p0");
  }

  const int m = spec.effective_order();
  WaveFunction psi{grid, std::vector<Complex>(grid.size()), 0.0};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    const double u = std::abs((x - spec.x0) / spec.length);
    const double env = std::exp(-0.5 * std::pow(u, m));
    psi.amplitudes[j] = env * std::polar(1.0, spec.p0 * x / k.hbar);
  }
  normalize(psi);
  return psi;
}

double norm(const WaveFunction& psi) {
  double sum = 0.0;
  for (const auto& z : psi.amplitudes) sum += std::norm(z);
  return sum * psi.grid.dx();
}

void normalize(WaveFunction& psi) {
  const double n = norm(psi);
  if (!(n > 0.0)) throw Error(ErrorCode::config_semantic, "cannot normalize a zero wave function");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& z : psi.amplitudes) z *= scale;
}

std::vector<Complex> to_momentum(const WaveFunction& psi) {
  const auto& g = psi.grid;
  auto& plan = cached_plan(g.size());
  std::vector<Complex> out(g.size());
  plan.forward(psi.amplitudes, out);
  const double scale = g.dx() / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t m = 0; m < g.size(); ++m) out[m] *= scale * std::polar(1.0, -g.k(m) * g.x_min());
  return out;
}

WaveFunction from_momentum(const Grid1D& grid, std::span<const Complex> amplitudes, double time) {
  std::vector<Complex> tmp(amplitudes.begin(), amplitudes.end());
  // psi_j = dk/sqrt(2 pi) sum_m psi~_m exp(i k_m x_j)
  const double scale = grid.dk() / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t m = 0; m < grid.size(); ++m) tmp[m] *= scale * std::polar(1.0, grid.k(m) * grid.x_min());
  WaveFunction psi{grid, std::vector<Complex>(grid.size()), time};
  cached_plan(grid.size()).backward(tmp, psi.amplitudes);
  return psi;
}

std::vector<Complex> spectral_derivative(const Grid1D& grid, std::span<const Complex> f) {
  auto& plan = cached_plan(grid.size());
  std::vector<Complex> out(grid.size());
  plan.forward(f, out);
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) {
    // Nyquist mode has no well-defined derivative for complex data; keep its
    // odd-symmetric value ik with k = -pi/dx, matching the momentum lattice.
    out[m] *= Complex(0.0, grid.k(m)) * inv_n;
  }
  plan.backward(out, out);
  return out;
}

double expect_position(const WaveFunction& psi) {
  double sum = 0.0;
  for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) sum += psi.grid.x(j) * std::norm(psi.amplitudes[j]);
  return sum * psi.grid.dx();
}

double expect_momentum(const WaveFunction& psi, const PhysicalConstants& k) {
  const auto phi = to_momentum(psi);
  double sum = 0.0;
  for (std::size_t m = 0; m < phi.size(); ++m) sum += psi.grid.k(m) * std::norm(phi[m]);
  return k.hbar * sum * psi.grid.dk();
}

double position_variance(const WaveFunction& psi) {
  const double mean = expect_position(psi);
  double sum = 0.0;
  for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) {
    const double d = psi.grid.x(j) - mean;
    sum += d * d * std::norm(psi.amplitudes[j]);
  }
  return sum * psi.grid.dx();
}

double expect_kinetic(const WaveFunction& psi, const PhysicalConstants& k) {
  const auto phi = to_momentum(psi);
  double sum = 0.0;
  for (std::size_t m = 0; m < phi.size(); ++m) {
    const double km = psi.grid.k(m);
    sum += km * km * std::norm(phi[m]);
  }
  return k.hbar * k.hbar / (2.0 * k.mass) * sum * psi.grid.dk();
}

double expect_energy(const WaveFunction& psi, const PotentialSpec& v, const PhysicalConstants& k) {
  double pot = 0.0;
  for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) pot += value(v, psi.grid.x(j)) * std::norm(psi.amplitudes[j]);
  return expect_kinetic(psi, k) + pot * psi.grid.dx();
}

double expect_accel(const WaveFunction& psi, const PotentialSpec& v, const PhysicalConstants& k) {
  double sum = 0.0;
  for (std::size_t j = 0; j < psi.amplitudes.size(); ++j)
    sum += std::norm(psi.amplitudes[j]) * -gradient(v, psi.grid.x(j));
  return sum * psi.grid.dx() / k.mass;
}

double expect_accel_sq(const WaveFunction& psi, const PotentialSpec& v, const PhysicalConstants& k) {
  double sum = 0.0;
  for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) {
    const double f = gradient(v, psi.grid.x(j));
    sum += std::norm(psi.amplitudes[j]) * f * f;
  }
  return sum * psi.grid.dx() / (k.mass * k.mass);
}

double superluminal_weight(const WaveFunction& psi, const PhysicalConstants& k, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw Error(ErrorCode::config_semantic, "momentum support margin must satisfy 0 < delta < 1");
  const auto phi = to_momentum(psi);
  const double p_cut = (1.0 - delta) * k.c * k.mass;
  double weight = 0.0;
  for (std::size_t m = 0; m < phi.size(); ++m)
    if (std::abs(k.hbar * psi.grid.k(m)) > p_cut) weight += std::norm(phi[m]);
  return weight * psi.grid.dk();
}

bool momentum_support_check(const WaveFunction& psi, const PhysicalConstants& k, double delta) {
  return superluminal_weight(psi, k, delta) < 1e-10;
}

double momentum_support(const WaveFunction& psi, const PhysicalConstants& k) {
  const auto phi = to_momentum(psi);
  std::vector<std::size_t> order(phi.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(psi.grid.k(a)) > std::abs(psi.grid.k(b));
  });
  const double dk = psi.grid.dk();
  double outside = 0.0;
  for (std::size_t idx : order) {
    outside += std::norm(phi[idx]) * dk;
    if (outside > kTailTolerance) return k.hbar * std::abs(psi.grid.k(idx));
  }
  return 0.0;
}

}  // namespace bremsim
