#include "gascap/capacity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <numbers>
#include <thread>

#include "gascap/errors.hpp"

namespace gascap {

std::vector<double> CapacityCurve::temperatures() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.T);
  return out;
}

std::vector<double> CapacityCurve::capacities() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.capacity_bits);
  return out;
}

std::vector<double> CapacityCurve::energies() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.energy);
  return out;
}

CapacitySample capacity_point(const LevelList& spectrum, const Species& species, double N, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw UsageError(fmt::format("temperature must be positive, got {}", T));
  if (species.kind() == Species::Kind::photonlike) return photon_capacity_point(spectrum, T);

  const double beta = 1.0 / T;
  const GasState state = solve_fugacity(spectrum, species, N, beta);
  const LevelList& sp = *state.spectrum;

  CapacitySample s;
  s.T = T;
  s.capacity_bits = entropy_bits(sp, species, beta, state.z);
  s.energy = total_energy(sp, species, beta, state.z);
  s.mu = state.mu();
  s.z = state.z.value();
  s.particles = total_number(sp, species, beta, state.z);
  const double ground = static_cast<double>(sp.ground().degeneracy) * mean_occupation(species, 0.0, beta, state.z);
  s.ground_fraction = std::clamp(ground / N, 0.0, 1.0);
  return s;
}

CapacitySample photon_capacity_point(const LevelList& spectrum, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw UsageError(fmt::format("temperature must be positive, got {}", T));
  const auto photon = Species::photonlike();
  const double beta = 1.0 / T;
  const auto one = Fugacity::from_log(0.0);

  CapacitySample s;
  s.T = T;
  s.capacity_bits = entropy_bits(spectrum, photon, beta, one);
  s.energy = total_energy(spectrum, photon, beta, one);
  s.mu = 0.0;
  s.z = 1.0;
  s.particles = total_number(spectrum, photon, beta, one);
  const double e0 = spectrum.ground().energy + spectrum.offset();
  const double ground = static_cast<double>(spectrum.ground().degeneracy) * mean_occupation(photon, e0, beta, one);
  s.ground_fraction = s.particles > 0.0 ? std::clamp(ground / s.particles, 0.0, 1.0) : 0.0;
  return s;
}

CapacityCurve capacity_curve(const LevelList& spectrum, const Species& species, double N,
                             std::span<const double> T_grid, double T_ref, unsigned threads) {
  for (std::size_t i = 1; i < T_grid.size(); ++i)
    if (!(T_grid[i] > T_grid[i - 1])) throw UsageError("capacity_curve: temperature grid must be strictly increasing");
  if (!(T_ref > 0.0)) throw UsageError("capacity_curve: reference temperature must be positive");

  const std::size_t n = T_grid.size();
  CapacityCurve curve;
  curve.samples.resize(n);
  std::vector<std::exception_ptr> failures(n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        curve.samples[i] = capacity_point(spectrum, species, N, T_grid[i]);
        curve.samples[i].T_ref = T_ref;
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const NumericalError& e) {
      throw NumericalError(fmt::format("at T={:.12g}: {}", T_grid[i], e.what()), e.residual(), T_grid[i]);
    }
  }
  return curve;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points == 0) throw UsageError("uniform_grid: need at least one point");
  if (points == 1) return {lo};
  if (!(hi > lo)) throw UsageError(fmt::format("uniform_grid: empty range [{}, {}]", lo, hi));
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

namespace {

void require_uniform(std::span<const double> x, std::size_t first, std::size_t last) {
  const double h = (x[last] - x[first]) / static_cast<double>(last - first);
  if (!(h > 0.0)) throw UsageError("grid must be strictly increasing");
  for (std::size_t i = first; i < last; ++i)
    if (std::abs((x[i + 1] - x[i]) - h) > 1e-9 * h) throw UsageError("grid spacing is not uniform");
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  return 0.5 * (*mid + *std::max_element(v.begin(), mid));
}

}  // namespace

double four_point_derivative(std::span<const double> x, std::span<const double> f, std::size_t index) {
  if (x.size() != f.size()) throw UsageError("four_point_derivative: size mismatch");
  if (index < 2 || index + 2 >= x.size())
    throw UsageError(fmt::format("four_point_derivative: index {} too close to the boundary", index));
  require_uniform(x, index - 2, index + 2);
  const double h = (x[index + 2] - x[index - 2]) / 4.0;
  return (f[index - 2] - 8.0 * f[index - 1] + 8.0 * f[index + 1] - f[index + 2]) / (12.0 * h);
}

DerivativeCurve derivative_curve(std::span<const double> x, std::span<const double> f) {
  if (x.size() != f.size()) throw UsageError("derivative_curve: size mismatch");
  if (x.size() < 5) throw UsageError("derivative_curve: need at least 5 samples");
  require_uniform(x, 0, x.size() - 1);
  DerivativeCurve out;
  for (std::size_t i = 2; i + 2 < x.size(); ++i) {
    out.x.push_back(x[i]);
    out.dfdx.push_back(four_point_derivative(x, f, i));
  }
  return out;
}

ReferenceTemperatures reference_temperatures(const TrapDescriptor& trap, double N, int g) {
  if (!(N > 0.0)) throw UsageError(fmt::format("reference temperatures need N > 0, got {}", N));
  if (g < 1) throw UsageError("spin degeneracy must be >= 1");

  ReferenceTemperatures out;
  if (const auto* h = std::get_if<HarmonicTrap>(&trap.kind)) {
    if (h->dim < 1 || h->dim > 3 || h->ratios.size() != static_cast<std::size_t>(h->dim))
      throw UsageError("harmonic trap needs 1..3 dimensions with one ratio each");
    double product = 1.0;
    for (int r : h->ratios) {
      if (r <= 0) throw UsageError("frequency ratios must be positive");
      product *= r;
    }
    const double omega = std::pow(product, 1.0 / h->dim);  // geometric mean
    switch (h->dim) {
      case 3:
        out.tc_3d_harmonic = omega * std::cbrt(N / std::riemann_zeta(3.0));
        out.tf_harmonic = omega * std::cbrt(6.0 * N / g);
        break;
      case 2:
        out.tc_2d_harmonic = omega * std::sqrt(N / std::riemann_zeta(2.0));
        break;
      case 1:
        if (!(N > 1.0)) throw UsageError(fmt::format("1D condensation temperature needs N > 1, got {}", N));
        out.tc_1d_harmonic = omega * N / std::log(2.0 * N);
        break;
    }
  } else if (std::holds_alternative<PeriodicBox>(trap.kind)) {
    // Energy unit (2 pi hbar)^2 / (2 m L^2).
    out.tc_3d_box = std::pow(N / std::riemann_zeta(1.5), 2.0 / 3.0) / std::numbers::pi;
    out.tf_box = std::pow(3.0 * N / (4.0 * std::numbers::pi * g), 2.0 / 3.0);
  }
  return out;
}

KinkReport fracture_locator(std::span<const double> T, std::span<const double> dCdT, const KinkCriterion& criterion) {
  if (T.size() != dCdT.size()) throw UsageError("fracture_locator: size mismatch");
  if (T.size() < 7) throw UsageError(fmt::format("fracture_locator: need at least 7 samples, got {}", T.size()));
  require_uniform(T, 0, T.size() - 1);

  std::vector<double> second(T.size() - 2);
  for (std::size_t j = 1; j + 1 < T.size(); ++j)
    second[j - 1] = std::abs(dCdT[j + 1] - 2.0 * dCdT[j] + dCdT[j - 1]);

  const auto peak = static_cast<std::size_t>(std::max_element(second.begin(), second.end()) - second.begin());
  KinkReport r;
  r.index = peak + 1;
  r.T = T[r.index];
  r.magnitude = second[peak];
  r.median = median(second);
  const bool interior = peak >= criterion.edge_margin && second.size() - 1 - peak >= criterion.edge_margin;
  r.detected = interior && r.magnitude >= criterion.median_ratio * r.median && r.magnitude > 0.0;
  return r;
}

double scaling_exponent(const CapacityCurve& curve, double T_lo, double T_hi) {
  std::vector<double> lx, ly;
  for (const auto& s : curve.samples) {
    if (s.T < T_lo || s.T > T_hi) continue;
    if (!(s.capacity_bits > 0.0)) throw DomainError(fmt::format("scaling_exponent: non-positive capacity at T={}", s.T));
    lx.push_back(std::log(s.T));
    ly.push_back(std::log(s.capacity_bits));
  }
  if (lx.empty()) throw UsageError(fmt::format("scaling_exponent: no samples in [{}, {}]", T_lo, T_hi));
  if (lx.size() < 5) throw UsageError(fmt::format("scaling_exponent: need at least 5 samples, got {}", lx.size()));

  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace gascap
