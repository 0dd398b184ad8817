#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gascap/spectrum.hpp"
#include "gascap/statmech.hpp"

namespace gascap {

/// One point of a capacity-vs-temperature curve.
struct CapacitySample {
  double T = 0.0;
  double T_ref = 1.0;  // normalizing temperature (T_c, T_f or 1)
  double capacity_bits = 0.0;
  double energy = 0.0;
  double mu = 0.0;
  double z = 0.0;  // relative to the zero-shifted spectrum
  double ground_fraction = 0.0;
  double particles = 0.0;  // resulting sum of nbar (equals N for massive species)

  double t_over_ref() const noexcept { return T / T_ref; }
};

struct CapacityCurve {
  std::vector<CapacitySample> samples;

  std::vector<double> temperatures() const;
  std::vector<double> capacities() const;
  std::vector<double> energies() const;
};

/// Solves the fugacity at (N, T) and evaluates the grand-canonical entropy.
CapacitySample capacity_point(const LevelList& spectrum, const Species& species, double N, double T);

/// Photon-like channel: mu = 0, no number constraint, spectrum must have a
/// strictly positive lowest (absolute) level.
CapacitySample photon_capacity_point(const LevelList& spectrum, double T);

/// One capacity_point per grid node, evaluated on `threads` workers; output
/// is ordered by grid index. The first failing node aborts with a
/// NumericalError carrying its temperature.
CapacityCurve capacity_curve(const LevelList& spectrum, const Species& species, double N,
                             std::span<const double> T_grid, double T_ref = 1.0, unsigned threads = 1);

/// `points` uniformly spaced values on [lo, hi] (a single point yields {lo}).
std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

/// Fourth-order central difference
///   f'(x) ~ [f(x-2h) - 8 f(x-h) + 8 f(x+h) - f(x+2h)] / (12 h)
/// at node `index` of a uniform grid; requires 2 <= index <= size-3.
double four_point_derivative(std::span<const double> x, std::span<const double> f, std::size_t index);

struct DerivativeCurve {
  std::vector<double> x;
  std::vector<double> dfdx;
};

/// four_point_derivative at every interior node.
DerivativeCurve derivative_curve(std::span<const double> x, std::span<const double> f);

/// Closed-form condensation and Fermi temperatures in natural units.
/// Entries that do not apply to the trap kind are empty.
struct ReferenceTemperatures {
  std::optional<double> tc_3d_harmonic;
  std::optional<double> tc_2d_harmonic;
  std::optional<double> tc_1d_harmonic;
  std::optional<double> tc_3d_box;
  std::optional<double> tf_harmonic;
  std::optional<double> tf_box;
};

ReferenceTemperatures reference_temperatures(const TrapDescriptor& trap, double N, int g = 1);

/// Thresholds for deciding whether a derivative curve has a kink.
struct KinkCriterion {
  double median_ratio = 3.0;  // max |second difference| must reach this multiple of the median
  std::size_t edge_margin = 3;  // and lie at least this many nodes from either end
};

struct KinkReport {
  double T = 0.0;          // grid node with the largest |second difference|
  std::size_t index = 0;   // index into the derivative curve
  double magnitude = 0.0;  // that largest |second difference|
  double median = 0.0;     // median |second difference|
  bool detected = false;

  double ratio() const noexcept { return median > 0.0 ? magnitude / median : magnitude > 0.0 ? std::numeric_limits<double>::infinity() : 0.0; }
};

/// Locates the point of largest |second difference| of dC/dT. Needs at
/// least 7 uniformly spaced samples.
KinkReport fracture_locator(std::span<const double> T, std::span<const double> dCdT, const KinkCriterion& criterion = {});

/// Least-squares slope of log C against log T over samples with
/// T_lo <= T <= T_hi. Needs at least 5 samples, all with C > 0.
double scaling_exponent(const CapacityCurve& curve, double T_lo, double T_hi);

}  // namespace gascap
