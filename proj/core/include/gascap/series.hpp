#pragma once

#include <array>
#include <vector>

#include "gascap/spectrum.hpp"
#include "gascap/statmech.hpp"

namespace gascap::series {

/// S_k = sum_i deg_i exp(-k beta eps_i),  D_k = sum_i deg_i beta eps_i exp(-k beta eps_i),
/// for k = 1..kmax on a zero-shifted spectrum.
struct SpectralSums {
  std::vector<double> S;
  std::vector<double> D;
  double beta = 0.0;

  int kmax() const noexcept { return static_cast<int>(S.size()); }
};

/// Highest order carried by the expansion.
inline constexpr int kMaxOrder = 3;

SpectralSums spectral_sums(const LevelList& spectrum, double beta, int kmax = kMaxOrder);

/// z = c1 x + c2 x^2 + c3 x^3 + O(x^4), x = N / S_1.
struct FugacityCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// Bosons: c2 = -S2/S1; fermions: c2 = +S2/S1. c1 and c3 are shared.
/// Fermion sums are scaled by the spin degeneracy g.
FugacityCoefficients fugacity_coefficients(const SpectralSums& sums, const Species& species);

/// High-temperature expansion of the capacity in x = N/S_1:
///   C / log2(e) = sum_i alpha_i x^i + log_terms[0] x ln x + log_terms[1] x^2 ln x + O(x^4).
struct ExpansionCoefficients {
  FugacityCoefficients fugacity;
  std::array<double, 3> alpha{};
  std::array<double, 2> log_terms{};
  double s1 = 0.0;  // S_1 the expansion variable is measured against (g * S_1 for fermions)
};

ExpansionCoefficients capacity_expansion(const SpectralSums& sums, const Species& species);

/// Evaluates the truncated expansion (log2(e) applied here).
double capacity_series_bits(const ExpansionCoefficients& coefficients, double N);

/// Truncated fugacity cubic at x = N / S_1.
double fugacity_series(const ExpansionCoefficients& coefficients, double N);

struct FugacityComparison {
  double expansion_variable = 0.0;  // N / S_1
  double z_series = 0.0;
  double z_exact = 0.0;
  double absolute_gap = 0.0;
  double relative_gap = 0.0;
  bool outside_series_regime = false;  // N / S_1 >= 0.1
};

/// Cubic fugacity against the bisection solve on the same (zero-shifted) spectrum.
FugacityComparison series_vs_exact_fugacity(const LevelList& spectrum, const Species& species, double N, double beta);

/// Exponent eta of the semiclassical density of states for V = r^gamma in
/// d dimensions: rho(eps) ~ eps^eta, eta = d/gamma + (d-2)/2. gamma may be +inf (box).
double dos_exponent(double gamma, int d);

/// Continuum value of D_k / S_k = (d/gamma + d/2) / k. Requires eta > -1.
double moment_ratio_analytic(double gamma, int d, int k);

struct AdvantagePrediction {
  bool fermion_advantage = false;  // 1/gamma + 1/2 > 1/d
  int alpha2_boson_sign = 0;       // sign of 1 - (d/gamma + d/2)
};

AdvantagePrediction fermion_advantage_condition(double gamma, int d);

/// 2d/gamma + d > d/gamma + d/2 > 1 > 0.
bool systematics_condition(double gamma, int d);

}  // namespace gascap::series
