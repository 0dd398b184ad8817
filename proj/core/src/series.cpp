#include "gascap/series.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "gascap/errors.hpp"

namespace gascap::series {

SpectralSums spectral_sums(const LevelList& spectrum, double beta, int kmax) {
  if (kmax < 1 || kmax > kMaxOrder) throw UsageError(fmt::format("spectral_sums: kmax must be in 1..{}", kMaxOrder));
  if (!(beta > 0.0)) throw UsageError("spectral_sums: beta must be positive");
  if (spectrum.ground().energy != 0.0) throw DomainError("spectral_sums: spectrum must be zero-shifted");

  SpectralSums sums;
  sums.beta = beta;
  sums.S.assign(kmax, 0.0);
  sums.D.assign(kmax, 0.0);
  for (const auto& l : spectrum.levels()) {
    const double be = beta * l.energy;
    const double deg = static_cast<double>(l.degeneracy);
    for (int k = 1; k <= kmax; ++k) {
      const double w = deg * std::exp(-k * be);
      sums.S[k - 1] += w;
      sums.D[k - 1] += be * w;
    }
  }
  return sums;
}

namespace {

struct Scaled {
  double S1, S2, S3, D1, D2, D3;
};

Scaled scaled_sums(const SpectralSums& sums, const Species& species) {
  if (sums.kmax() < kMaxOrder) throw UsageError("series expansion needs spectral sums up to k = 3");
  if (species.kind() == Species::Kind::photonlike) throw UsageError("series expansion needs a number constraint");
  // g spin components per orbital: every sum picks up a factor g.
  const double g = species.kind() == Species::Kind::fermion ? species.spin_degeneracy() : 1.0;
  return {g * sums.S[0], g * sums.S[1], g * sums.S[2], g * sums.D[0], g * sums.D[1], g * sums.D[2]};
}

}  // namespace

FugacityCoefficients fugacity_coefficients(const SpectralSums& sums, const Species& species) {
  const auto s = scaled_sums(sums, species);
  const double sign = species.kind() == Species::Kind::fermion ? 1.0 : -1.0;
  return {1.0, sign * s.S2 / s.S1, (2.0 * s.S2 * s.S2 - s.S1 * s.S3) / (s.S1 * s.S1)};
}

ExpansionCoefficients capacity_expansion(const SpectralSums& sums, const Species& species) {
  const auto s = scaled_sums(sums, species);
  ExpansionCoefficients out;
  out.fugacity = fugacity_coefficients(sums, species);
  out.s1 = s.S1;

  const double alpha2_boson = s.S2 / 2.0 - (s.S2 / s.S1) * s.D1 + s.D2;
  out.alpha[0] = s.S1 + s.D1;
  out.alpha[1] = species.kind() == Species::Kind::fermion ? -alpha2_boson : alpha2_boson;
  out.alpha[2] = -s.S2 * s.S2 / (2.0 * s.S1) + s.S3 / 3.0 + out.fugacity.c3 * s.D1 - 2.0 * (s.S2 / s.S1) * s.D2 + s.D3;
  // N = x S_1 holds exactly, so ln x only enters through -N ln z.
  out.log_terms = {-s.S1, 0.0};
  return out;
}

double capacity_series_bits(const ExpansionCoefficients& c, double N) {
  const double x = N / c.s1;
  const double lx = std::log(x);
  const double nats = c.alpha[0] * x + c.alpha[1] * x * x + c.alpha[2] * x * x * x + c.log_terms[0] * x * lx +
                      c.log_terms[1] * x * x * lx;
  return nats * std::numbers::log2e;
}

double fugacity_series(const ExpansionCoefficients& c, double N) {
  const double x = N / c.s1;
  return x * (c.fugacity.c1 + x * (c.fugacity.c2 + x * c.fugacity.c3));
}

FugacityComparison series_vs_exact_fugacity(const LevelList& spectrum, const Species& species, double N, double beta) {
  const LevelList shifted = shift_to_zero(spectrum);
  const auto coefficients = capacity_expansion(spectral_sums(shifted, beta), species);

  FugacityComparison out;
  out.expansion_variable = N / coefficients.s1;
  out.outside_series_regime = out.expansion_variable >= 0.1;
  out.z_series = fugacity_series(coefficients, N);
  SolverOptions tight;
  tight.tolerance = 1e-12;
  out.z_exact = solve_fugacity(shifted, species, N, beta, tight).z.value();
  out.absolute_gap = std::abs(out.z_series - out.z_exact);
  out.relative_gap = out.absolute_gap / out.z_exact;
  return out;
}

namespace {

void check_power_law(double gamma, int d) {
  if (!(gamma > 0.0)) throw UsageError(fmt::format("power-law exponent must be positive, got {}", gamma));
  if (d < 1) throw UsageError(fmt::format("dimension must be >= 1, got {}", d));
}

}  // namespace

double dos_exponent(double gamma, int d) {
  check_power_law(gamma, d);
  return d / gamma + (d - 2) / 2.0;
}

double moment_ratio_analytic(double gamma, int d, int k) {
  const double eta = dos_exponent(gamma, d);
  if (!(eta > -1.0)) throw DomainError(fmt::format("density of states eps^{} is not integrable at 0", eta));
  if (k < 1) throw UsageError("moment order k must be >= 1");
  return (d / gamma + d / 2.0) / k;
}

AdvantagePrediction fermion_advantage_condition(double gamma, int d) {
  check_power_law(gamma, d);
  const double lhs = 1.0 / gamma + 0.5;
  const double rhs = 1.0 / d;
  const double slope = d / gamma + d / 2.0;
  return {lhs > rhs, slope < 1.0 ? 1 : (slope > 1.0 ? -1 : 0)};
}

bool systematics_condition(double gamma, int d) {
  check_power_law(gamma, d);
  const double leading = d / gamma + d / 2.0;
  return 2.0 * d / gamma + d > leading && leading > 1.0;
}

}  // namespace gascap::series
