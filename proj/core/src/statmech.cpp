#include "gascap/statmech.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "gascap/errors.hpp"

namespace gascap {

Species Species::fermion(int g) {
  if (g < 1) throw UsageError(fmt::format("fermion spin degeneracy must be >= 1, got {}", g));
  return Species(Kind::fermion, g);
}

std::string Species::name() const {
  switch (kind_) {
    case Kind::boson: return "boson";
    case Kind::fermion: return fmt::format("fermion(g={})", g_);
    case Kind::photonlike: return "photonlike";
  }
  return "unknown";
}

Fugacity Fugacity::from_value(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw UsageError(fmt::format("fugacity must be positive and finite, got {}", z));
  return Fugacity(std::log(z));
}

namespace {

// Everything below is expressed through the reduced level energy
// a = beta * (eps - mu) = beta * eps - ln z.

double boson_occupation(double a) { return 1.0 / std::expm1(a); }

// -ln(1 - e^{-a}), accurate for both a -> 0 and a large.
double boson_log_partition(double a) {
  return a < std::numbers::ln2 ? -std::log(-std::expm1(-a)) : -std::log1p(-std::exp(-a));
}

double boson_entropy_nats(double a) {
  const double n = boson_occupation(a);
  return (n > 0.0 ? a * n : 0.0) + boson_log_partition(a);
}

double fermion_occupation(double a) { return 1.0 / (std::exp(a) + 1.0); }

double fermion_log_partition(double a) {
  return a >= 0.0 ? std::log1p(std::exp(-a)) : -a + std::log1p(std::exp(a));
}

// Binary entropy of p = 1/(e^a + 1); symmetric in a.
double fermion_entropy_nats(double a) {
  const double x = std::abs(a);
  const double p = 1.0 / (std::exp(x) + 1.0);
  return std::log1p(std::exp(-x)) + (p > 0.0 ? x * p : 0.0);
}

// a_i = scale * eps_i + shift for every stored level.
struct Reduction {
  double beta;
  double shift;
};

Reduction reduction_for(const LevelList& spectrum, const Species& species, double beta, Fugacity z) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw UsageError(fmt::format("beta must be positive and finite, got {}", beta));
  if (species.kind() == Species::Kind::photonlike) {
    if (!(spectrum.ground().energy + spectrum.offset() > 0.0))
      throw DomainError("divergent photonlike partition function: lowest level must be positive");
    return {beta, beta * spectrum.offset()};
  }
  const Reduction r{beta, -z.log()};
  if (species.kind() == Species::Kind::boson && !(beta * spectrum.ground().energy + r.shift > 0.0))
    throw DomainError("fugacity at or above condensation bound");
  return r;
}

template <class PerLevel>
double sum_levels(const LevelList& spectrum, const Reduction& r, PerLevel&& f) {
  double total = 0.0;
  for (const auto& l : spectrum.levels())
    total += static_cast<double>(l.degeneracy) * f(r.beta * l.energy + r.shift, l.energy);
  return total;
}

}  // namespace

double mean_occupation(const Species& species, double eps, double beta, Fugacity z) {
  switch (species.kind()) {
    case Species::Kind::boson:
    case Species::Kind::photonlike: {
      const double a = species.kind() == Species::Kind::boson ? beta * eps - z.log() : beta * eps;
      if (!(a > 0.0)) throw DomainError("fugacity at or above condensation bound");
      return boson_occupation(a);
    }
    case Species::Kind::fermion:
      return species.spin_degeneracy() * fermion_occupation(beta * eps - z.log());
  }
  return 0.0;
}

double total_number(const LevelList& spectrum, const Species& species, double beta, Fugacity z) {
  const auto r = reduction_for(spectrum, species, beta, z);
  if (species.is_boson_like())
    return sum_levels(spectrum, r, [](double a, double) { return boson_occupation(a); });
  return species.spin_degeneracy() *
         sum_levels(spectrum, r, [](double a, double) { return fermion_occupation(a); });
}

double total_energy(const LevelList& spectrum, const Species& species, double beta, Fugacity z) {
  const auto r = reduction_for(spectrum, species, beta, z);
  const double offset = spectrum.offset();
  if (species.is_boson_like())
    return sum_levels(spectrum, r, [offset](double a, double eps) { return (eps + offset) * boson_occupation(a); });
  return species.spin_degeneracy() *
         sum_levels(spectrum, r, [offset](double a, double eps) { return (eps + offset) * fermion_occupation(a); });
}

double log_partition(const LevelList& spectrum, const Species& species, double beta, Fugacity z) {
  const auto r = reduction_for(spectrum, species, beta, z);
  if (species.is_boson_like())
    return sum_levels(spectrum, r, [](double a, double) { return boson_log_partition(a); });
  return species.spin_degeneracy() *
         sum_levels(spectrum, r, [](double a, double) { return fermion_log_partition(a); });
}

double entropy_bits(const LevelList& spectrum, const Species& species, double beta, Fugacity z) {
  const auto r = reduction_for(spectrum, species, beta, z);
  double nats;
  if (species.is_boson_like())
    nats = sum_levels(spectrum, r, [](double a, double) { return boson_entropy_nats(a); });
  else
    nats = species.spin_degeneracy() *
           sum_levels(spectrum, r, [](double a, double) { return fermion_entropy_nats(a); });
  return nats / std::numbers::ln2;
}

namespace {

struct Bracket {
  double lo;
  double hi;
};

// Bisection of a monotone function on [lo, hi] until the midpoint is no
// longer representable between the endpoints. `excess(x)` has opposite
// signs at lo and hi; returns the endpoint with the smaller |excess|.
template <class F>
double bisect(F&& excess, Bracket b, int max_iterations) {
  double f_lo = excess(b.lo);
  double f_hi = excess(b.hi);
  for (int it = 0; it < max_iterations; ++it) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= std::min(b.lo, b.hi) || mid >= std::max(b.lo, b.hi)) break;
    const double f_mid = excess(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      b.lo = mid;
      f_lo = f_mid;
    } else {
      b.hi = mid;
      f_hi = f_mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? b.lo : b.hi;
}

Fugacity solve_boson(const LevelList& shifted, const Species& species, double N, double beta, int max_iterations) {
  // u = ln t, t = -ln z; N(u) is strictly decreasing.
  auto fugacity_at = [](double u) { return Fugacity::from_log(-std::exp(u)); };
  auto excess = [&](double u) { return total_number(shifted, species, beta, fugacity_at(u)) - N; };

  const double u_min = std::log(-std::log1p(-0x1p-50));
  const double n_max = excess(u_min) + N;
  if (n_max < N && (N - n_max) / N > 1e-10)
    throw NumericalError(
        fmt::format("unreachable N: {} exceeds {} available at the boson fugacity ceiling", N, n_max),
        (N - n_max) / N);

  double u_hi = 0.0;
  int grow = 0;
  while (excess(u_hi) > 0.0) {
    u_hi += std::numbers::ln2;
    if (++grow > 64) throw NumericalError(fmt::format("unreachable N: {} too small to bracket", N));
  }
  return fugacity_at(bisect(excess, {u_min, u_hi}, max_iterations));
}

Fugacity solve_fermion(const LevelList& shifted, const Species& species, double N, double beta, int max_iterations) {
  const double n_sup = static_cast<double>(species.spin_degeneracy()) * static_cast<double>(shifted.total_states());
  if (N >= n_sup)
    throw NumericalError(fmt::format("unreachable N: {} >= {} fermion states", N, n_sup), (N - n_sup) / N);

  auto excess = [&](double ln_z) { return total_number(shifted, species, beta, Fugacity::from_log(ln_z)) - N; };
  Bracket b{-1.0, 1.0};
  int grow = 0;
  while (excess(b.hi) < 0.0) {
    b.hi *= 2.0;
    if (++grow > 64) throw NumericalError("unreachable N: fermion bracket did not close");
  }
  while (excess(b.lo) > 0.0) {
    b.lo *= 2.0;
    if (++grow > 128) throw NumericalError("unreachable N: fermion bracket did not close");
  }
  return Fugacity::from_log(bisect(excess, b, max_iterations));
}

}  // namespace

GasState solve_fugacity(const LevelList& spectrum, const Species& species, double N, double beta,
                        const SolverOptions& options) {
  if (species.kind() == Species::Kind::photonlike)
    throw UsageError("photon-like species carry no particle-number constraint");
  if (!(N > 0.0) || !std::isfinite(N)) throw UsageError(fmt::format("N must be positive, got {}", N));
  if (!(beta > 0.0) || !std::isfinite(beta)) throw UsageError(fmt::format("beta must be positive, got {}", beta));

  auto shifted = std::make_shared<const LevelList>(shift_to_zero(spectrum));
  const Fugacity z = species.kind() == Species::Kind::boson
                         ? solve_boson(*shifted, species, N, beta, options.max_iterations)
                         : solve_fermion(*shifted, species, N, beta, options.max_iterations);

  const double residual = std::abs(total_number(*shifted, species, beta, z) - N) / N;
  if (!(residual <= options.tolerance))
    throw NumericalError(fmt::format("fugacity solve did not converge: relative residual {:.3e}", residual), residual,
                         1.0 / beta);
  return GasState{beta, z, species, std::move(shifted), N};
}

double gibbs_residual(const GasState& state) {
  const auto& sp = *state.spectrum;
  const double s_nats = entropy_bits(sp, state.species, state.beta, state.z) * std::numbers::ln2;
  const double log_z = log_partition(sp, state.species, state.beta, state.z);
  const double energy = total_energy(sp, state.species, state.beta, state.z);
  const double number = total_number(sp, state.species, state.beta, state.z);
  const double rhs = log_z + state.beta * (energy - state.mu() * number);
  return std::abs(s_nats - rhs) / std::max(1.0, s_nats);
}

}  // namespace gascap
