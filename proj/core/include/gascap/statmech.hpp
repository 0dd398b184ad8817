#pragma once

#include <cmath>
#include <memory>
#include <string>

#include "gascap/spectrum.hpp"

namespace gascap {

/// Particle statistics. Fermions carry a spin degeneracy g = 2s + 1 that
/// multiplies every orbital level; photon-like bosons have no number
/// constraint (mu = 0).
class Species {
 public:
  enum class Kind { boson, fermion, photonlike };

  static Species boson() { return Species(Kind::boson, 1); }
  static Species fermion(int g = 1);
  static Species photonlike() { return Species(Kind::photonlike, 1); }

  Kind kind() const noexcept { return kind_; }
  int spin_degeneracy() const noexcept { return g_; }
  bool is_boson_like() const noexcept { return kind_ != Kind::fermion; }
  std::string name() const;

  friend bool operator==(const Species&, const Species&) = default;

 private:
  Species(Kind k, int g) : kind_(k), g_(g) {}
  Kind kind_;
  int g_;
};

/// Fugacity z = exp(beta mu), stored as its logarithm so that values
/// within a few ulps of 1 keep full relative precision in 1 - z.
class Fugacity {
 public:
  static Fugacity from_value(double z);
  static Fugacity from_log(double log_z) { return Fugacity(log_z); }

  double value() const noexcept { return std::exp(log_); }
  double log() const noexcept { return log_; }

 private:
  explicit Fugacity(double log_z) : log_(log_z) {}
  double log_;
};

// Per-level quantities. All take the fugacity relative to the energies as
// given; for photon-like species z is ignored and taken as 1.

/// Mean occupation of one degenerate sublevel (includes the factor g for
/// fermions).
double mean_occupation(const Species& species, double eps, double beta, Fugacity z);

// Spectrum sums. The fugacity is relative to the stored energies of
// `spectrum`; photon-like evaluation uses the absolute energies
// (stored + offset) with mu = 0 and rejects a non-positive ground level.

double total_number(const LevelList& spectrum, const Species& species, double beta, Fugacity z);

/// Absolute energy: sum deg * (eps + offset) * nbar.
double total_energy(const LevelList& spectrum, const Species& species, double beta, Fugacity z);

/// ln Z_GC.
double log_partition(const LevelList& spectrum, const Species& species, double beta, Fugacity z);

/// Von Neumann entropy of the grand-canonical state in bits; equals the
/// classical (and quantum) capacity of the noiseless channel.
double entropy_bits(const LevelList& spectrum, const Species& species, double beta, Fugacity z);

/// Solved grand-canonical state. `z` is relative to the zero-shifted
/// spectrum held in `spectrum`, whose offset carries the original ground
/// energy, so mu = offset + ln(z)/beta.
struct GasState {
  double beta;
  Fugacity z;
  Species species;
  std::shared_ptr<const LevelList> spectrum;
  double target_number;

  double temperature() const noexcept { return 1.0 / beta; }
  double mu() const noexcept { return spectrum->offset() + z.log() / beta; }
};

struct SolverOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
};

/// Finds z such that total_number(z) = N by monotone bisection (on ln(-ln z)
/// for bosons, ln z for fermions). The spectrum is zero-shifted first.
/// Throws NumericalError when N is unreachable or the residual stays above
/// tolerance, UsageError for photon-like species or bad arguments.
GasState solve_fugacity(const LevelList& spectrum, const Species& species, double N, double beta,
                        const SolverOptions& options = {});

/// |S ln2 - (ln Z + beta (E - mu N))| / max(1, S ln2).
double gibbs_residual(const GasState& state);

/// Boson fugacity upper clamp on a zero-shifted spectrum.
inline constexpr double kBosonFugacityCeiling = 1.0 - 0x1p-50;

}  // namespace gascap
