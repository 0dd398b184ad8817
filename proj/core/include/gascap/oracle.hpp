#pragma once

#include <vector>

#include "gascap/spectrum.hpp"
#include "gascap/statmech.hpp"

/// Brute-force grand-canonical ensemble on tiny systems: every occupation
/// tuple over the sublevels is enumerated explicitly. Independent of the
/// per-mode closed forms in statmech; used as ground truth in tests.
namespace gascap::oracle {

struct Configuration {
  int total_n = 0;
  double total_e = 0.0;     // stored (spectrum-relative) energy
  double log_weight = 0.0;  // total_n ln z - beta total_e
};

struct ConfigurationTable {
  std::vector<Configuration> entries;
  int truncation = 0;  // max occupation per sublevel
  double offset = 0.0;  // spectrum offset, for absolute energies

  /// Unnormalized weights z^n e^{-beta E}.
  std::vector<double> weights() const;
};

/// Hard limit on the number of enumerated sublevels.
inline constexpr std::size_t kMaxSublevels = 6;

/// Sublevels are degeneracy (times g for fermions) copies of each level.
/// Fermion sublevels always run over {0, 1}; boson-like over 0..M.
ConfigurationTable enumerate(const LevelList& spectrum, const Species& species, double beta, Fugacity z, int M);

/// Shannon entropy, in bits, of the normalized weights.
double brute_force_entropy_bits(const ConfigurationTable& table);

struct Moments {
  double mean_n = 0.0;
  double mean_e = 0.0;  // absolute energy
  double log_norm = 0.0;  // ln sum of weights
};

Moments brute_force_moments(const ConfigurationTable& table);

}  // namespace gascap::oracle
