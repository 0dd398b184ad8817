#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace gascap {

struct Level {
  double energy;
  std::uint64_t degeneracy;

  friend bool operator==(const Level&, const Level&) = default;
};

/// Discrete single-particle spectrum as (energy, degeneracy) pairs.
///
/// Energies are dimensionless (harmonic traps: units of hbar*omega_ho;
/// periodic boxes: units of (2 pi hbar)^2 / (2 m L^2)). The absolute energy
/// of a level is `energy + offset()`; shift_to_zero() moves the lowest level
/// into the offset so that the stored ground level sits at exactly zero.
///
/// Invariants: non-empty, energies strictly increasing, degeneracies >= 1.
/// Immutable after construction.
class LevelList {
 public:
  explicit LevelList(std::vector<Level> levels, double offset = 0.0);

  std::span<const Level> levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }
  const Level& operator[](std::size_t i) const { return levels_[i]; }
  const Level& ground() const noexcept { return levels_.front(); }
  double offset() const noexcept { return offset_; }

  /// Sum of degeneracies.
  std::uint64_t total_states() const noexcept;

  friend bool operator==(const LevelList& a, const LevelList& b) {
    return a.levels_ == b.levels_ && a.offset_ == b.offset_;
  }

 private:
  friend LevelList shift_to_zero(const LevelList&);
  friend LevelList restore_offset(const LevelList&);

  std::vector<Level> levels_;
  double offset_;
  // Set by shift_to_zero: the pre-shift list, so that restore_offset is
  // bit-exact even where (e - e0) + e0 rounds.
  std::shared_ptr<const LevelList> unshifted_;
};

/// Harmonic trap with integer frequency ratios p:q:r (one per axis).
struct HarmonicTrap {
  int dim = 3;
  std::vector<int> ratios{1, 1, 1};
};

/// Cubic box with periodic boundary conditions (always 3D).
struct PeriodicBox {};

/// Isotropic power-law potential V = r^gamma in `dim` dimensions. Only used
/// analytically by the series module; no discrete levels exist for it.
struct PowerLawTrap {
  double gamma = 2.0;
  int dim = 3;
};

struct TrapDescriptor {
  std::variant<HarmonicTrap, PeriodicBox, PowerLawTrap> kind;
  /// Max quanta per axis (harmonic) or max |n_i| (box).
  int cutoff = 1;
};

/// All levels sum_j r_j n_j with 0 <= n_j <= cutoff, grouped by energy.
/// Ground state at zero (no zero-point energy).
LevelList harmonic_levels(int dim, std::span<const int> ratios, int cutoff);

/// All levels n_x^2 + n_y^2 + n_z^2 with |n_i| <= cutoff.
LevelList box_levels_3d(int cutoff);

/// Dispatches on the trap kind; power-law traps are rejected.
LevelList build_levels(const TrapDescriptor& trap);

/// Moves levels[0].energy into the offset.
LevelList shift_to_zero(const LevelList& levels);

/// Folds the offset back into the energies (inverse of shift_to_zero).
LevelList restore_offset(const LevelList& levels);

/// Adds a constant to every stored energy; the offset is untouched.
LevelList add_constant(const LevelList& levels, double c);

/// `energy,degeneracy` rows with a header line; absolute energies.
void write_csv(std::ostream& out, const LevelList& levels);

}  // namespace gascap
