#include "gascap/spectrum.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <numeric>
#include <ostream>

#include "gascap/errors.hpp"

namespace gascap {

LevelList::LevelList(std::vector<Level> levels, double offset)
    : levels_(std::move(levels)), offset_(offset) {
  if (levels_.empty()) throw UsageError("LevelList: empty spectrum");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].degeneracy < 1) throw UsageError("LevelList: zero degeneracy");
    if (i > 0 && !(levels_[i].energy > levels_[i - 1].energy))
      throw UsageError("LevelList: energies must be strictly increasing");
  }
}

std::uint64_t LevelList::total_states() const noexcept {
  return std::accumulate(levels_.begin(), levels_.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const Level& l) { return acc + l.degeneracy; });
}

namespace {

// Degeneracy counting as repeated convolution of per-axis occupation
// patterns. Index = integer energy.
std::vector<std::uint64_t> convolve(const std::vector<std::uint64_t>& acc,
                                    const std::vector<std::uint64_t>& axis) {
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < axis.size(); ++j)
    if (axis[j] != 0) support.push_back(j);
  std::vector<std::uint64_t> out(acc.size() + axis.size() - 1, 0);
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] == 0) continue;
    for (std::size_t j : support) out[i + j] += acc[i] * axis[j];
  }
  return out;
}

LevelList from_counts(const std::vector<std::uint64_t>& counts) {
  std::vector<Level> levels;
  for (std::size_t e = 0; e < counts.size(); ++e)
    if (counts[e] != 0) levels.push_back({static_cast<double>(e), counts[e]});
  return LevelList(std::move(levels));
}

}  // namespace

LevelList harmonic_levels(int dim, std::span<const int> ratios, int cutoff) {
  if (dim < 1 || dim > 3) throw UsageError(fmt::format("harmonic_levels: dimension {} outside 1..3", dim));
  if (ratios.size() != static_cast<std::size_t>(dim))
    throw UsageError(fmt::format("harmonic_levels: expected {} frequency ratios, got {}", dim, ratios.size()));
  if (cutoff < 1) throw UsageError("harmonic_levels: cutoff must be >= 1");
  for (int r : ratios)
    if (r <= 0) throw UsageError("harmonic_levels: frequency ratios must be positive");

  std::vector<std::uint64_t> counts{1};
  for (int r : ratios) {
    std::vector<std::uint64_t> axis(static_cast<std::size_t>(r) * cutoff + 1, 0);
    for (int n = 0; n <= cutoff; ++n) axis[static_cast<std::size_t>(r) * n] = 1;
    counts = convolve(counts, axis);
  }
  return from_counts(counts);
}

LevelList box_levels_3d(int cutoff) {
  if (cutoff < 1) throw UsageError("box_levels_3d: cutoff must be >= 1");
  const auto c = static_cast<std::size_t>(cutoff);
  std::vector<std::uint64_t> axis(c * c + 1, 0);
  axis[0] = 1;
  for (std::size_t n = 1; n <= c; ++n) axis[n * n] = 2;  // +n and -n
  auto counts = convolve(convolve(axis, axis), axis);
  return from_counts(counts);
}

LevelList build_levels(const TrapDescriptor& trap) {
  struct Visitor {
    int cutoff;
    LevelList operator()(const HarmonicTrap& h) const { return harmonic_levels(h.dim, h.ratios, cutoff); }
    LevelList operator()(const PeriodicBox&) const { return box_levels_3d(cutoff); }
    LevelList operator()(const PowerLawTrap&) const {
      throw UsageError("power-law traps have no discrete spectrum");
    }
  };
  return std::visit(Visitor{trap.cutoff}, trap.kind);
}

LevelList shift_to_zero(const LevelList& levels) {
  const double e0 = levels.ground().energy;
  if (e0 == 0.0) return levels;
  std::vector<Level> shifted(levels.levels().begin(), levels.levels().end());
  for (auto& l : shifted) l.energy -= e0;
  LevelList out(std::move(shifted), levels.offset() + e0);
  out.unshifted_ = std::make_shared<const LevelList>(levels);
  return out;
}

LevelList restore_offset(const LevelList& levels) {
  if (levels.offset() == 0.0) return levels;
  if (levels.unshifted_ && levels.unshifted_->offset() == 0.0) return *levels.unshifted_;
  std::vector<Level> out(levels.levels().begin(), levels.levels().end());
  for (auto& l : out) l.energy += levels.offset();
  return LevelList(std::move(out), 0.0);
}

LevelList add_constant(const LevelList& levels, double c) {
  std::vector<Level> out(levels.levels().begin(), levels.levels().end());
  for (auto& l : out) l.energy += c;
  return LevelList(std::move(out), levels.offset());
}

void write_csv(std::ostream& out, const LevelList& levels) {
  out << "energy,degeneracy\n";
  for (const auto& l : levels.levels())
    out << fmt::format("{:.12g},{}\n", l.energy + levels.offset(), l.degeneracy);
}

}  // namespace gascap
