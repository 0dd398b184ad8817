#include "gascap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "gascap/errors.hpp"

namespace gascap::oracle {

std::vector<double> ConfigurationTable::weights() const {
  std::vector<double> w;
  w.reserve(entries.size());
  for (const auto& c : entries) w.push_back(std::exp(c.log_weight));
  return w;
}

ConfigurationTable enumerate(const LevelList& spectrum, const Species& species, double beta, Fugacity z, int M) {
  if (M < 1) throw UsageError("oracle: truncation M must be >= 1");
  const bool fermion = species.kind() == Species::Kind::fermion;
  const int copies = fermion ? species.spin_degeneracy() : 1;
  // Photon-like: mu = 0 on absolute energies.
  const bool photon = species.kind() == Species::Kind::photonlike;
  const double log_z = photon ? -beta * spectrum.offset() : z.log();

  std::vector<double> sublevels;
  for (const auto& l : spectrum.levels()) {
    const std::uint64_t count = l.degeneracy * static_cast<std::uint64_t>(copies);
    if (sublevels.size() + count > kMaxSublevels)
      throw UsageError(fmt::format("oracle: more than {} sublevels", kMaxSublevels));
    sublevels.insert(sublevels.end(), count, l.energy);
  }

  const int max_occ = fermion ? 1 : M;
  ConfigurationTable table;
  table.truncation = max_occ;
  table.offset = spectrum.offset();

  std::vector<int> occ(sublevels.size(), 0);
  while (true) {
    Configuration c;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      c.total_n += occ[i];
      c.total_e += occ[i] * sublevels[i];
    }
    c.log_weight = c.total_n * log_z - beta * c.total_e;
    table.entries.push_back(c);

    std::size_t pos = 0;
    while (pos < occ.size() && occ[pos] == max_occ) occ[pos++] = 0;
    if (pos == occ.size()) break;
    ++occ[pos];
  }
  return table;
}

namespace {

double log_sum(const ConfigurationTable& table) {
  double peak = -INFINITY;
  for (const auto& c : table.entries) peak = std::max(peak, c.log_weight);
  double s = 0.0;
  for (const auto& c : table.entries) s += std::exp(c.log_weight - peak);
  return peak + std::log(s);
}

}  // namespace

double brute_force_entropy_bits(const ConfigurationTable& table) {
  if (table.entries.empty()) throw UsageError("oracle: empty table");
  const double lse = log_sum(table);
  double h = 0.0;
  for (const auto& c : table.entries) {
    const double lp = c.log_weight - lse;
    h -= std::exp(lp) * lp;
  }
  return h / std::numbers::ln2;
}

Moments brute_force_moments(const ConfigurationTable& table) {
  if (table.entries.empty()) throw UsageError("oracle: empty table");
  Moments m;
  m.log_norm = log_sum(table);
  for (const auto& c : table.entries) {
    const double p = std::exp(c.log_weight - m.log_norm);
    m.mean_n += p * c.total_n;
    m.mean_e += p * (c.total_e + c.total_n * table.offset);
  }
  return m;
}

}  // namespace gascap::oracle
