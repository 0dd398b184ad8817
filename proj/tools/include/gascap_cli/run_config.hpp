#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gascap/spectrum.hpp"
#include "gascap/statmech.hpp"

namespace gascap::cli {

enum class Normalization { tc, tf, none };

/// Everything a curve-producing subcommand needs. List-valued fields
/// (dims, cutoffs, species, N) expand into one run per combination.
struct RunConfig {
  std::string trap = "harmonic";  // harmonic | box
  std::vector<int> dims{3};
  std::vector<int> ratios;  // empty: isotropic
  std::vector<int> cutoffs{300};
  std::vector<std::string> species{"boson"};
  int g = 1;
  std::optional<int> tref_g;  // spin degeneracy used in T_f (defaults to g)
  std::vector<double> particle_numbers{1e4};
  double tmin = 0.1;
  double tmax = 1.6;
  int points = 200;
  Normalization normalize = Normalization::tc;
  bool derivative = false;
  bool fracture = false;
  double kink_ratio = 3.0;
  int kink_margin = 3;
  std::string out = "-";
  unsigned threads = 0;  // 0: hardware concurrency
};

/// A single expanded run.
struct Run {
  TrapDescriptor trap;
  Species species;
  std::string species_label;
  double N;
  double T_ref;
  std::vector<double> T_grid;
  std::string out;
};

/// Validates the configuration and expands the sweep. Throws UsageError.
std::vector<Run> expand_runs(const RunConfig& config, std::size_t min_points);

Species parse_species(const std::string& name, int g);
Normalization parse_normalization(const std::string& name);

/// Reference temperature selected by `normalize` for this trap.
double select_reference_temperature(const TrapDescriptor& trap, Normalization normalize, double N, int g);

/// Substitutes {cutoff}, {n}, {species}, {dim} placeholders.
std::string expand_output_pattern(const std::string& pattern, const Run& run, int dim);

/// Reads a TOML-style `key = value` file into `--key=value` tokens.
/// Supports comments, quoted strings, booleans, numbers and flat arrays.
std::vector<std::string> config_file_arguments(const std::string& path);

}  // namespace gascap::cli
