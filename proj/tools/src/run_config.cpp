#include "gascap_cli/run_config.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <set>

#include "gascap/capacity.hpp"
#include "gascap/errors.hpp"

namespace gascap::cli {

Species parse_species(const std::string& name, int g) {
  if (name == "boson") return Species::boson();
  if (name == "fermion") return Species::fermion(g);
  if (name == "photon" || name == "photonlike") return Species::photonlike();
  throw UsageError(fmt::format("unknown species '{}' (expected boson, fermion or photon)", name));
}

Normalization parse_normalization(const std::string& name) {
  if (name == "tc") return Normalization::tc;
  if (name == "tf") return Normalization::tf;
  if (name == "none") return Normalization::none;
  throw UsageError(fmt::format("unknown normalization '{}' (expected tc, tf or none)", name));
}

double select_reference_temperature(const TrapDescriptor& trap, Normalization normalize, double N, int g) {
  if (normalize == Normalization::none) return 1.0;
  const auto refs = reference_temperatures(trap, N, g);
  std::optional<double> pick;
  if (normalize == Normalization::tc) {
    for (const auto& t : {refs.tc_3d_harmonic, refs.tc_2d_harmonic, refs.tc_1d_harmonic, refs.tc_3d_box})
      if (t) pick = t;
  } else {
    pick = refs.tf_harmonic ? refs.tf_harmonic : refs.tf_box;
  }
  if (!pick) throw UsageError("no closed-form reference temperature for this trap; use --normalize none");
  return *pick;
}

std::string expand_output_pattern(const std::string& pattern, const Run& run, int dim) {
  auto replace_all = [](std::string s, const std::string& key, const std::string& value) {
    for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos + value.size()))
      s.replace(pos, key.size(), value);
    return s;
  };
  std::string out = pattern;
  out = replace_all(out, "{cutoff}", std::to_string(run.trap.cutoff));
  out = replace_all(out, "{n}", fmt::format("{:g}", run.N));
  out = replace_all(out, "{species}", run.species_label);
  out = replace_all(out, "{dim}", std::to_string(dim));
  return out;
}

std::vector<Run> expand_runs(const RunConfig& c, std::size_t min_points) {
  if (c.points < 1) throw UsageError("--points must be >= 1");
  if (static_cast<std::size_t>(c.points) < min_points)
    throw UsageError(fmt::format("this command needs at least {} grid points, got {}", min_points, c.points));
  if (!(c.tmin > 0.0)) throw UsageError("--tmin must be positive");
  if (c.points > 1 && !(c.tmax > c.tmin)) throw UsageError(fmt::format("empty temperature range [{}, {}]", c.tmin, c.tmax));
  if (c.trap != "harmonic" && c.trap != "box") throw UsageError(fmt::format("unknown trap '{}'", c.trap));
  if (c.g < 1) throw UsageError("--g must be >= 1");
  if (c.kink_ratio <= 0.0 || c.kink_margin < 0) throw UsageError("kink thresholds must be positive");
  if (c.dims.empty() || c.cutoffs.empty() || c.species.empty() || c.particle_numbers.empty())
    throw UsageError("empty sweep list");

  const auto unit_grid = uniform_grid(c.tmin, c.points > 1 ? c.tmax : c.tmin, static_cast<std::size_t>(c.points));
  std::vector<Run> runs;
  std::set<std::string> outputs;
  for (int dim : c.dims) {
    TrapDescriptor trap;
    if (c.trap == "box") {
      if (dim != 3) throw UsageError("the periodic box is three-dimensional; use --dim 3");
      trap.kind = PeriodicBox{};
    } else {
      if (dim < 1 || dim > 3) throw UsageError(fmt::format("--dim {} outside 1..3", dim));
      HarmonicTrap h{dim, c.ratios.empty() ? std::vector<int>(dim, 1) : c.ratios};
      if (h.ratios.size() != static_cast<std::size_t>(dim))
        throw UsageError(fmt::format("--ratios needs {} entries for --dim {}", dim, dim));
      for (int r : h.ratios)
        if (r <= 0) throw UsageError("--ratios must be positive integers");
      trap.kind = h;
    }
    for (int cutoff : c.cutoffs) {
      if (cutoff < 1) throw UsageError("--cutoff must be >= 1");
      trap.cutoff = cutoff;
      for (const auto& sp : c.species) {
        for (double N : c.particle_numbers) {
          if (!(N > 0.0) || !std::isfinite(N)) throw UsageError(fmt::format("--n must be positive, got {}", N));
          Run run{trap, parse_species(sp, c.g), sp, N, 1.0, {}, {}};
          run.T_ref = select_reference_temperature(trap, c.normalize, N, c.tref_g.value_or(c.g));
          run.T_grid.reserve(unit_grid.size());
          for (double t : unit_grid) run.T_grid.push_back(t * run.T_ref);
          run.out = expand_output_pattern(c.out, run, dim);
          if (!outputs.insert(run.out).second)
            throw UsageError(fmt::format("output '{}' would be written by several runs; add {{cutoff}}, {{n}}, "
                                         "{{species}} or {{dim}} to --out",
                                         run.out));
          runs.push_back(std::move(run));
        }
      }
    }
  }
  return runs;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) return s.substr(1, s.size() - 2);
  return s;
}

std::string strip_comment(const std::string& line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quote) {
      if (ch == quote) quote = 0;
    } else if (ch == '"' || ch == '\'') {
      quote = ch;
    } else if (ch == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

}  // namespace

std::vector<std::string> config_file_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot open config file '{}'", path));
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') throw UsageError(fmt::format("{}:{}: tables are not supported", path, lineno));
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(fmt::format("{}:{}: expected key = value", path, lineno));
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw UsageError(fmt::format("{}:{}: expected key = value", path, lineno));
    if (value.front() == '[') {
      if (value.back() != ']') throw UsageError(fmt::format("{}:{}: unterminated array", path, lineno));
      std::string joined;
      std::string body = value.substr(1, value.size() - 2);
      std::size_t start = 0;
      while (start <= body.size()) {
        const auto comma = body.find(',', start);
        const std::string item = unquote(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) joined += (joined.empty() ? "" : ",") + item;
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      value = joined;
    } else {
      value = unquote(value);
    }
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

}  // namespace gascap::cli
