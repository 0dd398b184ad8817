#include "gascap_cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <thread>

#include "gascap/capacity.hpp"
#include "gascap/errors.hpp"
#include "gascap/series.hpp"
#include "gascap/spectrum.hpp"
#include "gascap/statmech.hpp"
#include "gascap_cli/run_config.hpp"

namespace gascap::cli {

namespace {

// Derivative needs the four-point stencil; the kink locator needs seven
// derivative nodes, i.e. eleven grid points.
constexpr std::size_t kDerivativePoints = 7;
constexpr std::size_t kFracturePoints = 11;

std::string num(double v) { return fmt::format("{:.12g}", v); }

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(fmt::format("{}: '{}' is not a number", what, s));
  }
}

int to_int(const std::string& s, const char* what) {
  const double v = to_double(s, what);
  if (v != std::floor(v) || std::abs(v) > std::numeric_limits<int>::max())
    throw UsageError(fmt::format("{}: '{}' is not an integer", what, s));
  return static_cast<int>(v);
}

template <class T, class F>
std::vector<T> parse_list(const std::string& s, F&& convert) {
  std::vector<T> out;
  for (const auto& item : split(s)) out.push_back(convert(item));
  return out;
}

/// Raw string values of every option; parsed after CLI11 has run so that
/// list syntax and override order are handled in one place.
struct RawOptions {
  std::string trap = "harmonic";
  std::string dim = "3";
  std::string ratios;
  std::string cutoff;
  std::string species = "boson";
  std::string g = "1";
  std::string tref_g;
  std::string n = "10000";
  std::string tmin = "0.1";
  std::string tmax = "1.6";
  std::string points = "200";
  std::string normalize = "tc";
  bool derivative = false;
  bool fracture = false;
  std::string kink_ratio = "3";
  std::string kink_margin = "3";
  std::string energy_offset = "0";
  std::string out = "-";
  std::string threads = "0";
  std::string config;
  // series-check
  std::string gamma = "2";
  std::string temps;
};

void add_trap_options(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--trap", o.trap, "harmonic | box");
  cmd->add_option("--dim", o.dim, "trap dimension(s), comma separated");
  cmd->add_option("--ratios", o.ratios, "integer frequency ratios, comma separated");
  cmd->add_option("--cutoff", o.cutoff, "max quanta per axis (harmonic) or max |n_i| (box); list allowed");
  cmd->add_option("--config", o.config, "TOML-style key = value recipe; flags override it");
}

void add_curve_options(CLI::App* cmd, RawOptions& o) {
  add_trap_options(cmd, o);
  cmd->add_option("--species", o.species, "boson | fermion | photon; list allowed");
  cmd->add_option("--g", o.g, "fermion spin degeneracy 2s+1");
  cmd->add_option("--tref-g", o.tref_g, "spin degeneracy used for T_f (defaults to --g)");
  cmd->add_option("--n", o.n, "mean particle number(s)");
  cmd->add_option("--tmin", o.tmin, "lowest T in units of the reference temperature");
  cmd->add_option("--tmax", o.tmax, "highest T in units of the reference temperature");
  cmd->add_option("--points", o.points, "number of grid points");
  cmd->add_option("--normalize", o.normalize, "tc | tf | none");
  cmd->add_flag("--derivative", o.derivative, "add the four-point temperature derivative");
  cmd->add_flag("--fracture", o.fracture, "report the kink location of the derivative");
  cmd->add_option("--kink-ratio", o.kink_ratio, "kink needs max |second difference| >= ratio * median");
  cmd->add_option("--kink-margin", o.kink_margin, "kink must lie this many nodes inside the grid");
  cmd->add_option("--energy-offset", o.energy_offset, "constant added to every level energy");
  cmd->add_option("--out", o.out, "output CSV path ('-' for stdout); {cutoff} {n} {species} {dim} expand");
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");
}

RunConfig to_run_config(const RawOptions& o) {
  RunConfig c;
  c.trap = o.trap;
  c.dims = parse_list<int>(o.dim, [](const std::string& s) { return to_int(s, "--dim"); });
  c.ratios = parse_list<int>(o.ratios, [](const std::string& s) { return to_int(s, "--ratios"); });
  if (!o.cutoff.empty()) c.cutoffs = parse_list<int>(o.cutoff, [](const std::string& s) { return to_int(s, "--cutoff"); });
  c.species = split(o.species);
  c.g = to_int(o.g, "--g");
  if (!o.tref_g.empty()) c.tref_g = to_int(o.tref_g, "--tref-g");
  c.particle_numbers = parse_list<double>(o.n, [](const std::string& s) { return to_double(s, "--n"); });
  c.tmin = to_double(o.tmin, "--tmin");
  c.tmax = to_double(o.tmax, "--tmax");
  c.points = to_int(o.points, "--points");
  c.normalize = parse_normalization(o.normalize);
  c.derivative = o.derivative;
  c.fracture = o.fracture;
  c.kink_ratio = to_double(o.kink_ratio, "--kink-ratio");
  c.kink_margin = to_int(o.kink_margin, "--kink-margin");
  c.out = o.out;
  const int threads = to_int(o.threads, "--threads");
  if (threads < 0) throw UsageError("--threads must be >= 0");
  c.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : static_cast<unsigned>(threads);
  return c;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw UsageError(fmt::format("cannot open output '{}'", path));
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

LevelList levels_for(const Run& run, double energy_offset) {
  LevelList levels = build_levels(run.trap);
  return energy_offset != 0.0 ? add_constant(levels, energy_offset) : levels;
}

CapacityCurve curve_for(const Run& run, const RunConfig& c, double energy_offset) {
  return capacity_curve(levels_for(run, energy_offset), run.species, run.N, run.T_grid, run.T_ref, c.threads);
}

void write_kink(std::ostream& os, const DerivativeCurve& d, double T_ref, const RunConfig& c) {
  const auto kink = fracture_locator(d.x, d.dfdx, {c.kink_ratio, static_cast<std::size_t>(c.kink_margin)});
  os << "# kink_T_over_Tref=" << num(kink.T / T_ref) << '\n';
  os << "# kink_ratio=" << num(kink.ratio()) << " detected=" << (kink.detected ? "true" : "false") << '\n';
}

int cmd_capacity(const RawOptions& o, std::ostream& out) {
  const auto c = to_run_config(o);
  const double offset = to_double(o.energy_offset, "--energy-offset");
  const auto runs = expand_runs(c, c.fracture ? kFracturePoints : 1);
  for (const auto& run : runs) {
    const auto curve = curve_for(run, c, offset);
    Output file(run.out, out);
    *file << "T,T_over_Tref,capacity_bits,energy,mu,z,ground_fraction\n";
    for (const auto& s : curve.samples)
      *file << fmt::format("{},{},{},{},{},{},{}\n", num(s.T), num(s.t_over_ref()), num(s.capacity_bits), num(s.energy),
                           num(s.mu), num(s.z), num(s.ground_fraction));
    if (c.fracture) {
      const auto T = curve.temperatures();
      const auto C = curve.capacities();
      write_kink(*file, derivative_curve(T, C), run.T_ref, c);
    }
  }
  return kExitOk;
}

int cmd_derivative(const RawOptions& o, std::ostream& out) {
  const auto c = to_run_config(o);
  const double offset = to_double(o.energy_offset, "--energy-offset");
  for (const auto& run : expand_runs(c, c.fracture ? kFracturePoints : kDerivativePoints)) {
    const auto curve = curve_for(run, c, offset);
    const auto T = curve.temperatures();
    const auto C = curve.capacities();
    const auto d = derivative_curve(T, C);
    Output file(run.out, out);
    *file << "T,T_over_Tref,dC_dT\n";
    for (std::size_t i = 0; i < d.x.size(); ++i)
      *file << fmt::format("{},{},{}\n", num(d.x[i]), num(d.x[i] / run.T_ref), num(d.dfdx[i]));
    if (c.fracture) write_kink(*file, d, run.T_ref, c);
  }
  return kExitOk;
}

int cmd_energy(const RawOptions& o, std::ostream& out) {
  const auto c = to_run_config(o);
  const double offset = to_double(o.energy_offset, "--energy-offset");
  const std::size_t min_points = c.fracture ? kFracturePoints : (c.derivative ? kDerivativePoints : 1);
  for (const auto& run : expand_runs(c, min_points)) {
    const auto curve = curve_for(run, c, offset);
    Output file(run.out, out);
    if (!c.derivative && !c.fracture) {
      *file << "T,T_over_Tref,energy\n";
      for (const auto& s : curve.samples) *file << fmt::format("{},{},{}\n", num(s.T), num(s.t_over_ref()), num(s.energy));
      continue;
    }
    const auto T = curve.temperatures();
    const auto E = curve.energies();
    const auto d = derivative_curve(T, E);
    *file << "T,T_over_Tref,energy,dE_dT\n";
    for (std::size_t i = 0; i < d.x.size(); ++i)
      *file << fmt::format("{},{},{},{}\n", num(d.x[i]), num(d.x[i] / run.T_ref), num(E[i + 2]), num(d.dfdx[i]));
    if (c.fracture) write_kink(*file, d, run.T_ref, c);
  }
  return kExitOk;
}

double parse_gamma(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  const double g = to_double(s, "--gamma");
  if (!(g > 0.0)) throw UsageError(fmt::format("--gamma must be positive, got {}", s));
  return g;
}

int cmd_series_check(const RawOptions& o, std::ostream& out) {
  const double gamma = parse_gamma(o.gamma);
  const int d = to_int(o.dim, "--dim");
  if (d < 1) throw UsageError("--dim must be >= 1");
  const double N = to_double(o.n, "--n");
  if (!(N > 0.0)) throw UsageError("--n must be positive");
  const auto temps = parse_list<double>(o.temps, [](const std::string& s) { return to_double(s, "--temps"); });
  for (double T : temps)
    if (!(T > 0.0)) throw UsageError("--temps must be positive");

  const auto prediction = series::fermion_advantage_condition(gamma, d);
  const bool systematic = series::systematics_condition(gamma, d);
  out << "# gamma=" << num(gamma) << " d=" << d << " N=" << num(N) << '\n';
  out << "fermion_advantage=" << (prediction.fermion_advantage ? "true" : "false") << '\n';
  out << "systematics=" << (systematic ? "true" : "false") << '\n';
  out << "alpha2_boson_sign=" << prediction.alpha2_boson_sign << '\n';
  if (!prediction.fermion_advantage || !systematic)
    out << "# caveat: 1/gamma + 1/2 > 1/d does not hold; the high-temperature expansion predicts no fermion "
           "advantage for this trap\n";

  // Discrete analogues: gamma = 2 is the harmonic trap, gamma = inf the 3D periodic box.
  const bool harmonic = gamma == 2.0 && d <= 3;
  const bool box = std::isinf(gamma) && d == 3;
  if (temps.empty()) return kExitOk;
  if (!harmonic && !box) {
    out << "# no discrete spectrum for this (gamma, d); table skipped\n";
    return kExitOk;
  }

  int cutoff = o.cutoff.empty() ? 0 : to_int(o.cutoff, "--cutoff");
  if (cutoff < 0) throw UsageError("--cutoff must be >= 0");
  if (cutoff == 0) {
    const double t_max = *std::max_element(temps.begin(), temps.end());
    cutoff = harmonic ? static_cast<int>(std::ceil(40.0 * t_max)) + 1 : static_cast<int>(std::ceil(std::sqrt(40.0 * t_max))) + 1;
  }
  const LevelList levels = harmonic ? harmonic_levels(d, std::vector<int>(d, 1), cutoff) : box_levels_3d(cutoff);

  out << "T,N_over_S1,C_boson_exact,C_boson_series,C_fermion_exact,C_fermion_series,alpha1,alpha2_boson,"
         "alpha2_fermion,alpha3,beta1,beta2_boson,beta2_fermion,series_regime\n";
  for (double T : temps) {
    const auto sums = series::spectral_sums(levels, 1.0 / T);
    const auto boson = series::capacity_expansion(sums, Species::boson());
    const auto fermion = series::capacity_expansion(sums, Species::fermion(1));
    const double x = N / boson.s1;
    const double cb = capacity_point(levels, Species::boson(), N, T).capacity_bits;
    const double cf = capacity_point(levels, Species::fermion(1), N, T).capacity_bits;
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(T), num(x), num(cb),
                       num(series::capacity_series_bits(boson, N)), num(cf), num(series::capacity_series_bits(fermion, N)),
                       num(boson.alpha[0]), num(boson.alpha[1]), num(fermion.alpha[1]), num(boson.alpha[2]),
                       num(boson.log_terms[0]), num(boson.log_terms[1]), num(fermion.log_terms[1]), x < 0.1 ? 1 : 0);
  }
  return kExitOk;
}

int cmd_reference_temps(const RawOptions& o, std::ostream& out) {
  TrapDescriptor trap;
  const int d = to_int(o.dim, "--dim");
  if (o.trap == "box") {
    trap.kind = PeriodicBox{};
  } else if (o.trap == "harmonic") {
    auto ratios = parse_list<int>(o.ratios, [](const std::string& s) { return to_int(s, "--ratios"); });
    if (ratios.empty() && d >= 1) ratios.assign(d, 1);
    trap.kind = HarmonicTrap{d, ratios};
  } else {
    throw UsageError(fmt::format("unknown trap '{}'", o.trap));
  }
  const auto refs = reference_temperatures(trap, to_double(o.n, "--n"), to_int(o.g, "--g"));
  const std::pair<const char*, std::optional<double>> rows[] = {
      {"tc_3d_harmonic", refs.tc_3d_harmonic}, {"tc_2d_harmonic", refs.tc_2d_harmonic},
      {"tc_1d_harmonic", refs.tc_1d_harmonic}, {"tc_3d_box", refs.tc_3d_box},
      {"tf_harmonic", refs.tf_harmonic},       {"tf_box", refs.tf_box}};
  for (const auto& [key, value] : rows)
    if (value) out << key << '=' << num(*value) << '\n';
  return kExitOk;
}

int cmd_levels(const RawOptions& o, std::ostream& out) {
  RunConfig c = to_run_config(o);
  c.normalize = Normalization::none;
  c.points = 1;
  c.species = {"boson"};
  c.particle_numbers = {1.0};
  const auto runs = expand_runs(c, 1);
  for (const auto& run : runs) {
    Output file(run.out, out);
    write_csv(*file, levels_for(run, to_double(o.energy_offset, "--energy-offset")));
  }
  return kExitOk;
}

// Inserts the recipe's `--key=value` tokens right after the subcommand
// name so that explicit flags, which come later, win.
std::vector<std::string> with_config_file(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const auto tokens = config_file_arguments(path);
  auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) { return !a.empty() && a[0] != '-'; });
  const auto at = sub == args.end() ? args.begin() : sub + 1;
  args.insert(at, tokens.begin(), tokens.end());
  return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacities of noiseless channels carrying trapped ideal quantum gases", "gascap"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  RawOptions o;
  auto* capacity = app.add_subcommand("capacity", "capacity curve CSV");
  add_curve_options(capacity, o);
  auto* derivative = app.add_subcommand("derivative", "four-point dC/dT CSV, optional kink report");
  add_curve_options(derivative, o);
  auto* energy = app.add_subcommand("energy", "energy (and dE/dT) CSV");
  add_curve_options(energy, o);
  auto* levels = app.add_subcommand("levels", "dump the trap spectrum as energy,degeneracy CSV");
  add_trap_options(levels, o);
  levels->add_option("--energy-offset", o.energy_offset, "constant added to every level energy");
  levels->add_option("--out", o.out, "output CSV path");

  auto* series_check = app.add_subcommand("series-check", "high-temperature expansion against exact capacities");
  series_check->add_option("--gamma", o.gamma, "power-law exponent (inf for a box)");
  series_check->add_option("--dim", o.dim, "dimension");
  series_check->add_option("--n", o.n, "mean particle number");
  series_check->add_option("--temps", o.temps, "temperatures, comma separated");
  series_check->add_option("--cutoff", o.cutoff, "spectrum cutoff (0 = automatic)");
  series_check->add_option("--config", o.config, "TOML-style recipe");

  auto* reference = app.add_subcommand("reference-temps", "closed-form T_c / T_f");
  reference->add_option("--trap", o.trap, "harmonic | box");
  reference->add_option("--dim", o.dim, "dimension");
  reference->add_option("--ratios", o.ratios, "integer frequency ratios");
  reference->add_option("--n", o.n, "mean particle number");
  reference->add_option("--g", o.g, "spin degeneracy");
  reference->add_option("--config", o.config, "TOML-style recipe");

  try {
    auto args = with_config_file(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*capacity) return cmd_capacity(o, out);
    if (*derivative) return cmd_derivative(o, out);
    if (*energy) return cmd_energy(o, out);
    if (*levels) return cmd_levels(o, out);
    if (*series_check) return cmd_series_check(o, out);
    if (*reference) return cmd_reference_temps(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what();
    if (e.temperature()) err << " (T=" << num(*e.temperature()) << ")";
    err << '\n';
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace gascap::cli
