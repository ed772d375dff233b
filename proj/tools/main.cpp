// vsmpriv command-line front end: spectrum | optimize | pod.
// Angles are degrees at this boundary, radians inside the library.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vsmpriv/evaluation.hpp"
#include "vsmpriv/io.hpp"
#include "vsmpriv/rng.hpp"

namespace {

using namespace vsmpriv;

constexpr const char* kToolVersion = "0.1.0";
constexpr double kDegToRad = std::numbers::pi / 180.0;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool parse_double_strict(const std::string& text, double& out) {
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end != text.c_str() && *end == '\0';
}

bool parse_i64_strict(const std::string& text, long long& out) {
  try {
    std::size_t pos = 0;
    out = std::stoll(text, &pos);
    return pos == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_u64_strict(const std::string& text, std::uint64_t& out) {
  try {
    std::size_t pos = 0;
    out = std::stoull(text, &pos);
    return pos == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

/// One resolved CLI parameter: a CLI11 option plus enough plumbing to apply
/// config-file values and to report value/source in the manifest.
struct Param {
  std::string name;
  CLI::Option* opt;
  std::function<std::string()> get;
  std::function<bool(const std::string&)> set;
  std::string source = "default";
};

class ParamSet {
 public:
  explicit ParamSet(CLI::App* cmd) : cmd_(cmd) {}

  void add_double(const std::string& name, double& var, const std::string& desc) {
    auto* opt = cmd_->add_option("--" + name, var, desc);
    params_.push_back(Param{name, opt, [&var] { return format_double(var); },
                            [&var](const std::string& v) { return parse_double_strict(v, var); }});
  }

  void add_int(const std::string& name, int& var, const std::string& desc) {
    auto* opt = cmd_->add_option("--" + name, var, desc);
    params_.push_back(Param{name, opt, [&var] { return std::to_string(var); },
                            [&var](const std::string& v) {
                              long long tmp = 0;
                              if (!parse_i64_strict(v, tmp)) return false;
                              var = static_cast<int>(tmp);
                              return true;
                            }});
  }

  void add_u64(const std::string& name, std::uint64_t& var, const std::string& desc) {
    auto* opt = cmd_->add_option("--" + name, var, desc);
    params_.push_back(Param{name, opt, [&var] { return std::to_string(var); },
                            [&var](const std::string& v) { return parse_u64_strict(v, var); }});
  }

  void add_string(const std::string& name, std::string& var, const std::string& desc) {
    auto* opt = cmd_->add_option("--" + name, var, desc);
    params_.push_back(Param{name, opt, [&var] { return var; },
                            [&var](const std::string& v) {
                              var = v;
                              return true;
                            }});
  }

  void add_flag(const std::string& name, bool& var, const std::string& desc) {
    auto* opt = cmd_->add_flag("--" + name, var, desc);
    params_.push_back(Param{name, opt, [&var] { return var ? std::string("true") : std::string("false"); },
                            [&var](const std::string& v) {
                              if (v == "true" || v == "1") var = true;
                              else if (v == "false" || v == "0") var = false;
                              else return false;
                              return true;
                            }});
  }

  /// Flag > config > default. Unknown config keys and malformed config values
  /// are usage errors naming the key.
  void apply_config(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("--config: cannot open " + config_path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
          throw UsageError("--config: malformed line: " + line);
        }
        continue;
      }
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw UsageError("--config: malformed line: " + line);
      kv[key] = value;
    }
    for (const auto& [key, value] : kv) {
      Param* param = find(key);
      if (param == nullptr) throw UsageError("--config: unknown key: " + key);
      if (param->opt->count() > 0) continue;  // flag wins
      if (!param->set(value)) throw UsageError("--config: " + key + ": malformed value: " + value);
      param->source = "config";
    }
  }

  void finalize_sources() {
    for (auto& p : params_) {
      if (p.opt->count() > 0) p.source = "flag";
    }
  }

  void write_manifest(std::ostream& os, const std::string& subcommand) const {
    os << "subcommand = " << subcommand << "\n";
    os << "tool_version = " << kToolVersion << "\n";
    for (const auto& p : params_) {
      os << p.name << " = " << p.get() << "\n";
      os << p.name << ".source = " << p.source << "\n";
    }
  }

 private:
  Param* find(const std::string& name) {
    for (auto& p : params_) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }

  CLI::App* cmd_;
  std::vector<Param> params_;
};

// ---------------------------------------------------------------------------
// Option storage shared by the subcommands.

struct Options {
  double fc_hz = 2.2e9;
  int n_antennas = 16;
  double theta0_deg = 30.0;
  double theta_c_deg = 39.0;
  double ra_m = 1.0;
  double re_m = 1.0;
  double fs_hz = 100.0;
  double duration_s = 20.0;
  double snr_db = 10.0;
  std::string snr_grid = "-30:10:20";
  std::string scheme = "conventional";
  std::string optimize_scheme = "mpv1";
  std::string pod_scheme;  // empty = use the --schemes list
  std::string schemes = "conventional,mpv1,mpv2";
  std::string receiver = "eaves";
  double ah_m = 0.5e-3;
  double fh_hz = 1.3;
  double ab_m = 1.0e-3;
  double fb_hz = 0.4;
  double band_low_hz = kDefaultBandLowHz;
  double band_high_hz = kDefaultBandHighHz;
  std::uint64_t nfft = 0;
  int l = 12;
  int anneal_iters = 5000;
  std::uint64_t oracle_samples = 100000;
  int trials = 2000;
  int tol_bins = 1;
  int threads = 0;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::string config_path;
  bool dump_trace = false;
  bool dump_schedule = false;
};

void add_geometry_params(ParamSet& ps, Options& o) {
  ps.add_double("fc-hz", o.fc_hz, "Carrier frequency [Hz]");
  ps.add_int("n-antennas", o.n_antennas, "Array elements N");
  ps.add_double("theta0-deg", o.theta0_deg, "User direction [deg]");
  ps.add_double("theta-c-deg", o.theta_c_deg,
                "MPV-II steering angle [deg] (MPV-I solves its own; conventional steers at the user)");
}

void add_scene_params(ParamSet& ps, Options& o) {
  ps.add_double("ra-m", o.ra_m, "Authorized receiver range [m]");
  ps.add_double("re-m", o.re_m, "Eavesdropper range [m]");
  ps.add_double("fs-hz", o.fs_hz, "Receiver sampling rate [Hz]");
  ps.add_double("duration-s", o.duration_s, "Observation window [s]");
  ps.add_double("ah-m", o.ah_m, "Heartbeat displacement amplitude [m]");
  ps.add_double("fh-hz", o.fh_hz, "Heartbeat frequency [Hz]");
  ps.add_double("ab-m", o.ab_m, "Breathing displacement amplitude [m]");
  ps.add_double("fb-hz", o.fb_hz, "Breathing frequency [Hz]");
}

void add_common_tail(ParamSet& ps, Options& o) {
  ps.add_u64("seed", o.seed, "Master RNG seed");
  ps.add_string("out-dir", o.out_dir, "Output directory");
  ps.add_string("config", o.config_path, "Flat key = value config file");
}

void validate_range(bool ok, const std::string& flag, const std::string& what) {
  if (!ok) throw UsageError("--" + flag + ": " + what);
}

ArrayGeometry make_geometry(const Options& o) {
  validate_range(o.n_antennas >= 2 && o.n_antennas <= 64, "n-antennas", "must lie in [2, 64]");
  validate_range(o.fc_hz > 0.0, "fc-hz", "must be > 0");
  ArrayGeometry g;
  g.n_antennas = o.n_antennas;
  g.carrier_freq_hz = o.fc_hz;
  return g;
}

SceneConfig make_scene(const Options& o, double snr_db) {
  validate_range(o.theta0_deg >= 0.0 && o.theta0_deg <= 180.0, "theta0-deg",
                 "angle out of [0, 180]");
  validate_range(o.theta_c_deg >= 0.0 && o.theta_c_deg <= 180.0, "theta-c-deg",
                 "angle out of [0, 180]");
  validate_range(o.ra_m > 0.0, "ra-m", "must be > 0");
  validate_range(o.re_m > 0.0, "re-m", "must be > 0");
  validate_range(o.fs_hz > 0.0, "fs-hz", "must be > 0");
  validate_range(o.duration_s > 0.0, "duration-s", "must be > 0");
  SceneConfig scene;
  scene.geometry = make_geometry(o);
  scene.theta0_rad = o.theta0_deg * kDegToRad;
  scene.range_auth_m = o.ra_m;
  scene.range_eaves_m = o.re_m;
  scene.sample_rate_hz = o.fs_hz;
  scene.duration_s = o.duration_s;
  scene.snr_db = snr_db;
  return scene;
}

VitalSignProfile make_vitals(const Options& o) {
  validate_range(o.ah_m >= 0.0, "ah-m", "must be >= 0");
  validate_range(o.ab_m >= 0.0, "ab-m", "must be >= 0");
  VitalSignProfile v;
  v.heart_amp_m = o.ah_m;
  v.heart_freq_hz = o.fh_hz;
  v.breath_amp_m = o.ab_m;
  v.breath_freq_hz = o.fb_hz;
  return v;
}

Scheme parse_scheme(const std::string& text, const std::string& flag) {
  const auto scheme = scheme_from_string(text);
  if (!scheme) throw UsageError("--" + flag + ": unknown scheme: " + text);
  return *scheme;
}

Receiver parse_receiver(const std::string& text) {
  if (text == "eaves" || text == "eavesdropper") return Receiver::eavesdropper;
  if (text == "authorized") return Receiver::authorized;
  throw UsageError("--receiver: expected eaves or authorized, got: " + text);
}

std::vector<Scheme> parse_scheme_list(const std::string& text) {
  std::vector<Scheme> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_scheme(item, "schemes"));
  }
  if (out.empty()) throw UsageError("--schemes: empty scheme list");
  return out;
}

/// `start:step:stop` inclusive, or a single value.
std::vector<double> parse_snr_grid(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    double value = 0.0;
    if (!parse_double_strict(text, value)) {
      throw UsageError("--snr-db: malformed value: " + text);
    }
    return {value};
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw UsageError("--snr-db: expected start:step:stop: " + text);
  double start = 0.0;
  double step = 0.0;
  double stop = 0.0;
  if (!parse_double_strict(text.substr(0, c1), start) ||
      !parse_double_strict(text.substr(c1 + 1, c2 - c1 - 1), step) ||
      !parse_double_strict(text.substr(c2 + 1), stop)) {
    throw UsageError("--snr-db: malformed grid: " + text);
  }
  if (!(step > 0.0)) throw UsageError("--snr-db: grid step must be > 0");
  if (stop < start) throw UsageError("--snr-db: grid stop must be >= start");
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double value = start + step * k;
    if (value > stop + 1e-9 * std::max(1.0, std::abs(stop))) break;
    grid.push_back(value);
  }
  return grid;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

AnnealParams make_anneal(const Options& o) {
  validate_range(o.anneal_iters >= 1, "anneal-iters", "must be >= 1");
  AnnealParams params;
  params.iterations = o.anneal_iters;
  return params;
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const Options& o, ParamSet& params) {
  const SceneConfig scene = make_scene(o, o.snr_db);
  const VitalSignProfile vitals = make_vitals(o);
  const Scheme scheme = parse_scheme(o.scheme, "scheme");
  const Receiver receiver = parse_receiver(o.receiver);
  validate_range(o.band_low_hz <= o.band_high_hz, "band-low-hz",
                 "must not exceed --band-high-hz");
  validate_range(o.l >= 1 && o.l <= o.n_antennas - 1, "l", "must lie in [1, N-1]");
  validate_range(o.nfft == 0 || o.nfft >= scene.sample_count(), "nfft",
                 "must be 0 (auto) or >= the sample count");

  const std::filesystem::path out_dir(o.out_dir);
  std::filesystem::create_directories(out_dir);
  {
    auto manifest = open_output(out_dir / "manifest.txt");
    params.write_manifest(manifest, "spectrum");
  }

  const SchemeSolutions solutions = prepare_scheme_solutions(
      scene, {scheme}, o.l, o.theta_c_deg * kDegToRad, make_anneal(o), o.seed);
  const SpectrumSnapshot snapshot =
      run_spectrum_snapshot(scene, vitals, scheme, receiver, o.seed, solutions,
                            o.band_low_hz, o.band_high_hz, o.nfft);

  {
    auto os = open_output(out_dir / "phase_series.csv");
    write_phase_series(os, snapshot.phase_rad, scene.sample_rate_hz);
  }
  {
    auto os = open_output(out_dir / "spectrum.csv");
    write_spectrum(os, snapshot.spectrum);
  }
  {
    auto os = open_output(out_dir / "peaks.txt");
    write_peaks(os, snapshot.peaks);
  }
  if (o.dump_schedule) {
    auto os = open_output(out_dir / "schedule.txt");
    write_schedule(os, snapshot.schedule, scene.geometry, scene.theta0_rad);
  }
  if (o.dump_trace) {
    const BasebandTrace trace =
        synthesize_trace(scene, vitals, snapshot.schedule, receiver,
                         rng::derive(o.seed, {rng::kStreamNoise}));
    auto os = open_output(out_dir / "trace.csv");
    write_trace(os, trace, scene, scene.theta0_rad);
  }
  return 0;
}

int cmd_optimize(const Options& o, ParamSet& params) {
  const ArrayGeometry geometry = make_geometry(o);
  validate_range(o.theta0_deg >= 0.0 && o.theta0_deg <= 180.0, "theta0-deg",
                 "angle out of [0, 180]");
  const Scheme scheme = parse_scheme(o.optimize_scheme, "scheme");
  if (scheme == Scheme::conventional) {
    throw UsageError("--scheme: optimize supports mpv1 or mpv2");
  }
  validate_range(o.threads >= 0, "threads", "must be >= 0");
  const double theta0_rad = o.theta0_deg * kDegToRad;

  const std::filesystem::path out_dir(o.out_dir);
  std::filesystem::create_directories(out_dir);
  {
    auto manifest = open_output(out_dir / "manifest.txt");
    params.write_manifest(manifest, "optimize");
  }

  if (scheme == Scheme::mpv1) {
    const Mpv1Solution solution = solve_mpv1(geometry, theta0_rad, make_anneal(o),
                                             rng::derive(o.seed, {rng::kStreamAnneal}));
    const PhaseSet ps = enumerate_phase_set(geometry, theta0_rad, solution.theta_c_rad,
                                            solution.active_count);
    const Mpv2Solution bound = solve_mpv2(ps);
    auto os = open_output(out_dir / "mpv1_solution.txt");
    os << "scheme = mpv1\n";
    os << "l_star = " << solution.active_count << "\n";
    os << "theta_c_deg = " << format_double(solution.theta_c_rad / kDegToRad) << "\n";
    os << "variance_rad2 = " << format_double(solution.achieved_variance) << "\n";
    os << "phase_set_m = " << ps.m() << "\n";
    os << "degenerate_count = " << ps.degenerate_count << "\n";
    os << "popoviciu_bound_rad2 = " << format_double(bound.variance) << "\n";
    auto trace = open_output(out_dir / "anneal_trace.csv");
    trace << "iteration,objective\n";
    for (const auto& [iter, value] : solution.anneal_trace) {
      trace << iter << ',' << format_double(value) << "\n";
    }
    return 0;
  }

  validate_range(o.l >= 1 && o.l <= o.n_antennas - 1, "l", "must lie in [1, N-1]");
  validate_range(o.theta_c_deg >= 0.0 && o.theta_c_deg <= 180.0, "theta-c-deg",
                 "angle out of [0, 180]");
  const PhaseSet ps =
      enumerate_phase_set(geometry, theta0_rad, o.theta_c_deg * kDegToRad, o.l);
  const Mpv2Solution solution = solve_mpv2(ps);
  auto os = open_output(out_dir / "mpv2_solution.txt");
  os << "scheme = mpv2\n";
  os << "l = " << o.l << "\n";
  os << "theta_c_deg = " << format_double(o.theta_c_deg) << "\n";
  os << "phase_set_m = " << ps.m() << "\n";
  os << "degenerate_count = " << ps.degenerate_count << "\n";
  os << "phi_min_rad = " << format_double(solution.phi_min_rad) << "\n";
  os << "phi_max_rad = " << format_double(solution.phi_max_rad) << "\n";
  os << "config_low = " << solution.config_low.to_string() << "\n";
  os << "config_high = " << solution.config_high.to_string() << "\n";
  os << "variance_rad2 = " << format_double(solution.variance) << "\n";
  if (o.oracle_samples > 0) {
    const double oracle = mpv2_oracle(ps, o.oracle_samples,
                                      rng::derive(o.seed, {rng::kStreamOracle}), o.threads);
    os << "oracle_samples = " << o.oracle_samples << "\n";
    os << "oracle_max_rad2 = " << format_double(oracle) << "\n";
    os << "oracle_gap_rad2 = " << format_double(solution.variance - oracle) << "\n";
  }
  return 0;
}

int cmd_pod(const Options& o, ParamSet& params) {
  const SceneConfig scene = make_scene(o, o.snr_db);
  const VitalSignProfile vitals = make_vitals(o);
  validate_range(o.trials >= 1, "trials", "must be >= 1");
  validate_range(o.tol_bins >= 0, "tol-bins", "must be >= 0");
  validate_range(o.threads >= 0, "threads", "must be >= 0");
  validate_range(o.l >= 1 && o.l <= o.n_antennas - 1, "l", "must lie in [1, N-1]");
  validate_range(o.band_low_hz <= o.band_high_hz, "band-low-hz",
                 "must not exceed --band-high-hz");

  PodConfig config;
  config.n_trials = o.trials;
  config.snr_grid_db = parse_snr_grid(o.snr_grid);
  config.schemes = o.pod_scheme.empty() ? parse_scheme_list(o.schemes)
                                        : std::vector<Scheme>{parse_scheme(o.pod_scheme, "scheme")};
  config.match_tolerance_bins = o.tol_bins;
  config.master_seed = o.seed;
  config.band_low_hz = o.band_low_hz;
  config.band_high_hz = o.band_high_hz;
  config.n_threads = o.threads;

  const std::filesystem::path out_dir(o.out_dir);
  std::filesystem::create_directories(out_dir);
  {
    auto manifest = open_output(out_dir / "manifest.txt");
    params.write_manifest(manifest, "pod");
  }

  const SchemeSolutions solutions = prepare_scheme_solutions(
      scene, config.schemes, o.l, o.theta_c_deg * kDegToRad, make_anneal(o), o.seed);
  const PodCurve curve = run_pod_sweep(scene, vitals, config, solutions);
  auto os = open_output(out_dir / "pod.csv");
  write_pod_curve(os, curve);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Antenna-selection privacy simulator for radar vital-sign monitoring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Options o;

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Single-trial trace, extracted phase, spectrum and peak report");
  ParamSet spectrum_params(spectrum);
  add_geometry_params(spectrum_params, o);
  add_scene_params(spectrum_params, o);
  spectrum_params.add_double("snr-db", o.snr_db, "SNR [dB]; inf for noiseless");
  spectrum_params.add_string("scheme", o.scheme, "conventional | mpv1 | mpv2");
  spectrum_params.add_string("receiver", o.receiver, "eaves | authorized");
  spectrum_params.add_int("l", o.l, "MPV-II active antenna count");
  spectrum_params.add_int("anneal-iters", o.anneal_iters, "MPV-I annealing iterations");
  spectrum_params.add_double("band-low-hz", o.band_low_hz, "Peak search band low edge [Hz]");
  spectrum_params.add_double("band-high-hz", o.band_high_hz, "Peak search band high edge [Hz]");
  spectrum_params.add_u64("nfft", o.nfft, "DFT length (0 = trace length)");
  spectrum_params.add_flag("dump-trace", o.dump_trace, "Also write trace.csv");
  spectrum_params.add_flag("dump-schedule", o.dump_schedule, "Also write schedule.txt");
  add_common_tail(spectrum_params, o);

  CLI::App* optimize = app.add_subcommand(
      "optimize", "Solve MPV-I (annealing) or MPV-II (closed form with oracle check)");
  ParamSet optimize_params(optimize);
  add_geometry_params(optimize_params, o);
  optimize_params.add_string("scheme", o.optimize_scheme, "mpv1 | mpv2");
  optimize_params.add_int("l", o.l, "MPV-II active antenna count");
  optimize_params.add_int("anneal-iters", o.anneal_iters, "MPV-I annealing iterations");
  optimize_params.add_u64("oracle-samples", o.oracle_samples,
                          "Simplex samples for the MPV-II oracle (0 = skip)");
  optimize_params.add_int("threads", o.threads, "Worker threads (0 = hardware)");
  add_common_tail(optimize_params, o);

  CLI::App* pod = app.add_subcommand(
      "pod", "Monte Carlo probability-of-detection sweep over an SNR grid");
  ParamSet pod_params(pod);
  add_geometry_params(pod_params, o);
  add_scene_params(pod_params, o);
  pod_params.add_string("snr-db", o.snr_grid, "SNR grid start:step:stop [dB], or one value");
  pod_params.add_string("scheme", o.pod_scheme, "Run a single scheme (overrides --schemes)");
  pod_params.add_string("schemes", o.schemes, "Comma-separated scheme list");
  pod_params.add_int("trials", o.trials, "Monte Carlo trials per (scheme, SNR)");
  pod_params.add_int("tol-bins", o.tol_bins, "Peak match tolerance [bins]");
  pod_params.add_int("l", o.l, "MPV-II active antenna count");
  pod_params.add_int("anneal-iters", o.anneal_iters, "MPV-I annealing iterations");
  pod_params.add_double("band-low-hz", o.band_low_hz, "Peak search band low edge [Hz]");
  pod_params.add_double("band-high-hz", o.band_high_hz, "Peak search band high edge [Hz]");
  pod_params.add_int("threads", o.threads, "Worker threads (0 = hardware)");
  add_common_tail(pod_params, o);

  CLI11_PARSE(app, argc, argv);

  ParamSet* active_params = nullptr;
  int (*run)(const Options&, ParamSet&) = nullptr;
  std::string name;
  if (app.got_subcommand(spectrum)) {
    active_params = &spectrum_params;
    run = cmd_spectrum;
    name = "spectrum";
  } else if (app.got_subcommand(optimize)) {
    active_params = &optimize_params;
    run = cmd_optimize;
    name = "optimize";
  } else {
    active_params = &pod_params;
    run = cmd_pod;
    name = "pod";
  }

  try {
    if (!o.config_path.empty()) active_params->apply_config(o.config_path);
    active_params->finalize_sources();
    return run(o, *active_params);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "Run with --help for usage.\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << name << ": " << e.what() << "\n";
    return 1;
  }
}
