// Acceptance suite: end-to-end checks of the simulator, both MPV schemes,
// the eavesdropper attack, authorized recovery and the POD experiment.
// Prints one [PASS]/[FAIL] line per criterion; exits nonzero on any failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "vsmpriv/evaluation.hpp"
#include "vsmpriv/io.hpp"
#include "vsmpriv/rng.hpp"

using namespace vsmpriv;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;
constexpr int kMpv2ActiveCount = 12;
constexpr double kMpv2ThetaCRad = 39.0 * kDeg;

std::string g_cli_path;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

bool report(int index, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] C%d %s: %s\n", pass ? "PASS" : "FAIL", index, name, detail.c_str());
  std::fflush(stdout);
  return pass;
}

SceneConfig default_scene(double snr_db) {
  SceneConfig scene;
  scene.snr_db = snr_db;
  return scene;
}

std::vector<double> demean(std::vector<double> x) {
  double mean = 0.0;
  for (const double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
  return x;
}

// --- C1: eavesdropper recovers the vitals from a conventional array ---------
bool criterion_1() {
  Timer timer;
  const SceneConfig scene = default_scene(10.0);
  const VitalSignProfile vitals;
  const auto model = conventional_model(scene.geometry, scene.theta0_rad);
  const auto schedule = generate_schedule(model, scene.sample_count(), 0);
  const double resolution = scene.sample_rate_hz / static_cast<double>(scene.sample_count());

  int successes = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const auto trace = synthesize_trace(scene, vitals, schedule, Receiver::eavesdropper,
                                        rng::derive(101, {trial}));
    try {
      const auto peaks = detect_vitals(trace, kDefaultBandLowHz, kDefaultBandHighHz);
      if (trial_success(peaks, vitals, resolution, 1)) ++successes;
    } catch (const InsufficientBandError&) {
    }
  }
  const double elapsed = timer.seconds();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d/100 trials matched {0.4, 1.3} Hz (need >= 99); %.1f s (< 10 s)",
                successes, elapsed);
  return report(1, "conventional-array vulnerability", successes >= 99 && elapsed < 10.0, buf);
}

// --- C2: compensated authorized recovery under both MPV schemes -------------
int authorized_hits(const SceneConfig& scene, const VitalSignProfile& vitals,
                    const ScheduleModel& model, int n_trials, std::uint64_t tag) {
  const auto steering =
      steering_vector(scene.geometry, scene.theta0_rad, model.theta_c_rad);
  const double resolution = scene.sample_rate_hz / static_cast<double>(scene.sample_count());
  int hits = 0;
  for (std::uint64_t trial = 0; trial < static_cast<std::uint64_t>(n_trials); ++trial) {
    const auto schedule = generate_schedule(model, scene.sample_count(),
                                            rng::derive(tag, {rng::kStreamSchedule, trial}));
    const auto trace = synthesize_trace(scene, vitals, schedule, Receiver::authorized,
                                        rng::derive(tag, {rng::kStreamNoise, trial}));
    try {
      const auto peaks = detect_vitals(trace, schedule, steering, kDefaultBandLowHz,
                                       kDefaultBandHighHz);
      if (trial_success(peaks, vitals, resolution, 1)) ++hits;
    } catch (const InsufficientBandError&) {
    } catch (const UnreliablePhaseError&) {
    }
  }
  return hits;
}

bool criterion_2(const Mpv1Solution& mpv1_solution) {
  Timer timer;
  const SceneConfig scene = default_scene(10.0);
  const VitalSignProfile vitals;

  const auto mpv1 = mpv1_model(scene.geometry, scene.theta0_rad, mpv1_solution);
  const auto ps = enumerate_phase_set(scene.geometry, scene.theta0_rad, kMpv2ThetaCRad,
                                      kMpv2ActiveCount);
  const auto mpv2 = mpv2_model(ps, solve_mpv2(ps));

  const int hits1 = authorized_hits(scene, vitals, mpv1, 100, 201);
  const int hits2 = authorized_hits(scene, vitals, mpv2, 100, 202);
  // Side suite: the same check at 200 trials per scheme.
  const int side1 = authorized_hits(scene, vitals, mpv1, 200, 301);
  const int side2 = authorized_hits(scene, vitals, mpv2, 200, 302);

  const double elapsed = timer.seconds();
  const bool pass = hits1 >= 95 && hits2 >= 95 && elapsed < 30.0;
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "authorized recovery at 10 dB: MPV-I %d/100, MPV-II %d/100 (need >= 95 each; "
                "200-trial side suite: %d/200, %d/200); %.1f s (< 30 s)",
                hits1, hits2, side1, side2, elapsed);
  return report(2, "authorized recovery under antenna selection", pass, buf);
}

// --- C3: POD privacy gap across the SNR sweep --------------------------------
bool criterion_3(const Mpv1Solution& mpv1_solution) {
  Timer timer;
  const SceneConfig scene = default_scene(10.0);
  const VitalSignProfile vitals;

  PodConfig config;
  config.n_trials = 2000;
  config.snr_grid_db = {-30.0, -20.0, -10.0, 0.0, 10.0, 20.0};
  config.schemes = {Scheme::conventional, Scheme::mpv1, Scheme::mpv2};
  config.match_tolerance_bins = 1;
  config.master_seed = 303;

  SchemeSolutions solutions;
  solutions.mpv1 = mpv1_solution;
  solutions.mpv2_phase_set = enumerate_phase_set(scene.geometry, scene.theta0_rad,
                                                 kMpv2ThetaCRad, kMpv2ActiveCount);
  solutions.mpv2 = solve_mpv2(*solutions.mpv2_phase_set);

  const auto curve = run_pod_sweep(scene, vitals, config, solutions);
  const auto at = [&](Scheme scheme, double snr) -> const PodPoint& {
    for (const auto& p : curve.points) {
      if (p.scheme == scheme && p.snr_db == snr) return p;
    }
    throw std::logic_error("missing POD point");
  };
  const auto& conv = at(Scheme::conventional, 20.0);
  const auto& m1 = at(Scheme::mpv1, 20.0);
  const auto& m2 = at(Scheme::mpv2, 20.0);
  const auto hw = [](const PodPoint& p) { return (p.ci_high - p.ci_low) / 2.0; };

  const bool conv_ok = conv.pod >= 0.95;
  const bool gap1 = conv.pod - m1.pod > hw(conv) + hw(m1);
  const bool gap2 = conv.pod - m2.pod > hw(conv) + hw(m2);
  const double elapsed = timer.seconds();
  const bool pass = conv_ok && gap1 && gap2 && elapsed < 900.0;
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "pod@20dB conv %.3f (>= 0.95) mpv1 %.3f mpv2 %.3f, CI half-widths %.3f/%.3f/%.3f; "
                "%.0f s (< 900 s)",
                conv.pod, m1.pod, m2.pod, hw(conv), hw(m1), hw(m2), elapsed);
  return report(3, "privacy gap across the SNR sweep", pass, buf);
}

// --- C4: Proposition-1 closed form dominates the simplex oracle -------------
bool criterion_4() {
  Timer timer;
  ArrayGeometry geometry;
  rng::Stream st(404);
  bool all_ok = true;
  double worst_gap = 0.0;
  for (int instance = 0; instance < 50; ++instance) {
    const int n = 4 + static_cast<int>(st.below(13));  // N in {4..16}
    geometry.n_antennas = n;
    const int l = 1 + static_cast<int>(st.below(static_cast<std::uint64_t>(n - 1)));
    const double theta_c = st.uniform() * kPi;
    const auto ps = enumerate_phase_set(geometry, 30.0 * kDeg, theta_c, l);
    if (ps.entries.empty()) continue;
    const auto sol = solve_mpv2(ps);
    const double oracle = mpv2_oracle(ps, 100000, rng::derive(404, {static_cast<std::uint64_t>(instance)}));
    if (oracle > sol.variance + 1e-9) all_ok = false;
    worst_gap = std::max(worst_gap, sol.variance - oracle);

    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t i = 0; i < ps.m(); ++i) {
      if (ps.entries[i].config == sol.config_low) lo = i;
      if (ps.entries[i].config == sol.config_high) hi = i;
    }
    const double attained = allocation_variance(ps, {{{lo, 0.5}, {hi, 0.5}}});
    if (std::abs(attained - sol.variance) > 1e-12) all_ok = false;
  }
  const double elapsed = timer.seconds();
  const bool pass = all_ok && elapsed < 120.0;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "50 instances, 1e5 simplex samples each: oracle <= closed form + 1e-9, "
                "two-point attains it (worst residual %.2e); %.0f s (< 120 s)",
                worst_gap, elapsed);
  return report(4, "Proposition-1 oracle dominance", pass, buf);
}

// --- C5: Dirichlet-kernel closed form vs the direct masked sum --------------
bool criterion_5() {
  Timer timer;
  const ArrayGeometry geometry;
  const auto all_on = ActivationVector::all_on(16);
  double worst = 0.0;
  bool singular_ok = true;
  for (int a = 0; a <= 180; ++a) {
    for (int c = 0; c <= 180; ++c) {
      const double theta0 = a * kDeg;
      const double theta_c = c * kDeg;
      const auto f = steering_vector(geometry, theta0, theta_c);
      const auto z = masked_sum(all_on, f);
      const auto closed = full_array_closed_form(geometry, theta0, theta_c);
      const auto zc = std::polar(closed.amplitude, closed.phase_rad);
      worst = std::max(worst, std::abs(z - zc));
      worst = std::max(worst, std::abs(std::abs(z) - closed.amplitude));
      if (a == c && (closed.amplitude != 16.0 || closed.phase_rad != 0.0)) {
        singular_ok = false;
      }
    }
  }
  const double elapsed = timer.seconds();
  const bool pass = worst < 1e-10 && singular_ok;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "1-degree grid, worst |closed - direct| = %.2e (< 1e-10); "
                "theta_c = theta0 returns amplitude N exactly: %s; %.1f s",
                worst, singular_ok ? "yes" : "no", elapsed);
  return report(5, "array-factor closed form", pass, buf);
}

// --- C6: compensation restores the conventional phase exactly ---------------
bool criterion_6(const Mpv1Solution& mpv1_solution) {
  Timer timer;
  const SceneConfig scene = default_scene(kNoiselessSnrDb);
  const VitalSignProfile vitals;
  const std::size_t s = scene.sample_count();

  const auto conv_schedule =
      generate_schedule(conventional_model(scene.geometry, scene.theta0_rad), s, 606);
  const auto conv_trace =
      synthesize_trace(scene, vitals, conv_schedule, Receiver::authorized, 606);
  const auto reference = demean(extract_unwrapped_phase(conv_trace));

  double worst = 0.0;
  const auto check_scheme = [&](const ScheduleModel& model) {
    const auto schedule = generate_schedule(model, s, 607);
    const auto trace = synthesize_trace(scene, vitals, schedule, Receiver::authorized, 607);
    const auto steering =
        steering_vector(scene.geometry, scene.theta0_rad, model.theta_c_rad);
    const auto compensated = compensate_schedule_phase(trace, schedule, steering);
    const auto phase = demean(extract_unwrapped_phase(compensated));
    for (std::size_t k = 0; k < s; ++k) {
      worst = std::max(worst, std::abs(phase[k] - reference[k]));
    }
  };
  check_scheme(mpv1_model(scene.geometry, scene.theta0_rad, mpv1_solution));
  const auto ps = enumerate_phase_set(scene.geometry, scene.theta0_rad, kMpv2ThetaCRad,
                                      kMpv2ActiveCount);
  check_scheme(mpv2_model(ps, solve_mpv2(ps)));

  const double elapsed = timer.seconds();
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "noiseless MPV traces, S = 2000: worst demeaned-phase deviation %.2e (< 1e-9); %.1f s",
                worst, elapsed);
  return report(6, "compensation identity", worst < 1e-9, buf);
}

// --- C7: annealer matches exhaustive search on small arrays -----------------
bool criterion_7(const Mpv1Solution& mpv1_16) {
  Timer timer;
  bool all_ok = true;
  std::string detail;
  for (const int n : {2, 4, 6}) {
    ArrayGeometry geometry;
    geometry.n_antennas = n;
    const double theta0 = 30.0 * kDeg;
    double best = -1.0;
    for (int l = 1; l <= n - 1; ++l) {
      for (double deg = 0.0; deg <= 180.0 + 1e-12; deg += 0.1) {
        const auto ps = enumerate_phase_set(geometry, theta0, deg * kDeg, l);
        if (ps.entries.empty()) continue;
        best = std::max(best, uniform_phase_variance(ps));
      }
    }
    int hits = 0;
    const AnnealParams params;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto sol = solve_mpv1(geometry, theta0, params, seed);
      if (std::abs(sol.achieved_variance - best) <= 0.01 * best) ++hits;
      const auto ps =
          enumerate_phase_set(geometry, theta0, sol.theta_c_rad, sol.active_count);
      if (sol.achieved_variance > solve_mpv2(ps).variance + 1e-12) all_ok = false;
    }
    if (hits < 9) all_ok = false;
    detail += "N=" + std::to_string(n) + ": " + std::to_string(hits) + "/10 within 1%; ";
  }
  // Popoviciu bound also holds for the production N=16 solution.
  {
    ArrayGeometry geometry;
    const auto ps = enumerate_phase_set(geometry, 30.0 * kDeg, mpv1_16.theta_c_rad,
                                        mpv1_16.active_count);
    if (mpv1_16.achieved_variance > solve_mpv2(ps).variance + 1e-12) all_ok = false;
  }
  const double elapsed = timer.seconds();
  char buf[240];
  std::snprintf(buf, sizeof(buf), "%sPopoviciu bound respected at every solution; %.0f s",
                detail.c_str(), elapsed);
  return report(7, "MPV-I annealer soundness", all_ok, buf);
}

// --- C8: CLI determinism ------------------------------------------------------
int run_cli(const std::string& args) {
  const std::string cmd = "\"" + g_cli_path + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion_8() {
  if (g_cli_path.empty()) {
    return report(8, "CLI determinism", false, "CLI path not supplied to the acceptance binary");
  }
  Timer timer;
  const fs::path base = fs::absolute("acceptance_cli_tmp");
  fs::remove_all(base);
  fs::create_directories(base);

  bool pass = true;
  std::string detail;

  const auto compare_runs = [&](const std::string& name, const std::string& args,
                                const std::string& file,
                                const std::string& variant_a, const std::string& variant_b) {
    const fs::path dir_a = base / (name + "_a");
    const fs::path dir_b = base / (name + "_b");
    const int code_a = run_cli(args + variant_a + " --out-dir \"" + dir_a.string() + "\"");
    const int code_b = run_cli(args + variant_b + " --out-dir \"" + dir_b.string() + "\"");
    const bool ok = code_a == 0 && code_b == 0 && !slurp(dir_a / file).empty() &&
                    slurp(dir_a / file) == slurp(dir_b / file);
    if (!ok) pass = false;
    detail += name + (ok ? " ok; " : " MISMATCH; ");
  };

  compare_runs("spectrum", "spectrum --scheme mpv2 --receiver eaves --seed 11 ", "spectrum.csv",
               "", "");
  compare_runs("optimize", "optimize --scheme mpv2 --l 12 --theta-c-deg 41 --oracle-samples 3000 --seed 5 ",
               "mpv2_solution.txt", "", "");
  compare_runs("pod", "pod --snr-db -10:15:20 --trials 40 --anneal-iters 250 --seed 9 ",
               "pod.csv", "--threads 1", "--threads 2");

  fs::remove_all(base);
  const double elapsed = timer.seconds();
  char buf[240];
  std::snprintf(buf, sizeof(buf), "%sbyte-identical reruns incl. 1 vs 2 threads; %.0f s",
                detail.c_str(), elapsed);
  return report(8, "CLI determinism", pass, buf);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  std::printf("acceptance: solving MPV-I once at production settings...\n");
  std::fflush(stdout);
  const SceneConfig scene = default_scene(10.0);
  const AnnealParams anneal;
  const Mpv1Solution mpv1_solution =
      solve_mpv1(scene.geometry, scene.theta0_rad, anneal, rng::derive(303, {rng::kStreamAnneal}));
  std::printf("acceptance: MPV-I solution L* = %d, theta_c* = %.3f deg, variance %.4f rad^2\n",
              mpv1_solution.active_count, mpv1_solution.theta_c_rad / kDeg,
              mpv1_solution.achieved_variance);
  std::fflush(stdout);

  int failures = 0;
  failures += !criterion_1();
  failures += !criterion_2(mpv1_solution);
  failures += !criterion_3(mpv1_solution);
  failures += !criterion_4();
  failures += !criterion_5();
  failures += !criterion_6(mpv1_solution);
  failures += !criterion_7(mpv1_solution);
  failures += !criterion_8();

  std::printf("acceptance: %d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
