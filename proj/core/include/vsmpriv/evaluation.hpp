#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vsmpriv/scene.hpp"
#include "vsmpriv/selection.hpp"
#include "vsmpriv/spectral.hpp"

namespace vsmpriv {

struct PodConfig {
  int n_trials = 2000;
  std::vector<double> snr_grid_db;
  std::vector<Scheme> schemes = {Scheme::conventional, Scheme::mpv1, Scheme::mpv2};
  int match_tolerance_bins = 1;
  std::uint64_t master_seed = 0;
  double band_low_hz = kDefaultBandLowHz;
  double band_high_hz = kDefaultBandHighHz;
  int n_threads = 0;

  void validate() const;
};

struct PodPoint {
  Scheme scheme;
  double snr_db;
  int trials;
  int successes;
  double pod;
  double ci_low;
  double ci_high;
};

struct PodCurve {
  std::vector<PodPoint> points;
};

/// Wilson 95% score interval.
std::pair<double, double> wilson_ci95(int successes, int trials);

/// True iff the two reported peaks match {f_b, f_h} in either order, each
/// within tol_bins * resolution_hz.
bool trial_success(const PeakReport& report, const VitalSignProfile& vitals,
                   double resolution_hz, int tol_bins);

/// Per-sweep scheme solutions: MPV-I solved once, MPV-II closed form once.
struct SchemeSolutions {
  std::optional<Mpv1Solution> mpv1;
  std::optional<PhaseSet> mpv2_phase_set;
  std::optional<Mpv2Solution> mpv2;
};

/// Solves the schemes the sweep needs. MPV-I annealing seed derives from the
/// master seed; MPV-II uses the (active_count, theta_c) instance.
SchemeSolutions prepare_scheme_solutions(const SceneConfig& scene,
                                         const std::vector<Scheme>& schemes,
                                         int mpv2_active_count, double mpv2_theta_c_rad,
                                         const AnnealParams& anneal,
                                         std::uint64_t master_seed);

/// Monte Carlo POD sweep, eavesdropper pipeline only. Per-trial RNG streams
/// derive from (master seed, scheme tag, snr index, trial index), so results
/// do not depend on thread count or execution order.
PodCurve run_pod_sweep(const SceneConfig& scene, const VitalSignProfile& vitals,
                       const PodConfig& config, const SchemeSolutions& solutions);

/// Single-trial artifacts for figure reproduction.
struct SpectrumSnapshot {
  SelectionSchedule schedule;
  std::vector<double> phase_rad;  // unwrapped extracted phase
  Spectrum spectrum;
  PeakReport peaks;
};

SpectrumSnapshot run_spectrum_snapshot(const SceneConfig& scene,
                                       const VitalSignProfile& vitals, Scheme scheme,
                                       Receiver receiver, std::uint64_t seed,
                                       const SchemeSolutions& solutions,
                                       double band_low_hz = kDefaultBandLowHz,
                                       double band_high_hz = kDefaultBandHighHz,
                                       std::size_t nfft = 0);

}  // namespace vsmpriv
