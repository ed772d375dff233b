#include "vsmpriv/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "vsmpriv/rng.hpp"

namespace vsmpriv {

namespace {

std::uint64_t scheme_tag(Scheme scheme) {
  switch (scheme) {
    case Scheme::conventional: return 0;
    case Scheme::mpv1: return 1;
    case Scheme::mpv2: return 2;
  }
  return ~std::uint64_t{0};
}

const ScheduleModel& model_for(Scheme scheme, const std::vector<ScheduleModel>& models,
                               const std::vector<Scheme>& schemes) {
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (schemes[i] == scheme) return models[i];
  }
  throw std::invalid_argument("no schedule model prepared for scheme " + to_string(scheme));
}

ScheduleModel build_model(Scheme scheme, const SceneConfig& scene,
                          const SchemeSolutions& solutions) {
  switch (scheme) {
    case Scheme::conventional:
      return conventional_model(scene.geometry, scene.theta0_rad);
    case Scheme::mpv1:
      if (!solutions.mpv1) throw std::invalid_argument("MPV-I solution not prepared");
      return mpv1_model(scene.geometry, scene.theta0_rad, *solutions.mpv1);
    case Scheme::mpv2:
      if (!solutions.mpv2 || !solutions.mpv2_phase_set) {
        throw std::invalid_argument("MPV-II solution not prepared");
      }
      return mpv2_model(*solutions.mpv2_phase_set, *solutions.mpv2);
  }
  throw std::invalid_argument("unknown scheme");
}

}  // namespace

void PodConfig::validate() const {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  if (snr_grid_db.empty()) throw std::invalid_argument("snr grid is empty");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
    if (!(snr_grid_db[i] > snr_grid_db[i - 1])) {
      throw std::invalid_argument("snr grid must be strictly increasing");
    }
  }
  if (schemes.empty()) throw std::invalid_argument("scheme set is empty");
  if (match_tolerance_bins < 0) throw std::invalid_argument("match_tolerance_bins must be >= 0");
  if (!(band_low_hz <= band_high_hz)) throw std::invalid_argument("invalid search band");
}

std::pair<double, double> wilson_ci95(int successes, int trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (successes < 0 || successes > trials) throw std::invalid_argument("successes out of range");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

bool trial_success(const PeakReport& report, const VitalSignProfile& vitals,
                   double resolution_hz, int tol_bins) {
  const double tol = static_cast<double>(tol_bins) * resolution_hz + 1e-9;
  const double f1 = report.top_freqs_hz[0];
  const double f2 = report.top_freqs_hz[1];
  const double fb = vitals.breath_freq_hz;
  const double fh = vitals.heart_freq_hz;
  const auto near = [tol](double a, double b) { return std::abs(a - b) <= tol; };
  return (near(f1, fb) && near(f2, fh)) || (near(f1, fh) && near(f2, fb));
}

SchemeSolutions prepare_scheme_solutions(const SceneConfig& scene,
                                         const std::vector<Scheme>& schemes,
                                         int mpv2_active_count, double mpv2_theta_c_rad,
                                         const AnnealParams& anneal,
                                         std::uint64_t master_seed) {
  SchemeSolutions solutions;
  for (const Scheme scheme : schemes) {
    if (scheme == Scheme::mpv1 && !solutions.mpv1) {
      solutions.mpv1 = solve_mpv1(scene.geometry, scene.theta0_rad, anneal,
                                  rng::derive(master_seed, {rng::kStreamAnneal}));
    } else if (scheme == Scheme::mpv2 && !solutions.mpv2) {
      solutions.mpv2_phase_set = enumerate_phase_set(scene.geometry, scene.theta0_rad,
                                                     mpv2_theta_c_rad, mpv2_active_count);
      solutions.mpv2 = solve_mpv2(*solutions.mpv2_phase_set);
    }
  }
  return solutions;
}

PodCurve run_pod_sweep(const SceneConfig& scene, const VitalSignProfile& vitals,
                       const PodConfig& config, const SchemeSolutions& solutions) {
  scene.validate();
  vitals.validate();
  config.validate();

  std::vector<ScheduleModel> models;
  models.reserve(config.schemes.size());
  for (const Scheme scheme : config.schemes) {
    models.push_back(build_model(scheme, scene, solutions));
  }

  const std::size_t s = scene.sample_count();
  const double resolution_hz = scene.sample_rate_hz / static_cast<double>(s);
  const int workers = [&] {
    if (config.n_threads > 0) return config.n_threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();

  PodCurve curve;
  for (std::size_t si = 0; si < config.schemes.size(); ++si) {
    const Scheme scheme = config.schemes[si];
    const ScheduleModel& model = model_for(scheme, models, config.schemes);
    const std::uint64_t tag = scheme_tag(scheme);
    for (std::size_t fi = 0; fi < config.snr_grid_db.size(); ++fi) {
      SceneConfig point_scene = scene;
      point_scene.snr_db = config.snr_grid_db[fi];

      const auto run_trial = [&](int trial) -> bool {
        const std::uint64_t sched_seed = rng::derive(
            config.master_seed,
            {rng::kStreamSchedule, tag, fi, static_cast<std::uint64_t>(trial)});
        const std::uint64_t noise_seed = rng::derive(
            config.master_seed,
            {rng::kStreamNoise, tag, fi, static_cast<std::uint64_t>(trial)});
        const SelectionSchedule schedule = generate_schedule(model, s, sched_seed);
        const BasebandTrace trace =
            synthesize_trace(point_scene, vitals, schedule, Receiver::eavesdropper, noise_seed);
        try {
          const PeakReport report =
              detect_vitals(trace, config.band_low_hz, config.band_high_hz);
          return trial_success(report, vitals, resolution_hz, config.match_tolerance_bins);
        } catch (const InsufficientBandError&) {
          return false;  // no usable peaks counts as a missed detection
        } catch (const UnreliablePhaseError&) {
          return false;
        }
      };

      int successes = 0;
      if (workers <= 1) {
        for (int trial = 0; trial < config.n_trials; ++trial) {
          if (run_trial(trial)) ++successes;
        }
      } else {
        std::atomic<int> shared_successes{0};
        std::atomic<int> next_trial{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
          pool.emplace_back([&] {
            int local = 0;
            for (int trial = next_trial.fetch_add(1); trial < config.n_trials;
                 trial = next_trial.fetch_add(1)) {
              if (run_trial(trial)) ++local;
            }
            shared_successes.fetch_add(local);
          });
        }
        for (auto& t : pool) t.join();
        successes = shared_successes.load();
      }

      const auto [lo, hi] = wilson_ci95(successes, config.n_trials);
      curve.points.push_back(PodPoint{scheme, config.snr_grid_db[fi], config.n_trials,
                                      successes,
                                      static_cast<double>(successes) / config.n_trials,
                                      lo, hi});
    }
  }
  return curve;
}

SpectrumSnapshot run_spectrum_snapshot(const SceneConfig& scene,
                                       const VitalSignProfile& vitals, Scheme scheme,
                                       Receiver receiver, std::uint64_t seed,
                                       const SchemeSolutions& solutions,
                                       double band_low_hz, double band_high_hz,
                                       std::size_t nfft) {
  if (receiver == Receiver::authorized_compensated) {
    throw std::invalid_argument("request the authorized receiver; compensation is implied");
  }
  const ScheduleModel model = build_model(scheme, scene, solutions);
  const std::size_t s = scene.sample_count();
  const SelectionSchedule schedule =
      generate_schedule(model, s, rng::derive(seed, {rng::kStreamSchedule}));
  const BasebandTrace trace = synthesize_trace(scene, vitals, schedule, receiver,
                                               rng::derive(seed, {rng::kStreamNoise}));

  BasebandTrace pipeline_input = trace;
  if (receiver == Receiver::authorized) {
    const auto steering =
        steering_vector(scene.geometry, scene.theta0_rad, schedule.theta_c_rad);
    pipeline_input = compensate_schedule_phase(trace, schedule, steering);
  }

  SpectrumSnapshot snapshot{schedule, {}, {}, {}};
  snapshot.phase_rad = extract_unwrapped_phase(pipeline_input);
  snapshot.spectrum = power_spectrum(snapshot.phase_rad, scene.sample_rate_hz,
                                     nfft == 0 ? snapshot.phase_rad.size() : nfft);
  snapshot.peaks = pick_top_two_peaks(snapshot.spectrum, band_low_hz, band_high_hz);
  return snapshot;
}

}  // namespace vsmpriv
