#include "vsmpriv/scene.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vsmpriv/rng.hpp"

namespace vsmpriv {

namespace {

constexpr double kPi = std::numbers::pi;

double static_phase(const SceneConfig& scene, Receiver receiver) {
  const double path_m = receiver == Receiver::eavesdropper
                            ? scene.range_auth_m + scene.range_eaves_m
                            : 2.0 * scene.range_auth_m;
  return scene.tx_phase_rad -
         2.0 * kPi * scene.geometry.carrier_freq_hz * path_m / kSpeedOfLight;
}

void check_synth_inputs(const SceneConfig& scene, const VitalSignProfile& vitals,
                        const SelectionSchedule& schedule, Receiver receiver) {
  scene.validate();
  vitals.validate();
  if (receiver == Receiver::authorized_compensated) {
    throw std::invalid_argument("traces are synthesized as eavesdropper or authorized");
  }
  const double f_max = std::max(vitals.heart_freq_hz, vitals.breath_freq_hz);
  if (!(scene.sample_rate_hz > 2.0 * f_max)) {
    throw std::invalid_argument("sample_rate_hz must exceed twice the highest vital frequency");
  }
  if (schedule.size() != scene.sample_count()) {
    throw std::invalid_argument("schedule length does not match the scene sample count");
  }
}

}  // namespace

void VitalSignProfile::validate() const {
  if (!(heart_amp_m >= 0.0) || !(breath_amp_m >= 0.0)) {
    throw std::invalid_argument("vital-sign amplitudes must be >= 0");
  }
  if (allow_out_of_range) return;
  if (!(heart_freq_hz >= 0.8 && heart_freq_hz <= 2.0)) {
    throw std::invalid_argument("heart_freq_hz outside [0.8, 2.0] (set allow_out_of_range to bypass)");
  }
  if (!(breath_freq_hz >= 0.1 && breath_freq_hz <= 0.5)) {
    throw std::invalid_argument("breath_freq_hz outside [0.1, 0.5] (set allow_out_of_range to bypass)");
  }
}

std::size_t SceneConfig::sample_count() const {
  return static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
}

void SceneConfig::validate() const {
  geometry.validate();
  if (!(theta0_rad >= 0.0 && theta0_rad <= kPi)) {
    throw std::domain_error("theta0_rad must lie in [0, pi]");
  }
  if (!(range_auth_m > 0.0) || !(range_eaves_m > 0.0)) {
    throw std::invalid_argument("ranges must be > 0");
  }
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("sample_rate_hz must be > 0");
  if (!(duration_s > 0.0)) throw std::invalid_argument("duration_s must be > 0");
  const double s_exact = duration_s * sample_rate_hz;
  const double s_round = std::llround(s_exact);
  if (std::abs(s_exact - s_round) > 1e-9 * std::max(1.0, s_exact) || s_round < 2.0) {
    throw std::invalid_argument("duration_s * sample_rate_hz must be an integer >= 2");
  }
}

std::string to_string(Receiver receiver) {
  switch (receiver) {
    case Receiver::eavesdropper: return "eavesdropper";
    case Receiver::authorized: return "authorized";
    case Receiver::authorized_compensated: return "authorized_compensated";
  }
  return "unknown";
}

double chest_displacement(double t_s, const VitalSignProfile& vitals) {
  return vitals.heart_amp_m *
             std::sin(2.0 * kPi * vitals.heart_freq_hz * t_s + vitals.heart_phase_rad) +
         vitals.breath_amp_m *
             std::sin(2.0 * kPi * vitals.breath_freq_hz * t_s + vitals.breath_phase_rad);
}

BasebandTrace synthesize_trace(const SceneConfig& scene, const VitalSignProfile& vitals,
                               const SelectionSchedule& schedule, Receiver receiver,
                               std::uint64_t noise_seed) {
  check_synth_inputs(scene, vitals, schedule, receiver);
  const std::size_t s = scene.sample_count();
  const double phase0 = static_phase(scene, receiver);
  const double vital_scale = 4.0 * kPi / scene.geometry.wavelength_m();
  const double gain = scene.reflect_coeff * scene.tx_amp;
  const auto steering =
      steering_vector(scene.geometry, scene.theta0_rad, schedule.theta_c_rad);

  BasebandTrace trace{{}, scene.sample_rate_hz, receiver, scene.snr_db, noise_seed};
  trace.samples.resize(s);
  for (std::size_t k = 0; k < s; ++k) {
    const double t = static_cast<double>(k) / scene.sample_rate_hz;
    const ArrayResponse resp = array_response(schedule.per_sample[k], steering);
    const double phase = phase0 - vital_scale * chest_displacement(t, vitals) + resp.phase_rad;
    trace.samples[k] = std::polar(gain * resp.amplitude, phase);
  }

  if (std::isfinite(scene.snr_db)) {
    double mean_power = 0.0;
    for (const auto& z : trace.samples) mean_power += std::norm(z);
    mean_power /= static_cast<double>(s);
    const double noise_var = mean_power / std::pow(10.0, scene.snr_db / 10.0);
    const double comp_sigma = std::sqrt(noise_var / 2.0);
    rng::Stream st(noise_seed);
    for (auto& z : trace.samples) {
      const double re = st.normal();
      const double im = st.normal();
      z += std::complex<double>(comp_sigma * re, comp_sigma * im);
    }
  }
  return trace;
}

std::vector<double> mixed_trace_phase_model(const SceneConfig& scene,
                                            const VitalSignProfile& vitals,
                                            const SelectionSchedule& schedule,
                                            Receiver receiver) {
  check_synth_inputs(scene, vitals, schedule, receiver);
  const std::size_t s = scene.sample_count();
  const double phase0 = static_phase(scene, receiver);
  const double vital_scale = 4.0 * kPi / scene.geometry.wavelength_m();
  const auto steering =
      steering_vector(scene.geometry, scene.theta0_rad, schedule.theta_c_rad);

  std::vector<double> phases(s);
  for (std::size_t k = 0; k < s; ++k) {
    const double t = static_cast<double>(k) / scene.sample_rate_hz;
    const ArrayResponse resp = array_response(schedule.per_sample[k], steering);
    phases[k] = phase0 - vital_scale * chest_displacement(t, vitals) + resp.phase_rad;
  }
  return phases;
}

}  // namespace vsmpriv
