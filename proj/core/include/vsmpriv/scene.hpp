#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "vsmpriv/array_model.hpp"
#include "vsmpriv/selection.hpp"

namespace vsmpriv {

/// Sentinel SNR for noiseless synthesis.
inline constexpr double kNoiselessSnrDb = std::numeric_limits<double>::infinity();

/// Two-tone chest motion model. The physiological bands (f_h in [0.8, 2],
/// f_b in [0.1, 0.5] Hz) are enforced unless allow_out_of_range is set.
struct VitalSignProfile {
  double heart_amp_m = 0.5e-3;
  double heart_freq_hz = 1.3;
  double heart_phase_rad = 0.0;
  double breath_amp_m = 1.0e-3;
  double breath_freq_hz = 0.4;
  double breath_phase_rad = 0.0;
  bool allow_out_of_range = false;

  void validate() const;
};

struct SceneConfig {
  ArrayGeometry geometry;
  double theta0_rad = 0.5235987755982988;  // 30 deg
  double range_auth_m = 1.0;
  double range_eaves_m = 1.0;
  double reflect_coeff = 1.0;
  double tx_amp = 1.0;
  double tx_phase_rad = 0.0;
  double sample_rate_hz = 100.0;
  double duration_s = 20.0;
  double snr_db = 10.0;

  std::size_t sample_count() const;
  void validate() const;
};

enum class Receiver { eavesdropper, authorized, authorized_compensated };

std::string to_string(Receiver receiver);

struct BasebandTrace {
  std::vector<std::complex<double>> samples;
  double sample_rate_hz;
  Receiver receiver;
  double snr_db;
  std::uint64_t rng_seed;

  std::size_t size() const { return samples.size(); }
};

/// R(t), meters.
double chest_displacement(double t_s, const VitalSignProfile& vitals);

/// Mixed-baseband receive signal for one schedule realization. Noise is
/// circularly symmetric Gaussian scaled so mean signal power over noise
/// variance equals 10^(snr_db/10); snr_db = kNoiselessSnrDb skips it.
BasebandTrace synthesize_trace(const SceneConfig& scene, const VitalSignProfile& vitals,
                               const SelectionSchedule& schedule, Receiver receiver,
                               std::uint64_t noise_seed);

/// Exact noiseless phase sequence (static offset - (4pi/lambda) R(t_k) + phi_p[k]),
/// not wrapped; the oracle for phase extraction.
std::vector<double> mixed_trace_phase_model(const SceneConfig& scene,
                                            const VitalSignProfile& vitals,
                                            const SelectionSchedule& schedule,
                                            Receiver receiver);

}  // namespace vsmpriv
