#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "vsmpriv/scene.hpp"
#include "vsmpriv/selection.hpp"

namespace vsmpriv {

inline constexpr double kDefaultBandLowHz = 0.1;
inline constexpr double kDefaultBandHighHz = 2.0;

/// One-sided power spectrum, DC excluded. power[k] = |X_{k+1}|^2 of the
/// unnormalized forward DFT of the demeaned, zero-padded series.
struct Spectrum {
  std::vector<double> freqs_hz;
  std::vector<double> power;
  double resolution_hz = 0.0;
};

struct PeakReport {
  std::array<double, 2> top_freqs_hz{};  // highest power first
  std::array<double, 2> top_powers{};
  double band_low_hz = 0.0;
  double band_high_hz = 0.0;
};

/// Principal argument of sample 0, then cumulative principal-value increments.
/// Throws UnreliablePhaseError when any sample modulus is below kAmpEpsilon.
std::vector<double> extract_unwrapped_phase(const BasebandTrace& trace);

/// Demean, zero-pad to nfft, DFT, squared magnitudes at bins 1..nfft/2.
Spectrum power_spectrum(std::span<const double> series, double sample_rate_hz,
                        std::size_t nfft);

/// The two highest-power local maxima inside [band_low_hz, band_high_hz];
/// plateau ties resolve to the lowest-frequency bin, equal-power peaks order
/// by ascending frequency.
PeakReport pick_top_two_peaks(const Spectrum& spectrum, double band_low_hz,
                              double band_high_hz);

/// Authorized-receiver compensation: each sample is rotated by
/// exp(-j phi_p[k]) recomputed from the known schedule.
BasebandTrace compensate_schedule_phase(const BasebandTrace& trace,
                                        const SelectionSchedule& schedule,
                                        std::span<const std::complex<double>> steering);

/// Eavesdropper attack: extract -> unwrap -> demean -> DFT -> top-two peaks.
/// nfft = 0 means no zero padding (nfft = trace length).
PeakReport detect_vitals(const BasebandTrace& trace, double band_low_hz,
                         double band_high_hz, std::size_t nfft = 0);

/// Authorized path: compensate with the known schedule, then the same pipeline.
PeakReport detect_vitals(const BasebandTrace& trace, const SelectionSchedule& schedule,
                         std::span<const std::complex<double>> steering,
                         double band_low_hz, double band_high_hz, std::size_t nfft = 0);

}  // namespace vsmpriv
