#include "vsmpriv/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace vsmpriv {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW plan creation/destruction is not thread-safe; execution of distinct
// plans is. Plans are created with FFTW_ESTIMATE, so input arrays stay intact.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> dft_forward(std::vector<std::complex<double>>& in) {
  std::vector<std::complex<double>> out(in.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(in.size()),
                            reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<double> extract_unwrapped_phase(const BasebandTrace& trace) {
  const std::size_t s = trace.size();
  if (s < 2) throw std::invalid_argument("phase extraction needs at least two samples");
  std::vector<double> phases(s);
  double prev_arg = 0.0;
  for (std::size_t k = 0; k < s; ++k) {
    if (std::abs(trace.samples[k]) < kAmpEpsilon) {
      throw UnreliablePhaseError("trace sample modulus below the amplitude floor");
    }
    double arg = std::arg(trace.samples[k]);
    if (arg <= -kPi) arg = kPi;
    if (k == 0) {
      phases[0] = arg;
    } else {
      phases[k] = phases[k - 1] + principal_angle(arg - prev_arg);
    }
    prev_arg = arg;
  }
  return phases;
}

Spectrum power_spectrum(std::span<const double> series, double sample_rate_hz,
                        std::size_t nfft) {
  if (series.empty()) throw std::invalid_argument("series is empty");
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("sample_rate_hz must be > 0");
  if (nfft < series.size()) throw std::invalid_argument("nfft must be >= series length");

  double mean = 0.0;
  for (const double x : series) mean += x;
  mean /= static_cast<double>(series.size());

  std::vector<std::complex<double>> buffer(nfft, std::complex<double>{0.0, 0.0});
  for (std::size_t k = 0; k < series.size(); ++k) {
    buffer[k] = std::complex<double>(series[k] - mean, 0.0);
  }
  const auto bins = dft_forward(buffer);

  const std::size_t half = nfft / 2;
  Spectrum spectrum;
  spectrum.resolution_hz = sample_rate_hz / static_cast<double>(nfft);
  spectrum.freqs_hz.resize(half);
  spectrum.power.resize(half);
  for (std::size_t k = 1; k <= half; ++k) {
    spectrum.freqs_hz[k - 1] = static_cast<double>(k) * spectrum.resolution_hz;
    spectrum.power[k - 1] = std::norm(bins[k]);
  }
  return spectrum;
}

PeakReport pick_top_two_peaks(const Spectrum& spectrum, double band_low_hz,
                              double band_high_hz) {
  if (spectrum.freqs_hz.empty()) throw std::invalid_argument("spectrum is empty");
  if (!(band_low_hz <= band_high_hz)) {
    throw std::invalid_argument("band_low_hz must not exceed band_high_hz");
  }
  const auto& f = spectrum.freqs_hz;
  const auto& p = spectrum.power;
  const std::size_t n = f.size();

  std::size_t n_candidates = 0;
  std::vector<std::pair<double, double>> peaks;  // (power, freq)
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i] < band_low_hz || f[i] > band_high_hz) continue;
    ++n_candidates;
    const bool left_ok = i == 0 || p[i] > p[i - 1];
    const bool right_ok = i + 1 == n || p[i] >= p[i + 1];
    if (left_ok && right_ok) peaks.emplace_back(p[i], f[i]);
  }
  if (n_candidates < 2) {
    throw InsufficientBandError("fewer than two spectrum bins inside the search band");
  }
  if (peaks.size() < 2) {
    throw InsufficientBandError("fewer than two local maxima inside the search band");
  }
  std::sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  PeakReport report;
  report.top_freqs_hz = {peaks[0].second, peaks[1].second};
  report.top_powers = {peaks[0].first, peaks[1].first};
  report.band_low_hz = band_low_hz;
  report.band_high_hz = band_high_hz;
  return report;
}

BasebandTrace compensate_schedule_phase(const BasebandTrace& trace,
                                        const SelectionSchedule& schedule,
                                        std::span<const std::complex<double>> steering) {
  if (trace.receiver != Receiver::authorized) {
    throw std::invalid_argument("compensation applies to authorized-receiver traces");
  }
  if (trace.size() != schedule.size()) {
    throw std::invalid_argument("trace and schedule lengths differ");
  }
  BasebandTrace out{{}, trace.sample_rate_hz, Receiver::authorized_compensated,
                    trace.snr_db, trace.rng_seed};
  out.samples.resize(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const ArrayResponse resp = array_response(schedule.per_sample[k], steering);
    out.samples[k] = trace.samples[k] * std::polar(1.0, -resp.phase_rad);
  }
  return out;
}

PeakReport detect_vitals(const BasebandTrace& trace, double band_low_hz,
                         double band_high_hz, std::size_t nfft) {
  const auto phase = extract_unwrapped_phase(trace);
  const auto spectrum =
      power_spectrum(phase, trace.sample_rate_hz, nfft == 0 ? phase.size() : nfft);
  return pick_top_two_peaks(spectrum, band_low_hz, band_high_hz);
}

PeakReport detect_vitals(const BasebandTrace& trace, const SelectionSchedule& schedule,
                         std::span<const std::complex<double>> steering,
                         double band_low_hz, double band_high_hz, std::size_t nfft) {
  const BasebandTrace compensated = compensate_schedule_phase(trace, schedule, steering);
  return detect_vitals(compensated, band_low_hz, band_high_hz, nfft);
}

}  // namespace vsmpriv
