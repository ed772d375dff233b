#include "vsmpriv/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vsmpriv {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kDegToRad = std::numbers::pi / 180.0;

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::size_t pos = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("malformed ") + what + ": " + text);
  }
  if (pos != text.size()) {
    throw std::invalid_argument(std::string("malformed ") + what + ": " + text);
  }
  return value;
}

double parse_double(const std::string& text, const char* what) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw std::invalid_argument(std::string("malformed ") + what + ": " + text);
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

void write_schedule(std::ostream& os, const SelectionSchedule& schedule,
                    const ArrayGeometry& geometry, double theta0_rad) {
  if (schedule.per_sample.empty()) throw std::invalid_argument("schedule is empty");
  os << "# scheme " << to_string(schedule.scheme) << "\n";
  os << "# n " << geometry.n_antennas << "\n";
  os << "# l " << schedule.per_sample.front().active_count() << "\n";
  os << "# theta0_deg " << format_double(theta0_rad * kRadToDeg) << "\n";
  os << "# theta_c_deg " << format_double(schedule.theta_c_rad * kRadToDeg) << "\n";
  os << "# seed " << schedule.rng_seed << "\n";
  for (const auto& b : schedule.per_sample) os << b.to_string() << "\n";
}

ScheduleFile read_schedule(std::istream& is) {
  std::optional<Scheme> scheme;
  std::optional<int> n_antennas;
  std::optional<int> active_count;
  std::optional<double> theta0_rad;
  std::optional<double> theta_c_rad;
  std::uint64_t seed = 0;
  std::vector<ActivationVector> samples;

  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream header(line.substr(1));
      std::string key, value;
      header >> key >> value;
      if (key == "scheme") {
        scheme = scheme_from_string(value);
        if (!scheme) throw std::invalid_argument("unknown scheme in schedule header: " + value);
      } else if (key == "n") {
        n_antennas = static_cast<int>(parse_u64(value, "n"));
      } else if (key == "l") {
        active_count = static_cast<int>(parse_u64(value, "l"));
      } else if (key == "theta0_deg") {
        theta0_rad = parse_double(value, "theta0_deg") * kDegToRad;
      } else if (key == "theta_c_deg") {
        theta_c_rad = parse_double(value, "theta_c_deg") * kDegToRad;
      } else if (key == "seed") {
        seed = parse_u64(value, "seed");
      } else {
        throw std::invalid_argument("unknown schedule header key: " + key);
      }
      continue;
    }
    if (!n_antennas) throw std::invalid_argument("schedule bits precede the n header");
    if (static_cast<int>(line.size()) != *n_antennas) {
      throw std::invalid_argument("schedule line length does not match n");
    }
    samples.push_back(ActivationVector::from_string(line));
  }
  if (!scheme || !n_antennas || !active_count || !theta0_rad || !theta_c_rad) {
    throw std::invalid_argument("schedule header is incomplete");
  }
  if (samples.empty()) throw std::invalid_argument("schedule has no samples");
  for (const auto& b : samples) {
    if (*scheme != Scheme::mpv2 && b.active_count() != *active_count) {
      throw std::invalid_argument("schedule sample popcount disagrees with the l header");
    }
  }
  return ScheduleFile{SelectionSchedule{*scheme, std::move(samples), *theta_c_rad, seed},
                      *n_antennas, *active_count, *theta0_rad};
}

void write_trace(std::ostream& os, const BasebandTrace& trace, const SceneConfig& scene,
                 double theta0_rad) {
  os << "# receiver " << to_string(trace.receiver) << "\n";
  os << "# snr_db " << format_double(trace.snr_db) << "\n";
  os << "# seed " << trace.rng_seed << "\n";
  os << "# fc_hz " << format_double(scene.geometry.carrier_freq_hz) << "\n";
  os << "# n_antennas " << scene.geometry.n_antennas << "\n";
  os << "# theta0_deg " << format_double(theta0_rad * kRadToDeg) << "\n";
  os << "# ra_m " << format_double(scene.range_auth_m) << "\n";
  os << "# re_m " << format_double(scene.range_eaves_m) << "\n";
  os << "# alpha " << format_double(scene.reflect_coeff) << "\n";
  os << "# a0 " << format_double(scene.tx_amp) << "\n";
  os << "# phi0_rad " << format_double(scene.tx_phase_rad) << "\n";
  os << "# fs_hz " << format_double(scene.sample_rate_hz) << "\n";
  os << "# duration_s " << format_double(scene.duration_s) << "\n";
  os << "sample_index,t_s,real,imag\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const double t = static_cast<double>(k) / trace.sample_rate_hz;
    os << k << ',' << format_double(t) << ',' << format_double(trace.samples[k].real())
       << ',' << format_double(trace.samples[k].imag()) << "\n";
  }
}

void write_phase_series(std::ostream& os, std::span<const double> phase_rad,
                        double sample_rate_hz) {
  os << "sample_index,t_s,phase_rad\n";
  for (std::size_t k = 0; k < phase_rad.size(); ++k) {
    const double t = static_cast<double>(k) / sample_rate_hz;
    os << k << ',' << format_double(t) << ',' << format_double(phase_rad[k]) << "\n";
  }
}

void write_spectrum(std::ostream& os, const Spectrum& spectrum) {
  os << "frequency_hz,power\n";
  for (std::size_t k = 0; k < spectrum.freqs_hz.size(); ++k) {
    os << format_double(spectrum.freqs_hz[k]) << ',' << format_double(spectrum.power[k])
       << "\n";
  }
}

void write_peaks(std::ostream& os, const PeakReport& report) {
  os << "top_freq_1_hz = " << format_double(report.top_freqs_hz[0]) << "\n";
  os << "top_power_1 = " << format_double(report.top_powers[0]) << "\n";
  os << "top_freq_2_hz = " << format_double(report.top_freqs_hz[1]) << "\n";
  os << "top_power_2 = " << format_double(report.top_powers[1]) << "\n";
  os << "band_low_hz = " << format_double(report.band_low_hz) << "\n";
  os << "band_high_hz = " << format_double(report.band_high_hz) << "\n";
}

void write_pod_curve(std::ostream& os, const PodCurve& curve) {
  os << "scheme,snr_db,trials,successes,pod,ci_low,ci_high\n";
  for (const auto& point : curve.points) {
    os << to_string(point.scheme) << ',' << format_double(point.snr_db) << ','
       << point.trials << ',' << point.successes << ',' << format_double(point.pod)
       << ',' << format_double(point.ci_low) << ',' << format_double(point.ci_high)
       << "\n";
  }
}

}  // namespace vsmpriv
