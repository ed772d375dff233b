#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "vsmpriv/evaluation.hpp"
#include "vsmpriv/scene.hpp"
#include "vsmpriv/selection.hpp"
#include "vsmpriv/spectral.hpp"

namespace vsmpriv {

/// Shortest decimal form that parses back to the same double; "inf"/"nan"
/// for non-finite values.
std::string format_double(double value);

/// Schedule text format: `# key value` header lines (scheme, n, l, theta0_deg,
/// theta_c_deg, seed) followed by one N-character 0/1 line per sample,
/// antenna 1 first.
void write_schedule(std::ostream& os, const SelectionSchedule& schedule,
                    const ArrayGeometry& geometry, double theta0_rad);

struct ScheduleFile {
  SelectionSchedule schedule;
  int n_antennas;
  int active_count;
  double theta0_rad;
};

ScheduleFile read_schedule(std::istream& is);

/// Trace table: scene parameters and seed as `# key value` lines, then
/// sample_index,t_s,real,imag rows.
void write_trace(std::ostream& os, const BasebandTrace& trace, const SceneConfig& scene,
                 double theta0_rad);

void write_phase_series(std::ostream& os, std::span<const double> phase_rad,
                        double sample_rate_hz);

void write_spectrum(std::ostream& os, const Spectrum& spectrum);

/// Single-record `key = value` text.
void write_peaks(std::ostream& os, const PeakReport& report);

void write_pod_curve(std::ostream& os, const PodCurve& curve);

}  // namespace vsmpriv
