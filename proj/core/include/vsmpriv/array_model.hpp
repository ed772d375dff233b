#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vsmpriv/errors.hpp"

namespace vsmpriv {

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Amplitude floor on |b^T f| below which a configuration is degenerate.
inline constexpr double kAmpEpsilon = 1e-9;

/// Wraps an angle into the principal interval (-pi, pi].
double principal_angle(double x);

/// Uniform linear array, half-wavelength spacing by default.
struct ArrayGeometry {
  int n_antennas = 16;
  double element_spacing_wavelengths = 0.5;
  double carrier_freq_hz = 2.2e9;

  double wavelength_m() const { return kSpeedOfLight / carrier_freq_hz; }
  void validate() const;
};

/// Per-antenna on/off pattern; antenna n (1-indexed) lives in bit n-1.
class ActivationVector {
 public:
  ActivationVector(std::uint64_t mask, int n_antennas);

  static ActivationVector all_on(int n_antennas);
  static ActivationVector single(int n_antennas, int antenna_index);
  /// Parses an N-character 0/1 string, antenna 1 first.
  static ActivationVector from_string(const std::string& bits);

  std::uint64_t mask() const { return mask_; }
  int size() const { return size_; }
  int active_count() const;
  bool active(int antenna_index) const;
  std::string to_string() const;

  friend bool operator==(const ActivationVector&, const ActivationVector&) = default;

 private:
  std::uint64_t mask_;
  int size_;
};

/// Amplitude and principal-value phase of the array factor in the user direction.
struct ArrayResponse {
  double amplitude = 0.0;
  double phase_rad = 0.0;
};

/// Element phasors e^{j pi (n-1)(cos theta0 - cos theta_c)} for n = 1..N.
/// Angles are radians in [0, pi].
std::vector<std::complex<double>> steering_vector(const ArrayGeometry& geometry,
                                                  double theta0_rad, double theta_c_rad);

/// Masked phasor sum b^T f; no degeneracy check.
std::complex<double> masked_sum(const ActivationVector& b,
                                std::span<const std::complex<double>> steering);

/// (|b^T f|, arg(b^T f)); throws DegenerateConfigError below the amplitude floor.
ArrayResponse array_response(const ActivationVector& b,
                             std::span<const std::complex<double>> steering);

/// Dirichlet-kernel form of the all-antennas-on response; the removable
/// singularity at cos theta0 = cos theta_c returns amplitude N, phase 0.
ArrayResponse full_array_closed_form(const ArrayGeometry& geometry,
                                     double theta0_rad, double theta_c_rad);

}  // namespace vsmpriv
