#include "vsmpriv/array_model.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vsmpriv {

namespace {
constexpr double kPi = std::numbers::pi;

void check_angle(double angle_rad, const char* name) {
  if (!(angle_rad >= 0.0 && angle_rad <= kPi)) {
    throw std::domain_error(std::string(name) + " must lie in [0, pi]");
  }
}
}  // namespace

double principal_angle(double x) {
  double y = std::remainder(x, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

void ArrayGeometry::validate() const {
  if (n_antennas < 2) throw std::invalid_argument("n_antennas must be >= 2");
  if (n_antennas > 64) throw std::invalid_argument("n_antennas must be <= 64");
  if (!(carrier_freq_hz > 0.0)) throw std::invalid_argument("carrier_freq_hz must be > 0");
  if (!(element_spacing_wavelengths > 0.0)) {
    throw std::invalid_argument("element_spacing_wavelengths must be > 0");
  }
}

ActivationVector::ActivationVector(std::uint64_t mask, int n_antennas)
    : mask_(mask), size_(n_antennas) {
  if (n_antennas < 1 || n_antennas > 64) {
    throw std::invalid_argument("activation vector length must be in [1, 64]");
  }
  if (mask == 0) throw std::invalid_argument("activation vector needs at least one active antenna");
  if (n_antennas < 64 && (mask >> n_antennas) != 0) {
    throw std::invalid_argument("activation mask has bits beyond the array length");
  }
}

ActivationVector ActivationVector::all_on(int n_antennas) {
  if (n_antennas < 1 || n_antennas > 64) {
    throw std::invalid_argument("activation vector length must be in [1, 64]");
  }
  const std::uint64_t mask =
      n_antennas == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_antennas) - 1;
  return ActivationVector(mask, n_antennas);
}

ActivationVector ActivationVector::single(int n_antennas, int antenna_index) {
  if (antenna_index < 0 || antenna_index >= n_antennas) {
    throw std::invalid_argument("antenna index out of range");
  }
  return ActivationVector(std::uint64_t{1} << antenna_index, n_antennas);
}

ActivationVector ActivationVector::from_string(const std::string& bits) {
  if (bits.empty() || bits.size() > 64) {
    throw std::invalid_argument("activation string length must be in [1, 64]");
  }
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      mask |= std::uint64_t{1} << i;
    } else if (bits[i] != '0') {
      throw std::invalid_argument("activation string must contain only 0 and 1");
    }
  }
  return ActivationVector(mask, static_cast<int>(bits.size()));
}

int ActivationVector::active_count() const { return std::popcount(mask_); }

bool ActivationVector::active(int antenna_index) const {
  return antenna_index >= 0 && antenna_index < size_ &&
         ((mask_ >> antenna_index) & 1u) != 0;
}

std::string ActivationVector::to_string() const {
  std::string s(static_cast<std::size_t>(size_), '0');
  for (int i = 0; i < size_; ++i) {
    if ((mask_ >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::vector<std::complex<double>> steering_vector(const ArrayGeometry& geometry,
                                                  double theta0_rad, double theta_c_rad) {
  geometry.validate();
  check_angle(theta0_rad, "theta0_rad");
  check_angle(theta_c_rad, "theta_c_rad");
  const double u = std::cos(theta0_rad) - std::cos(theta_c_rad);
  const double step = 2.0 * kPi * geometry.element_spacing_wavelengths * u;
  std::vector<std::complex<double>> f(static_cast<std::size_t>(geometry.n_antennas));
  for (int n = 0; n < geometry.n_antennas; ++n) {
    f[static_cast<std::size_t>(n)] = std::polar(1.0, step * n);
  }
  return f;
}

std::complex<double> masked_sum(const ActivationVector& b,
                                std::span<const std::complex<double>> steering) {
  if (static_cast<std::size_t>(b.size()) != steering.size()) {
    throw std::invalid_argument("activation vector and steering vector lengths differ");
  }
  std::complex<double> z{0.0, 0.0};
  std::uint64_t m = b.mask();
  while (m != 0) {
    const int i = std::countr_zero(m);
    z += steering[static_cast<std::size_t>(i)];
    m &= m - 1;
  }
  return z;
}

ArrayResponse array_response(const ActivationVector& b,
                             std::span<const std::complex<double>> steering) {
  const std::complex<double> z = masked_sum(b, steering);
  const double amp = std::abs(z);
  if (amp < kAmpEpsilon) {
    throw DegenerateConfigError("configuration amplitude below degeneracy floor");
  }
  double phase = std::arg(z);
  if (phase <= -kPi) phase = kPi;
  return ArrayResponse{amp, phase};
}

ArrayResponse full_array_closed_form(const ArrayGeometry& geometry,
                                     double theta0_rad, double theta_c_rad) {
  geometry.validate();
  check_angle(theta0_rad, "theta0_rad");
  check_angle(theta_c_rad, "theta_c_rad");
  const int n = geometry.n_antennas;
  const double u = std::cos(theta0_rad) - std::cos(theta_c_rad);
  const double h = kPi * geometry.element_spacing_wavelengths * u;
  const double denom = std::sin(h);
  if (std::abs(denom) < 1e-12) {
    // Removable singularity: all element phasors coincide.
    return ArrayResponse{static_cast<double>(n), 0.0};
  }
  const double kernel = std::sin(n * h) / denom;
  double phase = (n - 1) * h;
  if (kernel < 0.0) phase += kPi;
  return ArrayResponse{std::abs(kernel), principal_angle(phase)};
}

}  // namespace vsmpriv
