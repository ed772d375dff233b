#pragma once

#include <stdexcept>

namespace vsmpriv {

/// |b^T f| fell below the amplitude floor: the configuration radiates nothing
/// toward the user and its phase is undefined.
struct DegenerateConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// binomial(N, L) exceeds the full-enumeration cap; use sample_phase_set.
struct EnumerationTooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A trace sample has near-zero modulus, so its argument carries no information.
struct UnreliablePhaseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested search band holds fewer than two candidate peaks.
struct InsufficientBandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vsmpriv
