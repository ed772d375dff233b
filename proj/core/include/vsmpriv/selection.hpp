#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vsmpriv/array_model.hpp"

namespace vsmpriv {

enum class Scheme { conventional, mpv1, mpv2 };

std::string to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(std::string_view name);

struct PhaseSetEntry {
  ActivationVector config;
  double phase_rad;
};

/// The reachable array phases {phi_i} for L-of-N activation at a fixed pair of
/// directions. Entries are in ascending bitmask order; degenerate subsets
/// (amplitude < kAmpEpsilon) are dropped and counted.
struct PhaseSet {
  std::vector<PhaseSetEntry> entries;
  int active_count = 0;
  double theta0_rad = 0.0;
  double theta_c_rad = 0.0;
  std::size_t degenerate_count = 0;

  std::size_t m() const { return entries.size(); }
};

/// Full enumeration is allowed up to this many subsets.
inline constexpr std::uint64_t kEnumerationCap = 1'000'000;

/// Subsets drawn when the cap forces sampling mode.
inline constexpr std::size_t kDefaultSampleSubsets = 100'000;

/// binomial(n, k), saturating at uint64 max.
std::uint64_t binomial(int n, int k);

/// Every L-subset's response phase; throws EnumerationTooLargeError when
/// binomial(N, L) > kEnumerationCap.
PhaseSet enumerate_phase_set(const ArrayGeometry& geometry, double theta0_rad,
                             double theta_c_rad, int active_count);

/// Sampling fallback above the cap: n_subsets distinct L-subsets drawn
/// uniformly, result sorted into ascending bitmask order.
PhaseSet sample_phase_set(const ArrayGeometry& geometry, double theta0_rad,
                          double theta_c_rad, int active_count,
                          std::size_t n_subsets, std::uint64_t seed);

/// Population variance of the phases under uniform weights 1/M.
double uniform_phase_variance(const PhaseSet& ps);

/// Sparse probability allocation over phase-set entries.
struct ProbabilityAllocation {
  std::vector<std::pair<std::size_t, double>> weights;
};

/// sum p_i phi_i^2 - (sum p_i phi_i)^2 after validating the allocation.
double allocation_variance(const PhaseSet& ps, const ProbabilityAllocation& alloc);

struct Mpv2Solution {
  ActivationVector config_low;
  ActivationVector config_high;
  double phi_min_rad;
  double phi_max_rad;
  double variance;  // (phi_max - phi_min)^2 / 4
};

/// Balanced two-point allocation on the extreme phases; ties on the extremes
/// resolve to the lowest bitmask.
Mpv2Solution solve_mpv2(const PhaseSet& ps);

/// Empirical maximum of allocation_variance over the probability simplex:
/// n random Dirichlet points plus all point masses and all balanced pairs.
/// Deterministic for a given seed and independent of n_threads.
double mpv2_oracle(const PhaseSet& ps, std::size_t n_random_allocations,
                   std::uint64_t seed, int n_threads = 0);

struct AnnealParams {
  int iterations = 5000;  // total across all restart chains
  double cooling = 0.995;
  int init_probes = 50;
  double sigma_start_rad = 0.03490658503988659;  // 2 deg
  double sigma_end_rad = 0.0017453292519943296;  // 0.1 deg
  double l_move_prob = 0.3;
  int restarts = 5;

  void validate() const;
};

struct Mpv1Solution {
  int active_count = 0;            // L*
  double theta_c_rad = 0.0;        // theta_c*
  double achieved_variance = 0.0;  // rad^2
  std::vector<std::pair<int, double>> anneal_trace;
};

/// Simulated annealing over (L, theta_c) maximizing uniform_phase_variance.
/// Returns the best state visited; deterministic for a given seed.
Mpv1Solution solve_mpv1(const ArrayGeometry& geometry, double theta0_rad,
                        const AnnealParams& params, std::uint64_t seed);

struct SelectionSchedule {
  Scheme scheme;
  std::vector<ActivationVector> per_sample;
  double theta_c_rad;
  std::uint64_t rng_seed;

  std::size_t size() const { return per_sample.size(); }
};

/// Precomputed draw support so per-trial schedule generation never
/// re-enumerates subsets.
struct ScheduleModel {
  Scheme scheme;
  double theta_c_rad;
  std::vector<ActivationVector> support;
};

ScheduleModel conventional_model(const ArrayGeometry& geometry, double theta_c_rad);
ScheduleModel mpv1_model(const ArrayGeometry& geometry, double theta0_rad,
                         const Mpv1Solution& solution);
ScheduleModel mpv2_model(const PhaseSet& ps, const Mpv2Solution& solution);

/// conventional: constant all-on; mpv1: i.i.d. uniform over the support;
/// mpv2: i.i.d. fair draw between the two extreme configurations.
SelectionSchedule generate_schedule(const ScheduleModel& model, std::size_t n_samples,
                                    std::uint64_t seed);

}  // namespace vsmpriv
