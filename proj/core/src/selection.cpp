#include "vsmpriv/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "vsmpriv/rng.hpp"

namespace vsmpriv {

namespace {

constexpr double kPi = std::numbers::pi;

int resolve_threads(int n_threads) {
  if (n_threads > 0) return n_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void check_active_count(const ArrayGeometry& geometry, int active_count) {
  if (active_count < 1 || active_count > geometry.n_antennas - 1) {
    throw std::invalid_argument("active_count must lie in [1, N-1]");
  }
}

/// Splits [0, total) into contiguous chunks and runs fn(begin, end, chunk_index)
/// on each; results must not depend on the partitioning.
template <typename Fn>
void parallel_chunks(std::size_t total, int n_threads, Fn&& fn) {
  const int workers = std::min<std::size_t>(resolve_threads(n_threads), std::max<std::size_t>(total, 1));
  if (workers <= 1 || total == 0) {
    fn(std::size_t{0}, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::size_t step = (total + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * step;
    const std::size_t end = std::min(total, begin + step);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::conventional: return "conventional";
    case Scheme::mpv1: return "mpv1";
    case Scheme::mpv2: return "mpv2";
  }
  return "unknown";
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
  if (name == "conventional") return Scheme::conventional;
  if (name == "mpv1") return Scheme::mpv1;
  if (name == "mpv2") return Scheme::mpv2;
  return std::nullopt;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (c > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    c = c * num / static_cast<std::uint64_t>(i);
  }
  return c;
}

PhaseSet enumerate_phase_set(const ArrayGeometry& geometry, double theta0_rad,
                             double theta_c_rad, int active_count) {
  geometry.validate();
  check_active_count(geometry, active_count);
  const std::uint64_t count = binomial(geometry.n_antennas, active_count);
  if (count > kEnumerationCap) {
    throw EnumerationTooLargeError(
        "binomial(N, L) exceeds the enumeration cap; use sample_phase_set");
  }
  const auto steering = steering_vector(geometry, theta0_rad, theta_c_rad);

  PhaseSet ps;
  ps.active_count = active_count;
  ps.theta0_rad = theta0_rad;
  ps.theta_c_rad = theta_c_rad;
  ps.entries.reserve(static_cast<std::size_t>(count));

  const int n = geometry.n_antennas;
  const std::uint64_t end = n == 64 ? 0 : (std::uint64_t{1} << n);
  std::uint64_t mask = (std::uint64_t{1} << active_count) - 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    const ActivationVector av(mask, n);
    const std::complex<double> z = masked_sum(av, steering);
    if (std::abs(z) < kAmpEpsilon) {
      ++ps.degenerate_count;
    } else {
      double phase = std::arg(z);
      if (phase <= -kPi) phase = kPi;
      ps.entries.push_back(PhaseSetEntry{av, phase});
    }
    // Gosper's hack: next mask with the same popcount, ascending order.
    const std::uint64_t c = mask & (~mask + 1);
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
    if (end != 0 && mask >= end && i + 1 < count) break;  // unreachable; safety
  }
  return ps;
}

PhaseSet sample_phase_set(const ArrayGeometry& geometry, double theta0_rad,
                          double theta_c_rad, int active_count,
                          std::size_t n_subsets, std::uint64_t seed) {
  geometry.validate();
  check_active_count(geometry, active_count);
  if (n_subsets == 0) throw std::invalid_argument("n_subsets must be >= 1");
  const std::uint64_t total = binomial(geometry.n_antennas, active_count);
  if (total <= kEnumerationCap && total <= n_subsets) {
    return enumerate_phase_set(geometry, theta0_rad, theta_c_rad, active_count);
  }
  const auto steering = steering_vector(geometry, theta0_rad, theta_c_rad);
  const int n = geometry.n_antennas;

  rng::Stream st(rng::derive(seed, {rng::kStreamSubset,
                                    static_cast<std::uint64_t>(active_count)}));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(n_subsets * 2);
  std::vector<std::uint64_t> masks;
  masks.reserve(n_subsets);
  while (masks.size() < n_subsets) {
    std::uint64_t mask = 0;
    int bits = 0;
    while (bits < active_count) {
      const std::uint64_t bit = std::uint64_t{1} << st.below(static_cast<std::uint64_t>(n));
      if ((mask & bit) == 0) {
        mask |= bit;
        ++bits;
      }
    }
    if (seen.insert(mask).second) masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());

  PhaseSet ps;
  ps.active_count = active_count;
  ps.theta0_rad = theta0_rad;
  ps.theta_c_rad = theta_c_rad;
  ps.entries.reserve(masks.size());
  for (const std::uint64_t mask : masks) {
    const ActivationVector av(mask, n);
    const std::complex<double> z = masked_sum(av, steering);
    if (std::abs(z) < kAmpEpsilon) {
      ++ps.degenerate_count;
    } else {
      double phase = std::arg(z);
      if (phase <= -kPi) phase = kPi;
      ps.entries.push_back(PhaseSetEntry{av, phase});
    }
  }
  return ps;
}

double uniform_phase_variance(const PhaseSet& ps) {
  if (ps.entries.empty()) throw std::invalid_argument("phase set is empty");
  const double m = static_cast<double>(ps.m());
  double mean = 0.0;
  for (const auto& e : ps.entries) mean += e.phase_rad;
  mean /= m;
  double acc = 0.0;
  for (const auto& e : ps.entries) {
    const double d = e.phase_rad - mean;
    acc += d * d;
  }
  return acc / m;
}

double allocation_variance(const PhaseSet& ps, const ProbabilityAllocation& alloc) {
  if (ps.entries.empty()) throw std::invalid_argument("phase set is empty");
  if (alloc.weights.empty()) throw std::invalid_argument("allocation is empty");
  double total = 0.0;
  for (const auto& [index, p] : alloc.weights) {
    if (index >= ps.m()) throw std::invalid_argument("allocation index out of range");
    if (!(p >= 0.0)) throw std::invalid_argument("allocation weight must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("allocation weights must sum to 1");
  }
  double mean = 0.0;
  double mean_sq = 0.0;
  for (const auto& [index, p] : alloc.weights) {
    const double phi = ps.entries[index].phase_rad;
    mean += p * phi;
    mean_sq += p * phi * phi;
  }
  return mean_sq - mean * mean;
}

Mpv2Solution solve_mpv2(const PhaseSet& ps) {
  if (ps.entries.empty()) throw std::invalid_argument("phase set is empty");
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 1; i < ps.m(); ++i) {
    if (ps.entries[i].phase_rad < ps.entries[lo].phase_rad) lo = i;
    if (ps.entries[i].phase_rad > ps.entries[hi].phase_rad) hi = i;
  }
  const double phi_min = ps.entries[lo].phase_rad;
  const double phi_max = ps.entries[hi].phase_rad;
  const double spread = phi_max - phi_min;
  return Mpv2Solution{ps.entries[lo].config, ps.entries[hi].config, phi_min, phi_max,
                      0.25 * spread * spread};
}

double mpv2_oracle(const PhaseSet& ps, std::size_t n_random_allocations,
                   std::uint64_t seed, int n_threads) {
  if (ps.entries.empty()) throw std::invalid_argument("phase set is empty");
  if (n_random_allocations < 1) {
    throw std::invalid_argument("n_random_allocations must be >= 1");
  }
  const std::size_t m = ps.m();
  std::vector<double> phi(m);
  for (std::size_t i = 0; i < m; ++i) phi[i] = ps.entries[i].phase_rad;

  // Eq-13 arithmetic for a sparse two-point allocation, mirrored inline so the
  // full pair scan stays cheap.
  const auto pair_variance = [&phi](std::size_t i, std::size_t j, double p) {
    const double mean = p * phi[i] + (1.0 - p) * phi[j];
    const double mean_sq = p * phi[i] * phi[i] + (1.0 - p) * phi[j] * phi[j];
    return mean_sq - mean * mean;
  };

  double best = 0.0;

  // Point masses: variance is identically zero but they pin the baseline.
  for (std::size_t i = 0; i < m; ++i) {
    best = std::max(best, allocation_variance(ps, ProbabilityAllocation{{{i, 1.0}}}));
  }

  // Every pair at p in {1/4, 1/2, 3/4}; the balanced extreme pair is in here.
  if (m >= 2) {
    const int workers = resolve_threads(n_threads);
    std::vector<double> pair_best(static_cast<std::size_t>(std::max(workers, 1)), 0.0);
    parallel_chunks(m - 1, n_threads, [&](std::size_t begin, std::size_t end, int w) {
      double local = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          local = std::max(local, pair_variance(i, j, 0.5));
          local = std::max(local, pair_variance(i, j, 0.25));
          local = std::max(local, pair_variance(i, j, 0.75));
        }
      }
      pair_best[static_cast<std::size_t>(w)] = std::max(pair_best[static_cast<std::size_t>(w)], local);
    });
    for (const double v : pair_best) best = std::max(best, v);
  }

  // Random interior points: Dirichlet(1,...,1) via normalized exponentials,
  // one derived stream per sample so chunking cannot change the draw.
  const int workers = resolve_threads(n_threads);
  std::vector<double> dir_best(static_cast<std::size_t>(std::max(workers, 1)), 0.0);
  parallel_chunks(n_random_allocations, n_threads, [&](std::size_t begin, std::size_t end, int w) {
    double local = 0.0;
    std::vector<double> weights(m);
    for (std::size_t s = begin; s < end; ++s) {
      rng::Stream st(rng::derive(seed, {rng::kStreamOracle, s}));
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        weights[i] = st.exponential();
        total += weights[i];
      }
      double mean = 0.0;
      double mean_sq = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double p = weights[i] / total;
        mean += p * phi[i];
        mean_sq += p * phi[i] * phi[i];
      }
      local = std::max(local, mean_sq - mean * mean);
    }
    dir_best[static_cast<std::size_t>(w)] = std::max(dir_best[static_cast<std::size_t>(w)], local);
  });
  for (const double v : dir_best) best = std::max(best, v);

  return best;
}

void AnnealParams::validate() const {
  if (iterations < 1) throw std::invalid_argument("anneal iterations must be >= 1");
  if (!(cooling > 0.0 && cooling < 1.0)) {
    throw std::invalid_argument("anneal cooling must lie in (0, 1)");
  }
  if (init_probes < 1) throw std::invalid_argument("anneal init_probes must be >= 1");
  if (!(sigma_start_rad > 0.0) || !(sigma_end_rad > 0.0)) {
    throw std::invalid_argument("anneal sigma must be > 0");
  }
  if (restarts < 1) throw std::invalid_argument("anneal restarts must be >= 1");
  if (!(l_move_prob >= 0.0 && l_move_prob <= 1.0)) {
    throw std::invalid_argument("anneal l_move_prob must lie in [0, 1]");
  }
}

Mpv1Solution solve_mpv1(const ArrayGeometry& geometry, double theta0_rad,
                        const AnnealParams& params, std::uint64_t seed) {
  geometry.validate();
  params.validate();
  if (!(theta0_rad >= 0.0 && theta0_rad <= kPi)) {
    throw std::domain_error("theta0_rad must lie in [0, pi]");
  }
  const int n = geometry.n_antennas;

  // Objective; empty phase sets (every subset degenerate) are unusable states.
  const auto objective = [&](int l, double theta_c) -> std::optional<double> {
    PhaseSet ps = binomial(n, l) <= kEnumerationCap
                      ? enumerate_phase_set(geometry, theta0_rad, theta_c, l)
                      : sample_phase_set(geometry, theta0_rad, theta_c, l,
                                         kDefaultSampleSubsets, seed);
    if (ps.entries.empty()) return std::nullopt;
    return uniform_phase_variance(ps);
  };

  rng::Stream st(rng::derive(seed, {rng::kStreamAnneal}));
  const auto random_state = [&] {
    const int l = 1 + static_cast<int>(st.below(static_cast<std::uint64_t>(n - 1)));
    const double theta_c = st.uniform() * kPi;
    return std::pair<int, double>{l, theta_c};
  };
  const auto random_valid_state = [&] {
    while (true) {
      const auto [l, theta_c] = random_state();
      const auto value = objective(l, theta_c);
      if (value) return std::tuple<int, double, double>{l, theta_c, *value};
    }
  };

  // Probe phase: seeds the first chain and sets the Metropolis temperature
  // scale. The probe-value variance alone freezes narrow-spike landscapes,
  // so it is floored at half the best probe objective.
  int probe_l = 0;
  double probe_theta = 0.0;
  double probe_best = -1.0;
  std::vector<double> probe_values;
  probe_values.reserve(static_cast<std::size_t>(params.init_probes));
  for (int p = 0; p < params.init_probes; ++p) {
    const auto [l, theta_c] = random_state();
    const auto value = objective(l, theta_c);
    if (!value) continue;
    probe_values.push_back(*value);
    if (*value > probe_best) {
      probe_l = l;
      probe_theta = theta_c;
      probe_best = *value;
    }
  }
  if (probe_best < 0.0) {  // every probe hit a degenerate state; keep looking
    const auto [l, theta_c, value] = random_valid_state();
    probe_l = l;
    probe_theta = theta_c;
    probe_best = value;
  }
  double t0 = 0.0;
  if (!probe_values.empty()) {
    double mean = 0.0;
    for (const double v : probe_values) mean += v;
    mean /= static_cast<double>(probe_values.size());
    for (const double v : probe_values) t0 += (v - mean) * (v - mean);
    t0 /= static_cast<double>(probe_values.size());
  }
  t0 = std::max(t0, std::max(0.5 * probe_best, 1e-12));

  Mpv1Solution best;
  best.active_count = probe_l;
  best.theta_c_rad = probe_theta;
  best.achieved_variance = probe_best;
  best.anneal_trace.reserve(static_cast<std::size_t>(params.iterations));

  // The iteration budget is split into independent restart chains; a single
  // 5000-step chain with 2-degree moves cannot hop between the narrow
  // variance spikes this landscape is made of, and measurably misses the
  // global optimum on small arrays.
  const int chains = std::max(1, std::min(params.restarts, params.iterations));
  const int chain_len = params.iterations / chains;
  const double sigma_ratio = params.sigma_end_rad / params.sigma_start_rad;
  int global_iter = 0;
  for (int chain = 0; chain < chains; ++chain) {
    int cur_l = 0;
    double cur_theta = 0.0;
    double cur_value = 0.0;
    if (chain == 0) {
      cur_l = probe_l;
      cur_theta = probe_theta;
      cur_value = probe_best;
    } else {
      const auto [l, theta_c, value] = random_valid_state();
      cur_l = l;
      cur_theta = theta_c;
      cur_value = value;
      if (cur_value > best.achieved_variance) {
        best.active_count = cur_l;
        best.theta_c_rad = cur_theta;
        best.achieved_variance = cur_value;
      }
    }
    const int steps = chain + 1 == chains ? params.iterations - chain_len * (chains - 1)
                                          : chain_len;
    double temperature = t0;
    for (int k = 0; k < steps; ++k, ++global_iter) {
      const double progress =
          steps > 1 ? static_cast<double>(k) / static_cast<double>(steps - 1) : 1.0;
      const double sigma = params.sigma_start_rad * std::pow(sigma_ratio, progress);

      int next_l = cur_l;
      if (st.uniform() < params.l_move_prob && n > 2) {
        next_l += (st.bits() & 1u) ? 1 : -1;
        next_l = std::clamp(next_l, 1, n - 1);
      }
      const double next_theta = std::clamp(cur_theta + sigma * st.normal(), 0.0, kPi);

      const auto next_value = objective(next_l, next_theta);
      if (next_value) {
        const double delta = *next_value - cur_value;
        if (delta >= 0.0 || st.uniform() < std::exp(delta / temperature)) {
          cur_l = next_l;
          cur_theta = next_theta;
          cur_value = *next_value;
        }
        if (cur_value > best.achieved_variance) {
          best.active_count = cur_l;
          best.theta_c_rad = cur_theta;
          best.achieved_variance = cur_value;
        }
      }
      best.anneal_trace.emplace_back(global_iter, cur_value);
      temperature *= params.cooling;
    }
  }

  // Recompute at the returned state so the reported value is exactly what a
  // fresh evaluation yields.
  best.achieved_variance = *objective(best.active_count, best.theta_c_rad);
  return best;
}

ScheduleModel conventional_model(const ArrayGeometry& geometry, double theta_c_rad) {
  geometry.validate();
  return ScheduleModel{Scheme::conventional, theta_c_rad,
                       {ActivationVector::all_on(geometry.n_antennas)}};
}

ScheduleModel mpv1_model(const ArrayGeometry& geometry, double theta0_rad,
                         const Mpv1Solution& solution) {
  PhaseSet ps = binomial(geometry.n_antennas, solution.active_count) <= kEnumerationCap
                    ? enumerate_phase_set(geometry, theta0_rad, solution.theta_c_rad,
                                          solution.active_count)
                    : sample_phase_set(geometry, theta0_rad, solution.theta_c_rad,
                                       solution.active_count, kDefaultSampleSubsets, 0);
  if (ps.entries.empty()) {
    throw DegenerateConfigError("MPV-I solution has no non-degenerate configuration");
  }
  ScheduleModel model{Scheme::mpv1, solution.theta_c_rad, {}};
  model.support.reserve(ps.m());
  for (const auto& e : ps.entries) model.support.push_back(e.config);
  return model;
}

ScheduleModel mpv2_model(const PhaseSet& ps, const Mpv2Solution& solution) {
  return ScheduleModel{Scheme::mpv2, ps.theta_c_rad,
                       {solution.config_low, solution.config_high}};
}

SelectionSchedule generate_schedule(const ScheduleModel& model, std::size_t n_samples,
                                    std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (model.support.empty()) throw std::invalid_argument("schedule model has empty support");

  SelectionSchedule schedule{model.scheme, {}, model.theta_c_rad, seed};
  schedule.per_sample.reserve(n_samples);
  rng::Stream st(seed);
  const std::uint64_t support = model.support.size();
  for (std::size_t k = 0; k < n_samples; ++k) {
    const std::size_t pick =
        (model.scheme == Scheme::conventional || support == 1)
            ? 0
            : static_cast<std::size_t>(st.below(support));
    schedule.per_sample.push_back(model.support[pick]);
  }
  return schedule;
}

}  // namespace vsmpriv
