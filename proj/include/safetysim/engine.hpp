#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "safetysim/event_process.hpp"
#include "safetysim/metrics.hpp"
#include "safetysim/observation_process.hpp"
#include "safetysim/policies.hpp"
#include "safetysim/random.hpp"
#include "safetysim/scenario.hpp"

namespace safetysim {

/// Incident counts per Hurt level for one area.
using HurtCounts = std::array<std::uint64_t, kHurtLevels>;

/// Everything that happened on one simulated day.
struct DayRecord {
  int day = 0;                       // 1-based
  std::vector<double> theta;         // state the day's events were drawn from
  std::vector<double> xi;            // (1 - theta) * xi_base
  std::vector<DayEvents> events;     // per area
  PolicyDecision decision;
  DayObservations observations;      // zero-filled when nothing was observed
  DayMetrics metrics;                // from `xi`

  bool operator==(const DayRecord&) const = default;
};

/// Mutable simulation state carried between days.
struct SimState {
  std::vector<AreaState> areas;
  ObservableHistory history;

  static SimState initial(const Scenario& scenario);
};

/// Advances one day:
///   1. xi from each area's theta
///   2. events per area, areas in config order
///   3. policy decision from recorded history up to yesterday
///   4. observation process (skipped when the policy does not observe)
///   5. theta update per area
///   6. metrics from the xi of step 1
/// The day's recorded data is then appended to the history.
DayRecord step_day(SimState& state, const Scenario& scenario,
                   const Policy& policy, Rng& rng);

struct Trajectory {
  std::shared_ptr<const Scenario> scenario;
  std::string policy_name;
  std::uint64_t seed = 0;
  std::vector<DayRecord> days;
};

/// `horizon` sequential days from theta0. A horizon of 0 means the
/// scenario's horizon_days. Fully determined by (scenario, policy, seed).
Trajectory run_simulation(const Scenario& scenario, const Policy& policy,
                          std::uint64_t seed, int horizon = 0);

/// Total incidents per area and Hurt level (AHL) over a whole trajectory.
std::vector<HurtCounts> incident_totals(const Trajectory& trajectory);

/// Sum over areas of incident_totals.
HurtCounts severity_totals(std::span<const HurtCounts> per_area);

/// Value at nearest rank ceil(q * n / 100) of the sorted sample (rank 1 for
/// q = 0). Throws std::invalid_argument on an empty sample.
template <typename T>
T percentile_nearest_rank(std::vector<T> values, double q);

struct CountPercentiles {
  std::uint64_t p05 = 0;
  std::uint64_t p50 = 0;
  std::uint64_t p95 = 0;
};

struct EnsembleSummary {
  std::string policy_name;
  std::uint64_t base_seed = 0;
  std::size_t replications = 0;

  // Per day, population statistics across replications.
  std::vector<double> expected_loss_mean;
  std::vector<double> expected_loss_std;
  std::vector<double> tail_prob_mean;
  std::vector<double> tail_prob_std;

  /// [replication][area] incident totals per AHL, in seed order.
  std::vector<std::vector<HurtCounts>> incident_totals;

  /// [area][ahl] percentiles of incident_totals across replications.
  std::vector<std::array<CountPercentiles, kHurtLevels>> incident_percentiles;
};

struct EnsembleOptions {
  int horizon = 0;       // 0: scenario horizon
  unsigned threads = 1;  // 0: hardware concurrency
};

/// Runs replications with seeds base_seed + i and merges them in seed order,
/// so the result does not depend on the thread count.
EnsembleSummary run_ensemble(const Scenario& scenario, const Policy& policy,
                             std::size_t replications, std::uint64_t base_seed,
                             EnsembleOptions options = {});

// ---------------------------------------------------------------------------

template <typename T>
T percentile_nearest_rank(std::vector<T> values, double q) {
  if (values.empty()) {
    throw std::invalid_argument("percentile of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n / 100.0));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

}  // namespace safetysim
