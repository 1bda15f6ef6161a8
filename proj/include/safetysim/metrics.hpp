#pragma once

#include <span>
#include <vector>

#include "safetysim/event_process.hpp"
#include "safetysim/scenario.hpp"

namespace safetysim {

// Ground-truth safety metrics. Everything here is computed from the latent
// state (true xi), never from recorded observations.

struct AreaMetrics {
  double expected_loss = 0.0;  // loss units per day
  double tail_prob = 0.0;      // P(at least one incident with AHL >= 4)

  bool operator==(const AreaMetrics&) const = default;
};

struct DayMetrics {
  std::vector<AreaMetrics> per_area;
  double expected_loss = 0.0;
  double tail_prob = 0.0;

  bool operator==(const DayMetrics&) const = default;
};

/// Expected daily number of incidents at Hurt level j: alpha*xi*lambda*p_j.
double expected_hl_count(double lambda_star, double xi, double alpha,
                         double p_j);

/// sum_j c_j * expected_hl_count(j).
double expected_daily_loss(const SafetyAreaConfig& area, const AreaState& state,
                           const HurtVector& loss_vector);

/// (1 - exp(-lambda*alpha*xi)) * p_j for every level. Exact for j >= 1; the
/// j = 0 entry uses the same expression and is not used by any metric.
HurtVector ahl_marginal(double lambda_star, double xi, double alpha,
                        const HurtVector& hl_probs);

/// Sum of ahl_marginal over levels 4 and 5.
double tail_probability(const SafetyAreaConfig& area, const AreaState& state);

AreaMetrics area_metrics(const SafetyAreaConfig& area, const AreaState& state,
                         const HurtVector& loss_vector);

/// Sums expected loss; combines tails as 1 - prod(1 - tail_i) since areas
/// are independent.
DayMetrics aggregate_metrics(std::span<const AreaMetrics> per_area);

/// Metrics for the whole environment at the given per-area states.
DayMetrics day_metrics(const Scenario& scenario,
                       std::span<const AreaState> states);

/// Limit of the no-feedback trajectory: every area at xi = xi_base.
DayMetrics worst_case_metrics(const Scenario& scenario);

}  // namespace safetysim
