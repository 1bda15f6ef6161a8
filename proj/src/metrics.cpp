#include "safetysim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace safetysim {

double expected_hl_count(double lambda_star, double xi, double alpha,
                         double p_j) {
  return alpha * xi * lambda_star * p_j;
}

double expected_daily_loss(const SafetyAreaConfig& area, const AreaState& state,
                           const HurtVector& loss_vector) {
  const double xi = xi_of(area, state);
  double loss = 0.0;
  for (std::size_t j = 0; j < kHurtLevels; ++j) {
    loss += loss_vector[j] *
            expected_hl_count(area.lambda_star, xi, area.alpha, area.hl_probs[j]);
  }
  return loss;
}

HurtVector ahl_marginal(double lambda_star, double xi, double alpha,
                        const HurtVector& hl_probs) {
  // 1 - Poisson(0; rate), via expm1 for small rates.
  const double any_incident = -std::expm1(-lambda_star * alpha * xi);
  HurtVector out{};
  for (std::size_t j = 0; j < kHurtLevels; ++j) out[j] = any_incident * hl_probs[j];
  return out;
}

double tail_probability(const SafetyAreaConfig& area, const AreaState& state) {
  const auto marginal = ahl_marginal(area.lambda_star, xi_of(area, state),
                                     area.alpha, area.hl_probs);
  return marginal[4] + marginal[5];
}

AreaMetrics area_metrics(const SafetyAreaConfig& area, const AreaState& state,
                         const HurtVector& loss_vector) {
  return {expected_daily_loss(area, state, loss_vector),
          tail_probability(area, state)};
}

DayMetrics aggregate_metrics(std::span<const AreaMetrics> per_area) {
  DayMetrics out;
  out.per_area.assign(per_area.begin(), per_area.end());
  double none_severe = 1.0;
  for (const auto& m : per_area) {
    out.expected_loss += m.expected_loss;
    none_severe *= 1.0 - m.tail_prob;
  }
  out.tail_prob = 1.0 - none_severe;
  return out;
}

DayMetrics day_metrics(const Scenario& scenario,
                       std::span<const AreaState> states) {
  if (states.size() != scenario.area_count()) {
    throw std::invalid_argument("need one state per area");
  }
  std::vector<AreaMetrics> per_area;
  per_area.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    per_area.push_back(
        area_metrics(scenario.areas[i], states[i], scenario.loss_vector));
  }
  return aggregate_metrics(per_area);
}

DayMetrics worst_case_metrics(const Scenario& scenario) {
  const std::vector<AreaState> worst(scenario.area_count(), AreaState{0.0});
  return day_metrics(scenario, worst);
}

}  // namespace safetysim
