#include "safetysim/intervention_process.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "safetysim/event_process.hpp"

namespace safetysim {

double feedback_drive(std::span<const std::uint64_t> unsafe_obs_by_type,
                      std::span<const double> deltas_neg,
                      std::uint64_t incidents, double delta_e) {
  if (unsafe_obs_by_type.size() != deltas_neg.size()) {
    throw std::invalid_argument("one delta_neg per observation type required");
  }
  double drive = static_cast<double>(incidents) * delta_e;
  for (std::size_t t = 0; t < deltas_neg.size(); ++t) {
    drive += static_cast<double>(unsafe_obs_by_type[t]) * deltas_neg[t];
  }
  return drive;
}

double apply_feedback(double theta,
                      std::span<const std::uint64_t> unsafe_obs_by_type,
                      std::uint64_t incidents,
                      std::span<const double> deltas_neg, double delta_e) {
  const double drive =
      feedback_drive(unsafe_obs_by_type, deltas_neg, incidents, delta_e);
  return std::clamp(theta + (1.0 - theta) * drive, 0.0, 1.0);
}

double step_theta(double theta, const SafetyAreaConfig& area,
                  std::span<const std::uint64_t> unsafe_obs_by_type,
                  std::uint64_t incidents, const Scenario& scenario) {
  std::vector<double> deltas;
  deltas.reserve(scenario.obs_types.size());
  for (const auto& t : scenario.obs_types) deltas.push_back(t.delta_neg);

  if (feedback_drive(unsafe_obs_by_type, deltas, incidents, scenario.delta_e) >
      0.0) {
    return apply_feedback(theta, unsafe_obs_by_type, incidents, deltas,
                          scenario.delta_e);
  }
  return decay_theta(theta, area.k_decay);
}

}  // namespace safetysim
