#pragma once

#include <cstdint>
#include <span>

#include "safetysim/scenario.hpp"

namespace safetysim {

/// Total feedback a day exerts on an area: sum over types of recorded unsafe
/// activities times that type's delta_neg, plus incidents times delta_e.
double feedback_drive(std::span<const std::uint64_t> unsafe_obs_by_type,
                      std::span<const double> deltas_neg,
                      std::uint64_t incidents, double delta_e);

/// theta + (1 - theta) * drive, clamped to [0,1].
double apply_feedback(double theta,
                      std::span<const std::uint64_t> unsafe_obs_by_type,
                      std::uint64_t incidents,
                      std::span<const double> deltas_neg, double delta_e);

/// Next-day theta: the feedback update when the drive is positive, otherwise
/// complacency decay. Incidents only count through delta_e, so with
/// delta_e = 0 unobserved incidents never block decay.
double step_theta(double theta, const SafetyAreaConfig& area,
                  std::span<const std::uint64_t> unsafe_obs_by_type,
                  std::uint64_t incidents, const Scenario& scenario);

}  // namespace safetysim
