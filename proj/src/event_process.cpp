#include "safetysim/event_process.hpp"

#include <span>

namespace safetysim {

double xi_of_theta(double theta, double xi_base) {
  return (1.0 - theta) * xi_base;
}

double decay_theta(double theta, double k_decay) { return k_decay * theta; }

EventCounts sample_event_counts(Rng& rng, double lambda_star, double xi,
                                double alpha) {
  EventCounts c;
  c.incidents = rng.poisson(alpha * xi * lambda_star);
  c.unsafe = rng.poisson((1.0 - alpha) * xi * lambda_star);
  c.safe = rng.poisson((1.0 - xi) * lambda_star);
  return c;
}

HurtLevel sample_ahl(Rng& rng, const HurtVector& hl_probs) {
  return static_cast<HurtLevel>(rng.categorical(hl_probs));
}

HurtLevel sample_phl(Rng& rng, const HurtVector& hl_probs, HurtLevel ahl) {
  const auto first = static_cast<std::size_t>(ahl);
  const std::span<const double> upper(hl_probs.begin() + first, hl_probs.end());
  double mass = 0.0;
  for (double p : upper) mass += p;
  if (!(mass > 0.0)) {
    throw DegenerateDistributionError(
        "no Hurt-level mass at or above the actual Hurt level");
  }
  return ahl + static_cast<HurtLevel>(rng.categorical(upper));
}

DayEvents step_events(Rng& rng, const SafetyAreaConfig& area,
                      const AreaState& state) {
  DayEvents day;
  day.counts = sample_event_counts(rng, area.lambda_star, xi_of(area, state),
                                   area.alpha);
  day.incidents.resize(day.counts.incidents);
  for (auto& incident : day.incidents) {
    incident.ahl = sample_ahl(rng, area.hl_probs);
  }
  for (auto& incident : day.incidents) {
    incident.phl = sample_phl(rng, area.hl_probs, incident.ahl);
  }
  return day;
}

}  // namespace safetysim
