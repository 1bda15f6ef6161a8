#pragma once

#include <cstdint>
#include <vector>

#include "safetysim/random.hpp"
#include "safetysim/scenario.hpp"

namespace safetysim {

/// Latent safety state of one area. theta = 1 is the safest state; the
/// unsafe fraction xi is derived from it, never stored.
struct AreaState {
  double theta = 0.0;
};

/// Unsafe-activity fraction for a safety state: (1 - theta) * xi_base.
double xi_of_theta(double theta, double xi_base);

inline double xi_of(const SafetyAreaConfig& area, const AreaState& state) {
  return xi_of_theta(state.theta, area.xi_base);
}

/// One day of complacency: k_decay * theta.
double decay_theta(double theta, double k_decay);

struct EventCounts {
  std::uint64_t incidents = 0;  // e
  std::uint64_t unsafe = 0;     // a-
  std::uint64_t safe = 0;       // a+

  bool operator==(const EventCounts&) const = default;
};

struct Incident {
  HurtLevel ahl = 0;  // actual
  HurtLevel phl = 0;  // potential, always >= ahl

  bool operator==(const Incident&) const = default;
};

struct DayEvents {
  EventCounts counts;
  std::vector<Incident> incidents;  // size == counts.incidents

  bool operator==(const DayEvents&) const = default;
};

/// Thrown when a conditional Hurt-level distribution has no mass.
class DegenerateDistributionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Daily counts as three independent Poissons with means alpha*xi*lambda,
/// (1-alpha)*xi*lambda and (1-xi)*lambda. Draw order: incidents, unsafe, safe.
EventCounts sample_event_counts(Rng& rng, double lambda_star, double xi,
                                double alpha);

HurtLevel sample_ahl(Rng& rng, const HurtVector& hl_probs);

/// Hurt level >= ahl, drawn from hl_probs truncated below ahl and
/// renormalized.
HurtLevel sample_phl(Rng& rng, const HurtVector& hl_probs, HurtLevel ahl);

/// One day of events for an area at its current state. Consumes the stream
/// as: counts, then every AHL, then every PHL. Does not touch theta.
DayEvents step_events(Rng& rng, const SafetyAreaConfig& area,
                      const AreaState& state);

}  // namespace safetysim
