#include "safetysim/observation_process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace safetysim {

void AllocationProportions::validate() const {
  if (shares.empty()) {
    throw std::invalid_argument("allocation proportions are empty");
  }
  double sum = 0.0;
  for (double s : shares) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::invalid_argument("allocation proportion outside [0,1]: " +
                                  std::to_string(s));
    }
    sum += s;
  }
  if (!(std::abs(sum - 1.0) <= 1e-9)) {
    throw std::invalid_argument("allocation proportions sum to " +
                                std::to_string(sum) + ", not 1");
  }
}

AllocationProportions AllocationProportions::uniform(std::size_t n_areas) {
  return {std::vector<double>(n_areas, 1.0 / static_cast<double>(n_areas))};
}

std::vector<std::uint64_t> DayObservations::unsafe_by_type(
    std::size_t area) const {
  std::vector<std::uint64_t> out(n_types_, 0);
  for (std::size_t t = 0; t < n_types_; ++t) out[t] = at(t, area).unsafe;
  return out;
}

std::uint64_t DayObservations::total() const {
  std::uint64_t sum = 0;
  for (const auto& c : cells_) sum += c.total();
  return sum;
}

std::vector<std::uint64_t> allocate_observers(Rng& rng, std::uint64_t m,
                                              const AllocationProportions& s) {
  return rng.multinomial(m, s.shares);
}

ObservedCounts select_observed(Rng& rng, std::uint64_t n_pos,
                               std::uint64_t n_neg, std::uint64_t capacity,
                               double eta_pos, double eta_neg) {
  const std::uint64_t n_events = n_pos + n_neg;
  const std::uint64_t n_obs = std::min(capacity, n_events);
  if (n_obs == 0) return {};
  if (n_obs == n_events) return {n_pos, n_neg};

  // Safe events occupy [0, n_pos), unsafe events [n_pos, n_events). A class
  // with no events contributes no Dirichlet components.
  std::vector<double> weights(n_events);
  for (std::uint64_t i = 0; i < n_events; ++i) {
    weights[i] = rng.gamma(i < n_pos ? eta_pos : eta_neg);
  }

  ObservedCounts out;
  for (std::uint64_t draw = 0; draw < n_obs; ++draw) {
    const std::size_t picked = rng.categorical(weights);
    weights[picked] = 0.0;
    if (picked < n_pos) {
      ++out.safe;
    } else {
      ++out.unsafe;
    }
  }
  return out;
}

DayObservations step_observations(
    Rng& rng, const Scenario& scenario, std::span<const DayEvents> events,
    std::span<const AllocationProportions> proportions_by_type) {
  const std::size_t n_types = scenario.obs_type_count();
  const std::size_t n_areas = scenario.area_count();
  if (proportions_by_type.size() != n_types) {
    throw std::invalid_argument("need one allocation per observation type");
  }
  if (events.size() != n_areas) {
    throw std::invalid_argument("need one DayEvents per area");
  }

  DayObservations out(n_types, n_areas);
  for (std::size_t t = 0; t < n_types; ++t) {
    const auto& type = scenario.obs_types[t];
    const auto& proportions = proportions_by_type[t];
    if (proportions.shares.size() != n_areas) {
      throw std::invalid_argument("allocation size does not match area count");
    }
    const auto observers = allocate_observers(rng, type.m, proportions);
    for (std::size_t a = 0; a < n_areas; ++a) {
      const auto& counts = events[a].counts;
      out.at(t, a) = select_observed(rng, counts.safe, counts.unsafe,
                                     type.rho * observers[a], type.eta_pos,
                                     type.eta_neg);
    }
  }
  return out;
}

}  // namespace safetysim
