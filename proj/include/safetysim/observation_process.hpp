#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "safetysim/event_process.hpp"
#include "safetysim/random.hpp"
#include "safetysim/scenario.hpp"

namespace safetysim {

/// Share of a day's observers sent to each area. Entries sum to 1.
struct AllocationProportions {
  std::vector<double> shares;

  /// Throws std::invalid_argument unless entries are in [0,1] and sum to 1
  /// within 1e-9.
  void validate() const;

  static AllocationProportions uniform(std::size_t n_areas);

  bool operator==(const AllocationProportions&) const = default;
};

/// Recorded safe (a+) and unsafe (a-) activities for one (type, area) cell.
struct ObservedCounts {
  std::uint64_t safe = 0;
  std::uint64_t unsafe = 0;

  std::uint64_t total() const { return safe + unsafe; }
  bool operator==(const ObservedCounts&) const = default;
};

/// Observation counts for every (observation type, area) pair on one day.
class DayObservations {
 public:
  DayObservations() = default;
  DayObservations(std::size_t n_types, std::size_t n_areas)
      : n_types_(n_types), n_areas_(n_areas), cells_(n_types * n_areas) {}

  std::size_t type_count() const { return n_types_; }
  std::size_t area_count() const { return n_areas_; }

  ObservedCounts& at(std::size_t type, std::size_t area) {
    return cells_.at(type * n_areas_ + area);
  }
  const ObservedCounts& at(std::size_t type, std::size_t area) const {
    return cells_.at(type * n_areas_ + area);
  }

  /// Recorded unsafe activities in `area`, one entry per observation type.
  std::vector<std::uint64_t> unsafe_by_type(std::size_t area) const;

  std::uint64_t total() const;
  bool empty() const { return cells_.empty(); }

  bool operator==(const DayObservations&) const = default;

 private:
  std::size_t n_types_ = 0;
  std::size_t n_areas_ = 0;
  std::vector<ObservedCounts> cells_;
};

/// Observers per area, q ~ Multinomial(m, s).
std::vector<std::uint64_t> allocate_observers(Rng& rng, std::uint64_t m,
                                              const AllocationProportions& s);

/// Picks min(capacity, n_pos + n_neg) distinct events to record.
///
/// Per-event weights come from one Dirichlet draw with concentration eta_pos
/// for each safe event and eta_neg for each unsafe event; events are then
/// drawn one at a time without replacement, renormalizing the remaining
/// weights. When capacity covers every event all are recorded and the
/// stream is not consumed.
ObservedCounts select_observed(Rng& rng, std::uint64_t n_pos,
                               std::uint64_t n_neg, std::uint64_t capacity,
                               double eta_pos, double eta_neg);

/// Runs every observation type against the day's events. Each type draws its
/// own allocation and its own selection, so one event may be recorded by
/// several types. Stream order: per type, allocation then areas in order.
DayObservations step_observations(
    Rng& rng, const Scenario& scenario, std::span<const DayEvents> events,
    std::span<const AllocationProportions> proportions_by_type);

}  // namespace safetysim
