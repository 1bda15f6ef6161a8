#pragma once

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "safetysim/event_process.hpp"
#include "safetysim/observation_process.hpp"
#include "safetysim/random.hpp"

namespace safetysim {

/// An incident as the safety management system records it.
struct RecordedIncident {
  std::size_t area = 0;
  Incident incident;

  bool operator==(const RecordedIncident&) const = default;
};

/// Everything recorded on one day. Incidents are always recorded; safe and
/// unsafe activities only when an observer picked them up.
struct RecordedDay {
  DayObservations observations;
  std::vector<RecordedIncident> incidents;

  bool operator==(const RecordedDay&) const = default;
};

/// Append-only record of past days. Holds recorded data only, so a policy
/// cannot see theta or xi.
class ObservableHistory {
 public:
  ObservableHistory(std::size_t n_areas, std::size_t n_types)
      : n_areas_(n_areas), n_types_(n_types) {}

  std::size_t area_count() const { return n_areas_; }
  std::size_t obs_type_count() const { return n_types_; }

  /// 1-based index of the day about to be decided.
  std::size_t current_day() const { return days_.size() + 1; }

  const std::vector<RecordedDay>& days() const { return days_; }

  /// The most recent `window` days (fewer at the start of a run).
  std::span<const RecordedDay> trailing(std::size_t window) const;

  void append(RecordedDay day) { days_.push_back(std::move(day)); }

 private:
  std::size_t n_areas_;
  std::size_t n_types_;
  std::vector<RecordedDay> days_;
};

/// Observer allocation for one day: one proportion vector per observation
/// type, or no observation at all.
struct PolicyDecision {
  std::vector<AllocationProportions> per_type;

  bool observes() const { return !per_type.empty(); }

  static PolicyDecision none() { return {}; }
  static PolicyDecision same_for_all(std::size_t n_types,
                                     const AllocationProportions& s) {
    return {std::vector<AllocationProportions>(n_types, s)};
  }

  bool operator==(const PolicyDecision&) const = default;
};

// Decision functions behind the built-in policies.
PolicyDecision policy_uniform_random(const ObservableHistory& history);
PolicyDecision policy_incident_count(const ObservableHistory& history,
                                     std::size_t window = 30);
PolicyDecision policy_incident_severity(const ObservableHistory& history,
                                        std::size_t window = 30);
PolicyDecision policy_fixed_weights(const ObservableHistory& history,
                                    const AllocationProportions& weights);
PolicyDecision policy_none();

/// A safety-analytics approach: maps recorded history to today's observer
/// allocation. Implementations must be safe to call concurrently from
/// different replications; any randomness must come from `rng`.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual PolicyDecision decide(const ObservableHistory& history,
                                Rng& rng) const = 0;
};

class UniformPolicy final : public Policy {
 public:
  std::string name() const override { return "uniform"; }
  PolicyDecision decide(const ObservableHistory& history, Rng&) const override {
    return policy_uniform_random(history);
  }
};

class IncidentCountPolicy final : public Policy {
 public:
  explicit IncidentCountPolicy(std::size_t window = 30) : window_(window) {}
  std::string name() const override { return "counts"; }
  PolicyDecision decide(const ObservableHistory& history, Rng&) const override {
    return policy_incident_count(history, window_);
  }

 private:
  std::size_t window_;
};

class IncidentSeverityPolicy final : public Policy {
 public:
  explicit IncidentSeverityPolicy(std::size_t window = 30) : window_(window) {}
  std::string name() const override { return "severity"; }
  PolicyDecision decide(const ObservableHistory& history, Rng&) const override {
    return policy_incident_severity(history, window_);
  }

 private:
  std::size_t window_;
};

class FixedWeightsPolicy final : public Policy {
 public:
  /// Throws std::invalid_argument if the weights are not valid proportions.
  explicit FixedWeightsPolicy(std::vector<double> weights);
  std::string name() const override { return "weighted"; }
  PolicyDecision decide(const ObservableHistory& history, Rng&) const override {
    return policy_fixed_weights(history, weights_);
  }
  const AllocationProportions& weights() const { return weights_; }

 private:
  AllocationProportions weights_;
};

class NoObservationPolicy final : public Policy {
 public:
  std::string name() const override { return "none"; }
  PolicyDecision decide(const ObservableHistory&, Rng&) const override {
    return policy_none();
  }
};

class UnknownPolicyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds policies from spec strings of the form `name` or `name:args`.
/// Ships with uniform, counts, severity, weighted:<w1,...,wn> and none.
class PolicyRegistry {
 public:
  using Factory =
      std::function<std::unique_ptr<Policy>(std::string_view args)>;

  static PolicyRegistry& global();

  PolicyRegistry();

  /// Replaces any existing factory with the same name.
  void add(std::string name, Factory factory);

  /// Throws UnknownPolicyError (listing valid names) for unknown names and
  /// std::invalid_argument for bad arguments.
  std::unique_ptr<Policy> make(std::string_view spec) const;

  std::vector<std::string> names() const;

 private:
  std::map<std::string, Factory, std::less<>> factories_;
};

/// PolicyRegistry::global().make(spec).
std::unique_ptr<Policy> make_policy(std::string_view spec);

}  // namespace safetysim
