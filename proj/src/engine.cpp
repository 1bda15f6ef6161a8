#include "safetysim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "safetysim/intervention_process.hpp"

namespace safetysim {

namespace {

struct ReplicationResult {
  std::vector<double> expected_loss;
  std::vector<double> tail_prob;
  std::vector<HurtCounts> totals;
};

ReplicationResult run_replication(const Scenario& scenario, const Policy& policy,
                                  std::uint64_t seed, int horizon) {
  Rng rng(seed);
  SimState state = SimState::initial(scenario);
  ReplicationResult out;
  out.expected_loss.reserve(static_cast<std::size_t>(horizon));
  out.tail_prob.reserve(static_cast<std::size_t>(horizon));
  out.totals.assign(scenario.area_count(), HurtCounts{});
  for (int d = 0; d < horizon; ++d) {
    const DayRecord record = step_day(state, scenario, policy, rng);
    out.expected_loss.push_back(record.metrics.expected_loss);
    out.tail_prob.push_back(record.metrics.tail_prob);
    for (std::size_t a = 0; a < record.events.size(); ++a) {
      for (const auto& incident : record.events[a].incidents) {
        ++out.totals[a][static_cast<std::size_t>(incident.ahl)];
      }
    }
  }
  return out;
}

void mean_std(const std::vector<ReplicationResult>& reps,
              std::vector<double> ReplicationResult::*series,
              std::vector<double>& mean, std::vector<double>& stddev) {
  const std::size_t days = (reps.front().*series).size();
  const auto n = static_cast<double>(reps.size());
  mean.assign(days, 0.0);
  stddev.assign(days, 0.0);
  // Shifted by the first replication so identical samples give exactly
  // their value and a zero deviation.
  for (std::size_t d = 0; d < days; ++d) {
    const double shift = (reps.front().*series)[d];
    double sum = 0.0;
    double sq = 0.0;
    for (const auto& r : reps) {
      const double dev = (r.*series)[d] - shift;
      sum += dev;
      sq += dev * dev;
    }
    const double mean_dev = sum / n;
    mean[d] = shift + mean_dev;
    stddev[d] = std::sqrt(std::max(0.0, sq / n - mean_dev * mean_dev));
  }
}

int resolve_horizon(const Scenario& scenario, int horizon) {
  const int h = horizon == 0 ? scenario.horizon_days : horizon;
  if (h < 1) throw std::invalid_argument("horizon must be at least one day");
  return h;
}

}  // namespace

SimState SimState::initial(const Scenario& scenario) {
  SimState state{{}, ObservableHistory(scenario.area_count(),
                                       scenario.obs_type_count())};
  state.areas.reserve(scenario.area_count());
  for (const auto& area : scenario.areas) state.areas.push_back({area.theta0});
  return state;
}

DayRecord step_day(SimState& state, const Scenario& scenario,
                   const Policy& policy, Rng& rng) {
  const std::size_t n_areas = scenario.area_count();
  const std::size_t n_types = scenario.obs_type_count();

  DayRecord record;
  record.day = static_cast<int>(state.history.current_day());
  record.theta.reserve(n_areas);
  record.xi.reserve(n_areas);
  record.events.reserve(n_areas);
  for (std::size_t a = 0; a < n_areas; ++a) {
    record.theta.push_back(state.areas[a].theta);
    record.xi.push_back(xi_of(scenario.areas[a], state.areas[a]));
  }

  for (std::size_t a = 0; a < n_areas; ++a) {
    record.events.push_back(step_events(rng, scenario.areas[a], state.areas[a]));
  }

  record.decision = policy.decide(state.history, rng);
  if (record.decision.observes()) {
    if (record.decision.per_type.size() != n_types) {
      throw std::logic_error("policy '" + policy.name() +
                             "' returned the wrong number of allocations");
    }
    for (const auto& s : record.decision.per_type) s.validate();
    record.observations =
        step_observations(rng, scenario, record.events, record.decision.per_type);
  } else {
    record.observations = DayObservations(n_types, n_areas);
  }

  for (std::size_t a = 0; a < n_areas; ++a) {
    const auto unsafe = record.observations.unsafe_by_type(a);
    state.areas[a].theta =
        step_theta(state.areas[a].theta, scenario.areas[a], unsafe,
                   record.events[a].counts.incidents, scenario);
  }

  std::vector<AreaState> used(n_areas);
  for (std::size_t a = 0; a < n_areas; ++a) used[a].theta = record.theta[a];
  record.metrics = day_metrics(scenario, used);

  RecordedDay recorded{record.observations, {}};
  for (std::size_t a = 0; a < n_areas; ++a) {
    for (const auto& incident : record.events[a].incidents) {
      recorded.incidents.push_back({a, incident});
    }
  }
  state.history.append(std::move(recorded));
  return record;
}

Trajectory run_simulation(const Scenario& scenario, const Policy& policy,
                          std::uint64_t seed, int horizon) {
  const int h = resolve_horizon(scenario, horizon);
  Trajectory t;
  t.scenario = std::make_shared<const Scenario>(scenario);
  t.policy_name = policy.name();
  t.seed = seed;
  t.days.reserve(static_cast<std::size_t>(h));

  Rng rng(seed);
  SimState state = SimState::initial(scenario);
  for (int d = 0; d < h; ++d) {
    t.days.push_back(step_day(state, scenario, policy, rng));
  }
  return t;
}

std::vector<HurtCounts> incident_totals(const Trajectory& trajectory) {
  std::vector<HurtCounts> totals(
      trajectory.days.empty() ? 0 : trajectory.days.front().events.size());
  for (const auto& day : trajectory.days) {
    for (std::size_t a = 0; a < day.events.size(); ++a) {
      for (const auto& incident : day.events[a].incidents) {
        ++totals[a][static_cast<std::size_t>(incident.ahl)];
      }
    }
  }
  return totals;
}

HurtCounts severity_totals(std::span<const HurtCounts> per_area) {
  HurtCounts out{};
  for (const auto& area : per_area) {
    for (std::size_t j = 0; j < kHurtLevels; ++j) out[j] += area[j];
  }
  return out;
}

EnsembleSummary run_ensemble(const Scenario& scenario, const Policy& policy,
                             std::size_t replications, std::uint64_t base_seed,
                             EnsembleOptions options) {
  if (replications < 1) {
    throw std::invalid_argument("an ensemble needs at least one replication");
  }
  const int horizon = resolve_horizon(scenario, options.horizon);

  std::vector<ReplicationResult> results(replications);
  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency()
                                          : options.threads;
  threads = std::clamp<unsigned>(threads, 1,
                                 static_cast<unsigned>(replications));

  if (threads == 1) {
    for (std::size_t i = 0; i < replications; ++i) {
      results[i] = run_replication(scenario, policy, base_seed + i, horizon);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < replications; i = next++) {
            results[i] = run_replication(scenario, policy, base_seed + i, horizon);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  EnsembleSummary summary;
  summary.policy_name = policy.name();
  summary.base_seed = base_seed;
  summary.replications = replications;
  mean_std(results, &ReplicationResult::expected_loss,
           summary.expected_loss_mean, summary.expected_loss_std);
  mean_std(results, &ReplicationResult::tail_prob, summary.tail_prob_mean,
           summary.tail_prob_std);

  summary.incident_totals.reserve(replications);
  for (auto& r : results) summary.incident_totals.push_back(std::move(r.totals));

  const std::size_t n_areas = scenario.area_count();
  summary.incident_percentiles.resize(n_areas);
  std::vector<std::uint64_t> column(replications);
  for (std::size_t a = 0; a < n_areas; ++a) {
    for (std::size_t j = 0; j < kHurtLevels; ++j) {
      for (std::size_t i = 0; i < replications; ++i) {
        column[i] = summary.incident_totals[i][a][j];
      }
      summary.incident_percentiles[a][j] = {
          percentile_nearest_rank(column, 5.0),
          percentile_nearest_rank(column, 50.0),
          percentile_nearest_rank(column, 95.0)};
    }
  }
  return summary;
}

}  // namespace safetysim
