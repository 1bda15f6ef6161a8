#include "safetysim/policies.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace safetysim {

namespace {

AllocationProportions normalized(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  AllocationProportions s{weights};
  for (double& v : s.shares) v /= total;
  return s;
}

std::vector<double> parse_weights(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view token = text.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    const auto [end, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      throw std::invalid_argument("invalid weight '" + std::string(token) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("weighted policy needs weights");
  return out;
}

std::size_t parse_window(std::string_view args) {
  if (args.empty()) return 30;
  std::size_t window = 0;
  const auto [end, ec] =
      std::from_chars(args.data(), args.data() + args.size(), window);
  if (ec != std::errc() || end != args.data() + args.size() || window == 0) {
    throw std::invalid_argument("window must be a positive integer, got '" +
                                std::string(args) + "'");
  }
  return window;
}

}  // namespace

std::span<const RecordedDay> ObservableHistory::trailing(
    std::size_t window) const {
  const std::size_t n = std::min(window, days_.size());
  return std::span<const RecordedDay>(days_).last(n);
}

PolicyDecision policy_uniform_random(const ObservableHistory& history) {
  return PolicyDecision::same_for_all(
      history.obs_type_count(),
      AllocationProportions::uniform(history.area_count()));
}

PolicyDecision policy_incident_count(const ObservableHistory& history,
                                     std::size_t window) {
  std::vector<double> counts(history.area_count(), 0.0);
  double total = 0.0;
  for (const auto& day : history.trailing(window)) {
    for (const auto& rec : day.incidents) {
      counts.at(rec.area) += 1.0;
      total += 1.0;
    }
  }
  if (total == 0.0) return policy_uniform_random(history);
  return PolicyDecision::same_for_all(history.obs_type_count(),
                                      normalized(counts));
}

PolicyDecision policy_incident_severity(const ObservableHistory& history,
                                        std::size_t window) {
  // Areas without incidents keep h = 0, i.e. weight 1.
  std::vector<HurtLevel> highest(history.area_count(), 0);
  for (const auto& day : history.trailing(window)) {
    for (const auto& rec : day.incidents) {
      highest.at(rec.area) = std::max(highest.at(rec.area), rec.incident.ahl);
    }
  }
  std::vector<double> weights;
  weights.reserve(highest.size());
  for (HurtLevel h : highest) weights.push_back(std::ldexp(1.0, h));
  return PolicyDecision::same_for_all(history.obs_type_count(),
                                      normalized(weights));
}

PolicyDecision policy_fixed_weights(const ObservableHistory& history,
                                    const AllocationProportions& weights) {
  if (weights.shares.size() != history.area_count()) {
    throw std::invalid_argument(
        "weighted policy has " + std::to_string(weights.shares.size()) +
        " weights but the scenario has " +
        std::to_string(history.area_count()) + " areas");
  }
  return PolicyDecision::same_for_all(history.obs_type_count(), weights);
}

PolicyDecision policy_none() { return PolicyDecision::none(); }

FixedWeightsPolicy::FixedWeightsPolicy(std::vector<double> weights)
    : weights_{std::move(weights)} {
  weights_.validate();
}

PolicyRegistry::PolicyRegistry() {
  add("uniform", [](std::string_view) { return std::make_unique<UniformPolicy>(); });
  add("counts", [](std::string_view args) {
    return std::make_unique<IncidentCountPolicy>(parse_window(args));
  });
  add("severity", [](std::string_view args) {
    return std::make_unique<IncidentSeverityPolicy>(parse_window(args));
  });
  add("weighted", [](std::string_view args) {
    return std::make_unique<FixedWeightsPolicy>(parse_weights(args));
  });
  add("none", [](std::string_view) {
    return std::make_unique<NoObservationPolicy>();
  });
}

PolicyRegistry& PolicyRegistry::global() {
  static PolicyRegistry registry;
  return registry;
}

void PolicyRegistry::add(std::string name, Factory factory) {
  factories_.insert_or_assign(std::move(name), std::move(factory));
}

std::unique_ptr<Policy> PolicyRegistry::make(std::string_view spec) const {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const auto it = factories_.find(name);
  if (it == factories_.end()) {
    std::string valid;
    for (const auto& n : names()) valid += (valid.empty() ? "" : ", ") + n;
    throw UnknownPolicyError("unknown policy '" + std::string(name) +
                             "'; valid policies: " + valid);
  }
  return it->second(args);
}

std::vector<std::string> PolicyRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : factories_) out.push_back(name);
  return out;
}

std::unique_ptr<Policy> make_policy(std::string_view spec) {
  return PolicyRegistry::global().make(spec);
}

}  // namespace safetysim
