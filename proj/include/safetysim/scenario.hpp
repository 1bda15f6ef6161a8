#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace safetysim {

inline constexpr std::size_t kHurtLevels = 6;

/// Hurt level 0 (near-miss) through 5 (multiple fatalities).
using HurtLevel = int;

/// Probability (or loss) per Hurt level 0..5.
using HurtVector = std::array<double, kHurtLevels>;

inline constexpr HurtVector kDefaultLossVector = {0.0,    1.0,    10.0,
                                                  100.0,  1000.0, 10000.0};

/// Static parameters of one safety area.
struct SafetyAreaConfig {
  std::string id;
  double lambda_star = 1.0;  // tasks per day
  double xi_base = 0.0;      // worst-case unsafe fraction
  double alpha = 0.0;        // incident fraction among unsafe tasks
  double k_decay = 1.0;      // daily complacency factor applied to theta
  double theta0 = 0.0;
  HurtVector hl_probs{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};

  bool operator==(const SafetyAreaConfig&) const = default;
};

/// One observation channel (e.g. WSO, SAO, BPO).
struct ObservationTypeConfig {
  std::string id;
  std::uint64_t m = 0;    // observers per day
  std::uint64_t rho = 1;  // observations per observer per day
  double delta_neg = 0.0;
  double eta_pos = 1.0;
  double eta_neg = 1.0;

  bool operator==(const ObservationTypeConfig&) const = default;
};

struct Scenario {
  std::vector<SafetyAreaConfig> areas;
  std::vector<ObservationTypeConfig> obs_types;
  double delta_e = 0.0;
  HurtVector loss_vector = kDefaultLossVector;
  int horizon_days = 365;

  std::size_t area_count() const { return areas.size(); }
  std::size_t obs_type_count() const { return obs_types.size(); }

  /// Sum over observation types of m * rho.
  std::uint64_t daily_observation_capacity() const;

  bool operator==(const Scenario&) const = default;
};

/// Malformed config text or a field of the wrong type. `what()` carries the
/// line/column or the JSON path of the offending field.
class ScenarioParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed config that violates one or more invariants.
class ScenarioValidationError : public std::runtime_error {
 public:
  explicit ScenarioValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Every invariant violation in `s`, as readable messages. Empty when valid.
std::vector<std::string> validate_scenario(const Scenario& s);

/// Parses JSON config text and validates it. Missing optional fields take
/// their defaults: rho = 1, delta_e = 0, loss_vector = [0, 1, ..., 10000],
/// horizon_days = 365.
Scenario load_scenario(std::string_view source);

Scenario load_scenario_file(const std::string& path);

/// JSON text that load_scenario reads back to an equal Scenario.
std::string serialize_scenario(const Scenario& s);

}  // namespace safetysim
