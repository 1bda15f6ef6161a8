#include "safetysim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace safetysim {

using nlohmann::json;

namespace {

constexpr double kProbabilityTolerance = 1e-9;

bool is_fraction(double v) { return v >= 0.0 && v <= 1.0; }

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid scenario:";
  for (const auto& line : lines) out += "\n  - " + line;
  return out;
}

// 1-based line and column for a byte offset into `text`.
std::pair<std::size_t, std::size_t> locate(std::string_view text,
                                           std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Typed field access that reports the JSON path on failure.
class Reader {
 public:
  Reader(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {}

  template <typename T>
  T required(const char* key) const {
    if (!node_.contains(key)) {
      throw ScenarioParseError("missing required field '" + field(key) + "'");
    }
    return get<T>(key);
  }

  template <typename T>
  T optional(const char* key, T fallback) const {
    if (!node_.contains(key) || node_.at(key).is_null()) return fallback;
    return get<T>(key);
  }

  std::string field(const char* key) const {
    return path_.empty() ? std::string(key) : path_ + "." + key;
  }

 private:
  template <typename T>
  T get(const char* key) const {
    const json& value = node_.at(key);
    if constexpr (std::is_same_v<T, std::uint64_t> || std::is_same_v<T, int>) {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        throw ScenarioParseError("field '" + field(key) +
                                 "' must be a nonnegative integer");
      }
    } else if constexpr (std::is_same_v<T, double>) {
      if (!value.is_number()) {
        throw ScenarioParseError("field '" + field(key) + "' must be a number");
      }
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!value.is_string()) {
        throw ScenarioParseError("field '" + field(key) + "' must be a string");
      }
    } else if constexpr (std::is_same_v<T, HurtVector>) {
      if (!value.is_array() || value.size() != kHurtLevels ||
          !std::all_of(value.begin(), value.end(),
                       [](const json& v) { return v.is_number(); })) {
        throw ScenarioParseError("field '" + field(key) +
                                 "' must be an array of 6 numbers");
      }
    }
    return value.get<T>();
  }

  const json& node_;
  std::string path_;
};

SafetyAreaConfig read_area(const json& node, const std::string& path) {
  if (!node.is_object()) {
    throw ScenarioParseError("'" + path + "' must be an object");
  }
  Reader r(node, path);
  SafetyAreaConfig area;
  area.id = r.required<std::string>("id");
  area.lambda_star = r.required<double>("lambda_star");
  area.xi_base = r.required<double>("xi_base");
  area.alpha = r.required<double>("alpha");
  area.k_decay = r.required<double>("k_decay");
  area.theta0 = r.required<double>("theta0");
  area.hl_probs = r.required<HurtVector>("hl_probs");
  return area;
}

ObservationTypeConfig read_obs_type(const json& node, const std::string& path) {
  if (!node.is_object()) {
    throw ScenarioParseError("'" + path + "' must be an object");
  }
  Reader r(node, path);
  ObservationTypeConfig obs;
  obs.id = r.required<std::string>("id");
  obs.m = r.required<std::uint64_t>("m");
  obs.rho = r.optional<std::uint64_t>("rho", 1);
  obs.delta_neg = r.required<double>("delta_neg");
  obs.eta_pos = r.required<double>("eta_pos");
  obs.eta_neg = r.required<double>("eta_neg");
  return obs;
}

}  // namespace

std::uint64_t Scenario::daily_observation_capacity() const {
  std::uint64_t total = 0;
  for (const auto& t : obs_types) total += t.m * t.rho;
  return total;
}

ScenarioValidationError::ScenarioValidationError(
    std::vector<std::string> violations)
    : std::runtime_error(join_lines(violations)),
      violations_(std::move(violations)) {}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> out;

  if (s.areas.empty()) out.emplace_back("at least one safety area is required");

  std::set<std::string> seen;
  for (const auto& a : s.areas) {
    const std::string where = "area '" + a.id + "': ";
    if (!seen.insert(a.id).second) {
      out.push_back(where + "duplicate area id");
    }
    if (!(a.lambda_star > 0.0) || !std::isfinite(a.lambda_star)) {
      out.push_back(where + "lambda_star must be > 0");
    }
    if (!is_fraction(a.xi_base)) out.push_back(where + "xi_base must be in [0,1]");
    if (!is_fraction(a.alpha)) out.push_back(where + "alpha must be in [0,1]");
    if (!is_fraction(a.k_decay)) out.push_back(where + "k_decay must be in [0,1]");
    if (!is_fraction(a.theta0)) out.push_back(where + "theta0 must be in [0,1]");
    if (std::any_of(a.hl_probs.begin(), a.hl_probs.end(),
                    [](double p) { return !(p >= 0.0); })) {
      out.push_back(where + "hl_probs must be nonnegative");
    }
    const double sum = std::accumulate(a.hl_probs.begin(), a.hl_probs.end(), 0.0);
    if (!(std::abs(sum - 1.0) <= kProbabilityTolerance)) {
      out.push_back(where + "hl_probs must sum to 1");
    }
  }

  std::set<std::string> seen_types;
  for (const auto& t : s.obs_types) {
    const std::string where = "observation type '" + t.id + "': ";
    if (!seen_types.insert(t.id).second) {
      out.push_back(where + "duplicate observation type id");
    }
    if (t.rho == 0) out.push_back(where + "rho must be a positive integer");
    if (!is_fraction(t.delta_neg)) out.push_back(where + "delta_neg must be in [0,1]");
    if (!(t.eta_pos > 0.0)) out.push_back(where + "eta_pos must be > 0");
    if (!(t.eta_neg > 0.0)) out.push_back(where + "eta_neg must be > 0");
  }

  if (!is_fraction(s.delta_e)) out.emplace_back("delta_e must be in [0,1]");
  if (std::any_of(s.loss_vector.begin(), s.loss_vector.end(),
                  [](double c) { return !(c >= 0.0); })) {
    out.emplace_back("loss_vector entries must be nonnegative");
  }
  if (!std::is_sorted(s.loss_vector.begin(), s.loss_vector.end())) {
    out.emplace_back("loss_vector must be nondecreasing");
  }
  if (s.horizon_days < 1) out.emplace_back("horizon_days must be positive");
  return out;
}

Scenario load_scenario(std::string_view source) {
  json root;
  try {
    root = json::parse(source.begin(), source.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = locate(source, e.byte == 0 ? 0 : e.byte - 1);
    throw ScenarioParseError("parse error at line " + std::to_string(line) +
                             ", column " + std::to_string(column) + ": " +
                             e.what());
  }
  if (!root.is_object()) {
    throw ScenarioParseError("scenario must be a JSON object");
  }

  Scenario s;
  Reader top(root, "");
  if (!root.contains("areas") || !root.at("areas").is_array()) {
    throw ScenarioParseError("field 'areas' must be an array");
  }
  const json& areas = root.at("areas");
  for (std::size_t i = 0; i < areas.size(); ++i) {
    s.areas.push_back(read_area(areas[i], "areas[" + std::to_string(i) + "]"));
  }
  if (root.contains("obs_types")) {
    const json& types = root.at("obs_types");
    if (!types.is_array()) {
      throw ScenarioParseError("field 'obs_types' must be an array");
    }
    for (std::size_t i = 0; i < types.size(); ++i) {
      s.obs_types.push_back(
          read_obs_type(types[i], "obs_types[" + std::to_string(i) + "]"));
    }
  }
  s.delta_e = top.optional<double>("delta_e", 0.0);
  s.loss_vector = top.optional<HurtVector>("loss_vector", kDefaultLossVector);
  s.horizon_days = top.optional<int>("horizon_days", 365);
  if (root.contains("timestep_days") &&
      top.optional<double>("timestep_days", 1.0) != 1.0) {
    throw ScenarioParseError("field 'timestep_days' must be 1");
  }

  auto violations = validate_scenario(s);
  if (!violations.empty()) throw ScenarioValidationError(std::move(violations));
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioParseError("cannot open scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s) {
  json root;
  root["areas"] = json::array();
  for (const auto& a : s.areas) {
    root["areas"].push_back({{"id", a.id},
                             {"lambda_star", a.lambda_star},
                             {"xi_base", a.xi_base},
                             {"alpha", a.alpha},
                             {"k_decay", a.k_decay},
                             {"theta0", a.theta0},
                             {"hl_probs", a.hl_probs}});
  }
  root["obs_types"] = json::array();
  for (const auto& t : s.obs_types) {
    root["obs_types"].push_back({{"id", t.id},
                                 {"m", t.m},
                                 {"rho", t.rho},
                                 {"delta_neg", t.delta_neg},
                                 {"eta_pos", t.eta_pos},
                                 {"eta_neg", t.eta_neg}});
  }
  root["delta_e"] = s.delta_e;
  root["loss_vector"] = s.loss_vector;
  root["horizon_days"] = s.horizon_days;
  return root.dump(2) + "\n";
}

}  // namespace safetysim
