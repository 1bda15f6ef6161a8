#include "safetysim/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "safetysim/engine.hpp"
#include "safetysim/metrics.hpp"
#include "safetysim/policies.hpp"
#include "safetysim/report.hpp"
#include "safetysim/scenario.hpp"

namespace safetysim::cli {

namespace fs = std::filesystem;

namespace {

// Config and flag problems map to exit code 2, everything else to 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return kSuccess;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ScenarioParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ScenarioValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UnknownPolicyError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

Scenario load(const CommonOptions& options) {
  if (options.scenario_path.empty()) throw UsageError("--scenario is required");
  return load_scenario_file(options.scenario_path);
}

// Builds the policy and checks it against the scenario before any output.
std::unique_ptr<Policy> load_policy(const std::string& spec,
                                    const Scenario& scenario) {
  std::unique_ptr<Policy> policy;
  try {
    policy = make_policy(spec);
  } catch (const UnknownPolicyError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError("policy '" + spec + "': " + e.what());
  }
  if (const auto* weighted = dynamic_cast<const FixedWeightsPolicy*>(policy.get());
      weighted && weighted->weights().shares.size() != scenario.area_count()) {
    throw UsageError("policy '" + spec + "' has " +
                     std::to_string(weighted->weights().shares.size()) +
                     " weights but the scenario has " +
                     std::to_string(scenario.area_count()) + " areas");
  }
  return policy;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir +
                             "': " + ec.message());
  }
}

void check_horizon(int horizon) {
  if (horizon < 0) throw UsageError("--horizon must not be negative");
}

// Policy specs with unique file stems; the baseline "none" is appended when
// missing.
std::vector<std::pair<std::string, std::string>> with_stems(
    std::vector<std::string> policies) {
  if (std::find(policies.begin(), policies.end(), "none") == policies.end()) {
    policies.emplace_back("none");
  }
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> used;
  for (const auto& spec : policies) {
    const std::string base = report::policy_file_stem(spec);
    std::string stem = base;
    for (int n = 2; !used.insert(stem).second; ++n) {
      stem = base + "_" + std::to_string(n);
    }
    out.emplace_back(spec, stem);
  }
  return out;
}

void render_plots(const fs::path& dir, const Scenario& scenario,
                  const std::vector<std::pair<std::string, std::string>>& stems) {
  report::Plot loss{"Expected loss", "expected loss per day", {}, {}};
  report::Plot tail{"Tail probability (AHL >= 4)", "daily probability", {}, {}};
  for (const auto& [spec, stem] : stems) {
    const fs::path path = dir / ("compare_" + stem + ".csv");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    const std::string label = stem == "none" ? "baseline" : stem;
    auto series = report::read_compare_csv(in, label);
    loss.series.push_back(
        {label, series.expected_loss_mean, series.expected_loss_std});
    tail.series.push_back({label, series.tail_prob_mean, series.tail_prob_std});
  }
  const DayMetrics limit = worst_case_metrics(scenario);
  loss.asymptote = limit.expected_loss;
  tail.asymptote = limit.tail_prob;
  write_file(dir / "expected_loss.svg", report::render_svg(loss));
  write_file(dir / "tail_probability.svg", report::render_svg(tail));
}

}  // namespace

int cmd_run(const CommonOptions& options, const std::string& policy_spec,
            std::ostream& err) {
  return guarded(err, [&] {
    check_horizon(options.horizon);
    const Scenario scenario = load(options);
    const auto policy = load_policy(policy_spec, scenario);
    prepare_out_dir(options.out_dir);
    const Trajectory t =
        run_simulation(scenario, *policy, options.seed, options.horizon);
    std::ostringstream csv;
    report::write_trajectory_csv(csv, t);
    write_file(fs::path(options.out_dir) / "trajectory.csv", csv.str());
  });
}

int cmd_table2(const CommonOptions& options, std::size_t reps,
               std::ostream& err) {
  return guarded(err, [&] {
    check_horizon(options.horizon);
    if (reps < 1) throw UsageError("--reps must be at least 1");
    Scenario scenario = load(options);
    scenario.delta_e = 0.0;
    prepare_out_dir(options.out_dir);
    const NoObservationPolicy baseline;
    const auto summary = run_ensemble(scenario, baseline, reps, options.seed,
                                      {options.horizon, options.threads});
    std::ostringstream csv;
    report::write_table2_csv(csv, scenario, summary);
    write_file(fs::path(options.out_dir) / "table2.csv", csv.str());
  });
}

int cmd_compare(const CommonOptions& options,
                const std::vector<std::string>& policies, std::size_t reps,
                std::ostream& err) {
  return guarded(err, [&] {
    check_horizon(options.horizon);
    if (reps < 1) throw UsageError("--reps must be at least 1");
    if (policies.empty()) throw UsageError("at least one --policy is required");
    const Scenario scenario = load(options);
    const auto stems = with_stems(policies);

    std::vector<std::unique_ptr<Policy>> built;
    for (const auto& [spec, stem] : stems) {
      built.push_back(load_policy(spec, scenario));
    }
    prepare_out_dir(options.out_dir);
    const fs::path dir(options.out_dir);

    std::vector<std::pair<std::string, HurtCounts>> severity_rows;
    for (std::size_t i = 0; i < stems.size(); ++i) {
      const auto summary = run_ensemble(scenario, *built[i], reps, options.seed,
                                        {options.horizon, options.threads});
      std::ostringstream csv;
      report::write_compare_csv(csv, summary);
      write_file(dir / ("compare_" + stems[i].second + ".csv"), csv.str());

      // Replication 0 uses the base seed, so its totals are the single run.
      severity_rows.emplace_back(
          stems[i].second == "none" ? "baseline" : stems[i].second,
          severity_totals(summary.incident_totals.front()));
    }

    std::ostringstream severity;
    report::write_severity_csv(severity, severity_rows);
    write_file(dir / "severity_counts.csv", severity.str());
    render_plots(dir, scenario, stems);
  });
}

int cmd_plot(const CommonOptions& options,
             const std::vector<std::string>& policies, std::ostream& err) {
  return guarded(err, [&] {
    if (policies.empty()) throw UsageError("at least one --policy is required");
    const Scenario scenario = load(options);
    render_plots(fs::path(options.out_dir), scenario, with_stems(policies));
  });
}

}  // namespace safetysim::cli
