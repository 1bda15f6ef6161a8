// Command-line front end: single runs, no-feedback incident tables and
// policy comparisons written as CSV and SVG.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "safetysim/commands.hpp"

namespace {

void add_common(CLI::App& cmd, safetysim::cli::CommonOptions& options) {
  cmd.add_option("--scenario", options.scenario_path, "Scenario JSON file")
      ->required();
  cmd.add_option("--out-dir", options.out_dir, "Directory for output files")
      ->capture_default_str();
  cmd.add_option("--seed", options.seed, "Base random seed")
      ->capture_default_str();
  cmd.add_option("--horizon", options.horizon,
                 "Days to simulate (default: scenario horizon_days)");
  cmd.add_option("--threads", options.threads,
                 "Worker threads for replications (0: all cores)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace safetysim::cli;

  CLI::App app{"Stochastic safety-environment simulator"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string run_policy = "none";
  auto* run = app.add_subcommand("run", "Single simulation -> trajectory.csv");
  add_common(*run, run_opts);
  run->add_option("--policy", run_policy,
                  "uniform|counts|severity|weighted:<w1,...>|none")
      ->capture_default_str();

  CommonOptions table_opts;
  std::size_t table_reps = 100;
  auto* table = app.add_subcommand(
      "table2", "Incident-count percentiles without feedback -> table2.csv");
  add_common(*table, table_opts);
  table->add_option("--reps", table_reps, "Replications")->capture_default_str();

  CommonOptions cmp_opts;
  std::vector<std::string> cmp_policies;
  std::size_t cmp_reps = 100;
  auto* compare = app.add_subcommand(
      "compare", "Ensemble comparison of policies -> CSVs and SVG plots");
  add_common(*compare, cmp_opts);
  compare->add_option("--policy", cmp_policies, "Policy spec (repeatable)")
      ->required();
  compare->add_option("--reps", cmp_reps, "Replications")->capture_default_str();

  CommonOptions plot_opts;
  std::vector<std::string> plot_policies;
  auto* plot = app.add_subcommand(
      "plot", "Re-render SVG plots from existing compare_<policy>.csv files");
  add_common(*plot, plot_opts);
  plot->add_option("--policy", plot_policies, "Policy spec (repeatable)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsageError;
  }

  if (run->parsed()) return cmd_run(run_opts, run_policy, std::cerr);
  if (table->parsed()) return cmd_table2(table_opts, table_reps, std::cerr);
  if (compare->parsed()) {
    return cmd_compare(cmp_opts, cmp_policies, cmp_reps, std::cerr);
  }
  return cmd_plot(plot_opts, plot_policies, std::cerr);
}
