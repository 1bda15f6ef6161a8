#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace safetysim::cli {

enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kUsageError = 2 };

struct CommonOptions {
  std::string scenario_path;
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  int horizon = 0;  // 0: the scenario's horizon_days
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Writes <out_dir>/trajectory.csv for one run.
int cmd_run(const CommonOptions& options, const std::string& policy,
            std::ostream& err);

/// Writes <out_dir>/table2.csv: incident-count percentiles of `reps`
/// no-observation, no-feedback runs.
int cmd_table2(const CommonOptions& options, std::size_t reps,
               std::ostream& err);

/// Writes compare_<policy>.csv per policy (the no-observation baseline is
/// always included as compare_none.csv), severity_counts.csv from the
/// base-seed run of each policy, and the two SVG plots rendered from the
/// compare CSVs.
int cmd_compare(const CommonOptions& options,
                const std::vector<std::string>& policies, std::size_t reps,
                std::ostream& err);

/// Regenerates expected_loss.svg and tail_probability.svg from existing
/// compare CSVs in out_dir.
int cmd_plot(const CommonOptions& options,
             const std::vector<std::string>& policies, std::ostream& err);

}  // namespace safetysim::cli
