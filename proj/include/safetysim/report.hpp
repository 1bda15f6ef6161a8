#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "safetysim/engine.hpp"
#include "safetysim/scenario.hpp"

namespace safetysim::report {

/// Six significant digits, the format of every real number in the CSVs.
std::string format_number(double value);

/// One row per day:
///   day, theta_<area>..., xi_<area>..., n_e_<area>, n_neg_<area>,
///   n_pos_<area> (per area), obs_pos_<type>_<area>, obs_neg_<type>_<area>
///   (per type, then area), expected_loss, tail_prob
/// theta is the state the day's events were drawn from.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// One row per area; for each AHL j the columns ahl<j>_p50, ahl<j>_p05,
/// ahl<j>_p95 of total incident counts across replications.
void write_table2_csv(std::ostream& out, const Scenario& scenario,
                      const EnsembleSummary& summary);

/// day, expected_loss_mean, expected_loss_std, tail_prob_mean, tail_prob_std
void write_compare_csv(std::ostream& out, const EnsembleSummary& summary);

struct MetricSeries {
  std::string label;
  std::vector<double> expected_loss_mean;
  std::vector<double> expected_loss_std;
  std::vector<double> tail_prob_mean;
  std::vector<double> tail_prob_std;
};

/// Reads back what write_compare_csv wrote. Throws std::runtime_error on a
/// malformed file.
MetricSeries read_compare_csv(std::istream& in, std::string label);

/// approach, ahl0 ... ahl5: incident totals of a single run per approach.
void write_severity_csv(
    std::ostream& out,
    std::span<const std::pair<std::string, HurtCounts>> rows);

struct PlotSeries {
  std::string label;
  std::vector<double> mean;
  std::vector<double> stddev;
};

struct Plot {
  std::string title;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::optional<double> asymptote;  // drawn dotted
};

/// Static SVG line chart: one mean line and a +/-1 std band per series.
std::string render_svg(const Plot& plot);

/// File-name-safe stem for a policy spec, e.g. "weighted:0.2,0.8" -> "weighted".
std::string policy_file_stem(std::string_view spec);

}  // namespace safetysim::report
