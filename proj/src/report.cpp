#include "safetysim/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace safetysim::report {

namespace {

std::string svg_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const Scenario& s = *trajectory.scenario;
  out << "day";
  for (const auto& a : s.areas) out << ",theta_" << a.id;
  for (const auto& a : s.areas) out << ",xi_" << a.id;
  for (const auto& a : s.areas) {
    out << ",n_e_" << a.id << ",n_neg_" << a.id << ",n_pos_" << a.id;
  }
  for (const auto& t : s.obs_types) {
    for (const auto& a : s.areas) {
      out << ",obs_pos_" << t.id << '_' << a.id << ",obs_neg_" << t.id << '_'
          << a.id;
    }
  }
  out << ",expected_loss,tail_prob\n";

  for (const auto& day : trajectory.days) {
    out << day.day;
    for (double v : day.theta) out << ',' << format_number(v);
    for (double v : day.xi) out << ',' << format_number(v);
    for (const auto& e : day.events) {
      out << ',' << e.counts.incidents << ',' << e.counts.unsafe << ','
          << e.counts.safe;
    }
    for (std::size_t t = 0; t < s.obs_type_count(); ++t) {
      for (std::size_t a = 0; a < s.area_count(); ++a) {
        const auto& c = day.observations.at(t, a);
        out << ',' << c.safe << ',' << c.unsafe;
      }
    }
    out << ',' << format_number(day.metrics.expected_loss) << ','
        << format_number(day.metrics.tail_prob) << '\n';
  }
}

void write_table2_csv(std::ostream& out, const Scenario& scenario,
                      const EnsembleSummary& summary) {
  out << "area";
  for (std::size_t j = 0; j < kHurtLevels; ++j) {
    out << ",ahl" << j << "_p50,ahl" << j << "_p05,ahl" << j << "_p95";
  }
  out << '\n';
  for (std::size_t a = 0; a < scenario.area_count(); ++a) {
    out << scenario.areas[a].id;
    for (const auto& p : summary.incident_percentiles.at(a)) {
      out << ',' << p.p50 << ',' << p.p05 << ',' << p.p95;
    }
    out << '\n';
  }
}

void write_compare_csv(std::ostream& out, const EnsembleSummary& summary) {
  out << "day,expected_loss_mean,expected_loss_std,tail_prob_mean,tail_prob_std\n";
  for (std::size_t d = 0; d < summary.expected_loss_mean.size(); ++d) {
    out << d + 1 << ',' << format_number(summary.expected_loss_mean[d]) << ','
        << format_number(summary.expected_loss_std[d]) << ','
        << format_number(summary.tail_prob_mean[d]) << ','
        << format_number(summary.tail_prob_std[d]) << '\n';
  }
}

MetricSeries read_compare_csv(std::istream& in, std::string label) {
  MetricSeries series;
  series.label = std::move(label);
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("day,expected_loss_mean", 0) != 0) {
    throw std::runtime_error("compare CSV: unexpected header");
  }
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(fields, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("compare CSV: bad number on row " +
                                 std::to_string(row));
      }
    }
    if (values.size() != 5) {
      throw std::runtime_error("compare CSV: expected 5 columns on row " +
                               std::to_string(row));
    }
    series.expected_loss_mean.push_back(values[1]);
    series.expected_loss_std.push_back(values[2]);
    series.tail_prob_mean.push_back(values[3]);
    series.tail_prob_std.push_back(values[4]);
  }
  return series;
}

void write_severity_csv(
    std::ostream& out,
    std::span<const std::pair<std::string, HurtCounts>> rows) {
  out << "approach";
  for (std::size_t j = 0; j < kHurtLevels; ++j) out << ",ahl" << j;
  out << '\n';
  for (const auto& [name, counts] : rows) {
    out << name;
    for (auto c : counts) out << ',' << c;
    out << '\n';
  }
}

std::string render_svg(const Plot& plot) {
  constexpr double kWidth = 900.0;
  constexpr double kHeight = 480.0;
  constexpr double kLeft = 80.0;
  constexpr double kRight = 180.0;
  constexpr double kTop = 40.0;
  constexpr double kBottom = 50.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::size_t days = 1;
  double y_min = 0.0;
  double y_max = 0.0;
  for (const auto& s : plot.series) {
    days = std::max(days, s.mean.size());
    for (std::size_t d = 0; d < s.mean.size(); ++d) {
      const double sd = d < s.stddev.size() ? s.stddev[d] : 0.0;
      y_min = std::min(y_min, s.mean[d] - sd);
      y_max = std::max(y_max, s.mean[d] + sd);
    }
  }
  if (plot.asymptote) y_max = std::max(y_max, *plot.asymptote);
  if (y_max <= y_min) y_max = y_min + 1.0;
  y_max += 0.05 * (y_max - y_min);

  const auto x_of = [&](std::size_t d) {
    return kLeft + (days == 1 ? 0.0
                              : plot_w * static_cast<double>(d) /
                                    static_cast<double>(days - 1));
  };
  const auto y_of = [&](double v) {
    return kTop + plot_h * (1.0 - (v - y_min) / (y_max - y_min));
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << escape_xml(plot.title) << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" fill=\"none\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\"/>\n</g>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = y_min + (y_max - y_min) * i / 5.0;
    const double y = y_of(v);
    svg << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << svg_coord(y) << "\" x2=\""
        << kLeft << "\" y2=\"" << svg_coord(y) << "\" stroke=\"black\"/>"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << svg_coord(y + 4)
        << "\" text-anchor=\"end\">" << format_number(v) << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const auto d = static_cast<std::size_t>(
        std::lround(static_cast<double>(days - 1) * i / 5.0));
    const double x = x_of(d);
    svg << "<line x1=\"" << svg_coord(x) << "\" y1=\"" << kTop + plot_h
        << "\" x2=\"" << svg_coord(x) << "\" y2=\"" << kTop + plot_h + 4
        << "\" stroke=\"black\"/>"
        << "<text x=\"" << svg_coord(x) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << d + 1 << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">day</text>\n";
  svg << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << escape_xml(plot.y_label) << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    if (s.mean.empty()) continue;

    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" "
        << "stroke=\"none\" points=\"";
    for (std::size_t d = 0; d < s.mean.size(); ++d) {
      const double sd = d < s.stddev.size() ? s.stddev[d] : 0.0;
      svg << svg_coord(x_of(d)) << ',' << svg_coord(y_of(s.mean[d] + sd)) << ' ';
    }
    for (std::size_t d = s.mean.size(); d-- > 0;) {
      const double sd = d < s.stddev.size() ? s.stddev[d] : 0.0;
      svg << svg_coord(x_of(d)) << ',' << svg_coord(y_of(s.mean[d] - sd)) << ' ';
    }
    svg << "\"/>\n";

    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t d = 0; d < s.mean.size(); ++d) {
      svg << svg_coord(x_of(d)) << ',' << svg_coord(y_of(s.mean[d])) << ' ';
    }
    svg << "\"/>\n";

    const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
    svg << "<line x1=\"" << kLeft + plot_w + 15 << "\" y1=\"" << svg_coord(ly)
        << "\" x2=\"" << kLeft + plot_w + 40 << "\" y2=\"" << svg_coord(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>"
        << "<text x=\"" << kLeft + plot_w + 46 << "\" y=\"" << svg_coord(ly + 4)
        << "\">" << escape_xml(s.label) << "</text>\n";
  }

  if (plot.asymptote) {
    const double y = y_of(*plot.asymptote);
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << svg_coord(y) << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << svg_coord(y)
        << "\" stroke=\"black\" stroke-dasharray=\"2 4\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string policy_file_stem(std::string_view spec) {
  const std::string_view name = spec.substr(0, spec.find(':'));
  std::string out;
  for (char c : name) {
    out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
  }
  return out.empty() ? "policy" : out;
}

}  // namespace safetysim::report
