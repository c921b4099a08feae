#pragma once

// Rendering of analysis reports: CSV sections, versioned JSON and SVG line
// charts.  Rendering is deterministic; the same report gives the same bytes.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hoopstat/analyses.hpp"

namespace hoopstat::report {

inline constexpr int kSchemaVersion = 1;

enum class Format { csv, json };
/// Throws DomainError for anything but csv or json.
Format parse_format(std::string_view text);

struct OutputSpec {
  Format format = Format::csv;
  std::optional<std::filesystem::path> plot_path;
  int precision = 4;  // decimal places, 1..12
};

/// Throws DomainError when precision is outside [1, 12].
std::string render_report(const analyses::AnalysisReport& report, const OutputSpec& spec);
/// A single test outside any analysis: the tests section alone in CSV, or a
/// JSON object holding schema_version and a one-element "tests" array.
std::string render_test(const analyses::TestEntry& entry, const OutputSpec& spec);
std::string render_csv(const analyses::AnalysisReport& report, int precision);
std::string render_json(const analyses::AnalysisReport& report, int precision);

/// Fixed-point text with `precision` decimals; "nan", "inf" or "-inf"
/// for non-finite values.
std::string format_fixed(double value, int precision);
/// Shortest text that parses back to the same double.
std::string format_exact(double value);

struct ChartSeries {
  std::string label;
  TimeSeries series;
};

struct ChartLabels {
  std::string title;
  std::string x_label = "season";
  std::string y_label;
};

inline constexpr int kChartWidth = 960;
inline constexpr int kChartHeight = 540;

/// Self-contained SVG 1.1 document, one polyline per nonempty series.
/// Throws DomainError when every series is empty.
std::string render_line_chart(const std::vector<ChartSeries>& series, const ChartLabels& labels);

/// Writes render_line_chart output; IoError when the file cannot be written.
void write_line_chart(const std::vector<ChartSeries>& series, const ChartLabels& labels,
                      const std::filesystem::path& path);

/// The series a report chart refers to, in chart order.
std::vector<ChartSeries> chart_series(const analyses::AnalysisReport& report,
                                      const analyses::ChartSpec& chart);

/// Where each chart of a report goes when the user asked for `plot_path`:
/// the first chart at plot_path, the rest beside it as <stem>_<chart>.svg.
std::vector<std::filesystem::path> chart_paths(const analyses::AnalysisReport& report,
                                               const std::filesystem::path& plot_path);

/// Writes `text` to `path`; IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace hoopstat::report
