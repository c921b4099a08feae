#include "hoopstat/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "hoopstat/errors.hpp"

namespace hoopstat::report {
namespace {

using analyses::AnalysisReport;
using analyses::Cell;
using Json = nlohmann::ordered_json;

void check_precision(int precision) {
  if (precision < 1 || precision > 12) {
    throw DomainError("precision must be in [1, 12], got " + std::to_string(precision));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_line(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
}

std::string cell_text(const Cell& cell, int precision, bool exact) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  const double v = std::get<double>(cell);
  return exact ? format_exact(v) : format_fixed(v, precision);
}

// Reals go into JSON already rounded so that the shortest representation
// nlohmann picks is the rounded decimal.
Json json_real(double v, int precision) {
  if (!std::isfinite(v)) return nullptr;
  const double r = std::strtod(format_fixed(v, precision).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

Json json_cell(const Cell& cell, int precision) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  return json_real(std::get<double>(cell), precision);
}

std::string test_details(const stats::TestResult& t, int precision) {
  std::string out;
  for (const auto& [k, v] : t.n_summary) out += (out.empty() ? "" : ";") + k + "=" + std::to_string(v);
  for (const auto& [k, v] : t.extras) out += (out.empty() ? "" : ";") + k + "=" + format_fixed(v, precision);
  return out;
}

Json json_test(const analyses::TestEntry& entry, int precision) {
  const auto& t = entry.base();
  Json j;
  j["name"] = entry.name;
  j["method"] = std::string(stats::to_string(t.method));
  j["alternative"] = std::string(stats::to_string(t.alternative));
  j["statistic"] = json_real(t.statistic, precision);
  j["p_value"] = json_real(t.p_value, precision);
  j["p_bracket"] = t.p_bracket.empty() ? Json(nullptr) : Json(t.p_bracket);
  j["degenerate"] = t.degenerate;
  j["n_summary"] = Json::object();
  for (const auto& [k, v] : t.n_summary) j["n_summary"][k] = v;
  j["extras"] = Json::object();
  for (const auto& [k, v] : t.extras) j["extras"][k] = json_real(v, precision);
  if (const auto* b = entry.as_break()) {
    Json br;
    br["position"] = b->break_position;
    br["label"] = b->break_label;
    br["decision_at"] = Json::object();
    for (const auto& [level, reject] : b->decision_at) {
      br["decision_at"][format_exact(level)] = reject ? "reject" : "fail_to_reject";
    }
    br["candidate_breaks"] = b->candidate_breaks;
    br["candidate_statistics"] = Json::array();
    for (double v : b->candidate_statistics) br["candidate_statistics"].push_back(json_real(v, precision));
    br["skipped_breaks"] = b->skipped_breaks;
    j["break"] = std::move(br);
  } else {
    j["break"] = nullptr;
  }
  return j;
}

void csv_tests(std::string& out, const std::vector<analyses::TestEntry>& tests, int precision) {
  out += "# tests\n";
  csv_line(out, {"name", "method", "alternative", "statistic", "p_value", "p_bracket",
                 "degenerate", "break", "details"});
  for (const auto& entry : tests) {
    const auto& t = entry.base();
    const auto* b = entry.as_break();
    csv_line(out, {entry.name, std::string(stats::to_string(t.method)),
                   std::string(stats::to_string(t.alternative)), format_fixed(t.statistic, precision),
                   format_fixed(t.p_value, precision), t.p_bracket, t.degenerate ? "true" : "false",
                   b ? b->break_label : "", test_details(t, precision)});
  }
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

std::string tick_text(double v, double step) {
  const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return std::string(buf) == "-0" ? "0" : buf;
}

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw DomainError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

std::string format_fixed(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[400];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  std::string s = buf;
  // A value that rounds to zero prints without its sign.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_exact(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string render_report(const AnalysisReport& report, const OutputSpec& spec) {
  return spec.format == Format::csv ? render_csv(report, spec.precision)
                                    : render_json(report, spec.precision);
}

std::string render_test(const analyses::TestEntry& entry, const OutputSpec& spec) {
  check_precision(spec.precision);
  if (spec.format == Format::csv) {
    std::string out;
    csv_tests(out, {entry}, spec.precision);
    return out;
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["precision"] = spec.precision;
  j["tests"] = Json::array({json_test(entry, spec.precision)});
  return j.dump(2) + "\n";
}

std::string render_csv(const AnalysisReport& report, int precision) {
  check_precision(precision);
  std::string out = "# analysis: " + std::string(analyses::to_string(report.id)) + "\n";
  for (const auto& [k, v] : report.parameters) out += "# parameter: " + k + "=" + v + "\n";

  out += "\n";
  csv_tests(out, report.tests, precision);

  for (const auto& table : report.tables) {
    out += "\n# table: " + table.name + "\n";
    csv_line(out, table.columns);
    for (const auto& row : table.rows) {
      std::vector<std::string> fields;
      for (const auto& cell : row) fields.push_back(cell_text(cell, precision, table.full_precision));
      csv_line(out, fields);
    }
  }

  // Series keep every digit: they are the inputs to the tests above.
  for (const auto& s : report.series) {
    out += "\n# series: " + s.name + "\n";
    csv_line(out, {"season", "ordinal", "fork", "value"});
    for (const auto& e : s.series) {
      csv_line(out, {e.season.label, std::to_string(e.season.ordinal),
                     std::string(to_string(e.season.fork)), format_exact(e.value)});
    }
  }

  if (!report.notes.empty()) out += "\n";
  for (const auto& note : report.notes) out += "# note: " + note + "\n";
  return out;
}

std::string render_json(const AnalysisReport& report, int precision) {
  check_precision(precision);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["analysis"] = std::string(analyses::to_string(report.id));
  j["precision"] = precision;
  j["parameters"] = Json::object();
  for (const auto& [k, v] : report.parameters) j["parameters"][k] = v;

  j["tests"] = Json::array();
  for (const auto& entry : report.tests) j["tests"].push_back(json_test(entry, precision));

  j["tables"] = Json::array();
  for (const auto& table : report.tables) {
    Json t;
    t["name"] = table.name;
    t["columns"] = table.columns;
    t["rows"] = Json::array();
    for (const auto& row : table.rows) {
      Json r = Json::array();
      for (const auto& cell : row) r.push_back(json_cell(cell, precision));
      t["rows"].push_back(std::move(r));
    }
    j["tables"].push_back(std::move(t));
  }

  j["series"] = Json::array();
  for (const auto& s : report.series) {
    Json js;
    js["name"] = s.name;
    js["points"] = Json::array();
    for (const auto& e : s.series) {
      js["points"].push_back({{"season", e.season.label},
                              {"ordinal", e.season.ordinal},
                              {"fork", std::string(to_string(e.season.fork))},
                              {"value", json_real(e.value, precision)}});
    }
    j["series"].push_back(std::move(js));
  }

  j["charts"] = Json::array();
  for (const auto& c : report.charts) {
    j["charts"].push_back(
        {{"name", c.name}, {"title", c.title}, {"y_label", c.y_label}, {"series", c.series}});
  }
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

std::string render_line_chart(const std::vector<ChartSeries>& series, const ChartLabels& labels) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  std::map<int, std::string> season_labels;
  for (const auto& s : series) {
    for (const auto& e : s.series) {
      if (!std::isfinite(e.value)) continue;
      xmin = std::min(xmin, double(e.season.ordinal));
      xmax = std::max(xmax, double(e.season.ordinal));
      ymin = std::min(ymin, e.value);
      ymax = std::max(ymax, e.value);
      season_labels.emplace(e.season.ordinal, e.season.label);
    }
  }
  if (!std::isfinite(xmin)) throw DomainError("line chart: every series is empty");

  if (xmin == xmax) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymin == ymax) {
    const double pad = std::max(1.0, std::abs(ymin) * 0.1);
    ymin -= pad;
    ymax += pad;
  }
  const double ystep = nice_step(ymax - ymin, 5);
  ymin = std::floor(ymin / ystep) * ystep;
  ymax = std::ceil(ymax / ystep) * ystep;

  constexpr double left = 80, right = 210, top = 50, bottom = 70;
  const double pw = kChartWidth - left - right, ph = kChartHeight - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(kChartWidth) + "\" height=\"" + std::to_string(kChartHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kChartWidth) + " " + std::to_string(kChartHeight) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kChartWidth / 2.0) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
         xml_escape(labels.title) + "</text>\n";

  // Axes.
  out += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(left + pw) +
         "\" y2=\"" + num(top + ph) + "\"/>\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" +
         num(top + ph) + "\"/>\n";
  out += "</g>\n";

  // Season ticks at decade boundaries, or at the ends of a short span.
  std::vector<int> xticks;
  for (int d = static_cast<int>(std::ceil(xmin / 10.0)) * 10; d <= xmax; d += 10) xticks.push_back(d);
  if (xticks.size() < 2) xticks = {static_cast<int>(xmin), static_cast<int>(xmax)};
  for (int x : xticks) {
    const auto it = season_labels.find(x);
    const std::string text = it != season_labels.end() ? it->second : std::to_string(x);
    out += "<line class=\"xtick\" x1=\"" + num(px(x)) + "\" y1=\"" + num(top + ph) + "\" x2=\"" +
           num(px(x)) + "\" y2=\"" + num(top + ph + 5) + "\" stroke=\"black\"/>\n";
    out += "<text class=\"xtick\" x=\"" + num(px(x)) + "\" y=\"" + num(top + ph + 20) +
           "\" text-anchor=\"middle\">" + xml_escape(text) + "</text>\n";
  }
  for (int i = 0; ymin + i * ystep <= ymax + ystep * 1e-9; ++i) {
    const double y = ymin + i * ystep;
    out += "<line class=\"ygrid\" x1=\"" + num(left) + "\" y1=\"" + num(py(y)) + "\" x2=\"" +
           num(left + pw) + "\" y2=\"" + num(py(y)) + "\" stroke=\"#dddddd\"/>\n";
    out += "<text class=\"ytick\" x=\"" + num(left - 8) + "\" y=\"" + num(py(y)) +
           "\" text-anchor=\"end\" dominant-baseline=\"middle\">" + tick_text(y, ystep) + "</text>\n";
  }
  out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(kChartHeight - 20.0) +
         "\" text-anchor=\"middle\">" + xml_escape(labels.x_label) + "</text>\n";
  out += "<text x=\"20\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         num(top + ph / 2) + ")\">" + xml_escape(labels.y_label) + "</text>\n";

  std::size_t drawn = 0;
  for (const auto& s : series) {
    std::string points;
    for (const auto& e : s.series) {
      if (!std::isfinite(e.value)) continue;
      if (!points.empty()) points += ' ';
      points += num(px(e.season.ordinal)) + "," + num(py(e.value));
    }
    if (points.empty()) continue;
    const char* color = kPalette[drawn % kPalette.size()];
    out += "<polyline data-series=\"" + xml_escape(s.label) + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    const double ly = top + 10 + 20.0 * drawn;
    out += "<g class=\"legend\"><line x1=\"" + num(left + pw + 15) + "\" y1=\"" + num(ly) +
           "\" x2=\"" + num(left + pw + 40) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/><text x=\"" + num(left + pw + 45) + "\" y=\"" + num(ly) +
           "\" dominant-baseline=\"middle\">" + xml_escape(s.label) + "</text></g>\n";
    ++drawn;
  }
  out += "</svg>\n";
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path.string() + ": cannot open for writing");
  f << text;
  f.close();
  if (!f) throw IoError(path.string() + ": write failed");
}

void write_line_chart(const std::vector<ChartSeries>& series, const ChartLabels& labels,
                      const std::filesystem::path& path) {
  write_file(path, render_line_chart(series, labels));
}

std::vector<ChartSeries> chart_series(const AnalysisReport& report,
                                      const analyses::ChartSpec& chart) {
  std::vector<ChartSeries> out;
  for (const auto& name : chart.series) out.push_back({name, report.find_series(name)});
  return out;
}

std::vector<std::filesystem::path> chart_paths(const AnalysisReport& report,
                                               const std::filesystem::path& plot_path) {
  std::vector<std::filesystem::path> out;
  for (std::size_t i = 0; i < report.charts.size(); ++i) {
    if (i == 0) {
      out.push_back(plot_path);
    } else {
      auto p = plot_path;
      p.replace_filename(plot_path.stem().string() + "_" + report.charts[i].name + ".svg");
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace hoopstat::report
