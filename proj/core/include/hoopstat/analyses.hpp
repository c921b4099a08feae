#pragma once

// The six historical analyses.  Each pipeline is a pure function of the
// dataset and its parameters and returns a self-describing report.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hoopstat/dataset.hpp"
#include "hoopstat/stats_tests.hpp"

namespace hoopstat::analyses {

enum class AnalysisId {
  dominance,
  champion_dominance,
  pluralism,
  pace,
  scorer_correlation,
  final_four_randomness,
};
std::string_view to_string(AnalysisId id);

using Cell = std::variant<std::string, std::int64_t, double>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Observation-level data: CSV keeps every digit so the rows can be fed
  // back through the matching test.
  bool full_precision = false;

  /// Index of a column; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
};

struct NamedSeries {
  std::string name;
  TimeSeries series;
};

struct TestEntry {
  std::string name;
  std::variant<stats::TestResult, stats::BreakResult> result;

  const stats::TestResult& base() const;
  const stats::BreakResult* as_break() const { return std::get_if<stats::BreakResult>(&result); }
};

// A figure: which series to draw together.
struct ChartSpec {
  std::string name;  // also the default file stem
  std::string title;
  std::string y_label;
  std::vector<std::string> series;
};

struct AnalysisReport {
  AnalysisId id = AnalysisId::dominance;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Table> tables;
  std::vector<NamedSeries> series;
  std::vector<TestEntry> tests;
  std::vector<std::string> notes;
  std::vector<ChartSpec> charts;

  // Lookups throw std::out_of_range when the name is unknown.
  const Table& table(std::string_view name) const;
  const TimeSeries& find_series(std::string_view name) const;
  const TestEntry& test(std::string_view name) const;
};

AnalysisReport analyze_dominance(const data::Dataset& ds,
                                 const data::PeriodScheme& scheme = data::default_period_scheme());

AnalysisReport analyze_champion_dominance(const data::Dataset& ds);

struct PluralismOptions {
  // Last season of the old era.  Defaults to the detected break.
  std::optional<int> break_ordinal;
  std::size_t window = 10;
  // Run the break test on the moving average instead of the raw series.
  bool break_on_moving_average = false;
  stats::ZivotAndrewsOptions break_test;
  // Which 2000-01 final enters the paired post-break tests.
  Fork modern_fork = Fork::euroleague_branch;
};
AnalysisReport analyze_pluralism(const data::Dataset& ds, const PluralismOptions& options = {});

struct PaceOptions {
  double lambda = data::kDefaultLambda;
  int break_ordinal = 1998;
  std::size_t window = 5;
  // Spread for the lambda sensitivity rows.
  double lambda_step = 0.1;
};
AnalysisReport analyze_pace(const data::Dataset& ds, const PaceOptions& options = {});

AnalysisReport analyze_scorer_correlation(const data::Dataset& ds);

enum class Era { full, modern };
std::string_view to_string(Era era);
Era parse_era(std::string_view text);

/// First season of the modern era.
inline constexpr int kModernEraFirst = 1999;

struct FinalFourOptions {
  Era era = Era::full;
  // Overrides kModernEraFirst - 1 for the modern era when set.
  std::optional<int> break_ordinal;
  stats::MultinomialOptions monte_carlo;
  double flag_below = 0.1;
};
AnalysisReport analyze_final_four_randomness(const data::Dataset& ds,
                                             const FinalFourOptions& options = {});

}  // namespace hoopstat::analyses
