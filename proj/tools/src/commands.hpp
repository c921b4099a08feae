#pragma once

// Internal to the CLI: flag storage shared between the parser and the
// command bodies.

#include <cstdint>
#include <string>
#include <vector>

#include "hoopstat/analyses.hpp"

namespace hoopstat::cli {

struct GlobalArgs {
  std::string data_dir;
  std::string format = "csv";
  std::string plot;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  double lambda = data::kDefaultLambda;
  std::size_t window = 0;
  std::string era = "full";
  int break_season = 0;
  std::string period_scheme;
  int precision = 4;
  std::string output;

  // Which of the optional flags were given.
  bool has_seed = false, has_iterations = false, has_window = false, has_break = false;
};

struct TestArgs {
  std::string input;
  std::string section;  // a "# table:" or "# series:" block of a rendered report
  std::string column;
  std::string x, y;
  std::string group;
  std::vector<std::string> columns;
  std::string label_column = "season";
  double threshold = 0.0;
  std::string alternative = "two-sided";
  bool approx = false;
  std::int64_t successes = 0, trials = 0;
  double p0 = 0.25;
  std::size_t lags = 5;
  double trim = 0.15;
  std::string null_model = "pooled";
  std::string statistic = "llr";
};

stats::MultinomialNull parse_null(const std::string& text);
stats::GofStatistic parse_statistic(const std::string& text);

/// Runs `test <name>` on the user's CSV.
analyses::TestEntry run_test_command(const std::string& name, const TestArgs& args,
                                     const GlobalArgs& global);

}  // namespace hoopstat::cli
