#include "hoopstat_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>

#include "commands.hpp"
#include "hoopstat/errors.hpp"
#include "hoopstat/report.hpp"

namespace hoopstat::cli {
namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

int fail(std::ostream& err, int code, std::string_view kind, const std::string& message) {
  err << "hoopstat: " << kind << " error: " << one_line(message) << '\n';
  return code;
}

report::OutputSpec output_spec(const GlobalArgs& g) {
  report::OutputSpec spec;
  spec.format = report::parse_format(g.format);
  spec.precision = g.precision;
  if (!g.plot.empty()) spec.plot_path = g.plot;
  return spec;
}

void emit(const std::string& text, const GlobalArgs& g, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
  } else {
    report::write_file(g.output, text);
  }
}

void emit_report(const analyses::AnalysisReport& rep, const GlobalArgs& g, std::ostream& out) {
  const auto spec = output_spec(g);
  const auto text = report::render_report(rep, spec);
  if (spec.plot_path) {
    const auto paths = report::chart_paths(rep, *spec.plot_path);
    for (std::size_t i = 0; i < rep.charts.size(); ++i) {
      const auto& chart = rep.charts[i];
      report::write_line_chart(report::chart_series(rep, chart), {chart.title, "season", chart.y_label},
                               paths[i]);
    }
  }
  emit(text, g, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  GlobalArgs g;
  g.data_dir = HOOPSTAT_DEFAULT_DATA_DIR;
  TestArgs t;
  bool break_on_ma = false;
  double flag_below = 0.1;

  CLI::App app{"Statistics of the European club basketball championship record", "hoopstat"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--data-dir", g.data_dir, "Directory with the five dataset CSV files");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--plot", g.plot, "SVG path for the first chart; further charts go beside it");
  auto* seed = app.add_option("--seed", g.seed, "Monte-Carlo seed");
  auto* iterations = app.add_option("--iterations", g.iterations, "Monte-Carlo iterations");
  app.add_option("--lambda", g.lambda, "Free-throw weight in possession estimates");
  auto* window = app.add_option("--window", g.window, "Moving-average window in seasons");
  app.add_option("--era", g.era, "Era for final-four odds")->check(CLI::IsMember({"full", "modern"}));
  auto* brk = app.add_option("--break-season", g.break_season,
                             "Last season (end year) before the break");
  app.add_option("--period-scheme", g.period_scheme, "Periods as FIRST-LAST,FIRST-LAST,...");
  app.add_option("--precision", g.precision, "Decimal places")->check(CLI::Range(1, 12));
  app.add_option("--output", g.output, "Write the report here instead of stdout");

  std::function<void()> action;
  auto analysis = [&](const char* name, const char* help, std::function<analyses::AnalysisReport(
                                                                   const data::Dataset&)> body) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&, body] {
      action = [&, body] { emit_report(body(data::load_dataset(g.data_dir)), g, out); };
    });
    return sub;
  };

  analysis("dominance", "Titles and appearances by region and period", [&](const data::Dataset& ds) {
    return analyses::analyze_dominance(ds, g.period_scheme.empty()
                                               ? data::default_period_scheme()
                                               : data::parse_period_scheme(g.period_scheme));
  });
  analysis("champion-dominance", "Champion scoring margins",
           [](const data::Dataset& ds) { return analyses::analyze_champion_dominance(ds); });
  auto* plural = analysis("pluralism", "First-scorer share in the final", [&](const data::Dataset& ds) {
    analyses::PluralismOptions o;
    if (g.has_window) o.window = g.window;
    if (g.has_break) o.break_ordinal = g.break_season;
    o.break_on_moving_average = break_on_ma;
    o.break_test = {t.lags, t.trim};
    return analyses::analyze_pluralism(ds, o);
  });
  plural->add_flag("--break-on-ma", break_on_ma, "Search the break on the moving average");
  plural->add_option("--lags", t.lags, "Augmentation lags for the break test");
  plural->add_option("--trim", t.trim, "Trimmed fraction at each end of the break search");
  analysis("pace", "Possessions in the final", [&](const data::Dataset& ds) {
    analyses::PaceOptions o;
    o.lambda = g.lambda;
    if (g.has_window) o.window = g.window;
    if (g.has_break) o.break_ordinal = g.break_season;
    return analyses::analyze_pace(ds, o);
  });
  analysis("scorer-correlation", "Top scorer PPG against team performance",
           [](const data::Dataset& ds) { return analyses::analyze_scorer_correlation(ds); });
  auto* odds = analysis("final-four-odds", "Are final fours won at random?", [&](const data::Dataset& ds) {
    analyses::FinalFourOptions o;
    o.era = analyses::parse_era(g.era);
    if (g.has_break) o.break_ordinal = g.break_season;
    if (g.has_seed) o.monte_carlo.seed = g.seed;
    if (g.has_iterations) o.monte_carlo.iterations = g.iterations;
    o.monte_carlo.null = parse_null(t.null_model);
    o.monte_carlo.statistic = parse_statistic(t.statistic);
    o.flag_below = flag_below;
    return analyses::analyze_final_four_randomness(ds, o);
  });
  odds->add_option("--null", t.null_model, "Null model")
      ->check(CLI::IsMember({"pooled", "per-final-four"}));
  odds->add_option("--statistic", t.statistic, "Goodness-of-fit statistic")
      ->check(CLI::IsMember({"llr", "pearson"}));
  odds->add_option("--flag-below", flag_below, "Flag teams whose binomial p is below this");

  auto* test = app.add_subcommand("test", "Run one test on columns of a CSV file");
  test->require_subcommand(1);
  test->fallthrough();
  auto add_test = [&](const char* name, const char* help) {
    auto* sub = test->add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&, name = std::string(name)] {
      action = [&, name] { emit(report::render_test(run_test_command(name, t, g), output_spec(g)), g, out); };
    });
    return sub;
  };
  auto input = [&](CLI::App* sub) {
    sub->add_option("--input", t.input, "CSV file")->required();
    sub->add_option("--section", t.section, "Table or series section of a rendered report");
  };
  auto alternative = [&](CLI::App* sub) {
    sub->add_option("--alternative", t.alternative, "two-sided, greater or less")
        ->check(CLI::IsMember({"two-sided", "greater", "less"}));
    sub->add_flag("--approx", t.approx, "Use the normal approximation even when exact is available");
  };

  auto* fr = add_test("friedman", "Friedman rank test; rows are blocks");
  input(fr);
  fr->add_option("--columns", t.columns, "Treatment columns")->delimiter(',')->required();

  auto* wx = add_test("wilcoxon", "Wilcoxon signed-rank test on paired columns");
  input(wx);
  wx->add_option("--x", t.x)->required();
  wx->add_option("--y", t.y)->required();
  alternative(wx);

  auto* mw = add_test("mann-whitney", "Mann-Whitney rank-sum test");
  input(mw);
  mw->add_option("--x", t.x, "First sample column (blank cells skipped)");
  mw->add_option("--y", t.y, "Second sample column");
  mw->add_option("--column", t.column, "Value column, split by --group");
  mw->add_option("--group", t.group, "Two-level grouping column");
  alternative(mw);

  auto* rn = add_test("runs", "Runs test above/below a threshold");
  input(rn);
  rn->add_option("--column", t.column)->required();
  rn->add_option("--threshold", t.threshold);

  for (const char* name : {"pearson", "spearman"}) {
    auto* c = add_test(name, name == std::string("pearson") ? "Pearson correlation t-test"
                                                            : "Spearman rank correlation");
    input(c);
    c->add_option("--x", t.x)->required();
    c->add_option("--y", t.y)->required();
  }

  auto* bn = add_test("binomial", "Two-sided exact binomial test");
  bn->add_option("--successes", t.successes)->required();
  bn->add_option("--trials", t.trials)->required();
  bn->add_option("--p0", t.p0, "Null success probability");

  auto* mn = add_test("multinomial", "Monte-Carlo test that final fours are won at random");
  input(mn);
  mn->add_option("--columns", t.columns, "Four team columns, winner first")->delimiter(',');
  mn->add_option("--null", t.null_model)->check(CLI::IsMember({"pooled", "per-final-four"}));
  mn->add_option("--statistic", t.statistic)->check(CLI::IsMember({"llr", "pearson"}));

  auto* za = add_test("zivot-andrews", "Unit-root test with one structural break");
  input(za);
  za->add_option("--column", t.column)->required();
  za->add_option("--label-column", t.label_column, "Column naming each observation");
  za->add_option("--lags", t.lags);
  za->add_option("--trim", t.trim);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, kUsage, "usage", e.what());
  }
  g.has_seed = seed->count() > 0;
  g.has_iterations = iterations->count() > 0;
  g.has_window = window->count() > 0;
  g.has_break = brk->count() > 0;

  try {
    action();
    return kOk;
  } catch (const LoadError& e) {
    return fail(err, kData, "data", e.what());
  } catch (const DataError& e) {
    return fail(err, kData, "data", e.what());
  } catch (const IoError& e) {
    return fail(err, kData, "io", e.what());
  } catch (const DomainError& e) {
    return fail(err, kDomain, "domain", e.what());
  } catch (const std::exception& e) {
    return fail(err, 1, "internal", e.what());
  }
}

}  // namespace hoopstat::cli
