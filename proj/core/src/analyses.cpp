#include "hoopstat/analyses.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "hoopstat/errors.hpp"

namespace hoopstat::analyses {
namespace {

using data::Dataset;

std::string format_number(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

Cell count(std::size_t v) { return static_cast<std::int64_t>(v); }

// Period buckets as a pseudo-season axis: ordinal is the last year.
SeasonId period_season(const data::Period& p) { return {p.label, p.last, Fork::unified}; }

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sum of the elementwise operation over two aligned season series.
TimeSeries combine(const TimeSeries& a, const TimeSeries& b, double wa, double wb) {
  TimeSeries out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.push_back(a[i].season, wa * a[i].value + wb * b[i].value);
  }
  return out;
}

bool in_modern_subset(const SeasonId& s, int first, Fork fork) {
  return s.ordinal >= first && (s.fork == Fork::unified || s.fork == fork);
}

}  // namespace

std::string_view to_string(AnalysisId id) {
  switch (id) {
    case AnalysisId::dominance: return "dominance";
    case AnalysisId::champion_dominance: return "champion_dominance";
    case AnalysisId::pluralism: return "pluralism";
    case AnalysisId::pace: return "pace";
    case AnalysisId::scorer_correlation: return "scorer_correlation";
    case AnalysisId::final_four_randomness: return "final_four_randomness";
  }
  return "dominance";
}

std::string_view to_string(Era era) { return era == Era::full ? "full" : "modern"; }

Era parse_era(std::string_view text) {
  if (text == "full") return Era::full;
  if (text == "modern") return Era::modern;
  throw DomainError("unknown era '" + std::string(text) + "' (expected full or modern)");
}

std::size_t Table::column(std::string_view n) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == n) return i;
  }
  throw std::out_of_range("table " + name + " has no column " + std::string(n));
}

const stats::TestResult& TestEntry::base() const {
  if (const auto* b = std::get_if<stats::BreakResult>(&result)) return b->base;
  return std::get<stats::TestResult>(result);
}

const Table& AnalysisReport::table(std::string_view name) const {
  for (const auto& t : tables) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("no table " + std::string(name));
}

const TimeSeries& AnalysisReport::find_series(std::string_view name) const {
  for (const auto& s : series) {
    if (s.name == name) return s.series;
  }
  throw std::out_of_range("no series " + std::string(name));
}

const TestEntry& AnalysisReport::test(std::string_view name) const {
  for (const auto& t : tests) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("no test " + std::string(name));
}

AnalysisReport analyze_dominance(const Dataset& ds, const data::PeriodScheme& scheme) {
  AnalysisReport report;
  report.id = AnalysisId::dominance;
  std::string scheme_text;
  for (const auto& p : scheme) scheme_text += (scheme_text.empty() ? "" : ",") + p.label;
  report.parameters = {{"period_scheme", scheme_text}};

  const auto titles = data::titles_by_region_period(ds, scheme);
  const auto appearances = data::appearances_by_region_period(ds, scheme);

  for (const auto& [name, m] : {std::pair{"titles_by_region", &titles},
                                std::pair{"appearances_by_region", &appearances}}) {
    Table t{name, {"period"}, {}};
    for (auto r : data::kRegions) t.columns.emplace_back(data::to_string(r));
    for (std::size_t p = 0; p < scheme.size(); ++p) {
      std::vector<Cell> row{scheme[p].label};
      for (std::size_t c = 0; c < data::kRegions.size(); ++c) {
        row.push_back(static_cast<std::int64_t>((*m)(p, c)));
      }
      t.rows.push_back(std::move(row));
    }
    report.tables.push_back(std::move(t));
  }

  const auto countries = data::country_rollup(ds);
  Table rollup{"country_rollup", {"country", "region", "winner", "runner_up", "appearances", "teams"}, {}};
  std::map<data::Region, data::CountryRow> regions;
  for (const auto& row : countries) {
    rollup.rows.push_back({row.country, std::string(data::to_string(row.region)),
                           std::int64_t{row.titles}, std::int64_t{row.runners_up},
                           std::int64_t{row.appearances}, std::int64_t{row.teams}});
    auto& agg = regions[row.region];
    agg.titles += row.titles;
    agg.runners_up += row.runners_up;
    agg.appearances += row.appearances;
    agg.teams += row.teams;
  }
  report.tables.push_back(std::move(rollup));

  Table totals{"region_totals", {"region", "winner", "runner_up", "appearances", "teams"}, {}};
  for (auto r : data::kRegions) {
    const auto& agg = regions[r];
    totals.rows.push_back({std::string(data::to_string(r)), std::int64_t{agg.titles},
                           std::int64_t{agg.runners_up}, std::int64_t{agg.appearances},
                           std::int64_t{agg.teams}});
  }
  report.tables.push_back(std::move(totals));

  ChartSpec fig_titles{"titles_by_region", "Titles per geographic area", "titles", {}};
  ChartSpec fig_apps{"appearances_by_region", "Final four appearances per geographic area",
                     "appearances", {}};
  for (std::size_t c = 0; c < data::kRegions.size(); ++c) {
    const std::string region(data::to_string(data::kRegions[c]));
    TimeSeries ts, as;
    for (std::size_t p = 0; p < scheme.size(); ++p) {
      ts.push_back(period_season(scheme[p]), titles(p, c));
      as.push_back(period_season(scheme[p]), appearances(p, c));
    }
    report.series.push_back({"titles_" + region, std::move(ts)});
    report.series.push_back({"appearances_" + region, std::move(as)});
    fig_titles.series.push_back("titles_" + region);
    fig_apps.series.push_back("appearances_" + region);
  }
  report.charts = {fig_titles, fig_apps};

  report.tests.push_back({"friedman_titles", stats::friedman_test(titles)});
  report.tests.push_back({"friedman_appearances", stats::friedman_test(appearances)});
  report.notes.push_back("Blocks are periods, treatments are the four regions.");
  return report;
}

AnalysisReport analyze_champion_dominance(const Dataset& ds) {
  if (ds.champion_scoring.empty()) throw DataError("no champion scoring records");
  AnalysisReport report;
  report.id = AnalysisId::champion_dominance;

  TimeSeries champion, opponent, difference, per_team;
  Table dominant{"dominant_seasons",
                 {"season", "champion", "champ_ppg", "opp_ppg", "difference_pct", "above_30_pct"},
                 {}};
  std::size_t above_20 = 0, above_30 = 0;
  std::map<SeasonId, std::string> winners;
  for (const auto& ff : ds.final_fours) winners[ff.season] = ff.winner();
  for (const auto& rec : ds.champion_scoring) {
    const double diff = 100.0 * (rec.champ_ppg - rec.opp_ppg) / rec.opp_ppg;
    champion.push_back(rec.season, rec.champ_ppg);
    opponent.push_back(rec.season, rec.opp_ppg);
    difference.push_back(rec.season, diff);
    per_team.push_back(rec.season, (rec.champ_ppg + rec.opp_ppg) / 2.0);
    if (diff > 20.0) {
      ++above_20;
      above_30 += diff > 30.0;
      dominant.rows.push_back({rec.season.label, ds.team(winners.at(rec.season)).display_name(),
                               rec.champ_ppg, rec.opp_ppg, diff,
                               std::string(diff > 30.0 ? "yes" : "no")});
    }
  }

  const auto scheme = data::default_period_scheme();
  Table decades{"decade_averages",
                {"period", "champion", "opponent", "points_per_team", "difference_pct"}, {}};
  TimeSeries decade_diff, decade_per_team;
  for (const auto& p : scheme) {
    std::vector<double> c, o, d;
    for (std::size_t i = 0; i < champion.size(); ++i) {
      const int y = champion[i].season.ordinal;
      if (y < p.first || y > p.last) continue;
      c.push_back(champion[i].value);
      o.push_back(opponent[i].value);
      d.push_back(difference[i].value);
    }
    if (c.empty()) continue;
    const double mc = mean(c), mo = mean(o), md = mean(d);
    decades.rows.push_back({p.label, mc, mo, (mc + mo) / 2.0, md});
    decade_diff.push_back(period_season(p), md);
    decade_per_team.push_back(period_season(p), (mc + mo) / 2.0);
  }

  report.tables.push_back(std::move(decades));
  report.tables.push_back(std::move(dominant));
  report.tables.push_back(
      {"margin_counts", {"threshold_pct", "seasons"}, {{20.0, count(above_20)}, {30.0, count(above_30)}}});

  report.series = {{"champion_ppg", champion},
                   {"opponent_ppg", opponent},
                   {"difference_pct", difference},
                   {"points_per_team", per_team},
                   {"decade_points_per_team", decade_per_team},
                   {"decade_difference_pct", decade_diff}};
  report.charts = {
      {"ppg_for_against", "PPG for and against the champion", "points per game",
       {"champion_ppg", "opponent_ppg"}},
      {"difference_pct", "Point difference as % of opponent points", "%", {"difference_pct"}},
      {"points_per_team", "Average points per team", "points per game", {"points_per_team"}},
      {"decade_difference_pct", "Point difference % per period", "%", {"decade_difference_pct"}},
  };
  report.notes.push_back("Period difference_pct is the mean of the seasonal percentages.");
  if (std::any_of(ds.champion_scoring.begin(), ds.champion_scoring.end(),
                  [](const auto& r) { return r.source == "reconstructed"; })) {
    report.notes.push_back(
        "Per-season scoring rows tagged 'reconstructed' are constrained to the published "
        "period averages rather than transcribed game by game.");
  }
  return report;
}

AnalysisReport analyze_pluralism(const Dataset& ds, const PluralismOptions& options) {
  if (ds.final_games.empty()) throw DataError("no finals scorer data");
  AnalysisReport report;
  report.id = AnalysisId::pluralism;

  const auto pairs = data::finals_share_pairs(ds);
  std::vector<double> game_diff(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) game_diff[i] = pairs.champion[i] - pairs.runner_up[i];

  Table games{"game_shares", {"season", "ordinal", "fork", "leg", "champion_share", "runner_up_share", "difference"}, {}, true};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& s = pairs.seasons[i];
    games.rows.push_back({s.label, std::int64_t{s.ordinal}, std::string(to_string(s.fork)),
                          std::int64_t{pairs.legs[i]}, pairs.champion[i], pairs.runner_up[i],
                          game_diff[i]});
  }
  report.tables.push_back(std::move(games));

  const auto champion = data::scorer_share_series(ds, data::Side::champion);
  const auto runner_up = data::scorer_share_series(ds, data::Side::runner_up);
  const auto difference = combine(champion, runner_up, 1.0, -1.0);
  const auto pooled = combine(champion, runner_up, 0.5, 0.5);
  const auto pooled_ma = data::moving_average(pooled, options.window);
  const auto difference_ma = data::moving_average(difference, options.window);

  report.series = {{"champion_share", champion},
                   {"runner_up_share", runner_up},
                   {"share_difference", difference},
                   {"pooled_share", pooled},
                   {"pooled_share_ma", pooled_ma},
                   {"share_difference_ma", difference_ma}};
  report.charts = {
      {"pooled_share_ma", "Moving average of first-scorer share of team points", "share",
       {"pooled_share_ma"}},
      {"share_difference_ma", "Moving average of champion minus runner-up first-scorer share",
       "share difference", {"share_difference_ma"}},
  };
  if (pooled_ma.empty()) report.notes.push_back("Moving-average window exceeds the series.");

  report.tests.push_back(
      {"wilcoxon_full", stats::wilcoxon_signed_rank(pairs.champion, pairs.runner_up)});
  report.tests.push_back({"runs_full", stats::runs_test(game_diff, 0.0)});

  const auto& za_input = options.break_on_moving_average ? difference_ma : difference;
  auto za = stats::zivot_andrews(za_input, options.break_test);
  const int detected = za_input[za.break_position].season.ordinal;
  report.tests.push_back({"zivot_andrews", za});

  const int last_old = options.break_ordinal.value_or(detected);
  const int modern_first = last_old + 1;
  std::vector<double> mc, mr, md;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!in_modern_subset(pairs.seasons[i], modern_first, options.modern_fork)) continue;
    mc.push_back(pairs.champion[i]);
    mr.push_back(pairs.runner_up[i]);
    md.push_back(game_diff[i]);
  }
  if (mc.empty()) throw DataError("no finals after season " + std::to_string(last_old));
  report.tests.push_back({"wilcoxon_modern", stats::wilcoxon_signed_rank(mc, mr)});
  report.tests.push_back({"runs_modern", stats::runs_test(md, 0.0)});

  report.parameters = {{"window", std::to_string(options.window)},
                       {"break_input", options.break_on_moving_average ? "moving_average" : "raw"},
                       {"lags", std::to_string(options.break_test.lags)},
                       {"trim", format_number(options.break_test.trim)},
                       {"break_ordinal", std::to_string(last_old)},
                       {"break_source", options.break_ordinal ? "supplied" : "detected"},
                       {"modern_fork", std::string(to_string(options.modern_fork))}};
  report.notes.push_back("Paired tests use one observation per final game (" +
                         std::to_string(pairs.size()) + " games); charts and the break test use "
                         "season values with legs averaged.");
  report.notes.push_back("Detected break: " + za.break_label + " final.");
  return report;
}

AnalysisReport analyze_pace(const Dataset& ds, const PaceOptions& options) {
  if (!(options.lambda >= 0.0) || !std::isfinite(options.lambda)) {
    throw DomainError("lambda must be a nonnegative number");
  }
  const auto poss = data::possessions_series(ds, options.lambda);
  if (poss.series.empty()) throw DataError("no finals with box scores");

  AnalysisReport report;
  report.id = AnalysisId::pace;
  report.parameters = {{"lambda", format_number(options.lambda)},
                       {"break_ordinal", std::to_string(options.break_ordinal)},
                       {"window", std::to_string(options.window)}};

  auto split = [&](const TimeSeries& s) {
    std::pair<std::vector<double>, std::vector<double>> groups;
    for (const auto& e : s) {
      (e.season.ordinal <= options.break_ordinal ? groups.first : groups.second).push_back(e.value);
    }
    return groups;
  };
  const auto [before, after] = split(poss.series);
  if (before.empty() || after.empty()) throw DataError("break leaves an empty group");

  Table by_season{"possessions_by_season", {"season", "ordinal", "fork", "group", "possessions"}, {}, true};
  for (const auto& e : poss.series) {
    by_season.rows.push_back({e.season.label, std::int64_t{e.season.ordinal},
                              std::string(to_string(e.season.fork)),
                              std::string(e.season.ordinal <= options.break_ordinal ? "before" : "after"),
                              e.value});
  }
  report.tables.push_back(std::move(by_season));

  report.tables.push_back({"group_means",
                           {"group", "games", "mean"},
                           {{std::string("before"), count(before.size()), mean(before)},
                            {std::string("after"), count(after.size()), mean(after)}}});

  const double lo = std::max(0.0, options.lambda - options.lambda_step);
  const double hi = options.lambda + options.lambda_step;
  Table sensitivity{"lambda_sensitivity", {"lambda", "mean_before", "mean_after", "mean_all"}, {}};
  for (double lam : {lo, options.lambda, hi}) {
    const auto s = data::possessions_series(ds, lam).series;
    const auto [b, a] = split(s);
    sensitivity.rows.push_back({lam, mean(b), mean(a), mean(s.values())});
    if (lam == lo) report.series.push_back({"possessions_lambda_low", s});
    if (lam == hi) report.series.push_back({"possessions_lambda_high", s});
  }
  report.tables.push_back(std::move(sensitivity));

  std::size_t below_70 = 0;
  for (const auto& e : poss.series) below_70 += e.season.ordinal >= 2002 && e.value < 70.0;
  report.tables.push_back({"summary",
                           {"metric", "value"},
                           {{std::string("games_with_box_scores"), count(poss.series.size())},
                            {std::string("games_excluded"), count(poss.excluded)},
                            {std::string("games_below_70_from_2002"), count(below_70)}}});

  const auto ma = data::moving_average(poss.series, options.window);
  report.series.insert(report.series.begin(), {{"possessions", poss.series}, {"possessions_ma", ma}});
  report.charts = {{"possessions_ma", "Possessions in the final, moving average", "possessions",
                    {"possessions_ma"}}};
  report.tests.push_back({"mann_whitney", stats::mann_whitney(before, after)});
  report.notes.push_back(std::to_string(poss.excluded) +
                         " final games lack box scores and are excluded.");
  if (ma.empty()) report.notes.push_back("Moving-average window exceeds the series.");
  return report;
}

AnalysisReport analyze_scorer_correlation(const Dataset& ds) {
  if (ds.top_scorers.size() < 3) throw DataError("need at least 3 top-scorer records");
  AnalysisReport report;
  report.id = AnalysisId::scorer_correlation;
  Table table{"top_scorers", {"season", "player", "ppg", "team", "performance", "score"}, {}};
  std::vector<double> ppg, score;
  TimeSeries ppg_series;
  for (const auto& rec : ds.top_scorers) {
    table.rows.push_back({rec.season.label, rec.player, rec.ppg, ds.team(rec.team).display_name(),
                          std::string(data::to_string(rec.label)), rec.assigned_score});
    ppg.push_back(rec.ppg);
    score.push_back(rec.assigned_score);
    ppg_series.push_back(rec.season, rec.ppg);
  }
  report.tables.push_back(std::move(table));
  report.series.push_back({"top_scorer_ppg", std::move(ppg_series)});
  report.charts = {{"top_scorer_ppg", "Tournament top scorer points per game", "ppg",
                    {"top_scorer_ppg"}}};
  report.tests.push_back({"pearson", stats::pearson_test(ppg, score)});
  report.tests.push_back({"spearman", stats::spearman_test(ppg, score)});
  return report;
}

AnalysisReport analyze_final_four_randomness(const Dataset& ds, const FinalFourOptions& options) {
  if (ds.final_fours.empty()) throw DataError("no final fours");
  const int first_all = ds.final_fours.front().season.ordinal;
  const int last_all = ds.final_fours.back().season.ordinal;
  const int first = options.era == Era::full
                        ? first_all
                        : (options.break_ordinal ? *options.break_ordinal + 1 : kModernEraFirst);

  AnalysisReport report;
  report.id = AnalysisId::final_four_randomness;
  report.parameters = {
      {"era", std::string(to_string(options.era))},
      {"first_season", std::to_string(first)},
      {"last_season", std::to_string(last_all)},
      {"iterations", std::to_string(options.monte_carlo.iterations)},
      {"seed", std::to_string(options.monte_carlo.seed)},
      {"null", options.monte_carlo.null == stats::MultinomialNull::pooled ? "pooled" : "per_final_four"},
      {"statistic", options.monte_carlo.statistic == stats::GofStatistic::log_likelihood_ratio
                        ? "log_likelihood_ratio"
                        : "pearson_chi_square"}};

  const auto records = data::team_records(ds, first, last_all);
  Table table{"team_records",
              {"team", "winner", "appearances", "expected_titles", "observed_titles", "difference",
               "binomial_p", "flagged"},
              {}};
  Table flagged{"flagged_teams", {"team", "attempts", "trophies", "binomial_p"}, {}};
  double observed_total = 0.0, expected_total = 0.0;
  for (const auto& rec : records) {
    auto test = stats::binomial_test_two_sided(rec.titles, rec.appearances, 0.25);
    const bool flag = test.p_value < options.flag_below;
    table.rows.push_back({rec.display_name, std::int64_t{rec.titles}, std::int64_t{rec.appearances},
                          rec.expected, std::int64_t{rec.titles}, rec.difference, test.p_value,
                          std::string(flag ? "yes" : "no")});
    if (flag) {
      flagged.rows.push_back({rec.display_name, std::int64_t{rec.appearances},
                              std::int64_t{rec.titles}, test.p_value});
    }
    observed_total += rec.titles;
    expected_total += rec.expected;
    report.tests.push_back({"binomial:" + rec.team, std::move(test)});
  }
  report.tables.push_back(std::move(table));
  report.tables.push_back(std::move(flagged));

  std::vector<stats::FinalFourDraw> draws;
  for (const auto& ff : ds.final_fours) {
    if (ff.season.ordinal < first) continue;
    stats::FinalFourDraw d;
    for (std::size_t i = 0; i < 4; ++i) {
      d.participants[i] = static_cast<int>(ds.team_index.at(ff.placed[i]));
    }
    d.winner = d.participants[0];
    draws.push_back(d);
  }
  report.tests.insert(report.tests.begin(),
                      {"multinomial", stats::multinomial_mc_gof(draws, options.monte_carlo)});
  report.tables.push_back({"totals",
                           {"final_fours", "observed_titles", "expected_titles"},
                           {{count(draws.size()), observed_total, expected_total}}});
  report.notes.push_back("Binomial p-values below " + format_number(options.flag_below) +
                         " are flagged.");
  return report;
}

}  // namespace hoopstat::analyses
