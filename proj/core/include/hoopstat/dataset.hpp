#pragma once

// Historical record: teams, final fours, finals box scores, champion
// scoring and tournament top scorers, plus the series derived from them.

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hoopstat/matrix.hpp"
#include "hoopstat/season.hpp"

namespace hoopstat::data {

enum class Region { spain, italy, ex_ussr_ex_yugoslavia, other };
inline constexpr std::array<Region, 4> kRegions{Region::spain, Region::italy,
                                                Region::ex_ussr_ex_yugoslavia, Region::other};

std::string_view to_string(Region region);
/// Accepts the CSV spelling (Spain, Italy, ExUSSR_ExYugoslavia, Other).
Region parse_region(std::string_view text);

struct TeamInfo {
  std::string canonical_id;
  std::vector<std::string> display_names;  // first is the display name used in tables
  std::string country;
  Region region = Region::other;

  const std::string& display_name() const { return display_names.front(); }
};

struct FinalFourRecord {
  SeasonId season;
  std::array<std::string, 4> placed;  // winner, runner-up, third, fourth

  const std::string& winner() const { return placed[0]; }
  const std::string& runner_up() const { return placed[1]; }
};

struct BoxScore {
  int fga = 0, fgm = 0, fta = 0, ftm = 0, oreb = 0, dreb = 0, to = 0;
};

struct FinalSide {
  std::string team;
  int points = 0;
  int top_scorer_points = 0;
  std::optional<BoxScore> box;
};

struct FinalGame {
  SeasonId season;
  int leg = 1;
  FinalSide champion;
  FinalSide runner_up;
  std::string source;
};

struct ChampionScoringRecord {
  SeasonId season;
  double champ_ppg = 0.0;
  double opp_ppg = 0.0;
  std::string source;
};

enum class PerformanceLabel { regular_season, top16, quarterfinals, final_four, runner_up, winner };

std::string_view to_string(PerformanceLabel label);
PerformanceLabel parse_performance_label(std::string_view text);
/// 1 regular season, 2 top 16, 3 quarterfinals, 4 final four, 4.5 runner-up,
/// 5 winner.
double performance_score(PerformanceLabel label);
/// Throws DomainError for an unknown label.
double performance_score(std::string_view label);

struct TopScorerRecord {
  SeasonId season;
  std::string player;
  double ppg = 0.0;
  std::string team;
  PerformanceLabel label = PerformanceLabel::regular_season;
  double assigned_score = 1.0;
};

struct Dataset {
  std::vector<TeamInfo> teams;
  std::vector<FinalFourRecord> final_fours;
  std::vector<FinalGame> final_games;
  std::vector<ChampionScoringRecord> champion_scoring;
  std::vector<TopScorerRecord> top_scorers;

  /// Throws DataError for an unknown id.
  const TeamInfo& team(std::string_view canonical_id) const;
  /// Canonical id for an alias or id, if known.
  std::optional<std::string> resolve(std::string_view alias) const;

  // Filled by load_dataset / rebuild_indexes.
  std::unordered_map<std::string, std::size_t> team_index;
  std::unordered_map<std::string, std::string> alias_index;
  void rebuild_indexes();
};

/// File names expected by load_dataset.
inline constexpr std::array<std::string_view, 5> kDataFiles{
    "teams.csv", "final_fours.csv", "final_games.csv", "champion_scoring.csv",
    "top_scorers.csv"};

/// Reads and validates the five CSV files.  Throws LoadError (file:line)
/// for a missing file, bad header, unknown alias or violated invariant.
Dataset load_dataset(const std::filesystem::path& directory);

// Period buckets over season ordinals, e.g. 1958-1970.
struct Period {
  std::string label;
  int first = 0;
  int last = 0;
};
using PeriodScheme = std::vector<Period>;

/// The six decade-style periods 1958-1970 ... 2011-2018.
PeriodScheme default_period_scheme();
/// "1958-1970,1971-1980,..."; throws DomainError on malformed text.
PeriodScheme parse_period_scheme(std::string_view text);

/// Rows follow the scheme, columns follow kRegions.  Throws DomainError
/// unless the scheme is contiguous and covers every final four.
Matrix titles_by_region_period(const Dataset& ds, const PeriodScheme& scheme);
Matrix appearances_by_region_period(const Dataset& ds, const PeriodScheme& scheme);

struct CountryRow {
  std::string country;
  Region region = Region::other;
  int titles = 0;
  int runners_up = 0;
  int appearances = 0;
  int teams = 0;  // distinct clubs with at least one appearance
};
/// One row per country with an appearance, sorted by titles, runner-up
/// finishes and appearances (descending) then name.
std::vector<CountryRow> country_rollup(const Dataset& ds);

struct TeamRecord {
  std::string team;
  std::string display_name;
  int titles = 0;
  int appearances = 0;
  double expected = 0.0;
  double difference = 0.0;  // titles - expected
};
/// Per-team record table for final fours with ordinal in [first, last],
/// sorted by titles then appearances (ascending) then name.
std::vector<TeamRecord> team_records(const Dataset& ds, int first, int last);

/// 0.25 per appearance: every final four team has the same title odds.
double expected_titles(int appearances);

enum class Side { champion, runner_up };

/// Per-game first-scorer shares, in game order.
struct SharePairs {
  std::vector<SeasonId> seasons;
  std::vector<int> legs;
  std::vector<double> champion;
  std::vector<double> runner_up;
  std::size_t size() const { return champion.size(); }
};
SharePairs finals_share_pairs(const Dataset& ds);

/// Top-scorer points over team points for one side, legs averaged per season.
TimeSeries scorer_share_series(const Dataset& ds, Side side);

/// Default free-throw weight in the possession estimates.
inline constexpr double kDefaultLambda = 0.44;

/// Mean of possessions lost and gained by both sides, or nullopt when a
/// side has no box score.
std::optional<double> possessions_for_final(const FinalGame& game, double lambda = kDefaultLambda);

struct PossessionSeries {
  TimeSeries series;  // legs averaged per season
  std::size_t excluded = 0;  // games without box scores
};
PossessionSeries possessions_series(const Dataset& ds, double lambda = kDefaultLambda);

/// Averages entries sharing an ordinal (the two 2000-01 forks) into one
/// unified entry.
TimeSeries collapse_forks(const TimeSeries& series);

/// Trailing mean over `window` seasons after collapsing forks; the first
/// output sits at the window-th season.  Empty when window exceeds the
/// series.  Throws DomainError when window is 0.
TimeSeries moving_average(const TimeSeries& series, std::size_t window);

}  // namespace hoopstat::data
