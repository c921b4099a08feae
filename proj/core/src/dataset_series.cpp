#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <string>

#include "hoopstat/dataset.hpp"
#include "hoopstat/errors.hpp"

namespace hoopstat::data {
namespace {

std::size_t region_column(Region region) {
  return static_cast<std::size_t>(std::find(kRegions.begin(), kRegions.end(), region) -
                                  kRegions.begin());
}

void validate_scheme(const Dataset& ds, const PeriodScheme& scheme) {
  if (scheme.empty()) throw DomainError("period scheme is empty");
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    if (scheme[i].first > scheme[i].last) {
      throw DomainError("period " + scheme[i].label + " ends before it starts");
    }
    if (i > 0 && scheme[i].first != scheme[i - 1].last + 1) {
      throw DomainError("periods " + scheme[i - 1].label + " and " + scheme[i].label +
                        " are not contiguous");
    }
  }
  for (const auto& ff : ds.final_fours) {
    if (ff.season.ordinal < scheme.front().first || ff.season.ordinal > scheme.back().last) {
      throw DomainError("period scheme does not cover season " + ff.season.label);
    }
  }
}

std::size_t period_of(const PeriodScheme& scheme, int ordinal) {
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    if (ordinal >= scheme[i].first && ordinal <= scheme[i].last) return i;
  }
  throw DomainError("no period holds season " + std::to_string(ordinal));
}

template <class Count>
Matrix region_period_matrix(const Dataset& ds, const PeriodScheme& scheme, Count count) {
  validate_scheme(ds, scheme);
  Matrix out(scheme.size(), kRegions.size());
  for (const auto& ff : ds.final_fours) {
    const auto row = period_of(scheme, ff.season.ordinal);
    count(ff, [&](const std::string& team) {
      out(row, region_column(ds.team(team).region)) += 1.0;
    });
  }
  return out;
}

double share(const FinalSide& side, const FinalGame& game) {
  if (side.points <= 0) {
    throw DataError("final " + game.season.label + ": " + side.team + " scored no points");
  }
  return static_cast<double>(side.top_scorer_points) / side.points;
}

// Averages consecutive values that share a season into one entry.
TimeSeries average_by_season(const std::vector<std::pair<SeasonId, double>>& points) {
  TimeSeries out;
  for (std::size_t i = 0; i < points.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < points.size() && points[j].first == points[i].first) sum += points[j++].second;
    out.push_back(points[i].first, sum / static_cast<double>(j - i));
    i = j;
  }
  return out;
}

}  // namespace

PeriodScheme default_period_scheme() {
  return {{"1958-1970", 1958, 1970}, {"1971-1980", 1971, 1980}, {"1981-1990", 1981, 1990},
          {"1991-2000", 1991, 2000}, {"2001-2010", 2001, 2010}, {"2011-2018", 2011, 2018}};
}

PeriodScheme parse_period_scheme(std::string_view text) {
  PeriodScheme scheme;
  auto parse_year = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw DomainError("bad year '" + std::string(s) + "' in period scheme");
    }
    return v;
  };
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      throw DomainError("period '" + std::string(item) + "' is not FIRST-LAST");
    }
    scheme.push_back({std::string(item), parse_year(item.substr(0, dash)),
                      parse_year(item.substr(dash + 1))});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (scheme.empty()) throw DomainError("empty period scheme");
  return scheme;
}

Matrix titles_by_region_period(const Dataset& ds, const PeriodScheme& scheme) {
  return region_period_matrix(ds, scheme,
                              [](const FinalFourRecord& ff, auto add) { add(ff.winner()); });
}

Matrix appearances_by_region_period(const Dataset& ds, const PeriodScheme& scheme) {
  return region_period_matrix(ds, scheme, [](const FinalFourRecord& ff, auto add) {
    for (const auto& team : ff.placed) add(team);
  });
}

std::vector<CountryRow> country_rollup(const Dataset& ds) {
  std::map<std::string, CountryRow> rows;
  std::map<std::string, std::set<std::string>> clubs;
  for (const auto& ff : ds.final_fours) {
    for (std::size_t slot = 0; slot < 4; ++slot) {
      const auto& info = ds.team(ff.placed[slot]);
      auto& row = rows[info.country];
      row.country = info.country;
      row.region = info.region;
      ++row.appearances;
      if (slot == 0) ++row.titles;
      if (slot == 1) ++row.runners_up;
      clubs[info.country].insert(info.canonical_id);
    }
  }
  std::vector<CountryRow> out;
  for (auto& [country, row] : rows) {
    row.teams = static_cast<int>(clubs[country].size());
    out.push_back(row);
  }
  std::sort(out.begin(), out.end(), [](const CountryRow& a, const CountryRow& b) {
    if (a.titles != b.titles) return a.titles > b.titles;
    if (a.runners_up != b.runners_up) return a.runners_up > b.runners_up;
    if (a.appearances != b.appearances) return a.appearances > b.appearances;
    return a.country < b.country;
  });
  return out;
}

double expected_titles(int appearances) {
  if (appearances < 0) throw DomainError("expected_titles: negative appearances");
  return 0.25 * appearances;
}

std::vector<TeamRecord> team_records(const Dataset& ds, int first, int last) {
  std::map<std::string, TeamRecord> by_team;
  for (const auto& ff : ds.final_fours) {
    if (ff.season.ordinal < first || ff.season.ordinal > last) continue;
    for (std::size_t slot = 0; slot < 4; ++slot) {
      auto& rec = by_team[ff.placed[slot]];
      rec.team = ff.placed[slot];
      ++rec.appearances;
      if (slot == 0) ++rec.titles;
    }
  }
  std::vector<TeamRecord> out;
  for (auto& [id, rec] : by_team) {
    rec.display_name = ds.team(id).display_name();
    rec.expected = expected_titles(rec.appearances);
    rec.difference = rec.titles - rec.expected;
    out.push_back(rec);
  }
  std::sort(out.begin(), out.end(), [](const TeamRecord& a, const TeamRecord& b) {
    if (a.titles != b.titles) return a.titles < b.titles;
    if (a.appearances != b.appearances) return a.appearances < b.appearances;
    return a.display_name < b.display_name;
  });
  return out;
}

SharePairs finals_share_pairs(const Dataset& ds) {
  SharePairs out;
  for (const auto& game : ds.final_games) {
    out.seasons.push_back(game.season);
    out.legs.push_back(game.leg);
    out.champion.push_back(share(game.champion, game));
    out.runner_up.push_back(share(game.runner_up, game));
  }
  return out;
}

TimeSeries scorer_share_series(const Dataset& ds, Side side) {
  std::vector<std::pair<SeasonId, double>> points;
  for (const auto& game : ds.final_games) {
    points.emplace_back(game.season,
                        share(side == Side::champion ? game.champion : game.runner_up, game));
  }
  return average_by_season(points);
}

std::optional<double> possessions_for_final(const FinalGame& game, double lambda) {
  if (!game.champion.box || !game.runner_up.box) return std::nullopt;
  const auto& c = *game.champion.box;
  const auto& r = *game.runner_up.box;
  auto lost = [&](const BoxScore& s) { return s.fga + lambda * s.fta - s.oreb + s.to; };
  auto gained = [&](const BoxScore& s, const BoxScore& o) {
    return s.fgm + lambda * s.ftm + o.dreb + s.to;
  };
  return (lost(c) + lost(r) + gained(c, r) + gained(r, c)) / 4.0;
}

PossessionSeries possessions_series(const Dataset& ds, double lambda) {
  PossessionSeries out;
  std::vector<std::pair<SeasonId, double>> points;
  for (const auto& game : ds.final_games) {
    if (const auto p = possessions_for_final(game, lambda)) {
      points.emplace_back(game.season, *p);
    } else {
      ++out.excluded;
    }
  }
  out.series = average_by_season(points);
  return out;
}

TimeSeries collapse_forks(const TimeSeries& series) {
  TimeSeries out;
  for (std::size_t i = 0; i < series.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < series.size() && series[j].season.ordinal == series[i].season.ordinal) {
      sum += series[j++].value;
    }
    SeasonId season = series[i].season;
    if (j - i > 1) season.fork = Fork::unified;
    out.push_back(std::move(season), sum / static_cast<double>(j - i));
    i = j;
  }
  return out;
}

TimeSeries moving_average(const TimeSeries& series, std::size_t window) {
  if (window == 0) throw DomainError("moving_average: window must be >= 1");
  const auto seasons = collapse_forks(series);
  TimeSeries out;
  if (window > seasons.size()) return out;
  for (std::size_t i = window - 1; i < seasons.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = i + 1 - window; j <= i; ++j) sum += seasons[j].value;
    out.push_back(seasons[i].season, sum / static_cast<double>(window));
  }
  return out;
}

}  // namespace hoopstat::data
