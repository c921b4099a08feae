#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "hoopstat/csv.hpp"
#include "hoopstat/dataset.hpp"
#include "hoopstat/errors.hpp"

namespace hoopstat::data {
namespace {

using io::CsvRow;
using io::CsvTable;

// Accessor for one row that turns every parse failure into a LoadError
// carrying the file and line.
class RowReader {
 public:
  RowReader(const CsvTable& table, const CsvRow& row) : table_(table), row_(row) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw LoadError(table_.file, row_.line, message);
  }

  const std::string& text(std::string_view name) const {
    const auto col = table_.column(name);
    if (!col) fail("no column '" + std::string(name) + "'");
    return row_.fields[*col];
  }

  const std::string& required(std::string_view name) const {
    const auto& value = text(name);
    if (value.empty()) fail("empty " + std::string(name));
    return value;
  }

  int integer(std::string_view name) const {
    const auto& value = required(name);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      fail(std::string(name) + " is not an integer: '" + value + "'");
    }
    return out;
  }

  std::optional<int> optional_count(std::string_view name) const {
    if (text(name).empty()) return std::nullopt;
    const int v = integer(name);
    if (v < 0) fail(std::string(name) + " must be nonnegative");
    return v;
  }

  double real(std::string_view name) const {
    const auto& value = required(name);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
      fail(std::string(name) + " is not a number: '" + value + "'");
    }
    return out;
  }

  SeasonId season() const {
    SeasonId id;
    id.label = required("season_label");
    id.ordinal = integer("ordinal");
    try {
      id.fork = parse_fork(required("fork"));
    } catch (const DomainError& e) {
      fail(e.what());
    }
    return id;
  }

 private:
  const CsvTable& table_;
  const CsvRow& row_;
};

CsvTable read_with_header(const std::filesystem::path& dir, std::string_view name,
                          std::initializer_list<std::string_view> columns) {
  auto table = io::read_csv(dir / name);
  for (auto col : columns) {
    if (!table.column(col)) {
      throw LoadError(table.file, 1, "header lacks column '" + std::string(col) + "'");
    }
  }
  return table;
}

void load_teams(Dataset& ds, const CsvTable& table) {
  std::map<std::string, std::string> country_region;
  for (const auto& row : table.rows) {
    RowReader r(table, row);
    const auto& id = r.required("canonical_id");
    const auto& alias = r.required("alias");
    const auto& country = r.required("country");
    Region region{};
    try {
      region = parse_region(r.required("region"));
    } catch (const DomainError& e) {
      r.fail(e.what());
    }
    if (auto [it, fresh] = country_region.emplace(country, std::string(to_string(region)));
        !fresh && it->second != to_string(region)) {
      r.fail("country " + country + " assigned to both " + it->second + " and " +
             std::string(to_string(region)));
    }
    if (const auto it = ds.alias_index.find(alias); it != ds.alias_index.end() && it->second != id) {
      r.fail("alias '" + alias + "' maps to both " + it->second + " and " + id);
    }
    auto found = ds.team_index.find(id);
    if (found == ds.team_index.end()) {
      ds.team_index.emplace(id, ds.teams.size());
      ds.teams.push_back({id, {alias}, country, region});
    } else {
      auto& team = ds.teams[found->second];
      if (team.country != country) r.fail("team " + id + " listed under two countries");
      if (std::find(team.display_names.begin(), team.display_names.end(), alias) ==
          team.display_names.end()) {
        team.display_names.push_back(alias);
      }
    }
    ds.alias_index[alias] = id;
    ds.alias_index[id] = id;
  }
  if (ds.teams.empty()) throw LoadError(table.file, 0, "no teams");
}

void load_final_fours(Dataset& ds, const CsvTable& table) {
  static constexpr std::array<std::string_view, 4> kSlots{"winner", "runner_up", "third",
                                                          "fourth"};
  for (const auto& row : table.rows) {
    RowReader r(table, row);
    FinalFourRecord rec;
    rec.season = r.season();
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& alias = r.required(kSlots[i]);
      const auto id = ds.resolve(alias);
      if (!id) r.fail("unknown team '" + alias + "'");
      rec.placed[i] = *id;
    }
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) {
        if (rec.placed[a] == rec.placed[b]) {
          r.fail("season " + rec.season.label + " lists " + rec.placed[a] + " twice");
        }
      }
    }
    if (!ds.final_fours.empty() && !(ds.final_fours.back().season < rec.season)) {
      r.fail("season " + rec.season.label + " is out of order or repeated");
    }
    ds.final_fours.push_back(std::move(rec));
  }
  if (ds.final_fours.empty()) throw LoadError(table.file, 0, "no final fours");
}

const FinalFourRecord* find_final_four(const Dataset& ds, const SeasonId& season) {
  const auto it = std::lower_bound(
      ds.final_fours.begin(), ds.final_fours.end(), season,
      [](const FinalFourRecord& rec, const SeasonId& s) { return rec.season < s; });
  if (it == ds.final_fours.end() || !(it->season == season)) return nullptr;
  return &*it;
}

const FinalFourRecord& require_final_four(const Dataset& ds, const RowReader& r,
                                          const SeasonId& season) {
  const auto* ff = find_final_four(ds, season);
  if (!ff) r.fail("season " + season.label + " has no final four record");
  if (ff->season.label != season.label) {
    r.fail("season label '" + season.label + "' differs from final_fours.csv '" +
           ff->season.label + "'");
  }
  return *ff;
}

FinalSide read_side(const Dataset& ds, const RowReader& r) {
  FinalSide side;
  const auto& alias = r.required("team");
  const auto id = ds.resolve(alias);
  if (!id) r.fail("unknown team '" + alias + "'");
  side.team = *id;
  side.points = r.integer("points");
  side.top_scorer_points = r.integer("top_scorer_points");
  if (side.points < 0 || side.top_scorer_points < 0) r.fail("points must be nonnegative");
  if (side.top_scorer_points > side.points) r.fail("top_scorer_points exceeds points");

  static constexpr std::array<std::string_view, 7> kBox{"fga", "fgm", "fta", "ftm",
                                                        "oreb", "dreb", "to"};
  std::array<std::optional<int>, 7> box;
  std::size_t present = 0;
  for (std::size_t i = 0; i < kBox.size(); ++i) {
    box[i] = r.optional_count(kBox[i]);
    present += box[i].has_value();
  }
  if (present == kBox.size()) {
    side.box = BoxScore{*box[0], *box[1], *box[2], *box[3], *box[4], *box[5], *box[6]};
    if (side.box->fgm > side.box->fga) r.fail("fgm exceeds fga");
    if (side.box->ftm > side.box->fta) r.fail("ftm exceeds fta");
  } else if (present != 0) {
    r.fail("possession fields must be all present or all empty");
  }
  return side;
}

void load_final_games(Dataset& ds, const CsvTable& table) {
  // Two rows per (season, leg); the champion side is the row naming the
  // final four winner.
  for (std::size_t i = 0; i < table.rows.size(); i += 2) {
    RowReader first(table, table.rows[i]);
    if (i + 1 >= table.rows.size()) first.fail("game has only one side");
    RowReader second(table, table.rows[i + 1]);

    FinalGame game;
    game.season = first.season();
    game.leg = first.integer("leg");
    if (game.leg < 1) first.fail("leg must be >= 1");
    const auto other_season = second.season();
    if (!(other_season == game.season) || second.integer("leg") != game.leg) {
      second.fail("expected the second side of " + game.season.label + " leg " +
                  std::to_string(game.leg));
    }
    const auto& ff = require_final_four(ds, first, game.season);
    auto a = read_side(ds, first);
    auto b = read_side(ds, second);
    if (a.team == ff.runner_up() && b.team == ff.winner()) std::swap(a, b);
    if (a.team != ff.winner() || b.team != ff.runner_up()) {
      first.fail("finalists of " + game.season.label + " must be " + ff.winner() + " and " +
                 ff.runner_up());
    }
    game.champion = std::move(a);
    game.runner_up = std::move(b);
    game.source = first.text("source");

    if (!ds.final_games.empty()) {
      const auto& prev = ds.final_games.back();
      if (game.season < prev.season || (game.season == prev.season && game.leg <= prev.leg)) {
        first.fail("game " + game.season.label + " leg " + std::to_string(game.leg) +
                   " is out of order or repeated");
      }
    }
    ds.final_games.push_back(std::move(game));
  }

  // Aggregate over legs must favour the champion.
  for (std::size_t i = 0; i < ds.final_games.size();) {
    std::size_t j = i;
    long champion = 0, runner_up = 0;
    while (j < ds.final_games.size() && ds.final_games[j].season == ds.final_games[i].season) {
      champion += ds.final_games[j].champion.points;
      runner_up += ds.final_games[j].runner_up.points;
      ++j;
    }
    if (champion <= runner_up) {
      throw LoadError(table.file, 0,
                      "champion of " + ds.final_games[i].season.label +
                          " does not win on aggregate points");
    }
    i = j;
  }
}

void load_champion_scoring(Dataset& ds, const CsvTable& table) {
  for (const auto& row : table.rows) {
    RowReader r(table, row);
    ChampionScoringRecord rec;
    rec.season = r.season();
    require_final_four(ds, r, rec.season);
    rec.champ_ppg = r.real("champ_ppg");
    rec.opp_ppg = r.real("opp_ppg");
    if (!(rec.champ_ppg > 0.0) || !(rec.opp_ppg > 0.0)) r.fail("ppg must be positive");
    rec.source = r.text("source");
    if (!ds.champion_scoring.empty() && !(ds.champion_scoring.back().season < rec.season)) {
      r.fail("season " + rec.season.label + " is out of order or repeated");
    }
    ds.champion_scoring.push_back(std::move(rec));
  }
}

void load_top_scorers(Dataset& ds, const CsvTable& table) {
  for (const auto& row : table.rows) {
    RowReader r(table, row);
    TopScorerRecord rec;
    rec.season = r.season();
    rec.player = r.required("player");
    rec.ppg = r.real("ppg");
    if (!(rec.ppg > 0.0)) r.fail("ppg must be positive");
    const auto& alias = r.required("team");
    const auto id = ds.resolve(alias);
    if (!id) r.fail("unknown team '" + alias + "'");
    rec.team = *id;
    try {
      rec.label = parse_performance_label(r.required("performance_label"));
    } catch (const DomainError& e) {
      r.fail(e.what());
    }
    rec.assigned_score = performance_score(rec.label);
    if (!ds.top_scorers.empty() && !(ds.top_scorers.back().season < rec.season)) {
      r.fail("season " + rec.season.label + " is out of order or repeated");
    }
    ds.top_scorers.push_back(std::move(rec));
  }
}

}  // namespace

std::string_view to_string(Region region) {
  switch (region) {
    case Region::spain: return "Spain";
    case Region::italy: return "Italy";
    case Region::ex_ussr_ex_yugoslavia: return "ExUSSR_ExYugoslavia";
    case Region::other: return "Other";
  }
  return "Other";
}

Region parse_region(std::string_view text) {
  for (auto r : kRegions) {
    if (to_string(r) == text) return r;
  }
  throw DomainError("unknown region '" + std::string(text) + "'");
}

std::string_view to_string(PerformanceLabel label) {
  switch (label) {
    case PerformanceLabel::regular_season: return "regular_season";
    case PerformanceLabel::top16: return "top16";
    case PerformanceLabel::quarterfinals: return "quarterfinals";
    case PerformanceLabel::final_four: return "final_four";
    case PerformanceLabel::runner_up: return "runner_up";
    case PerformanceLabel::winner: return "winner";
  }
  return "regular_season";
}

PerformanceLabel parse_performance_label(std::string_view text) {
  for (auto l : {PerformanceLabel::regular_season, PerformanceLabel::top16,
                 PerformanceLabel::quarterfinals, PerformanceLabel::final_four,
                 PerformanceLabel::runner_up, PerformanceLabel::winner}) {
    if (to_string(l) == text) return l;
  }
  throw DomainError("unknown performance label '" + std::string(text) + "'");
}

double performance_score(PerformanceLabel label) {
  switch (label) {
    case PerformanceLabel::regular_season: return 1.0;
    case PerformanceLabel::top16: return 2.0;
    case PerformanceLabel::quarterfinals: return 3.0;
    case PerformanceLabel::final_four: return 4.0;
    case PerformanceLabel::runner_up: return 4.5;
    case PerformanceLabel::winner: return 5.0;
  }
  return 1.0;
}

double performance_score(std::string_view label) {
  return performance_score(parse_performance_label(label));
}

const TeamInfo& Dataset::team(std::string_view canonical_id) const {
  const auto it = team_index.find(std::string(canonical_id));
  if (it == team_index.end()) throw DataError("unknown team id '" + std::string(canonical_id) + "'");
  return teams[it->second];
}

std::optional<std::string> Dataset::resolve(std::string_view alias) const {
  const auto it = alias_index.find(std::string(alias));
  if (it == alias_index.end()) return std::nullopt;
  return it->second;
}

void Dataset::rebuild_indexes() {
  team_index.clear();
  alias_index.clear();
  for (std::size_t i = 0; i < teams.size(); ++i) {
    team_index[teams[i].canonical_id] = i;
    alias_index[teams[i].canonical_id] = teams[i].canonical_id;
    for (const auto& name : teams[i].display_names) alias_index[name] = teams[i].canonical_id;
  }
}

Dataset load_dataset(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory)) {
    throw LoadError(directory.string(), 0, "not a directory");
  }
  Dataset ds;
  load_teams(ds, read_with_header(directory, "teams.csv",
                                  {"canonical_id", "alias", "country", "region"}));
  load_final_fours(ds, read_with_header(directory, "final_fours.csv",
                                        {"season_label", "ordinal", "fork", "winner",
                                         "runner_up", "third", "fourth"}));
  load_final_games(ds, read_with_header(directory, "final_games.csv",
                                        {"season_label", "ordinal", "fork", "leg", "team",
                                         "points", "top_scorer_points", "fga", "fgm", "fta",
                                         "ftm", "oreb", "dreb", "to", "source"}));
  load_champion_scoring(ds, read_with_header(directory, "champion_scoring.csv",
                                             {"season_label", "ordinal", "fork", "champ_ppg",
                                              "opp_ppg", "source"}));
  load_top_scorers(ds, read_with_header(directory, "top_scorers.csv",
                                        {"season_label", "ordinal", "fork", "player", "ppg",
                                         "team", "performance_label"}));
  return ds;
}

}  // namespace hoopstat::data
