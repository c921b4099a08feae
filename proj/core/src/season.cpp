#include "hoopstat/season.hpp"

#include <string>

#include "hoopstat/errors.hpp"

namespace hoopstat {

std::string_view to_string(Fork fork) {
  switch (fork) {
    case Fork::unified: return "unified";
    case Fork::fiba_branch: return "fiba_branch";
    case Fork::euroleague_branch: return "euroleague_branch";
  }
  return "unified";
}

Fork parse_fork(std::string_view text) {
  if (text == "unified") return Fork::unified;
  if (text == "fiba_branch") return Fork::fiba_branch;
  if (text == "euroleague_branch") return Fork::euroleague_branch;
  throw DomainError("unknown fork '" + std::string(text) + "'");
}

void TimeSeries::push_back(SeasonId season, double value) {
  if (!entries_.empty() && !(entries_.back().season < season)) {
    throw DomainError("TimeSeries: season " + season.label +
                      " does not follow " + entries_.back().season.label);
  }
  entries_.push_back({std::move(season), value});
}

std::vector<double> TimeSeries::values() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.value);
  return out;
}

TimeSeries TimeSeries::between(int first, int last) const {
  TimeSeries out;
  for (const auto& e : entries_) {
    if (e.season.ordinal >= first && e.season.ordinal <= last) out.entries_.push_back(e);
  }
  return out;
}

}  // namespace hoopstat
