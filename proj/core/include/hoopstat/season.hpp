#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hoopstat {

// 2000-01 had two parallel competitions; every other season is unified.
enum class Fork { unified, fiba_branch, euroleague_branch };

std::string_view to_string(Fork fork);
/// Throws DomainError for unknown names.
Fork parse_fork(std::string_view text);

struct SeasonId {
  std::string label;  // as printed, e.g. "1997-1998"
  int ordinal = 0;    // year the season ended
  Fork fork = Fork::unified;

  // Seasons order by (ordinal, fork); the label is presentation only.
  friend bool operator==(const SeasonId& a, const SeasonId& b) {
    return a.ordinal == b.ordinal && a.fork == b.fork;
  }
  friend std::strong_ordering operator<=>(const SeasonId& a, const SeasonId& b) {
    if (auto c = a.ordinal <=> b.ordinal; c != 0) return c;
    return a.fork <=> b.fork;
  }
};

// Ordered (season, value) pairs.  Construction through push_back enforces
// strictly increasing seasons.
class TimeSeries {
 public:
  struct Entry {
    SeasonId season;
    double value = 0.0;
  };

  TimeSeries() = default;

  /// Throws DomainError unless `season` sorts after the current last entry.
  void push_back(SeasonId season, double value);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  std::vector<double> values() const;

  /// Entries with ordinal in [first, last].
  TimeSeries between(int first, int last) const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace hoopstat
