#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hoopstat/errors.hpp"
#include "hoopstat/linear_fit.hpp"
#include "hoopstat/stats_tests.hpp"

namespace hoopstat::stats {
namespace {

// Column of y_{t-1} in the test regression.
constexpr std::size_t kLevelColumn = 4;

std::string bracket_for(double stat) {
  if (stat < kZivotAndrewsCritical[0].second) return "< 0.01";
  if (stat < kZivotAndrewsCritical[1].second) return "0.01-0.05";
  if (stat < kZivotAndrewsCritical[2].second) return "0.05-0.1";
  return "> 0.1";
}

// Upper end of the bracket; the only p the tabulated values support.
double bracket_bound(double stat) {
  for (const auto& [level, critical] : kZivotAndrewsCritical) {
    if (stat < critical) return level;
  }
  return 1.0;
}

}  // namespace

BreakResult zivot_andrews(std::span<const double> y, const ZivotAndrewsOptions& options) {
  const std::size_t n = y.size();
  const std::size_t k = options.lags;
  if (!(options.trim > 0.0 && options.trim < 0.5)) {
    throw DomainError("zivot_andrews: trim must lie in (0, 0.5)");
  }
  if (n < k + 10) throw DomainError("zivot_andrews: series shorter than lags + 10");
  for (double v : y) {
    if (!std::isfinite(v)) throw DomainError("zivot_andrews: non-finite value");
  }
  const std::size_t regressors = 5 + k;
  const std::size_t rows = n - k - 1;  // t = k+1 .. n-1
  if (rows <= regressors) throw DomainError("zivot_andrews: too few observations for the lags");

  const auto trimmed = static_cast<std::size_t>(std::floor(options.trim * static_cast<double>(n)));
  const std::size_t lo = std::max(trimmed, k + 1);
  const std::size_t hi = std::min(n - 1 - trimmed, n - 3);
  if (lo > hi) throw DomainError("zivot_andrews: empty break search range");

  std::vector<double> dy(n, 0.0);
  for (std::size_t t = 1; t < n; ++t) dy[t] = y[t] - y[t - 1];
  std::vector<double> response(rows);
  for (std::size_t r = 0; r < rows; ++r) response[r] = dy[k + 1 + r];

  Matrix design(rows, regressors);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = k + 1 + r;
    design(r, 0) = 1.0;
    design(r, 1) = static_cast<double>(t);
    design(r, kLevelColumn) = y[t - 1];
    for (std::size_t j = 1; j <= k; ++j) design(r, kLevelColumn + j) = dy[t - j];
  }

  BreakResult out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t tau = lo; tau <= hi; ++tau) {
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t t = k + 1 + r;
      design(r, 2) = t > tau ? 1.0 : 0.0;
      design(r, 3) = t > tau ? static_cast<double>(t - tau) : 0.0;
    }
    double stat = 0.0;
    try {
      stat = numerics::ols_fit(design, response).t_statistic(kLevelColumn);
    } catch (const SingularDesignError&) {
      out.skipped_breaks.push_back(tau);
      continue;
    }
    out.candidate_breaks.push_back(tau);
    out.candidate_statistics.push_back(stat);
    if (stat < best) {
      best = stat;
      out.break_position = tau;
    }
  }
  if (out.candidate_breaks.empty()) {
    throw DomainError("zivot_andrews: design is rank deficient at every candidate break");
  }

  auto& res = out.base;
  res.method = Method::zivot_andrews;
  res.alternative = Alternative::less;
  res.statistic = best;
  res.p_bracket = bracket_for(best);
  res.p_value = bracket_bound(best);
  res.n_summary = {{"observations", static_cast<std::int64_t>(n)},
                   {"lags", static_cast<std::int64_t>(k)},
                   {"break_index", static_cast<std::int64_t>(out.break_position)},
                   {"candidates", static_cast<std::int64_t>(out.candidate_breaks.size())},
                   {"skipped", static_cast<std::int64_t>(out.skipped_breaks.size())}};
  res.extras["trim"] = options.trim;
  for (const auto& [level, critical] : kZivotAndrewsCritical) {
    out.decision_at[level] = best < critical;
    res.extras["critical_" + std::to_string(static_cast<int>(std::lround(level * 100))) + "pct"] =
        critical;
  }
  return out;
}

BreakResult zivot_andrews(const TimeSeries& series, const ZivotAndrewsOptions& options) {
  const auto values = series.values();
  auto out = zivot_andrews(std::span<const double>(values), options);
  out.break_label = series[out.break_position].season.label;
  return out;
}

}  // namespace hoopstat::stats
