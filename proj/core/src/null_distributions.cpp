#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "hoopstat/errors.hpp"
#include "hoopstat/numerics.hpp"

namespace hoopstat::numerics {
namespace {

// Sum of counts[0..floor(value)] / total, clamped to [0, 1].
double lower_tail(const std::vector<std::uint64_t>& counts, double value,
                  double total) {
  if (value < 0.0) return 0.0;
  const auto last = static_cast<std::size_t>(std::floor(value + 1e-9));
  if (last + 1 >= counts.size()) return 1.0;
  std::uint64_t hits = 0;
  for (std::size_t s = 0; s <= last; ++s) hits += counts[s];
  return std::min(1.0, static_cast<double>(hits) / total);
}

// counts[s] = number of permutations of 1..n with sum of squared
// displacements equal to s.  S is always even, so only even s are nonzero.
std::vector<std::uint64_t> spearman_counts(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const int max_s = (n * n * n - n) / 3;
  std::vector<std::uint64_t> counts(max_s + 1, 0);
  do {
    int s = 0;
    for (int i = 0; i < n; ++i) s += (perm[i] - i) * (perm[i] - i);
    ++counts[s];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return counts;
}

const std::vector<std::uint64_t>& cached_spearman_counts(int n) {
  static const auto table = [] {
    std::array<std::vector<std::uint64_t>, kSpearmanExactMaxN + 1> t;
    for (int m = 1; m <= kSpearmanExactMaxN; ++m) t[m] = spearman_counts(m);
    return t;
  }();
  return table[n];
}

// Edgeworth series for P(S >= s), n > 9 (Best & Roberts, AS 89).
double spearman_upper_edgeworth(int n, double s) {
  constexpr double c1 = 0.2274, c2 = 0.2531, c3 = 0.1745, c4 = 0.0758;
  constexpr double c5 = 0.1033, c6 = 0.3932, c7 = 0.0879, c8 = 0.0151;
  constexpr double c9 = 0.0072, c10 = 0.0831, c11 = 0.0131, c12 = 4.6e-4;
  const double b = 1.0 / n;
  const double x =
      (6.0 * (s - 1.0) * b / (static_cast<double>(n) * n - 1.0) - 1.0) * std::sqrt(1.0 / b - 1.0);
  double y = x * x;
  const double u =
      x * b *
      (c1 + b * (c2 + c3 * b) +
       y * (-c4 + b * (c5 + c6 * b) -
            y * b * (c7 + c8 * b - y * (c9 - c10 * b + y * b * (c11 - c12 * y)))));
  y = u / std::exp(y / 2.0);
  return std::clamp(y + normal_sf(x), 0.0, 1.0);
}

}  // namespace

double signed_rank_null_cdf(int n, double v) {
  if (n < 1 || n > kSignedRankExactMaxN) {
    throw DomainError("signed_rank_null_cdf: n outside exact range [1, 30]");
  }
  if (std::isnan(v)) throw DomainError("signed_rank_null_cdf: v is NaN");
  const int max_v = n * (n + 1) / 2;
  // counts[s] over subsets of {1..n}: include rank r or not.
  std::vector<std::uint64_t> counts(max_v + 1, 0);
  counts[0] = 1;
  for (int r = 1; r <= n; ++r) {
    for (int s = r * (r + 1) / 2; s >= r; --s) counts[s] += counts[s - r];
  }
  return lower_tail(counts, v, std::ldexp(1.0, n));
}

double mann_whitney_null_cdf(int n1, int n2, double u) {
  if (n1 < 1 || n2 < 1 || n1 * n2 > kMannWhitneyExactMaxCells) {
    throw DomainError("mann_whitney_null_cdf: sizes outside exact range");
  }
  if (std::isnan(u)) throw DomainError("mann_whitney_null_cdf: u is NaN");
  const int max_u = n1 * n2;
  // f[m][u] = arrangements of m x-values among the first j y-values with
  // statistic u; extend one y at a time: f_j(m, u) = f_{j-1}(m, u) + f_j(m-1, u-j).
  std::vector<std::vector<std::uint64_t>> f(n1 + 1, std::vector<std::uint64_t>(max_u + 1, 0));
  for (int m = 0; m <= n1; ++m) f[m][0] = 1;  // j = 0
  for (int j = 1; j <= n2; ++j) {
    for (int m = 1; m <= n1; ++m) {
      for (int s = j; s <= max_u; ++s) f[m][s] += f[m - 1][s - j];
    }
  }
  double total = 0.0;
  for (auto c : f[n1]) total += static_cast<double>(c);
  return lower_tail(f[n1], u, total);
}

double spearman_tail_prob(int n, double s) {
  if (n < 3) throw DomainError("spearman_tail_prob: n must be >= 3");
  if (std::isnan(s)) throw DomainError("spearman_tail_prob: s is NaN");
  if (s < 0.0) return 0.0;
  const double max_s = (static_cast<double>(n) * n * n - n) / 3.0;
  if (s >= max_s) return 1.0;
  if (n <= kSpearmanExactMaxN) {
    const auto& counts = cached_spearman_counts(n);
    double total = 1.0;
    for (int i = 2; i <= n; ++i) total *= i;
    return lower_tail(counts, s, total);
  }
  // S takes even values only: P(S <= s) = 1 - P(S >= s') with s' the next
  // even value above s.
  const double next_even = 2.0 * std::floor(s / 2.0 + 1e-9) + 2.0;
  return std::clamp(1.0 - spearman_upper_edgeworth(n, next_even), 0.0, 1.0);
}

}  // namespace hoopstat::numerics
