#pragma once

// Distribution functions and exact null distributions of rank statistics.
//
// Continuous distributions are evaluated from the regularized incomplete
// gamma and beta functions; nothing here depends on an external numerics
// library.  All functions are pure and safe to call concurrently.

#include <cstdint>

namespace hoopstat::numerics {

/// Standard normal CDF. Throws DomainError on non-finite input.
double normal_cdf(double z);
/// Upper tail 1 - normal_cdf(z), accurate far into the tail.
double normal_sf(double z);

/// Student t CDF with `df` degrees of freedom (df >= 1).
double student_t_cdf(double t, int df);

/// Chi-square CDF and its complement (x >= 0, df >= 1).
double chi_square_cdf(double x, int df);
double chi_square_sf(double x, int df);

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);
/// Regularized incomplete beta I_x(a, b).
double regularized_beta(double a, double b, double x);

/// Binomial probability mass, evaluated in log space.
double binomial_pmf(std::int64_t k, std::int64_t n, double p);

// Exact null distributions.  Each returns P(statistic <= value) under H0.

/// Largest n accepted by signed_rank_null_cdf.
inline constexpr int kSignedRankExactMaxN = 30;
/// Largest n1 * n2 accepted by mann_whitney_null_cdf.
inline constexpr int kMannWhitneyExactMaxCells = 400;
/// Spearman: exact permutation distribution up to this n, Edgeworth above.
inline constexpr int kSpearmanExactMaxN = 9;

/// Wilcoxon signed-rank V (sum of positive ranks) for n untied pairs.
double signed_rank_null_cdf(int n, double v);

/// Mann-Whitney U for group sizes n1, n2 without ties.
double mann_whitney_null_cdf(int n1, int n2, double u);

/// P(S <= s) for S = sum of squared rank differences between two
/// independent random permutations of 1..n.  Small S means large rho, so
/// this is the upper tail of rho.
double spearman_tail_prob(int n, double s);

}  // namespace hoopstat::numerics
