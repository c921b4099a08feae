#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hoopstat/matrix.hpp"

namespace hoopstat::numerics {

struct LinearFit {
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  std::vector<double> residuals;
  std::size_t degrees_of_freedom = 0;

  double residual_sum_of_squares() const;
  /// coefficient / standard error for regressor `j`.
  double t_statistic(std::size_t j) const;
};

/// Least squares via column-pivoted Householder QR on a column-scaled
/// design.  Requires rows > cols and full column rank; otherwise throws
/// SingularDesignError naming the first column that is a linear
/// combination of the ones before it.
LinearFit ols_fit(const Matrix& design, std::span<const double> response);

}  // namespace hoopstat::numerics
