#include "hoopstat/linear_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "hoopstat/errors.hpp"

namespace hoopstat::numerics {
namespace {

// Relative pivot threshold on the unit-norm-scaled design.
constexpr double kRankTolerance = 1e-10;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// First column j such that columns [0, j] are rank deficient.
std::size_t first_dependent_column(const Eigen::MatrixXd& scaled) {
  for (Eigen::Index j = 1; j < scaled.cols(); ++j) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled.leftCols(j + 1));
    qr.setThreshold(kRankTolerance);
    if (qr.rank() < j + 1) return static_cast<std::size_t>(j);
  }
  return 0;
}

}  // namespace

double LinearFit::residual_sum_of_squares() const {
  double rss = 0.0;
  for (double r : residuals) rss += r * r;
  return rss;
}

double LinearFit::t_statistic(std::size_t j) const {
  return coefficients.at(j) / standard_errors.at(j);
}

LinearFit ols_fit(const Matrix& design, std::span<const double> response) {
  const auto n = static_cast<Eigen::Index>(design.rows());
  const auto p = static_cast<Eigen::Index>(design.cols());
  if (p == 0) throw DomainError("ols_fit: design has no columns");
  if (static_cast<std::size_t>(n) != response.size()) {
    throw DomainError("ols_fit: design rows and response length differ");
  }
  if (n <= p) throw DomainError("ols_fit: need more observations than regressors");

  Eigen::MatrixXd x = Eigen::Map<const RowMatrix>(design.data(), n, p);
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(response.data(), n);
  if (!x.allFinite() || !y.allFinite()) throw DomainError("ols_fit: non-finite input");

  Eigen::VectorXd scale = x.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (scale(j) == 0.0) {
      throw SingularDesignError(static_cast<std::size_t>(j),
                                "ols_fit: design column " + std::to_string(j) + " is zero");
    }
  }
  const Eigen::MatrixXd scaled = x * scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < p) {
    const auto col = first_dependent_column(scaled);
    throw SingularDesignError(
        col, "ols_fit: design column " + std::to_string(col) +
                 " is linearly dependent on earlier columns");
  }

  const Eigen::VectorXd beta_scaled = qr.solve(y);
  const Eigen::VectorXd resid = y - scaled * beta_scaled;

  // (X'X)^{-1} for the scaled design: P R^{-1} R^{-T} P'.
  const auto r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv = r.solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd cov_permuted = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  const Eigen::MatrixXd cov_scaled = perm * cov_permuted * perm.transpose();

  LinearFit fit;
  fit.degrees_of_freedom = static_cast<std::size_t>(n - p);
  const double sigma2 = resid.squaredNorm() / static_cast<double>(n - p);
  fit.coefficients.resize(p);
  fit.standard_errors.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    fit.coefficients[j] = beta_scaled(j) / scale(j);
    fit.standard_errors[j] = std::sqrt(sigma2 * cov_scaled(j, j)) / scale(j);
  }
  fit.residuals.assign(resid.data(), resid.data() + n);
  return fit;
}

}  // namespace hoopstat::numerics
