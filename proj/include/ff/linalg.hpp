#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ff/rational.hpp"

namespace ff {

/// Rank over the rationals by exact Gaussian elimination.
int rank_exact(std::vector<std::vector<Rational>> m);

/// Numeric rank via SVD. Singular values below rel_tol times the largest
/// singular value (or times 1 when all singular values are tiny) count as
/// zero.
int rank_numeric(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

/// Minimum-norm least-squares solution of A x = b.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                               double rel_tol = 1e-12);

/// Orthonormal basis of the (right) null space of A, using the same singular
/// value cutoff as rank_numeric.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol = 1e-9);

/// Least-squares slope of log(y) against log(x); also returns the maximum
/// absolute residual of the fit in log space.
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};
LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace ff
