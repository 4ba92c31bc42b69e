#pragma once

#include <vector>

#include <Eigen/Core>

#include "bandfit/gram.hpp"
#include "bandfit/sinc_basis.hpp"

namespace bandfit {

inline constexpr double kDefaultLambda = 1e-3;

struct SolveReport {
  Coefficients coefficients;
  double lambda = 0.0;
  double residual_e = 0.0;  // ||R y - rx||_2 with the unshifted R
  // Extreme eigenvalues of the factorized matrix R + lambda*I.
  double min_eig = 0.0;
  double max_eig = 0.0;
  double condition = 0.0;  // max_eig / min_eig, +inf when min_eig <= 0
  bool used_fallback = false;  // Cholesky failed; pseudo-solve used
};

/// Solves (R + lambda*I) y = rx. Cholesky first; on failure an
/// eigendecomposition pseudo-solve over the numerically positive part of the
/// spectrum.
SolveReport solve_regularized(const GramSystem& g, double lambda = kDefaultLambda);

/// Normal equations of min G(y, x) + eps^2 ||y||^2, i.e. lambda = eps^2.
SolveReport ridge_solve(const GramSystem& g, double eps);

/// Ascending eigenvalues of a symmetric matrix.
std::vector<double> spectrum(const Eigen::MatrixXd& symmetric);
std::vector<double> spectrum(const GramSystem& g);

}  // namespace bandfit
