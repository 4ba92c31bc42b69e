#include "bandfit/solver.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "bandfit/error.hpp"

namespace bandfit {
namespace {

void check_system(const GramSystem& g) {
  const auto dim = static_cast<Eigen::Index>(g.spec.dimension());
  if (g.r_matrix.rows() != dim || g.r_matrix.cols() != dim || g.load.size() != dim)
    throw ContractError("gram system dimensions do not match 2N+1");
  if (!g.r_matrix.allFinite() || !g.load.allFinite())
    throw NumericalError("gram system contains non-finite entries");
}

}  // namespace

std::vector<double> spectrum(const Eigen::MatrixXd& symmetric) {
  if (symmetric.rows() != symmetric.cols())
    throw ContractError("spectrum: matrix must be square");
  if (symmetric.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();  // ascending
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> spectrum(const GramSystem& g) {
  check_system(g);
  return spectrum(g.r_matrix);
}

SolveReport solve_regularized(const GramSystem& g, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ContractError("lambda must be finite and >= 0");
  check_system(g);

  const auto dim = static_cast<Eigen::Index>(g.spec.dimension());
  Eigen::MatrixXd shifted = g.r_matrix;
  shifted.diagonal().array() += lambda;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shifted);
  if (eig.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double min_eig = ev[0];
  const double max_eig = ev[dim - 1];

  Eigen::VectorXd y;
  bool fallback = false;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() == Eigen::Success && min_eig > 0.0) {
    y = llt.solve(g.load);
  } else {
    // Pseudo-solve on eigenvalues above the rounding level of the spectrum.
    fallback = true;
    const double cutoff = std::numeric_limits<double>::epsilon() *
                          static_cast<double>(dim) *
                          std::max(std::abs(min_eig), std::abs(max_eig));
    const Eigen::MatrixXd& v = eig.eigenvectors();
    Eigen::VectorXd proj = v.transpose() * g.load;
    bool any = false;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (ev[i] > cutoff) {
        proj[i] /= ev[i];
        any = true;
      } else {
        proj[i] = 0.0;
      }
    }
    if (!any && g.load.norm() > 0.0)
      throw NumericalError("system matrix has no positive spectrum to solve on");
    y = v * proj;
  }
  if (!y.allFinite()) throw NumericalError("solve produced non-finite coefficients");

  SolveReport report{Coefficients::from_storage(g.spec, y)};
  report.lambda = lambda;
  report.residual_e = (g.r_matrix * y - g.load).norm();
  report.min_eig = min_eig;
  report.max_eig = max_eig;
  report.condition = min_eig > 0.0 ? max_eig / min_eig : std::numeric_limits<double>::infinity();
  report.used_fallback = fallback;
  return report;
}

SolveReport ridge_solve(const GramSystem& g, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw ContractError("eps must be finite and >= 0");
  return solve_regularized(g, eps * eps);
}

}  // namespace bandfit
