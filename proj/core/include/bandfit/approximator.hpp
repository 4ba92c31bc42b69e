#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bandfit/gram.hpp"
#include "bandfit/quadrature.hpp"
#include "bandfit/signal.hpp"
#include "bandfit/sinc_basis.hpp"
#include "bandfit/solver.hpp"

namespace bandfit {

struct FitConfig {
  double omega = 1.0;
  int n = 0;
  double lambda = kDefaultLambda;  // diagonal shift R + lambda*I
  double quad_tol = kDefaultQuadTol;
  GramBackend backend = GramBackend::quadrature;

  void validate() const;  // ContractError on bad values
};

/// Fitted band-limited process. Immutable; evaluable on the whole real line.
class Approximant {
 public:
  Approximant(BasisSpec spec, Coefficients coefficients, Window window,
              double lambda, SolveReport fit_report);

  const BasisSpec& spec() const noexcept { return spec_; }
  const Coefficients& coefficients() const noexcept { return coefficients_; }
  const Window& window() const noexcept { return window_; }
  double lambda() const noexcept { return lambda_; }
  const SolveReport& fit_report() const noexcept { return report_; }

  double operator()(double t) const { return eval_series(coefficients_, spec_, t); }

  /// Values at a + i*h, h = (b - a)/(points - 1), i = 0..points-1.
  std::vector<double> sample(double a, double b, std::size_t points,
                             std::vector<double>* times = nullptr) const;

 private:
  BasisSpec spec_;
  Coefficients coefficients_;
  Window window_;
  double lambda_;
  SolveReport report_;
};

/// L2(q, s) projection of x onto the truncated band-limited space (with the
/// configured diagonal shift). Errors are rethrown with the failing stage
/// ("gram", "load", "solve") prefixed to the message.
Approximant fit(const Signal& x, const Window& w, const FitConfig& cfg);

/// int_q^s |xhat(t) - x(t)|^2 dt over the approximant's window.
double objective(const Approximant& a, const Signal& x,
                 double tol = kDefaultQuadTol);

/// int_q^s x(t)^2 dt.
double signal_energy(const Signal& x, const Window& w,
                     double tol = kDefaultQuadTol);

/// Value of the fitted process at any t; beyond s this is the forecast.
double extrapolate(const Approximant& a, double t);

/// X(i w) = sum_k y_k exp(i k w pi / omega) for |w| <= omega, 0 outside.
std::vector<std::complex<double>> frequency_response(
    const Approximant& a, std::span<const double> omega_grid);

}  // namespace bandfit
