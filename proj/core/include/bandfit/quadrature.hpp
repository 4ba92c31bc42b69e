#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bandfit {

inline constexpr double kDefaultQuadTol = 1e-8;
inline constexpr int kDefaultMaxDepth = 30;
inline constexpr int kRuleSize = 15;

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

struct QuadOptions {
  double tol = kDefaultQuadTol;  // absolute
  int max_depth = kDefaultMaxDepth;
  int initial_panels = 1;  // uniform pre-split before adaptive bisection
};

// Globally adaptive 7/15-point Gauss-Kronrod integration. The interval with
// the largest error estimate is bisected until the summed estimate drops
// below tol. If every remaining estimate is at the rounding floor the result
// is accepted even when that floor exceeds tol; error_estimate reports it.
// Throws ConvergenceError when an interval would exceed max_depth bisections
// and DataError on a non-finite integrand sample.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol = kDefaultQuadTol);
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& options);

// Sum of integrate() over consecutive breakpoint pairs, each panel getting
// tol / (number of panels). Panels are summed in order.
QuadResult integrate_piecewise(const std::function<double(double)>& f,
                               std::span<const double> breakpoints,
                               double tol = kDefaultQuadTol);

/// Vector-valued integrand: fills `out` (size `dim`) with components at t.
using VectorIntegrand = std::function<void(double t, std::span<double> out)>;

struct VectorQuadResult {
  std::vector<double> values;
  std::vector<double> error_estimates;
  int evaluations = 0;
};

// Same scheme for several integrands sharing abscissae. Every component must
// meet tol; the interval to bisect is the one with the largest componentwise
// estimate.
VectorQuadResult integrate_vector(const VectorIntegrand& f, std::size_t dim,
                                  double a, double b, const QuadOptions& options);

}  // namespace bandfit
