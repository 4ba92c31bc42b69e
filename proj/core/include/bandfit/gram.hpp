#pragma once

#include <Eigen/Core>

#include "bandfit/quadrature.hpp"
#include "bandfit/signal.hpp"
#include "bandfit/sinc_basis.hpp"

namespace bandfit {

/// Observation interval (q, s], both finite, q < s.
class Window {
 public:
  Window(double q, double s);

  double q() const noexcept { return q_; }
  double s() const noexcept { return s_; }
  double length() const noexcept { return s_ - q_; }
  bool contains(double t) const noexcept { return q_ < t && t <= s_; }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  double q_;
  double s_;
};

enum class GramBackend {
  quadrature,   // adaptive Gauss-Kronrod per entry
  closed_form,  // Si / Cin expressions
};

struct GramMatrix {
  Eigen::MatrixXd matrix;
  double max_quad_error = 0.0;
};

struct LoadVector {
  Eigen::VectorXd values;
  double max_quad_error = 0.0;
};

struct GramSystem {
  Eigen::MatrixXd r_matrix;
  Eigen::VectorXd load;
  BasisSpec spec;
  Window window;
  double quad_tol;
  double max_quad_error;
};

/// R_km = (omega^2/pi^2) * int_q^s sinc(m*pi + omega*t) sinc(k*pi + omega*t) dt.
QuadResult gram_entry_result(int k, int m, const BasisSpec& spec,
                             const Window& w, double tol);
double gram_entry(int k, int m, const BasisSpec& spec, const Window& w,
                  double tol = kDefaultQuadTol);

// Same entry through sine and entire cosine integrals. With u = omega*t and
// v = u + k*pi, sin^2(u)/((u+m*pi)(u+k*pi)) splits into partial fractions
// whose antiderivatives are Cin(2v)/2 (k != m) or Si(2v) - sin^2(v)/v (k = m).
double gram_entry_closed_form(int k, int m, const BasisSpec& spec, const Window& w);

/// Lower triangle computed, upper mirrored. A failing entry aborts assembly
/// with a ConvergenceError naming (k, m).
GramMatrix build_gram(const BasisSpec& spec, const Window& w,
                      double tol = kDefaultQuadTol,
                      GramBackend backend = GramBackend::quadrature);

// (rx)_k = (omega/pi) * int_q^s sinc(k*pi + omega*t) x(t) dt.
//
// The interpolant is linear (or constant) between samples, so each panel's
// integral is a fixed combination of the two neighbouring sample values with
// weights that only involve the basis. Those weights are integrated
// adaptively, which keeps the map x -> rx linear in the data.
LoadVector load_vector(const Signal& x, const BasisSpec& spec, const Window& w,
                       double tol = kDefaultQuadTol);

GramSystem assemble_system(const Signal& x, const BasisSpec& spec,
                           const Window& w, double tol = kDefaultQuadTol,
                           GramBackend backend = GramBackend::quadrature);

}  // namespace bandfit
