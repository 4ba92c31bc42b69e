#include "bandfit/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bandfit/error.hpp"
#include "bandfit/special.hpp"

namespace bandfit {
namespace {

constexpr double kPi = std::numbers::pi;

double diagonal_antiderivative(double v) {
  if (v == 0.0) return 0.0;
  const double s = std::sin(v);
  return sine_integral(2.0 * v) - s * s / v;
}

}  // namespace

Window::Window(double q, double s) : q_(q), s_(s) {
  if (!std::isfinite(q) || !std::isfinite(s) || !(q < s))
    throw ContractError("window must satisfy q < s with both finite");
}

QuadResult gram_entry_result(int k, int m, const BasisSpec& spec, const Window& w,
                             double tol) {
  if (!spec.contains(k) || !spec.contains(m))
    throw RangeError("gram_entry: index outside [-N, N]");
  const double scale = spec.omega() * spec.omega() / (kPi * kPi);
  return integrate(
      [&](double t) { return scale * basis_fn(m, spec, t) * basis_fn(k, spec, t); },
      w.q(), w.s(), tol);
}

double gram_entry(int k, int m, const BasisSpec& spec, const Window& w, double tol) {
  return gram_entry_result(k, m, spec, w, tol).value;
}

double gram_entry_closed_form(int k, int m, const BasisSpec& spec, const Window& w) {
  if (!spec.contains(k) || !spec.contains(m))
    throw RangeError("gram_entry_closed_form: index outside [-N, N]");
  const double omega = spec.omega();
  const double uq = omega * w.q();
  const double us = omega * w.s();
  const double prefactor = omega / (kPi * kPi);
  if (k == m) {
    const double shift = k * kPi;
    return prefactor * (diagonal_antiderivative(us + shift) - diagonal_antiderivative(uq + shift));
  }
  const double am = m * kPi;
  const double ak = k * kPi;
  auto g = [&](double u) {
    return entire_cosine_integral(2.0 * (u + am)) - entire_cosine_integral(2.0 * (u + ak));
  };
  const double sign = ((k + m) & 1) ? -1.0 : 1.0;
  return prefactor * sign * 0.5 * (g(us) - g(uq)) / ((k - m) * kPi);
}

GramMatrix build_gram(const BasisSpec& spec, const Window& w, double tol,
                      GramBackend backend) {
  const auto dim = static_cast<Eigen::Index>(spec.dimension());
  GramMatrix out{Eigen::MatrixXd::Zero(dim, dim), 0.0};
  const int n = spec.order();
  for (int k = -n; k <= n; ++k) {
    for (int m = -n; m <= k; ++m) {
      double value = 0.0;
      if (backend == GramBackend::closed_form) {
        value = gram_entry_closed_form(k, m, spec, w);
      } else {
        try {
          const QuadResult r = gram_entry_result(k, m, spec, w, tol);
          value = r.value;
          out.max_quad_error = std::max(out.max_quad_error, r.error_estimate);
        } catch (const ConvergenceError& e) {
          std::ostringstream msg;
          msg << "gram entry (k=" << k << ", m=" << m << "): " << e.what();
          throw ConvergenceError(msg.str(), e.best_estimate(), e.error_estimate());
        }
      }
      out.matrix(k + n, m + n) = value;
      out.matrix(m + n, k + n) = value;
    }
  }
  return out;
}

LoadVector load_vector(const Signal& x, const BasisSpec& spec, const Window& w, double tol) {
  if (!x.covers(w.q(), w.s())) {
    std::ostringstream msg;
    msg << "signal samples [" << x.front_time() << ", " << x.back_time()
        << "] do not cover window [" << w.q() << ", " << w.s() << "]";
    throw DataError(msg.str());
  }
  if (!(tol > 0.0)) throw ContractError("load_vector: tolerance must be positive");

  const std::size_t dim = spec.dimension();
  const bool linear = x.interpolation() == Interpolation::piecewise_linear;
  const std::size_t components = linear ? 2 * dim : dim;
  const double scale = spec.omega() / kPi;
  const std::vector<double>& times = x.times();
  const std::vector<double>& values = x.values();
  const std::vector<double> cuts = x.breakpoints(w.q(), w.s());
  const double panel_tol = tol / static_cast<double>(cuts.size() - 1);

  LoadVector out{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim)), 0.0};
  std::vector<double> err(dim, 0.0);
  std::vector<double> phi(dim);

  std::size_t i = 0;  // sample index with times[i] <= lo < times[i+1]
  for (std::size_t p = 1; p < cuts.size(); ++p) {
    const double lo = cuts[p - 1];
    const double hi = cuts[p];
    while (i + 1 < times.size() && times[i + 1] <= lo) ++i;
    const double t0 = times[i];
    const double h = times[i + 1] - t0;

    QuadOptions options;
    options.tol = panel_tol;
    const VectorIntegrand integrand = [&](double t, std::span<double> o) {
      basis_values(spec, t, phi);
      if (linear) {
        const double l1 = (t - t0) / h;
        const double l0 = 1.0 - l1;
        for (std::size_t c = 0; c < dim; ++c) {
          o[c] = scale * phi[c] * l0;
          o[dim + c] = scale * phi[c] * l1;
        }
      } else {
        for (std::size_t c = 0; c < dim; ++c) o[c] = scale * phi[c];
      }
    };
    VectorQuadResult r;
    try {
      r = integrate_vector(integrand, components, lo, hi, options);
    } catch (const ConvergenceError& e) {
      std::ostringstream msg;
      msg << "load vector panel [" << lo << ", " << hi << "]: " << e.what();
      throw ConvergenceError(msg.str(), e.best_estimate(), e.error_estimate());
    }
    const double v0 = values[i];
    const double v1 = linear ? values[i + 1] : 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const auto row = static_cast<Eigen::Index>(c);
      if (linear) {
        out.values[row] += r.values[c] * v0 + r.values[dim + c] * v1;
        err[c] += std::abs(v0) * r.error_estimates[c] + std::abs(v1) * r.error_estimates[dim + c];
      } else {
        out.values[row] += r.values[c] * v0;
        err[c] += std::abs(v0) * r.error_estimates[c];
      }
    }
  }
  out.max_quad_error = *std::max_element(err.begin(), err.end());
  return out;
}

GramSystem assemble_system(const Signal& x, const BasisSpec& spec, const Window& w,
                           double tol, GramBackend backend) {
  GramMatrix g = build_gram(spec, w, tol, backend);
  LoadVector l = load_vector(x, spec, w, tol);
  return GramSystem{std::move(g.matrix), std::move(l.values), spec, w, tol,
                    std::max(g.max_quad_error, l.max_quad_error)};
}

}  // namespace bandfit
