#include "bandfit/approximator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bandfit/error.hpp"

namespace bandfit {
namespace {

[[noreturn]] void rethrow_with_stage(const Error& e, const std::string& stage) {
  const std::string msg = "fit/" + stage + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::contract: throw ContractError(msg);
    case ErrorKind::range: throw RangeError(msg);
    case ErrorKind::data: throw DataError(msg);
    case ErrorKind::convergence: {
      const auto* ce = dynamic_cast<const ConvergenceError*>(&e);
      throw ConvergenceError(msg, ce ? ce->best_estimate() : 0.0,
                             ce ? ce->error_estimate() : 0.0);
    }
    case ErrorKind::numerical: throw NumericalError(msg);
  }
  throw Error(e.kind(), msg);
}

template <typename F>
auto staged(const std::string& stage, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    rethrow_with_stage(e, stage);
  }
}

}  // namespace

void FitConfig::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ContractError("omega must be > 0");
  if (n < 0) throw ContractError("n must be >= 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ContractError("lambda must be >= 0");
  if (!(quad_tol > 0.0)) throw ContractError("quad_tol must be > 0");
}

Approximant::Approximant(BasisSpec spec, Coefficients coefficients, Window window,
                         double lambda, SolveReport fit_report)
    : spec_(spec),
      coefficients_(std::move(coefficients)),
      window_(window),
      lambda_(lambda),
      report_(std::move(fit_report)) {
  if (!coefficients_.conforms_to(spec_))
    throw ContractError("approximant coefficients do not match basis order");
}

std::vector<double> Approximant::sample(double a, double b, std::size_t points,
                                        std::vector<double>* times) const {
  if (points == 0) throw ContractError("sample: need at least one point");
  const double h = points == 1 ? 0.0 : (b - a) / static_cast<double>(points - 1);
  std::vector<double> out(points);
  if (times) times->resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = a + static_cast<double>(i) * h;
    out[i] = (*this)(t);
    if (times) (*times)[i] = t;
  }
  return out;
}

Approximant fit(const Signal& x, const Window& w, const FitConfig& cfg) {
  cfg.validate();
  const BasisSpec spec(cfg.omega, cfg.n);
  GramMatrix gram = staged("gram", [&] { return build_gram(spec, w, cfg.quad_tol, cfg.backend); });
  LoadVector load = staged("load", [&] { return load_vector(x, spec, w, cfg.quad_tol); });
  const GramSystem system{std::move(gram.matrix), std::move(load.values), spec, w,
                          cfg.quad_tol, std::max(gram.max_quad_error, load.max_quad_error)};
  SolveReport report = staged("solve", [&] { return solve_regularized(system, cfg.lambda); });
  Coefficients coefficients = report.coefficients;
  return Approximant(spec, std::move(coefficients), w, cfg.lambda, std::move(report));
}

double objective(const Approximant& a, const Signal& x, double tol) {
  const Window& w = a.window();
  if (!x.covers(w.q(), w.s())) throw DataError("objective: signal does not cover window");
  const std::vector<double> cuts = x.breakpoints(w.q(), w.s());
  const QuadResult r = integrate_piecewise(
      [&](double t) {
        const double d = a(t) - x.eval(t);
        return d * d;
      },
      cuts, tol);
  return std::max(r.value, 0.0);
}

double signal_energy(const Signal& x, const Window& w, double tol) {
  if (!x.covers(w.q(), w.s())) throw DataError("signal_energy: signal does not cover window");
  const std::vector<double> cuts = x.breakpoints(w.q(), w.s());
  return integrate_piecewise(
             [&](double t) {
               const double v = x.eval(t);
               return v * v;
             },
             cuts, tol)
      .value;
}

double extrapolate(const Approximant& a, double t) { return a(t); }

std::vector<std::complex<double>> frequency_response(const Approximant& a,
                                                     std::span<const double> omega_grid) {
  const double band = a.spec().omega();
  const int n = a.spec().order();
  std::vector<std::complex<double>> out;
  out.reserve(omega_grid.size());
  for (double w : omega_grid) {
    std::complex<double> acc = 0.0;
    if (std::abs(w) <= band) {
      const double phase = w * std::numbers::pi / band;
      for (int k = -n; k <= n; ++k)
        acc += a.coefficients().at(k) * std::polar(1.0, k * phase);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace bandfit
