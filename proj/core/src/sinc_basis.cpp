#include "bandfit/sinc_basis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "bandfit/error.hpp"

namespace bandfit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesThreshold = 1e-4;

inline double sinc_series(double x) noexcept {
  const double x2 = x * x;
  return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
}

// sinc(k*pi + omega*t) given sin(omega*t). Far from the singularity the
// shifted sine is (-1)^k sin(omega*t); within |x| < 1 the argument is used
// directly so numerator and denominator stay consistent.
inline double basis_term(int k, double omega_t, double sin_omega_t) noexcept {
  const double x = k * kPi + omega_t;
  const double ax = std::abs(x);
  if (ax < kSeriesThreshold) return sinc_series(x);
  if (ax < 1.0) return std::sin(x) / x;
  return ((k & 1) ? -sin_omega_t : sin_omega_t) / x;
}

void check_index(int k, const BasisSpec& spec) {
  if (!spec.contains(k)) {
    std::ostringstream msg;
    msg << "basis index " << k << " outside [-" << spec.order() << ", "
        << spec.order() << "]";
    throw RangeError(msg.str());
  }
}

}  // namespace

double sinc(double x) noexcept {
  if (std::abs(x) < kSeriesThreshold) return sinc_series(x);
  return std::sin(x) / x;
}

BasisSpec::BasisSpec(double omega, int n) : omega_(omega), n_(n) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw ContractError("band limit omega must be positive and finite");
  if (n < 0) throw ContractError("truncation order n must be >= 0");
}

std::size_t BasisSpec::storage_index(int k) const {
  check_index(k, *this);
  return static_cast<std::size_t>(k + n_);
}

Coefficients::Coefficients(int n, Eigen::VectorXd values)
    : n_(n), values_(std::move(values)) {}

Coefficients Coefficients::zeros(const BasisSpec& spec) {
  return Coefficients(spec.order(),
                      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.dimension())));
}

Coefficients Coefficients::unit(const BasisSpec& spec, int k) {
  Coefficients c = zeros(spec);
  c.set(k, 1.0);
  return c;
}

Coefficients Coefficients::from_storage(const BasisSpec& spec, Eigen::VectorXd values) {
  if (static_cast<std::size_t>(values.size()) != spec.dimension())
    throw ContractError("coefficient vector length does not match 2N+1");
  if (!values.allFinite()) throw DataError("coefficients must be finite");
  return Coefficients(spec.order(), std::move(values));
}

bool Coefficients::conforms_to(const BasisSpec& spec) const noexcept {
  return n_ == spec.order();
}

double Coefficients::at(int k) const {
  if (k < -n_ || k > n_) throw RangeError("coefficient index out of range");
  return values_[k + n_];
}

void Coefficients::set(int k, double value) {
  if (k < -n_ || k > n_) throw RangeError("coefficient index out of range");
  if (!std::isfinite(value)) throw DataError("coefficients must be finite");
  values_[k + n_] = value;
}

double node(int k, const BasisSpec& spec) {
  check_index(k, spec);
  return -k * kPi / spec.omega();
}

double basis_fn(int k, const BasisSpec& spec, double t) {
  check_index(k, spec);
  const double omega_t = spec.omega() * t;
  return basis_term(k, omega_t, std::sin(omega_t));
}

void basis_values(const BasisSpec& spec, double t, std::span<double> out) {
  if (out.size() != spec.dimension())
    throw ContractError("basis_values: output span has wrong length");
  const double omega_t = spec.omega() * t;
  const double s = std::sin(omega_t);
  const int n = spec.order();
  for (int k = -n; k <= n; ++k) out[static_cast<std::size_t>(k + n)] = basis_term(k, omega_t, s);
}

double eval_series(const Coefficients& c, const BasisSpec& spec, double t) {
  if (!c.conforms_to(spec))
    throw ContractError("eval_series: coefficients do not match basis order");
  const double omega_t = spec.omega() * t;
  const double s = std::sin(omega_t);
  const int n = spec.order();
  const Eigen::VectorXd& y = c.vector();
  double acc = 0.0;
  for (int k = -n; k <= n; ++k) acc += y[k + n] * basis_term(k, omega_t, s);
  return spec.omega() / kPi * acc;
}

Coefficients sampling_coefficients(const BasisSpec& spec,
                                   const std::function<double(double)>& f) {
  Coefficients c = Coefficients::zeros(spec);
  const double scale = kPi / spec.omega();
  for (int k = -spec.order(); k <= spec.order(); ++k) {
    const double v = f(node(k, spec));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "sampling_coefficients: non-finite value at node " << k;
      throw DataError(msg.str());
    }
    c.set(k, v * scale);
  }
  return c;
}

}  // namespace bandfit
