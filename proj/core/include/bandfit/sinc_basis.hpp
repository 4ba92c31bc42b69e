#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace bandfit {

/// sin(x)/x with the removable singularity at 0 filled in.
double sinc(double x) noexcept;

/// Band limit and truncation order of the sinc basis
/// { sinc(k*pi + omega*t) : -n <= k <= n }.
class BasisSpec {
 public:
  BasisSpec(double omega, int n);

  double omega() const noexcept { return omega_; }
  int order() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return 2 * static_cast<std::size_t>(n_) + 1; }

  bool contains(int k) const noexcept { return k >= -n_ && k <= n_; }
  std::size_t storage_index(int k) const;  // k + n, range-checked
  int logical_index(std::size_t i) const noexcept { return static_cast<int>(i) - n_; }

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;

 private:
  double omega_;
  int n_;
};

/// Series coefficients y_{-N..N}. Public accessors speak logical indices;
/// `vector()` exposes storage order (index k + N).
class Coefficients {
 public:
  static Coefficients zeros(const BasisSpec& spec);
  static Coefficients unit(const BasisSpec& spec, int k);
  static Coefficients from_storage(const BasisSpec& spec, Eigen::VectorXd values);

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  bool conforms_to(const BasisSpec& spec) const noexcept;

  double at(int k) const;
  void set(int k, double value);

  const Eigen::VectorXd& vector() const noexcept { return values_; }
  double norm() const { return values_.norm(); }

 private:
  Coefficients(int n, Eigen::VectorXd values);

  int n_;
  Eigen::VectorXd values_;
};

/// Cardinal node t[k] = -k*pi/omega.
double node(int k, const BasisSpec& spec);

/// sinc(k*pi + omega*t).
double basis_fn(int k, const BasisSpec& spec, double t);

/// All 2N+1 basis functions at t in storage order, sharing one sine
/// evaluation. `out.size()` must equal the basis dimension.
void basis_values(const BasisSpec& spec, double t, std::span<double> out);

/// (omega/pi) * sum_k y_k sinc(k*pi + omega*t), valid for every real t.
double eval_series(const Coefficients& c, const BasisSpec& spec, double t);

/// y_k = f(t[k]) * pi/omega. Exact inverse of eval_series on the basis span.
Coefficients sampling_coefficients(const BasisSpec& spec,
                                   const std::function<double(double)>& f);

}  // namespace bandfit
