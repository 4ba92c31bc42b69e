#include "bandfit/special.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "bandfit/error.hpp"

namespace bandfit {
namespace {

constexpr double kSeriesLimit = 4.0;
constexpr int kMaxTerms = 200;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// E1(i x) for x > kSeriesLimit by the continued fraction
// E1(z) = e^{-z} / (z + 1 - 1^2/(z + 3 - 2^2/(z + 5 - ...))), modified Lentz.
std::complex<double> e1_imaginary(double x) {
  const double tiny = 1e-300;
  std::complex<double> b(1.0, x);
  std::complex<double> c = 1.0 / tiny;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i <= kMaxTerms; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      return std::complex<double>(std::cos(x), -std::sin(x)) * h;
    }
  }
  throw NumericalError("E1(ix) continued fraction did not converge");
}

}  // namespace

double sine_integral(double x) {
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  double result;
  if (ax <= kSeriesLimit) {
    // sum_{j>=0} (-1)^j x^{2j+1} / ((2j+1) (2j+1)!)
    double term = ax;  // x^{2j+1}/(2j+1)!
    double sum = ax;
    for (int j = 1; j < kMaxTerms; ++j) {
      term *= -ax * ax / ((2.0 * j) * (2.0 * j + 1.0));
      const double contrib = term / (2.0 * j + 1.0);
      sum += contrib;
      if (std::abs(contrib) < kEps * std::abs(sum)) break;
    }
    result = sum;
  } else {
    result = std::numbers::pi / 2.0 + e1_imaginary(ax).imag();
  }
  return x < 0 ? -result : result;
}

double entire_cosine_integral(double x) {
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  if (ax <= kSeriesLimit) {
    // sum_{j>=1} (-1)^{j+1} x^{2j} / (2j (2j)!)
    double term = 1.0;  // x^{2j}/(2j)!
    double sum = 0.0;
    for (int j = 1; j < kMaxTerms; ++j) {
      term *= -ax * ax / ((2.0 * j - 1.0) * (2.0 * j));
      const double contrib = -term / (2.0 * j);
      sum += contrib;
      if (std::abs(contrib) < kEps * std::abs(sum)) break;
    }
    return sum;
  }
  // Cin(x) = gamma + ln x - Ci(x), Ci(x) = -Re E1(ix).
  return std::numbers::egamma + std::log(ax) + e1_imaginary(ax).real();
}

}  // namespace bandfit
