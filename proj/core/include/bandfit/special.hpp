#pragma once

namespace bandfit {

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
double sine_integral(double x);

/// Entire cosine integral Cin(x) = int_0^x (1 - cos t)/t dt (even in x).
double entire_cosine_integral(double x);

}  // namespace bandfit
