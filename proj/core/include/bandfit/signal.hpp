#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "bandfit/sinc_basis.hpp"

namespace bandfit {

enum class Interpolation {
  piecewise_linear,
  piecewise_constant_left,  // x(t) = v_i on [t_i, t_{i+1})
};

/// Sampled real path turned into a function on [times.front(), times.back()]
/// by an interpolation convention. Immutable after construction.
class Signal {
 public:
  Signal(std::vector<double> times, std::vector<double> values,
         Interpolation interpolation = Interpolation::piecewise_linear);

  /// Interpolated value; throws DataError outside the sampled range.
  double eval(double t) const;
  double operator()(double t) const { return eval(t); }

  std::size_t size() const noexcept { return times_.size(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& values() const noexcept { return values_; }
  Interpolation interpolation() const noexcept { return interpolation_; }
  double front_time() const noexcept { return times_.front(); }
  double back_time() const noexcept { return times_.back(); }

  bool covers(double a, double b) const noexcept {
    return times_.front() <= a && b <= times_.back();
  }

  /// {a, sample times strictly inside (a, b), b}: the kinks of the
  /// interpolant restricted to [a, b].
  std::vector<double> breakpoints(double a, double b) const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  Interpolation interpolation_;
};

// CSV: two numeric columns time,value; optional single header line.
Signal read_csv(std::istream& in,
                Interpolation interpolation = Interpolation::piecewise_linear);
Signal load_csv(const std::filesystem::path& path,
                Interpolation interpolation = Interpolation::piecewise_linear);

/// Values printed with 17 significant digits, so read_csv round-trips exactly.
void write_csv(std::ostream& out, std::span<const double> times,
               std::span<const double> values, std::string_view header = "t,x");
void write_csv(std::ostream& out, const Signal& signal);
void save_csv(const std::filesystem::path& path, const Signal& signal);

// Synthetic signals ------------------------------------------------------

/// Times t0 + i*dt for i = 0..count-1, where t0 + (count-1)*dt ~= t1.
struct SampleGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = 0.01;

  std::vector<double> times() const;
};

enum class SynthKind { bandlimited, jump_walk, sines_beyond_band };

SynthKind parse_synth_kind(std::string_view name);

struct BandlimitedParams {
  BasisSpec spec;
  Coefficients coefficients;
  SampleGrid grid;
};

/// Piecewise-constant random walk: a small Gaussian step every sample plus,
/// with probability jump_probability, a Gaussian jump of scale jump_scale.
struct JumpWalkParams {
  SampleGrid grid;
  double start = 0.0;
  double step_sigma = 0.05;
  double jump_probability = 0.02;
  double jump_scale = 0.5;
};

/// Sum of sinusoids a_j sin(w_j t + phi_j) with every w_j > omega. When
/// `frequencies` is empty, three are drawn uniformly from (omega, 3*omega].
/// Amplitudes are drawn from [0.5, 1.5) and phases from [0, 2*pi).
struct SinesBeyondBandParams {
  SampleGrid grid;
  double omega = 1.0;
  std::vector<double> frequencies;
};

using SynthParams =
    std::variant<BandlimitedParams, JumpWalkParams, SinesBeyondBandParams>;

/// Deterministic for fixed seed. `kind` must match the params alternative.
Signal synth(SynthKind kind, std::uint64_t seed, const SynthParams& params);

/// The reference corpus signal used for figure reproduction and the oracle
/// tests: a jump walk on [-15, 5] with dt = 0.01.
Signal corpus_signal(std::uint64_t seed);

}  // namespace bandfit
