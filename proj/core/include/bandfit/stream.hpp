#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bandfit/approximator.hpp"

namespace bandfit {

struct StreamConfig {
  double window_length = 1.0;  // s - q
  double stride = 0.01;        // minimum time between refits
  std::vector<double> horizons;  // forecast offsets, all > 0
  FitConfig fit;
  Interpolation interpolation = Interpolation::piecewise_linear;

  /// stride = window_length / 100.
  static StreamConfig with_defaults(double window_length, FitConfig fit,
                                    std::vector<double> horizons = {});
  void validate() const;
};

struct StreamOutput {
  double s_now = 0.0;
  double fitted_value = 0.0;  // xhat(s_now)
  std::vector<std::pair<double, double>> forecasts;  // (horizon, xhat(s_now + h))
  double residual_window_norm = 0.0;  // sqrt of the objective on the window
};

/// FNV-1a 64 over the bit patterns of every field, hex encoded. Empty input
/// gives the empty string.
std::string output_digest(std::span<const StreamOutput> outputs);

/// Causal sliding-window refit. Each fit uses only samples with time <= the
/// current time, on the window (t - window_length, t].
class StreamFilter {
 public:
  explicit StreamFilter(StreamConfig config);

  // Buffers the sample and refits when t is at least `stride` past the last
  // fit and the buffer covers a full window. Throws ContractError on
  // non-increasing t; a fit failure propagates after the sample is buffered.
  std::optional<StreamOutput> push(double t, double value);

  const StreamConfig& config() const noexcept { return config_; }
  const std::vector<StreamOutput>& outputs() const noexcept { return outputs_; }
  const std::optional<Approximant>& last_fit() const noexcept { return last_fit_; }
  std::size_t buffered() const noexcept { return times_.size(); }

  /// Digest of every output so far; replaying a prefix of the input must give
  /// the digest of the corresponding prefix of outputs.
  std::string causality_witness() const { return output_digest(outputs_); }

 private:
  void evict_before(double q);

  StreamConfig config_;
  std::deque<double> times_;
  std::deque<double> values_;
  std::optional<double> last_fit_time_;
  std::optional<Approximant> last_fit_;
  std::vector<StreamOutput> outputs_;
};

}  // namespace bandfit
