#include "bandfit/stream.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "bandfit/error.hpp"

namespace bandfit {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void mix(std::uint64_t& h, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    h ^= (bits >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
}

}  // namespace

StreamConfig StreamConfig::with_defaults(double window_length, FitConfig fit,
                                         std::vector<double> horizons) {
  StreamConfig c;
  c.window_length = window_length;
  c.stride = window_length / 100.0;
  c.horizons = std::move(horizons);
  c.fit = fit;
  return c;
}

void StreamConfig::validate() const {
  if (!(window_length > 0.0) || !std::isfinite(window_length))
    throw ContractError("stream window_length must be > 0");
  if (!(stride > 0.0) || !std::isfinite(stride)) throw ContractError("stream stride must be > 0");
  for (double h : horizons) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ContractError("stream horizons must be > 0");
  }
  fit.validate();
}

std::string output_digest(std::span<const StreamOutput> outputs) {
  if (outputs.empty()) return {};
  std::uint64_t h = kFnvOffset;
  for (const StreamOutput& o : outputs) {
    mix(h, o.s_now);
    mix(h, o.fitted_value);
    for (const auto& [horizon, value] : o.forecasts) {
      mix(h, horizon);
      mix(h, value);
    }
    mix(h, o.residual_window_norm);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

StreamFilter::StreamFilter(StreamConfig config) : config_(std::move(config)) {
  config_.validate();
}

void StreamFilter::evict_before(double q) {
  // Keep exactly one sample at or before q so interpolation reaches q.
  while (times_.size() >= 2 && times_[1] <= q) {
    times_.pop_front();
    values_.pop_front();
  }
}

std::optional<StreamOutput> StreamFilter::push(double t, double value) {
  if (!std::isfinite(t) || !std::isfinite(value))
    throw ContractError("stream samples must be finite");
  if (!times_.empty() && !(t > times_.back()))
    throw ContractError("stream times must be strictly increasing");
  times_.push_back(t);
  values_.push_back(value);

  const double q = t - config_.window_length;
  evict_before(q);
  if (times_.size() < 2 || times_.front() > q) return std::nullopt;
  if (last_fit_time_ && t - *last_fit_time_ < config_.stride) return std::nullopt;
  last_fit_time_ = t;

  const Signal window_signal(std::vector<double>(times_.begin(), times_.end()),
                             std::vector<double>(values_.begin(), values_.end()),
                             config_.interpolation);
  Approximant a = fit(window_signal, Window(q, t), config_.fit);

  StreamOutput out;
  out.s_now = t;
  out.fitted_value = a(t);
  for (double h : config_.horizons) out.forecasts.emplace_back(h, a(t + h));
  out.residual_window_norm = std::sqrt(objective(a, window_signal, config_.fit.quad_tol));
  last_fit_ = std::move(a);
  outputs_.push_back(out);
  return out;
}

}  // namespace bandfit
