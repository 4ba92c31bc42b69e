#include "bandfit/signal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "bandfit/error.hpp"
#include "bandfit/random.hpp"

namespace bandfit {

Signal::Signal(std::vector<double> times, std::vector<double> values,
               Interpolation interpolation)
    : times_(std::move(times)), values_(std::move(values)), interpolation_(interpolation) {
  if (times_.size() != values_.size())
    throw DataError("signal times and values differ in length");
  if (times_.size() < 2) throw DataError("signal needs at least two samples");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "non-finite sample at index " << i;
      throw DataError(msg.str());
    }
    if (i > 0 && !(times_[i - 1] < times_[i])) {
      std::ostringstream msg;
      msg << "sample times not strictly increasing at index " << i;
      throw DataError(msg.str());
    }
  }
}

double Signal::eval(double t) const {
  if (!(t >= times_.front() && t <= times_.back())) {
    std::ostringstream msg;
    msg << "t = " << t << " outside sampled range [" << times_.front() << ", "
        << times_.back() << "]";
    throw DataError(msg.str());
  }
  // First sample strictly greater than t; i is the panel start.
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.end()) return values_.back();
  const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
  if (t == times_[i] || interpolation_ == Interpolation::piecewise_constant_left)
    return values_[i];
  const double w = (t - times_[i]) / (times_[i + 1] - times_[i]);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

std::vector<double> Signal::breakpoints(double a, double b) const {
  std::vector<double> out;
  out.push_back(a);
  auto it = std::upper_bound(times_.begin(), times_.end(), a);
  for (; it != times_.end() && *it < b; ++it) out.push_back(*it);
  out.push_back(b);
  return out;
}

namespace {

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_row(const std::string& line, double& t, double& v) {
  const auto comma = line.find(',');
  if (comma == std::string::npos) return false;
  const std::string_view view(line);
  return parse_double(view.substr(0, comma), t) && parse_double(view.substr(comma + 1), v);
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Signal read_csv(std::istream& in, Interpolation interpolation) {
  std::vector<double> times;
  std::vector<double> values;
  std::string line;
  std::size_t row = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++row;
    if (blank(line)) continue;
    double t = 0.0;
    double v = 0.0;
    if (!parse_row(line, t, v)) {
      if (first_content) {  // header
        first_content = false;
        continue;
      }
      std::ostringstream msg;
      msg << "row " << row << ": expected two numeric columns time,value";
      throw DataError(msg.str());
    }
    first_content = false;
    if (!times.empty() && !(times.back() < t)) {
      std::ostringstream msg;
      msg << "row " << row << ": time " << format_double(t)
          << (times.back() == t ? " duplicates" : " precedes") << " the previous row";
      throw DataError(msg.str());
    }
    times.push_back(t);
    values.push_back(v);
  }
  return Signal(std::move(times), std::move(values), interpolation);
}

Signal load_csv(const std::filesystem::path& path, Interpolation interpolation) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_csv(in, interpolation);
}

void write_csv(std::ostream& out, std::span<const double> times,
               std::span<const double> values, std::string_view header) {
  if (times.size() != values.size())
    throw ContractError("write_csv: column lengths differ");
  if (!header.empty()) out << header << '\n';
  for (std::size_t i = 0; i < times.size(); ++i)
    out << format_double(times[i]) << ',' << format_double(values[i]) << '\n';
}

void write_csv(std::ostream& out, const Signal& signal) {
  write_csv(out, signal.times(), signal.values());
}

void save_csv(const std::filesystem::path& path, const Signal& signal) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_csv(out, signal);
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<double> SampleGrid::times() const {
  if (!(dt > 0.0) || !(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1))
    throw ContractError("sample grid needs t0 < t1 and dt > 0");
  const auto count = static_cast<std::size_t>(std::floor((t1 - t0) / dt + 0.5)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = t0 + static_cast<double>(i) * dt;
  return out;
}

SynthKind parse_synth_kind(std::string_view name) {
  if (name == "bandlimited") return SynthKind::bandlimited;
  if (name == "jump_walk") return SynthKind::jump_walk;
  if (name == "sines_beyond_band") return SynthKind::sines_beyond_band;
  throw ContractError("unknown synthetic signal kind '" + std::string(name) + "'");
}

namespace {

Signal synth_bandlimited(const BandlimitedParams& p) {
  std::vector<double> times = p.grid.times();
  std::vector<double> values(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    values[i] = eval_series(p.coefficients, p.spec, times[i]);
  return Signal(std::move(times), std::move(values), Interpolation::piecewise_linear);
}

Signal synth_jump_walk(std::uint64_t seed, const JumpWalkParams& p) {
  SplitMix64 rng(seed);
  std::vector<double> times = p.grid.times();
  std::vector<double> values(times.size());
  double level = p.start;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0) {
      level += p.step_sigma * rng.normal();
      if (rng.uniform() < p.jump_probability) level += p.jump_scale * rng.normal();
    }
    values[i] = level;
  }
  return Signal(std::move(times), std::move(values), Interpolation::piecewise_constant_left);
}

Signal synth_sines(std::uint64_t seed, const SinesBeyondBandParams& p) {
  if (!(p.omega > 0.0)) throw ContractError("sines_beyond_band: omega must be positive");
  SplitMix64 rng(seed);
  std::vector<double> freqs = p.frequencies;
  if (freqs.empty()) {
    for (int j = 0; j < 3; ++j) freqs.push_back(p.omega * (1.0 + 2.0 * (1.0 - rng.uniform())));
  }
  for (double f : freqs) {
    if (!(f > p.omega)) throw ContractError("sines_beyond_band: frequencies must exceed omega");
  }
  std::vector<double> amps;
  std::vector<double> phases;
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    amps.push_back(0.5 + rng.uniform());
    phases.push_back(2.0 * std::numbers::pi * rng.uniform());
  }
  std::vector<double> times = p.grid.times();
  std::vector<double> values(times.size(), 0.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = 0; j < freqs.size(); ++j)
      values[i] += amps[j] * std::sin(freqs[j] * times[i] + phases[j]);
  }
  return Signal(std::move(times), std::move(values), Interpolation::piecewise_linear);
}

}  // namespace

Signal synth(SynthKind kind, std::uint64_t seed, const SynthParams& params) {
  switch (kind) {
    case SynthKind::bandlimited:
      if (const auto* p = std::get_if<BandlimitedParams>(&params)) {
        if (!p->coefficients.conforms_to(p->spec))
          throw ContractError("bandlimited: coefficients do not match spec");
        return synth_bandlimited(*p);
      }
      break;
    case SynthKind::jump_walk:
      if (const auto* p = std::get_if<JumpWalkParams>(&params)) return synth_jump_walk(seed, *p);
      break;
    case SynthKind::sines_beyond_band:
      if (const auto* p = std::get_if<SinesBeyondBandParams>(&params)) return synth_sines(seed, *p);
      break;
  }
  throw ContractError("synth: parameters do not match the requested kind");
}

Signal corpus_signal(std::uint64_t seed) {
  JumpWalkParams p;
  p.grid = {-15.0, 5.0, 0.01};
  return synth(SynthKind::jump_walk, seed, p);
}

}  // namespace bandfit
