#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <bandfit/approximator.hpp>
#include <bandfit/error.hpp>
#include <bandfit/serialization.hpp>
#include <bandfit/signal.hpp>
#include <bandfit/solver.hpp>
#include <bandfit/stream.hpp>

namespace bandfit::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::size_t kDefaultCurvePoints = 1000;

/// Flag problems detected after parsing (bad values, inconsistent ranges).
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Files that cannot be read or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int emit_error(std::ostream& err, int code, std::string_view kind, std::string_view message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

struct FitFlags {
  double omega = 0.0;
  int n = 0;
  double lambda = kDefaultLambda;
  double quad_tol = kDefaultQuadTol;
  std::string interpolation = "linear";
  std::string backend = "quadrature";

  void add_to(CLI::App& app, bool require_basis = true) {
    auto* o = app.add_option("--omega", omega, "Band limit (rad per time unit)");
    auto* n_opt = app.add_option("--n", n, "Truncation order N (2N+1 basis functions)");
    if (require_basis) {
      o->required();
      n_opt->required();
    }
    app.add_option("--lambda", lambda, "Diagonal shift of R")->capture_default_str();
    app.add_option("--quad-tol", quad_tol, "Absolute quadrature tolerance")->capture_default_str();
    app.add_option("--interpolation", interpolation, "linear | constant")
        ->check(CLI::IsMember({"linear", "constant"}))
        ->capture_default_str();
    app.add_option("--backend", backend, "Gram backend: quadrature | closed-form")
        ->check(CLI::IsMember({"quadrature", "closed-form"}))
        ->capture_default_str();
  }

  FitConfig config() const {
    FitConfig cfg;
    cfg.omega = omega;
    cfg.n = n;
    cfg.lambda = lambda;
    cfg.quad_tol = quad_tol;
    cfg.backend = backend == "closed-form" ? GramBackend::closed_form : GramBackend::quadrature;
    try {
      cfg.validate();
    } catch (const ContractError& e) {
      throw FlagError(e.what());
    }
    return cfg;
  }

  Interpolation interp() const {
    return interpolation == "constant" ? Interpolation::piecewise_constant_left
                                       : Interpolation::piecewise_linear;
  }
};

Window make_window(double q, double s) {
  try {
    return Window(q, s);
  } catch (const ContractError& e) {
    throw FlagError(e.what());
  }
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string());
  return f;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_curve(const fs::path& path, const std::vector<double>& t,
                 const std::vector<double>& v) {
  std::ofstream f = open_output(path);
  write_csv(f, t, v, "t,x_hat");
  if (!f) throw IoError("write failed for " + path.string());
}

// fit --------------------------------------------------------------------

struct FitCommand {
  std::string input;
  double q = 0.0;
  double s = 0.0;
  std::size_t points = kDefaultCurvePoints;
  std::string out;
  std::string coeffs_out;
  FitFlags flags;

  void attach(CLI::App& app) {
    app.add_option("--input", input, "Signal CSV (time,value)")->required();
    app.add_option("--q", q, "Window start (exclusive)")->required();
    app.add_option("--s", s, "Window end (inclusive)")->required();
    flags.add_to(app);
    app.add_option("--points", points, "Curve grid size over [q, s]")->capture_default_str();
    app.add_option("--out", out, "Fitted curve CSV (t,x_hat)");
    app.add_option("--coeffs-out", coeffs_out, "Serialized approximant JSON");
  }

  int execute(std::ostream& out_stream) const {
    const FitConfig cfg = flags.config();
    const Window w = make_window(q, s);
    if (points < 2) throw FlagError("--points must be >= 2");

    const Signal x = load_csv(input, flags.interp());
    const Approximant a = fit(x, w, cfg);
    const double obj = objective(a, x, cfg.quad_tol);

    if (!out.empty()) {
      std::vector<double> t;
      const std::vector<double> v = a.sample(q, s, points, &t);
      write_curve(out, t, v);
    }
    if (!coeffs_out.empty()) {
      std::ofstream f = open_output(coeffs_out);
      f << to_json(a, 2) << '\n';
    }
    const SolveReport& r = a.fit_report();
    out_stream << json{{"command", "fit"},
                       {"omega", cfg.omega},
                       {"n", cfg.n},
                       {"q", q},
                       {"s", s},
                       {"lambda", cfg.lambda},
                       {"objective", obj},
                       {"residual_e", r.residual_e},
                       {"min_eig", r.min_eig},
                       {"max_eig", r.max_eig},
                       {"condition", number_or_null(r.condition)},
                       {"used_fallback", r.used_fallback}}
                      .dump()
               << '\n';
    return kOk;
  }
};

// forecast ---------------------------------------------------------------

struct ForecastCommand {
  std::string coeffs;
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  std::string out;

  void attach(CLI::App& app) {
    app.add_option("--coeffs", coeffs, "Serialized approximant JSON")->required();
    app.add_option("--from", from, "First grid time")->required();
    app.add_option("--to", to, "Last grid time (inclusive)")->required();
    app.add_option("--step", step, "Grid spacing")->required();
    app.add_option("--out", out, "Output CSV (t,x_hat); standard output when omitted");
  }

  int execute(std::ostream& out_stream) const {
    if (!(step > 0.0) || !std::isfinite(step)) throw FlagError("--step must be > 0");
    if (!(to >= from)) throw FlagError("--to must be >= --from");
    const Approximant a = approximant_from_json(read_file(coeffs));
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> t(count);
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
      t[i] = from + static_cast<double>(i) * step;
      v[i] = extrapolate(a, t[i]);
    }
    if (out.empty()) {
      write_csv(out_stream, t, v, "t,x_hat");
    } else {
      write_curve(out, t, v);
    }
    return kOk;
  }
};

// stream -----------------------------------------------------------------

bool parse_stream_line(const std::string& line, double& t, double& v) {
  std::string normalized = line;
  for (char& c : normalized) {
    if (c == ',' || c == '\t' || c == ';') c = ' ';
  }
  std::istringstream ss(normalized);
  std::string extra;
  return static_cast<bool>(ss >> t >> v) && !(ss >> extra);
}

std::vector<double> parse_horizons(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double h = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(h);
    } catch (const std::exception&) {
      throw FlagError("--horizons: cannot parse '" + item + "'");
    }
  }
  return out;
}

json output_json(const StreamOutput& o) {
  json forecasts = json::array();
  for (const auto& [h, value] : o.forecasts) forecasts.push_back({{"h", h}, {"value", value}});
  return {{"s", o.s_now},
          {"fitted", o.fitted_value},
          {"forecasts", forecasts},
          {"residual_norm", o.residual_window_norm}};
}

struct StreamCommand {
  double window_length = 0.0;
  double stride = 0.0;
  std::string horizons;
  bool digest = false;
  bool emit_approximant = false;
  FitFlags flags;

  void attach(CLI::App& app) {
    app.add_option("--window-length", window_length, "Trailing window length s - q")->required();
    app.add_option("--stride", stride, "Minimum time between refits (default window/100)");
    app.add_option("--horizons", horizons, "Comma-separated forecast offsets, e.g. 0.5,1");
    flags.add_to(app);
    app.add_flag("--digest", digest, "Print the causality digest after the last output");
    app.add_flag("--emit-approximant", emit_approximant, "Attach the fitted approximant");
  }

  int execute(std::istream& in, std::ostream& out) const {
    StreamConfig config = StreamConfig::with_defaults(window_length, flags.config(),
                                                      parse_horizons(horizons));
    if (stride != 0.0) config.stride = stride;
    config.interpolation = flags.interp();
    try {
      config.validate();
    } catch (const ContractError& e) {
      throw FlagError(e.what());
    }
    StreamFilter filter(config);

    std::string line;
    std::size_t row = 0;
    bool first = true;
    while (std::getline(in, line)) {
      ++row;
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
      double t = 0.0;
      double v = 0.0;
      if (!parse_stream_line(line, t, v)) {
        if (first) {  // header
          first = false;
          continue;
        }
        throw DataError("stdin row " + std::to_string(row) + ": expected time,value");
      }
      first = false;
      std::optional<StreamOutput> o;
      try {
        o = filter.push(t, v);
      } catch (const ContractError& e) {
        throw DataError("stdin row " + std::to_string(row) + ": " + e.what());
      } catch (const Error& e) {
        out << json{{"s", t}, {"error", to_string(e.kind())}, {"message", e.what()}}.dump()
            << '\n';
        continue;
      }
      if (!o) continue;
      json j = output_json(*o);
      if (emit_approximant && filter.last_fit()) j["approximant"] = json::parse(to_json(*filter.last_fit()));
      out << j.dump() << '\n';
    }
    if (digest) out << json{{"digest", filter.causality_witness()}}.dump() << '\n';
    return kOk;
  }
};

// spectrum ---------------------------------------------------------------

struct SpectrumCommand {
  double q = 0.0;
  double s = 0.0;
  std::string input;
  std::string out;
  std::string gram_out;
  std::string load_out;
  FitFlags flags;

  void attach(CLI::App& app) {
    app.add_option("--q", q, "Window start")->required();
    app.add_option("--s", s, "Window end")->required();
    flags.add_to(app);
    app.add_option("--input", input, "Signal CSV for the load vector");
    app.add_option("--out", out, "Eigenvalue CSV (index,eigenvalue)");
    app.add_option("--gram-out", gram_out, "R matrix CSV (2N+1 rows)");
    app.add_option("--load-out", load_out, "Load vector CSV (k,rx_k); needs --input");
  }

  int execute(std::ostream& out_stream) const {
    const FitConfig cfg = flags.config();
    const Window w = make_window(q, s);
    if (!load_out.empty() && input.empty()) throw FlagError("--load-out requires --input");
    const BasisSpec spec(cfg.omega, cfg.n);
    const GramMatrix g = build_gram(spec, w, cfg.quad_tol, cfg.backend);
    const std::vector<double> ev = spectrum(g.matrix);

    if (!out.empty()) {
      std::ofstream f = open_output(out);
      f << "index,eigenvalue\n";
      char buf[64];
      for (std::size_t i = 0; i < ev.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, ev[i]);
        f << buf;
      }
    }
    if (!gram_out.empty()) {
      std::ofstream f = open_output(gram_out);
      char buf[32];
      for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.matrix.cols(); ++c) {
          std::snprintf(buf, sizeof buf, "%.17g", g.matrix(r, c));
          f << (c ? "," : "") << buf;
        }
        f << '\n';
      }
    }
    if (!input.empty()) {
      const Signal x = load_csv(input, flags.interp());
      const LoadVector l = load_vector(x, spec, w, cfg.quad_tol);
      if (!load_out.empty()) {
        std::vector<double> k(l.values.size());
        std::vector<double> v(l.values.size());
        for (Eigen::Index i = 0; i < l.values.size(); ++i) {
          k[static_cast<std::size_t>(i)] = static_cast<double>(spec.logical_index(static_cast<std::size_t>(i)));
          v[static_cast<std::size_t>(i)] = l.values[i];
        }
        std::ofstream f = open_output(load_out);
        write_csv(f, k, v, "k,rx");
      }
    }
    const double lo = ev.front();
    const double hi = ev.back();
    out_stream << json{{"command", "spectrum"},
                       {"omega", cfg.omega},
                       {"n", cfg.n},
                       {"q", q},
                       {"s", s},
                       {"quad_tol", cfg.quad_tol},
                       {"max_quad_error", g.max_quad_error},
                       {"min_eig", lo},
                       {"max_eig", hi},
                       {"condition", number_or_null(lo > 0.0 ? hi / lo : INFINITY)},
                       {"eigenvalues", ev}}
                      .dump()
               << '\n';
    return kOk;
  }
};

// reproduce-figures ------------------------------------------------------

struct FiguresCommand {
  std::string out_dir;
  std::string coeffs_dir;
  std::uint64_t seed = 1;
  std::size_t points = kDefaultCurvePoints;

  void attach(CLI::App& app) {
    app.add_option("--out-dir", out_dir, "Directory for the eight CSV files")->required();
    app.add_option("--coeffs-dir", coeffs_dir, "Also write figN_coeffs.json here");
    app.add_option("--seed", seed, "Corpus signal seed")->capture_default_str();
    app.add_option("--points", points, "Curve grid size per window")->capture_default_str();
  }

  int execute(std::ostream& out_stream) const {
    if (points < 2) throw FlagError("--points must be >= 2");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
    if (!coeffs_dir.empty()) {
      fs::create_directories(coeffs_dir, ec);
      if (ec) throw IoError("cannot create " + coeffs_dir + ": " + ec.message());
    }
    const Signal x = corpus_signal(seed);
    for (const FigureConfig& fig : figure_configs()) {
      const Window& w = fig.window;
      const Approximant a = fit(x, w, fig.fit);

      std::vector<double> st;
      std::vector<double> sv;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.times()[i] >= w.q() && x.times()[i] <= w.s()) {
          st.push_back(x.times()[i]);
          sv.push_back(x.values()[i]);
        }
      }
      {
        std::ofstream f = open_output(fs::path(out_dir) / (fig.name + "_signal.csv"));
        write_csv(f, st, sv, "t,x");
      }
      std::vector<double> t;
      const std::vector<double> v = a.sample(w.q(), w.s(), points, &t);
      write_curve(fs::path(out_dir) / (fig.name + "_fit.csv"), t, v);
      if (!coeffs_dir.empty()) {
        std::ofstream f = open_output(fs::path(coeffs_dir) / (fig.name + "_coeffs.json"));
        f << to_json(a, 2) << '\n';
      }
      out_stream << json{{"figure", fig.name},
                         {"q", w.q()},
                         {"s", w.s()},
                         {"omega", fig.fit.omega},
                         {"n", fig.fit.n},
                         {"lambda", fig.fit.lambda},
                         {"objective", objective(a, x, fig.fit.quad_tol)},
                         {"coefficient_norm", a.coefficients().norm()}}
                        .dump()
                 << '\n';
    }
    return kOk;
  }
};

}  // namespace

std::vector<FigureConfig> figure_configs() {
  auto cfg = [](double omega, double lambda) {
    FitConfig c;
    c.omega = omega;
    c.n = 30;
    c.lambda = lambda;
    c.quad_tol = kDefaultQuadTol;
    return c;
  };
  return {
      {"fig1", Window(-12.0, -2.0), cfg(4.0, 1e-3)},
      {"fig2", Window(-10.0, 0.0), cfg(4.0, 1e-3)},
      {"fig3", Window(-10.0, 0.0), cfg(2.0, 1e-3)},
      // R + eps*I with eps = 0.05 applied directly as the shift.
      {"fig4", Window(-10.0, 0.0), cfg(4.0, 0.05)},
  };
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Band-limited L2 approximation, extrapolation and causal filtering"};
  app.name("bandfit");
  app.require_subcommand(1);

  FitCommand fit_cmd;
  ForecastCommand forecast_cmd;
  StreamCommand stream_cmd;
  SpectrumCommand spectrum_cmd;
  FiguresCommand figures_cmd;

  CLI::App* fit_app = app.add_subcommand("fit", "Fit a signal on a window and emit the curve");
  CLI::App* forecast_app = app.add_subcommand("forecast", "Evaluate a saved approximant on a grid");
  CLI::App* stream_app = app.add_subcommand("stream", "Causal sliding-window filter over stdin");
  CLI::App* spectrum_app = app.add_subcommand("spectrum", "Gram matrix eigenvalues and dumps");
  CLI::App* figures_app =
      app.add_subcommand("reproduce-figures", "Write the four figure configurations as CSV");
  fit_cmd.attach(*fit_app);
  forecast_cmd.attach(*forecast_app);
  stream_cmd.attach(*stream_app);
  spectrum_cmd.attach(*spectrum_app);
  figures_cmd.attach(*figures_app);

  std::vector<const char*> argv;
  argv.push_back("bandfit");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, kFlagError, "flag", e.what());
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << sub->help();
    return kFlagError;
  }

  try {
    if (*fit_app) return fit_cmd.execute(out);
    if (*forecast_app) return forecast_cmd.execute(out);
    if (*stream_app) return stream_cmd.execute(in, out);
    if (*spectrum_app) return spectrum_cmd.execute(out);
    if (*figures_app) return figures_cmd.execute(out);
  } catch (const FlagError& e) {
    return emit_error(err, kFlagError, "flag", e.what());
  } catch (const IoError& e) {
    return emit_error(err, kDataError, "io", e.what());
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::contract:
      case ErrorKind::range:
        return emit_error(err, kFlagError, to_string(e.kind()), e.what());
      case ErrorKind::data:
        return emit_error(err, kDataError, to_string(e.kind()), e.what());
      case ErrorKind::convergence:
      case ErrorKind::numerical:
        return emit_error(err, kNumericalError, to_string(e.kind()), e.what());
    }
  } catch (const std::exception& e) {
    return emit_error(err, kNumericalError, "internal", e.what());
  }
  return emit_error(err, kFlagError, "flag", "no subcommand");
}

}  // namespace bandfit::cli
