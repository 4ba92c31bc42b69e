#include "bandfit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "bandfit/error.hpp"

namespace bandfit {
namespace {

// Kronrod abscissae on [0, 1]; odd indices (1, 3, 5) and the centre are the
// 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxPanels = 200000;

struct Panel {
  double a;
  double b;
  int depth;
  double key;     // largest component error
  bool at_floor;  // every component error is the rounding floor
  std::size_t offset;
  bool live;
};

class Engine {
 public:
  Engine(const VectorIntegrand& f, std::size_t dim)
      : f_(f), dim_(dim), samples_(kRuleSize * dim) {}

  // Applies the 15-point rule on [a, b]; writes values and error estimates.
  bool apply(double a, double b, double* value, double* error) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    sample(0, centre);
    for (std::size_t j = 0; j < 7; ++j) {
      const double dx = half * kXgk[j];
      sample(1 + 2 * j, centre - dx);
      sample(2 + 2 * j, centre + dx);
    }
    evaluations_ += kRuleSize;

    bool at_floor = true;
    for (std::size_t c = 0; c < dim_; ++c) {
      const double fc = at(0, c);
      double resk = fc * kWgk[7];
      double resg = fc * kWg[3];
      double resabs = std::abs(resk);
      for (std::size_t j = 0; j < 7; ++j) {
        const double f1 = at(1 + 2 * j, c);
        const double f2 = at(2 + 2 * j, c);
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
      }
      const double mean = 0.5 * resk;
      double resasc = kWgk[7] * std::abs(fc - mean);
      for (std::size_t j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(at(1 + 2 * j, c) - mean) + std::abs(at(2 + 2 * j, c) - mean));

      resk *= half;
      resabs *= std::abs(half);
      resasc *= std::abs(half);
      double err = std::abs((resk - resg * half));
      if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
      const double floor = 50.0 * kEps * resabs;
      if (err > floor) {
        at_floor = false;
      } else {
        err = floor;
      }
      value[c] = resk;
      error[c] = err;
    }
    return at_floor;
  }

  int evaluations() const noexcept { return evaluations_; }

 private:
  void sample(std::size_t slot, double t) {
    std::span<double> out(samples_.data() + slot * dim_, dim_);
    f_(t, out);
    for (double v : out) {
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite integrand value at t = " << t;
        throw DataError(msg.str());
      }
    }
  }
  double at(std::size_t slot, std::size_t c) const { return samples_[slot * dim_ + c]; }

  const VectorIntegrand& f_;
  std::size_t dim_;
  std::vector<double> samples_;
  int evaluations_ = 0;
};

void check_interval(double a, double b, double tol) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw ContractError("integration interval must be finite with a < b");
  if (!(tol > 0.0)) throw ContractError("integration tolerance must be positive");
}

}  // namespace

VectorQuadResult integrate_vector(const VectorIntegrand& f, std::size_t dim,
                                  double a, double b, const QuadOptions& options) {
  check_interval(a, b, options.tol);
  if (dim == 0) throw ContractError("integrand dimension must be positive");
  if (options.initial_panels < 1) throw ContractError("initial_panels must be >= 1");

  Engine engine(f, dim);
  std::vector<Panel> panels;
  std::vector<double> values;
  std::vector<double> errors;
  std::vector<double> total_error(dim, 0.0);

  auto cmp = [&panels](std::size_t lhs, std::size_t rhs) {
    if (panels[lhs].key != panels[rhs].key) return panels[lhs].key < panels[rhs].key;
    return lhs > rhs;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);

  auto add_panel = [&](double lo, double hi, int depth) {
    const std::size_t offset = values.size();
    values.resize(offset + dim);
    errors.resize(offset + dim);
    const bool floor = engine.apply(lo, hi, values.data() + offset, errors.data() + offset);
    double key = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      key = std::max(key, errors[offset + c]);
      total_error[c] += errors[offset + c];
    }
    panels.push_back({lo, hi, depth, key, floor, offset, true});
    heap.push(panels.size() - 1);
  };

  const int initial = options.initial_panels;
  const double width = (b - a) / initial;
  for (int i = 0; i < initial; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial) ? b : a + (i + 1) * width;
    add_panel(lo, hi, 0);
  }

  auto worst = [&] { return *std::max_element(total_error.begin(), total_error.end()); };
  auto collect = [&] {
    VectorQuadResult result;
    result.values.assign(dim, 0.0);
    result.error_estimates.assign(dim, 0.0);
    for (const Panel& p : panels) {
      if (!p.live) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        result.values[c] += values[p.offset + c];
        result.error_estimates[c] += errors[p.offset + c];
      }
    }
    result.evaluations = engine.evaluations();
    return result;
  };

  while (worst() > options.tol) {
    const std::size_t idx = heap.top();
    if (panels[idx].at_floor) break;  // rounding-limited everywhere
    if (panels[idx].depth >= options.max_depth || panels.size() >= kMaxPanels) {
      VectorQuadResult best = collect();
      std::ostringstream msg;
      msg << "quadrature tolerance " << options.tol << " not reached on [" << a
          << ", " << b << "] (estimate " << worst() << ")";
      throw ConvergenceError(msg.str(), best.values[0], best.error_estimates[0]);
    }
    heap.pop();
    Panel parent = panels[idx];
    panels[idx].live = false;
    for (std::size_t c = 0; c < dim; ++c) total_error[c] -= errors[parent.offset + c];
    const double mid = 0.5 * (parent.a + parent.b);
    add_panel(parent.a, mid, parent.depth + 1);
    add_panel(mid, parent.b, parent.depth + 1);
  }
  return collect();
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& options) {
  const VectorIntegrand wrapped = [&f](double t, std::span<double> out) { out[0] = f(t); };
  const VectorQuadResult r = integrate_vector(wrapped, 1, a, b, options);
  return {r.values[0], r.error_estimates[0], r.evaluations};
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol) {
  QuadOptions options;
  options.tol = tol;
  return integrate(f, a, b, options);
}

QuadResult integrate_piecewise(const std::function<double(double)>& f,
                               std::span<const double> breakpoints, double tol) {
  if (breakpoints.size() < 2) throw ContractError("need at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i]))
      throw ContractError("breakpoints must be strictly increasing");
  }
  const double panel_tol = tol / static_cast<double>(breakpoints.size() - 1);
  QuadResult total;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    const QuadResult r = integrate(f, breakpoints[i - 1], breakpoints[i], panel_tol);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
  }
  return total;
}

}  // namespace bandfit
