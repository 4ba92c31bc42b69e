#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include <bandfit/error.hpp>
#include <bandfit/gram.hpp>
#include <bandfit/random.hpp>
#include <bandfit/solver.hpp>

#include "oracles.hpp"

using namespace bandfit;
using std::numbers::pi;

namespace {

Eigen::VectorXd random_vector(std::size_t dim, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::VectorXd y(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.normal();
  return y;
}

double quadratic_form(const GramMatrix& g, const Eigen::VectorXd& y) {
  return y.dot(g.matrix * y);
}

Signal dense_signal(double q, double s, double dt, const std::function<double(double)>& f) {
  std::vector<double> t;
  std::vector<double> v;
  const auto n = static_cast<std::size_t>(std::llround((s - q) / dt));
  for (std::size_t i = 0; i <= n; ++i) {
    const double ti = q + static_cast<double>(i) * dt;
    t.push_back(ti);
    v.push_back(f(ti));
  }
  return Signal(std::move(t), std::move(v));
}

}  // namespace

TEST_CASE("Window validation") {
  CHECK_THROWS_AS(Window(0.0, 0.0), ContractError);
  CHECK_THROWS_AS(Window(1.0, 0.0), ContractError);
  CHECK_THROWS_AS(Window(-INFINITY, 0.0), ContractError);
  const Window w(-1.0, 2.0);
  CHECK(w.length() == 3.0);
  CHECK_FALSE(w.contains(-1.0));
  CHECK(w.contains(2.0));
}

TEST_CASE("gram_entry is symmetric in its indices") {
  const BasisSpec spec(4.0, 5);
  const Window w(-10.0, 0.0);
  const double tol = 1e-8;
  for (int k = -5; k <= 5; k += 2)
    for (int m = -4; m <= 5; m += 3)
      CHECK(std::abs(gram_entry(k, m, spec, w, tol) - gram_entry(m, k, spec, w, tol)) <= 2 * tol);
}

TEST_CASE("sinc orthogonality on a long symmetric window") {
  const double omega = 4.0;
  const BasisSpec spec(omega, 3);
  const double l = 200.0 * pi / omega;
  const Window w(-l, l);
  const double scale = omega / pi;
  for (int k = -3; k <= 3; ++k) {
    CHECK(std::abs(gram_entry(k, k, spec, w) - scale) <= 0.01 * scale);
    for (int m = -3; m <= 3; ++m)
      if (m != k) CHECK(std::abs(gram_entry(k, m, spec, w)) <= 0.01 * scale);
  }
}

TEST_CASE("gram_entry(0, 0) on (-10, 0] matches the Richardson-Simpson oracle") {
  const BasisSpec spec(4.0, 0);
  const Window w(-10.0, 0.0);
  const double reference = oracle::gram_entry(0, 0, 4.0, -10.0, 0.0);
  CHECK(std::abs(gram_entry(0, 0, spec, w, 1e-8) - reference) <= 1e-7);
  // Frozen 50-digit value of the k = m = 1 integral, scaled by omega^2/pi^2.
  const double frozen = 16.0 / (pi * pi) * 0.74389115547723923810;
  CHECK(oracle::gram_entry(1, 1, 4.0, -10.0, 0.0) == doctest::Approx(frozen).epsilon(1e-12));
  CHECK(std::abs(gram_entry(1, 1, BasisSpec(4.0, 1), w, 1e-8) - frozen) <= 1e-7);
}

TEST_CASE("build_gram small cases") {
  const Window w(-10.0, 0.0);
  SUBCASE("N = 0 is the single entry") {
    const BasisSpec spec(4.0, 0);
    const GramMatrix g = build_gram(spec, w);
    REQUIRE(g.matrix.rows() == 1);
    REQUIRE(g.matrix.cols() == 1);
    CHECK(g.matrix(0, 0) == gram_entry(0, 0, spec, w));
  }
  SUBCASE("N = 2 entrywise against the oracle") {
    const BasisSpec spec(4.0, 2);
    const GramMatrix g = build_gram(spec, w, 1e-8);
    REQUIRE(g.matrix.rows() == 5);
    CHECK(g.matrix == g.matrix.transpose());
    for (int k = -2; k <= 2; ++k)
      for (int m = -2; m <= k; ++m) {
        const double want = oracle::gram_entry(k, m, 4.0, -10.0, 0.0, 200000);
        CHECK(std::abs(g.matrix(k + 2, m + 2) - want) <= 1e-7);
      }
    CHECK(g.max_quad_error >= 0.0);
    CHECK(g.max_quad_error <= 1e-8);
  }
}

TEST_CASE("closed-form backend agrees with quadrature") {
  for (double omega : {1.0, 2.0, 4.0}) {
    for (const Window& w : {Window(-10.0, 0.0), Window(-5.0, 5.0), Window(-12.0, -2.0), Window(-1.0, 0.0)}) {
      const BasisSpec spec(omega, 6);
      const GramMatrix quad = build_gram(spec, w, 1e-12);
      const GramMatrix closed = build_gram(spec, w, 1e-12, GramBackend::closed_form);
      CAPTURE(omega);
      CAPTURE(w.q());
      CHECK((quad.matrix - closed.matrix).cwiseAbs().maxCoeff() <= 1e-11);
      CHECK(closed.matrix == closed.matrix.transpose());
    }
  }
  const BasisSpec spec(4.0, 2);
  const Window w(-10.0, 0.0);
  CHECK(gram_entry_closed_form(1, -2, spec, w) ==
        doctest::Approx(oracle::gram_entry(1, -2, 4.0, -10.0, 0.0, 200000)).epsilon(1e-9));
}

TEST_CASE("N = 30 Gram matrix on (-10, 0] is near-degenerate") {
  const BasisSpec spec(4.0, 30);
  const GramMatrix g = build_gram(spec, Window(-10.0, 0.0), 1e-8);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.matrix);
  CHECK(eig.eigenvalues().minCoeff() < 1e-8);
  CHECK(eig.eigenvalues().maxCoeff() > 1.0);
}

TEST_CASE("positive definiteness on resolved configurations") {
  for (double omega : {1.0, 2.0, 4.0}) {
    for (int n : {0, 1, 2}) {
      for (const Window& w : {Window(-10.0, 0.0), Window(-5.0, 5.0)}) {
        const BasisSpec spec(omega, n);
        const GramMatrix g = build_gram(spec, w, 1e-10);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.matrix);
        CAPTURE(omega);
        CAPTURE(n);
        CAPTURE(w.q());
        CHECK(eig.eigenvalues().minCoeff() > 0.0);
      }
    }
  }
}

TEST_CASE("coarse tolerance keeps the noise floor bounded") {
  for (double tol : {1e-4, 1e-6}) {
    const BasisSpec spec(4.0, 30);
    const GramMatrix g = build_gram(spec, Window(-10.0, 0.0), tol);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.matrix);
    CAPTURE(tol);
    CHECK(eig.eigenvalues().minCoeff() >= -10.0 * tol * static_cast<double>(spec.dimension()));
  }
}

TEST_CASE("quadratic form equals the squared L2 norm of the series") {
  const BasisSpec spec(2.0, 3);
  const Window w(-5.0, 5.0);
  const GramMatrix g = build_gram(spec, w, 1e-10);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Coefficients y = Coefficients::from_storage(spec, random_vector(spec.dimension(), seed));
    const double direct = oracle::richardson_simpson(
        [&](double t) {
          const double v = eval_series(y, spec, t);
          return v * v;
        },
        w.q(), w.s(), 20000);
    CHECK(quadratic_form(g, y.vector()) == doctest::Approx(direct).epsilon(1e-4));
  }
}

TEST_CASE("enlarging the window never decreases the quadratic form") {
  const BasisSpec spec(4.0, 4);
  const GramMatrix small = build_gram(spec, Window(-5.0, 0.0), 1e-10);
  const GramMatrix mid = build_gram(spec, Window(-10.0, 0.0), 1e-10);
  const GramMatrix large = build_gram(spec, Window(-10.0, 2.0), 1e-10);
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const Eigen::VectorXd y = random_vector(spec.dimension(), seed);
    CHECK(quadratic_form(small, y) <= quadratic_form(mid, y));
    CHECK(quadratic_form(mid, y) <= quadratic_form(large, y));
  }
}

TEST_CASE("load_vector examples") {
  const Window w(-10.0, 0.0);
  SUBCASE("zero signal") {
    const BasisSpec spec(4.0, 3);
    const Signal zero({-10.0, -3.0, 0.0}, {0.0, 0.0, 0.0});
    const LoadVector r = load_vector(zero, spec, w);
    CHECK(r.values.size() == 7);
    CHECK(r.values.isZero(0.0));
  }
  SUBCASE("a scaled basis function reproduces a Gram column") {
    const double omega = 4.0;
    const int m = 1;
    const BasisSpec spec(omega, 2);
    const double dt = 1e-3;
    const Signal x = dense_signal(-10.0, 0.0, dt, [&](double t) {
      return omega / pi * oracle::plain_sinc(m * pi + omega * t);
    });
    const LoadVector r = load_vector(x, spec, w, 1e-10);
    const GramMatrix g = build_gram(spec, w, 1e-10);
    // Linear interpolation error is at most dt^2/8 * max|x''| with
    // max|x''| <= (omega/pi) omega^2 / 3, integrated against |phi| <= omega/pi.
    const double interp = dt * dt / 8.0 * (omega / pi) * omega * omega / 3.0;
    const double bound = (omega / pi) * w.length() * interp;
    for (int k = -2; k <= 2; ++k)
      CHECK(std::abs(r.values[k + 2] - g.matrix(k + 2, m + 2)) <= bound);
  }
  SUBCASE("unit step at t = -5") {
    const BasisSpec spec(4.0, 2);
    const Signal step({-10.0, -5.0, 0.0}, {0.0, 1.0, 1.0}, Interpolation::piecewise_constant_left);
    const LoadVector r = load_vector(step, spec, w, 1e-8);
    for (int k = -2; k <= 2; ++k) {
      const double want = oracle::richardson_simpson(
          [&](double t) { return 4.0 / pi * oracle::plain_sinc(k * pi + 4.0 * t); }, -5.0, 0.0,
          200000);
      CHECK(std::abs(r.values[k + 2] - want) <= 1e-6);
    }
  }
}

TEST_CASE("load_vector is linear in the data") {
  const BasisSpec spec(4.0, 10);
  const Window w(-10.0, 0.0);
  const Signal x1 = corpus_signal(3);
  const Signal x2 = corpus_signal(4);
  const double alpha = 1.7;
  const double beta = -0.35;
  std::vector<double> mix(x1.size());
  for (std::size_t i = 0; i < mix.size(); ++i)
    mix[i] = alpha * x1.values()[i] + beta * x2.values()[i];
  const Signal xm(x1.times(), mix, x1.interpolation());
  const Eigen::VectorXd lhs = load_vector(xm, spec, w).values;
  const Eigen::VectorXd rhs = alpha * load_vector(x1, spec, w).values + beta * load_vector(x2, spec, w).values;
  CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
}

TEST_CASE("load_vector requires coverage") {
  const BasisSpec spec(4.0, 1);
  const Signal partial({-5.0, 0.0}, {1.0, 1.0});
  CHECK_THROWS_AS(load_vector(partial, spec, Window(-10.0, 0.0)), DataError);
  CHECK_THROWS_AS(assemble_system(partial, spec, Window(-5.0, 1.0)), DataError);
}

TEST_CASE("assemble_system packages both parts") {
  const BasisSpec spec(2.0, 2);
  const Window w(-5.0, 5.0);
  const Signal x({-5.0, 0.0, 5.0}, {1.0, -1.0, 2.0});
  const GramSystem g = assemble_system(x, spec, w, 1e-9);
  CHECK(g.spec == spec);
  CHECK(g.window == w);
  CHECK(g.quad_tol == 1e-9);
  CHECK(g.r_matrix == build_gram(spec, w, 1e-9).matrix);
  CHECK(g.load == load_vector(x, spec, w, 1e-9).values);
  CHECK(g.max_quad_error >= 0.0);
}
