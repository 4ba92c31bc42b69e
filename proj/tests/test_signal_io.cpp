#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include <bandfit/approximator.hpp>
#include <bandfit/error.hpp>
#include <bandfit/random.hpp>
#include <bandfit/signal.hpp>

using namespace bandfit;

namespace {

std::string error_message(const std::string& csv) {
  std::istringstream in(csv);
  try {
    read_csv(in);
  } catch (const DataError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("SplitMix64 reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next() == 0x06c45d188009454fULL);

  SplitMix64 u(9);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
  }
}

TEST_CASE("eval examples") {
  const Signal lin({0.0, 1.0}, {0.0, 2.0});
  CHECK(lin.eval(0.5) == 1.0);
  CHECK(lin(1.0) == 2.0);
  const Signal left({0.0, 1.0}, {5.0, 7.0}, Interpolation::piecewise_constant_left);
  CHECK(left.eval(0.5) == 5.0);
  CHECK(left.eval(1.0) == 7.0);
  CHECK_THROWS_AS(lin.eval(-0.1), DataError);
  CHECK_THROWS_AS(lin.eval(1.1), DataError);
}

TEST_CASE("eval is exact at sample points") {
  const Signal x = corpus_signal(2);
  const Signal lin(x.times(), x.values(), Interpolation::piecewise_linear);
  for (std::size_t i = 0; i < x.size(); i += 37) {
    CHECK(x.eval(x.times()[i]) == x.values()[i]);
    CHECK(lin.eval(x.times()[i]) == x.values()[i]);
  }
}

TEST_CASE("Signal construction errors") {
  CHECK_THROWS_AS(Signal({0.0}, {1.0}), DataError);
  CHECK_THROWS_AS(Signal({0.0, 1.0}, {1.0}), DataError);
  CHECK_THROWS_AS(Signal({0.0, 0.0}, {1.0, 2.0}), DataError);
  CHECK_THROWS_AS(Signal({1.0, 0.0}, {1.0, 2.0}), DataError);
  CHECK_THROWS_AS(Signal({0.0, 1.0}, {1.0, NAN}), DataError);
}

TEST_CASE("breakpoints include the interior sample times") {
  const Signal x({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 0.0, 1.0});
  CHECK(x.breakpoints(0.5, 2.5) == std::vector<double>{0.5, 1.0, 2.0, 2.5});
  CHECK(x.breakpoints(1.0, 2.0) == std::vector<double>{1.0, 2.0});
  CHECK(x.covers(0.0, 3.0));
  CHECK_FALSE(x.covers(-0.1, 3.0));
}

TEST_CASE("read_csv examples") {
  std::istringstream two("0,1\n1,2\n");
  const Signal a = read_csv(two);
  CHECK(a.size() == 2);
  CHECK(a.values()[1] == 2.0);

  std::istringstream header("t,x\n0,1\n0.5,3\n");
  const Signal b = read_csv(header);
  CHECK(b.size() == 2);
  CHECK(b.times()[1] == 0.5);

  std::string csv = "t,x\n";
  for (int row = 2; row <= 16; ++row) csv += std::to_string(row) + "," + std::to_string(row * 0.5) + "\n";
  csv += "17,not-a-number\n18,1\n";
  CHECK(error_message(csv).find("row 17") != std::string::npos);

  CHECK(error_message("0,1\n1,2\n1,3\n").find("row 3") != std::string::npos);
  CHECK(error_message("0,1\n1,2\n1,3\n").find("duplicates") != std::string::npos);
  CHECK(error_message("0,1\n2,2\n1,3\n").find("precedes") != std::string::npos);
  CHECK(error_message("t,x\n0,1\n").find("at least two") != std::string::npos);
}

TEST_CASE("save_csv then load_csv round-trips bit-exactly") {
  const auto path = std::filesystem::temp_directory_path() / "bandfit_roundtrip.csv";
  const Signal x = synth(SynthKind::sines_beyond_band, 11,
                         SinesBeyondBandParams{SampleGrid{-3.0, 3.0, 0.0137}, 2.0, {}});
  save_csv(path, x);
  const Signal y = load_csv(path, x.interpolation());
  CHECK(y.times() == x.times());
  CHECK(y.values() == x.values());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_csv(path), DataError);
}

TEST_CASE("synth kinds") {
  CHECK(parse_synth_kind("jump_walk") == SynthKind::jump_walk);
  CHECK_THROWS_AS(parse_synth_kind("brownian"), ContractError);

  const BasisSpec spec(2.0, 3);
  const Signal zero = synth(SynthKind::bandlimited, 0,
                            BandlimitedParams{spec, Coefficients::zeros(spec), SampleGrid{-1.0, 1.0, 0.1}});
  CHECK(zero.size() == 21);
  for (double v : zero.values()) CHECK(v == 0.0);

  const JumpWalkParams walk{SampleGrid{0.0, 5.0, 0.01}};
  const Signal w1 = synth(SynthKind::jump_walk, 42, walk);
  const Signal w2 = synth(SynthKind::jump_walk, 42, walk);
  const Signal w3 = synth(SynthKind::jump_walk, 43, walk);
  CHECK(w1.values() == w2.values());
  CHECK(w1.values() != w3.values());
  CHECK(w1.interpolation() == Interpolation::piecewise_constant_left);

  CHECK_THROWS_AS(synth(SynthKind::jump_walk, 1, SinesBeyondBandParams{}), ContractError);
  CHECK_THROWS_AS(synth(SynthKind::sines_beyond_band, 1,
                        SinesBeyondBandParams{SampleGrid{}, 2.0, {1.5}}),
                  ContractError);
}

TEST_CASE("corpus signal is deterministic and covers the figure windows") {
  const Signal a = corpus_signal(1);
  const Signal b = corpus_signal(1);
  CHECK(a.values() == b.values());
  CHECK(a.covers(-12.0, 0.0));
  CHECK(a.front_time() == -15.0);
  CHECK(a.interpolation() == Interpolation::piecewise_constant_left);
}

TEST_CASE("out-of-band energy is not approximable on a long window") {
  const double omega = 2.0;
  const double length = 100.0 * std::numbers::pi / omega;
  const Window w(-length, 0.0);
  const Signal x = synth(SynthKind::sines_beyond_band, 3,
                         SinesBeyondBandParams{SampleGrid{-length - 0.1, 0.1, 0.01}, omega, {2.0 * omega}});
  FitConfig cfg;
  cfg.omega = omega;
  cfg.n = 10;
  const Approximant a = fit(x, w, cfg);
  CHECK(objective(a, x) >= 0.5 * signal_energy(x, w));
}
