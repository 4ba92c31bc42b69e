#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <bandfit/approximator.hpp>
#include <bandfit/gram.hpp>

namespace bandfit::cli {

enum ExitCode : int {
  kOk = 0,
  kFlagError = 2,
  kDataError = 3,
  kNumericalError = 4,
};

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

/// One published figure configuration.
struct FigureConfig {
  std::string name;  // fig1 .. fig4
  Window window;
  FitConfig fit;
};

/// (-12,-2] and (-10,0] with omega 4; omega 2; shift 0.05. All N = 30.
std::vector<FigureConfig> figure_configs();

}  // namespace bandfit::cli
