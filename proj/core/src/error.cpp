#include "bandfit/error.hpp"

namespace bandfit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::contract: return "contract";
    case ErrorKind::range: return "range";
    case ErrorKind::data: return "data";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

}  // namespace bandfit
