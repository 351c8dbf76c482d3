#include "levyprem/errors.hpp"

namespace levyprem {

const char* to_string(ErrorFamily family) noexcept {
  switch (family) {
    case ErrorFamily::config:
      return "config";
    case ErrorFamily::io:
      return "io";
    case ErrorFamily::feasibility:
      return "feasibility";
    case ErrorFamily::convergence:
      return "convergence";
    case ErrorFamily::numerical:
      return "numerical";
  }
  return "unknown";
}

}  // namespace levyprem
