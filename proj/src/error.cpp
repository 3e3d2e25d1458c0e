#include "curverep/error.hpp"

namespace curverep {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::parse: return "parse error";
    case ErrorCode::unstable_index: return "unstable index";
    case ErrorCode::no_admissible_pair: return "no admissible pair";
    case ErrorCode::not_mobius_like: return "S is not Mobius-like";
    case ErrorCode::degree_mismatch: return "interpolation degree mismatch";
    case ErrorCode::degenerate: return "degenerate input";
    case ErrorCode::pole_in_interval: return "interval touches a pole";
    case ErrorCode::not_applicable: return "not applicable";
  }
  return "unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return 2;
    case ErrorCode::unstable_index: return 3;
    case ErrorCode::no_admissible_pair:
    case ErrorCode::not_mobius_like: return 4;
    case ErrorCode::degree_mismatch: return 5;
    case ErrorCode::pole_in_interval: return 6;
    default: return 1;
  }
}

}  // namespace curverep
