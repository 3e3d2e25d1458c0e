#pragma once

#include <stdexcept>
#include <string>

namespace curverep {

enum class ErrorCode {
  invalid_argument,
  parse,
  unstable_index,
  no_admissible_pair,
  not_mobius_like,
  degree_mismatch,
  degenerate,
  pole_in_interval,
  not_applicable,
};

const char* to_string(ErrorCode code);

// Process exit status used by the command-line driver for each failure class.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::string stage = {})
      : std::runtime_error(what), code_(code), stage_(std::move(stage)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }

  Error with_stage(std::string stage) const {
    return Error(code_, what(), std::move(stage));
  }

 private:
  ErrorCode code_;
  std::string stage_;
};

}  // namespace curverep
