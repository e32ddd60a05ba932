#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace pedkin {

enum class ErrorCode {
  malformed_input,
  duplicate_id,
  cycle,
  sex_inconsistency,
  missing_parent,
  unknown_id,
  not_a_founder,
  value_out_of_range,
  conflicting_entry,
  founder_mismatch,
  plan_mismatch,
  too_large,
  invalid_argument,
  io_failure,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library. `line` is set for text-format errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace pedkin
