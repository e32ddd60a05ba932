#include "pedkin/error.hpp"

namespace pedkin {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::malformed_input: return "malformed input";
    case ErrorCode::duplicate_id: return "duplicate id";
    case ErrorCode::cycle: return "cycle";
    case ErrorCode::sex_inconsistency: return "sex inconsistency";
    case ErrorCode::missing_parent: return "missing parent";
    case ErrorCode::unknown_id: return "unknown id";
    case ErrorCode::not_a_founder: return "not a founder";
    case ErrorCode::value_out_of_range: return "value out of range";
    case ErrorCode::conflicting_entry: return "conflicting entry";
    case ErrorCode::founder_mismatch: return "founder mismatch";
    case ErrorCode::plan_mismatch: return "plan mismatch";
    case ErrorCode::too_large: return "too large";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::io_failure: return "I/O failure";
  }
  return "unknown error";
}

namespace {

std::string format_message(const std::string& message, std::optional<std::size_t> line) {
  if (!line) return message;
  return "line " + std::to_string(*line) + ": " + message;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error(format_message(message, line)), code_(code), line_(line) {}

}  // namespace pedkin
