#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace guesswork {

/// Stable error codes. The string forms returned by `code_name` are part of
/// the command-line contract and must not change.
enum class ErrorCode {
  Parse,
  Empty,
  NegativeEntry,
  NotNormalized,
  InvalidPermutation,
  DimensionMismatch,
  EnumerationTooLarge,
  TooLarge,
  Range,
  Parity,
  SameRound,
  Usage,
};

constexpr std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Empty: return "EMPTY";
    case ErrorCode::NegativeEntry: return "NEGATIVE_ENTRY";
    case ErrorCode::NotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::InvalidPermutation: return "INVALID_PERMUTATION";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::EnumerationTooLarge: return "ENUMERATION_TOO_LARGE";
    case ErrorCode::TooLarge: return "TOO_LARGE";
    case ErrorCode::Range: return "RANGE";
    case ErrorCode::Parity: return "PARITY";
    case ErrorCode::SameRound: return "SAME_ROUND";
    case ErrorCode::Usage: return "USAGE";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b,
                              std::string_view what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": sizes " + std::to_string(a) + " and " +
                    std::to_string(b) + " differ");
  }
}

}  // namespace detail
}  // namespace guesswork
