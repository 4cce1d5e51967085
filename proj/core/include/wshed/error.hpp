#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wshed {

enum class ErrorCode {
  EmptyInput,
  DuplicateReach,
  MultipleRoots,
  NoRoot,
  CycleDetected,
  DanglingDownstream,
  UnknownReach,
  MissingCatchment,
  IncompleteInput,
  InvalidBase,
  GridTooSmall,
  InvalidArgument,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message starts with the code name followed by the offending ids/values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wshed
