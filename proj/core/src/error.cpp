#include "wshed/error.hpp"

namespace wshed {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DuplicateReach: return "DuplicateReach";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::DanglingDownstream: return "DanglingDownstream";
    case ErrorCode::UnknownReach: return "UnknownReach";
    case ErrorCode::MissingCatchment: return "MissingCatchment";
    case ErrorCode::IncompleteInput: return "IncompleteInput";
    case ErrorCode::InvalidBase: return "InvalidBase";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code) {}

}  // namespace wshed
