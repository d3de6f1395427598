#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monochrome {

enum class ErrorKind {
  SelfLoop,
  Malformed,
  BadParams,
  CompositeUndefined,
  UnsupportedFamily,
  NoTriangles,
  NoEdges,
  BudgetExceeded,
  TooLarge,
  EmptySample,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::CompositeUndefined: return "CompositeUndefined";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::NoTriangles: return "NoTriangles";
    case ErrorKind::NoEdges: return "NoEdges";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EmptySample: return "EmptySample";
  }
  return "Unknown";
}

/// Domain error raised by every module. The kind is stable and machine
/// readable; the message names the failing operation and its inputs.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace monochrome
