#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quartic {

enum class ErrorCode {
  ConductorMismatch,
  DivisionByZero,
  NotInField,
  BadPrime,
  NotSquare,
  ShapeMismatch,
  OrderCapExceeded,
  NotFiniteOrder,
  SyntaxError,
  NonInvertibleGenerator,
  InfiniteOrderGenerator,
  CapExceeded,
  ZeroForm,
  ZeroPoint,
  NonInvertible,
  ConductorExtensionFailed,
  InterpolationDegenerate,
  NotAPencil,
  InvalidArgument,
  UnknownGroup,
  Io,
};

std::string_view error_code_name(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace quartic
