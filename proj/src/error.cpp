#include "quartic/error.hpp"

namespace quartic {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConductorMismatch: return "ConductorMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotInField: return "NotInField";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::NotFiniteOrder: return "NotFiniteOrder";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NonInvertibleGenerator: return "NonInvertibleGenerator";
    case ErrorCode::InfiniteOrderGenerator: return "InfiniteOrderGenerator";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::ConductorExtensionFailed: return "ConductorExtensionFailed";
    case ErrorCode::InterpolationDegenerate: return "InterpolationDegenerate";
    case ErrorCode::NotAPencil: return "NotAPencil";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code), detail_(message) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace quartic
