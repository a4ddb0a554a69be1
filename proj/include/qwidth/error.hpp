#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwidth {

enum class ErrorKind {
  MismatchedRings,
  UnsupportedRing,
  ParseError,
  NotInvertible,
  BadIndices,
  DimensionMismatch,
  ZeroIdeal,
  NotSL,
  BudgetExceeded,
  SearchExhausted,
  CentralInput,
  NotCongruent,
  TrivialInput,
  NoUnitFound,
  CapAmbiguous,
  InnerUnbounded,
  NotCentral,
  BadTransversal,
  NoSmallVector,
  Unreachable,
  ReplayMismatch,
  UsageError,
  InternalError,
};

std::string_view to_string(ErrorKind kind);

/// Every domain failure in the library is reported through this type; the
/// kind is what callers (and the CLI's exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qwidth
