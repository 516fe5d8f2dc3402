#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ekr2 {

enum class ErrorKind {
  InvalidParams,
  MalformedHeader,
  MalformedSet,
  DuplicateSet,
  NonUniformFamily,
  EmptyFamily,
  NotTIntersecting,
  BadEll,
  SizeMismatch,
  BadVertex,
  BadPair,
  OversizedGenerator,
  BadSlice,
  EmptyStarLayer,
  EqualLayers,
  EmptyFq,
  SurgeryPrecondition,
  BadLadderIndex,
  MissingBase,
  MissingArg,
  DomainError,
  BudgetExceeded,
  Truncated,
  Infeasible,
  BadClaimArgs,
  BadGrid,
  Overflow,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ekr2
