#pragma once

#include <stdexcept>
#include <string>

namespace setaut {

// Error kinds double as CLI exit-code classes: validation errors exit 2,
// parse errors exit 3, internal bound violations exit 4.
enum class ErrorKind {
  DomainMismatch,
  InvalidPartition,
  IndexBoundExceeded,
  NonInvariantSubdomain,
  NonStabilizedSubfamily,
  NotChordal,
  NotInterval,
  EmptyGraph,
  MarkedSetNotClique,
  BudgetExceeded,
  ParseError,
  ValidationError,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

#define SETAUT_DEFINE_ERROR(NAME)                                  \
  class NAME : public Error {                                      \
  public:                                                          \
    explicit NAME(const std::string& msg)                          \
        : Error(ErrorKind::NAME, std::string(#NAME ": ") + msg) {} \
  }

SETAUT_DEFINE_ERROR(DomainMismatch);
SETAUT_DEFINE_ERROR(InvalidPartition);
SETAUT_DEFINE_ERROR(IndexBoundExceeded);
SETAUT_DEFINE_ERROR(NonInvariantSubdomain);
SETAUT_DEFINE_ERROR(NonStabilizedSubfamily);
SETAUT_DEFINE_ERROR(NotChordal);
SETAUT_DEFINE_ERROR(NotInterval);
SETAUT_DEFINE_ERROR(EmptyGraph);
SETAUT_DEFINE_ERROR(MarkedSetNotClique);
SETAUT_DEFINE_ERROR(BudgetExceeded);
SETAUT_DEFINE_ERROR(ParseError);
SETAUT_DEFINE_ERROR(ValidationError);

#undef SETAUT_DEFINE_ERROR

}  // namespace setaut
