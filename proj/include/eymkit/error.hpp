#pragma once

#include <stdexcept>
#include <string>

namespace eymkit {

// Every failure raised by the library carries a stable kind tag so the CLI can
// map it onto an exit code without parsing messages.
enum class ErrorKind {
  DivisionByZero,
  MissingParam,
  PoleAtPoint,
  Parse,
  NonSquare,
  Singular,
  CatalogParse,
  NotReductive,
  NoInvariantMetric,
  DegenerateAtSample,
  SingularMetric,
  NonClosing,
  UnknownCase,
  BadArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eymkit
