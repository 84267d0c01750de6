#pragma once

#include <stdexcept>
#include <string>

namespace asymptotica {

// Base of every recoverable failure raised by the library. kind() is a stable
// identifier used for machine-readable error reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

  // Numerical failures map to exit code 1 in the CLI; everything else is a
  // usage problem.
  virtual bool numerical() const noexcept { return false; }

 private:
  std::string kind_;
};

#define ASYMPTOTICA_DEFINE_ERROR(Name, IsNumerical)                     \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
    bool numerical() const noexcept override { return IsNumerical; }    \
  };

ASYMPTOTICA_DEFINE_ERROR(DivisionByZero, true)
ASYMPTOTICA_DEFINE_ERROR(NegativeOperand, true)
ASYMPTOTICA_DEFINE_ERROR(NotFinite, true)
ASYMPTOTICA_DEFINE_ERROR(NotReal, false)
ASYMPTOTICA_DEFINE_ERROR(Unresolvable, true)
ASYMPTOTICA_DEFINE_ERROR(BadDilation, false)
ASYMPTOTICA_DEFINE_ERROR(LevelTooDeep, false)
ASYMPTOTICA_DEFINE_ERROR(DomainMismatch, false)
ASYMPTOTICA_DEFINE_ERROR(QuadratureFailure, true)
ASYMPTOTICA_DEFINE_ERROR(IllConditionedFit, true)
ASYMPTOTICA_DEFINE_ERROR(NoCandidate, true)
ASYMPTOTICA_DEFINE_ERROR(ParseError, false)
ASYMPTOTICA_DEFINE_ERROR(FormatError, false)

#undef ASYMPTOTICA_DEFINE_ERROR

}  // namespace asymptotica
