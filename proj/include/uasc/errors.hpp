#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace uasc {

/// Base class of all library failures. Every error carries a short
/// machine-readable code that sweep output uses as its status token.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define UASC_ERROR_TYPE(Name, token)                                \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(token, what) {}  \
  }

UASC_ERROR_TYPE(StructuralError, "structural");
UASC_ERROR_TYPE(NumericError, "numeric");
UASC_ERROR_TYPE(StepTooLargeError, "step_too_large");
UASC_ERROR_TYPE(LogGuardError, "log_guard");
UASC_ERROR_TYPE(DivisionGuardError, "division_guard");
UASC_ERROR_TYPE(IrreversibleStepError, "irreversible_step");
UASC_ERROR_TYPE(OracleFailure, "oracle_failure");
UASC_ERROR_TYPE(EpsRefusedError, "eps_refused");
UASC_ERROR_TYPE(ResourceLimitError, "resource_limit");
UASC_ERROR_TYPE(UndefinedMetricError, "undefined_metric");
UASC_ERROR_TYPE(UsageError, "usage");

#undef UASC_ERROR_TYPE

}  // namespace uasc
