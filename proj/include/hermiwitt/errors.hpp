#pragma once

#include <stdexcept>
#include <string>

namespace hermiwitt {

// How a failure maps onto the CLI contract.
enum class Severity { validation, inconclusive };

class Error : public std::runtime_error {
 public:
  Error(const std::string& what, Severity s) : std::runtime_error(what), severity_(s) {}
  Severity severity() const noexcept { return severity_; }

 private:
  Severity severity_;
};

#define HERMIWITT_ERROR(Name, Sev)                                        \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(#Name ": " + what, Sev) {} \
  };

// precision / budget problems: the answer is unknown, not wrong
HERMIWITT_ERROR(PrecisionExhausted, Severity::inconclusive)
HERMIWITT_ERROR(IndistinguishableZero, Severity::inconclusive)
HERMIWITT_ERROR(DivisionByIndistinguishableZero, Severity::inconclusive)
HERMIWITT_ERROR(OracleInconclusive, Severity::inconclusive)
HERMIWITT_ERROR(NoSimilitudeFound, Severity::inconclusive)

// the input violates a mathematical precondition
HERMIWITT_ERROR(WrongBase, Severity::validation)
HERMIWITT_ERROR(NotASquare, Severity::validation)
HERMIWITT_ERROR(NotANorm, Severity::validation)
HERMIWITT_ERROR(DegenerateForm, Severity::validation)
HERMIWITT_ERROR(WrongSymmetryType, Severity::validation)
HERMIWITT_ERROR(EpsilonMismatch, Severity::validation)
HERMIWITT_ERROR(NotSelfAdjoint, Severity::validation)
HERMIWITT_ERROR(NotSkewAdjoint, Severity::validation)
HERMIWITT_ERROR(Singular, Severity::validation)
HERMIWITT_ERROR(NotQuadratic, Severity::validation)
HERMIWITT_ERROR(NotInD, Severity::validation)
HERMIWITT_ERROR(InvalidParameter, Severity::validation)
HERMIWITT_ERROR(InfeasibleLift, Severity::validation)
HERMIWITT_ERROR(IncomparableTokens, Severity::validation)

#undef HERMIWITT_ERROR

}  // namespace hermiwitt
