#pragma once

#include <stdexcept>
#include <string>

namespace reesdiag {

// Error taxonomy shared across the library. `kind` is stable and machine
// readable; CLI maps MathObstruction-flavored kinds to exit code 2 and
// everything else to exit code 1.
enum class ErrorKind {
    DimensionMismatch,
    VariableMismatch,
    PrecisionIncrease,
    PrecisionExhausted,
    NotABasis,
    NotDiagonalizing,
    NotInTorsor,
    NotDiagonalizableMod,
    NotWeightCompatible,
    NestingViolated,
    NotGradedBasis,
    NotASimplex,
    IncidenceViolation,
    ParseError,
    SchemaVersionError,
    InvariantViolation,
    UnsupportedDimension,
    Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
    throw Error(k, std::string(error_kind_name(k)) + ": " + msg);
}

} // namespace reesdiag
