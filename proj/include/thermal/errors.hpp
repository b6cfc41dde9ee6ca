#ifndef THERMAL_ERRORS_HPP
#define THERMAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thermal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument values (negative cooling amount, non-positive heating step, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Heating a node past its critical temperature.
struct CapacityOverflowError : Error {
    using Error::Error;
};

// A required packet parameter (omega, dtd, beta) is missing or unusable.
struct ConfigError : Error {
    using Error::Error;
};

// Instance exceeds a deliberate size bound of an exponential oracle.
struct SizeError : Error {
    using Error::Error;
};

// Flow is not limited by any node (direct source->sink edge).
struct UnboundedFlowError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

// Structurally valid file, semantically broken network.
struct SemanticError : Error {
    using Error::Error;
};

// Cooling target not on any source-sink path.
struct UnreachableTargetError : Error {
    using Error::Error;
};

// Cooling budget below the minimum the plan needs; carries that minimum.
struct InsufficientBudgetError : Error {
    InsufficientBudgetError(const std::string& what, const std::string& required)
        : Error(what), required_beta(required) {}
    std::string required_beta;
};

// Steady-state onset is undefined (minimum-cardinality tie with a cheaper peer).
struct IndeterminateError : Error {
    using Error::Error;
};

}  // namespace thermal

#endif
