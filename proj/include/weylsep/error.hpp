#pragma once

#include <stdexcept>
#include <string>

namespace weylsep {

// Base of everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller-side problems: bad dimensions, out-of-domain parameters, malformed
// input files. The CLI maps these onto exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

// A density-matrix invariant that did not hold. `measured` carries the size
// of the violation (asymmetry, trace, eigenvalue, ...).
class ValidationError : public InputError {
public:
    enum class Kind { NotSquare, DimensionMismatch, NonFinite, NonHermitian, WrongTrace, NegativeEigenvalue };

    ValidationError(Kind kind, double measured, const std::string& what)
        : InputError(what), kind_(kind), measured_(measured) {}

    Kind kind() const noexcept { return kind_; }
    double measured() const noexcept { return measured_; }

private:
    Kind kind_;
    double measured_;
};

// The numerics produced something that cannot be right (e.g. a complex mean
// value of a Hermitian observable). Exit code 1 in the CLI.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace weylsep
