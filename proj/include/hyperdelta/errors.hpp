#pragma once

#include <stdexcept>
#include <string>

namespace hyperdelta {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (x <= 0, closed channel, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not reach its requested accuracy.
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// Evaluation at (or numerically on top of) a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// An integral representation does not converge at the requested point.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Point where a quantity is undefined (R = 0 angle, vanishing wavefunction, ...).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Root bracket without a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

}  // namespace hyperdelta
