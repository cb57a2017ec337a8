#pragma once

#include <stdexcept>
#include <string>

namespace expmbt {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operand shapes are incompatible. The message names both shapes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A linear system turned out to be exactly singular.
class SingularError : public Error {
public:
    using Error::Error;
};

/// An iteration failed to converge within its cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Sylvester operands whose spectra are too close to separate reliably.
class IllSeparatedError : public Error {
public:
    using Error::Error;
};

/// Malformed or unreadable input file.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace expmbt
