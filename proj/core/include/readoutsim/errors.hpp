#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace readout {

// Root of the library's error hierarchy. Everything thrown on purpose by
// this library derives from Error, so callers can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// A precondition violation: a caller passed a value an operation cannot accept.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Evaluation outside a table or grid span. Nothing in this library
// extrapolates; asking for a point outside the covered range is an error.
class RangeError : public Error {
public:
    using Error::Error;
};

// Structural problem in a Touchstone file (option line, version keywords).
// Carries the 1-based line number where parsing failed.
class FormatError : public Error {
public:
    FormatError(const std::string& message, std::size_t line)
        : Error(message + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Numeric-content problem in a Touchstone file (column count, ordering).
class DataError : public Error {
public:
    DataError(const std::string& message, std::size_t line)
        : Error(message + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Input that is recognized but deliberately not handled (Y/Z parameter
// files, Touchstone version 2).
class UnsupportedFeature : public Error {
public:
    using Error::Error;
};

// The two dispersive responses coincide; no state discrimination possible.
class DegeneratePair : public Error {
public:
    using Error::Error;
};

// An I-Q ensemble with coincident means and zero spread; separation and
// noise statistics are undefined.
class DegenerateEnsemble : public Error {
public:
    using Error::Error;
};

// No bandwidth factor can reach the requested target error.
class CalibrationInfeasible : public Error {
public:
    using Error::Error;
};

// The knee threshold is not crossed anywhere inside the swept range.
class KneeNotBracketed : public Error {
public:
    using Error::Error;
};

// Configuration loading or validation failure; carries the dotted JSON key
// path that caused it (empty for file-level problems).
class ConfigError : public Error {
public:
    ConfigError(const std::string& message, std::string key_path)
        : Error(key_path.empty() ? message : key_path + ": " + message),
          key_path_(std::move(key_path)) {}
    const std::string& key_path() const noexcept { return key_path_; }

private:
    std::string key_path_;
};

}  // namespace readout
