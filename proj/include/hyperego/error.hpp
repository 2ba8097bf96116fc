#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperego {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed token in an input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

/// Files parse individually but disagree with each other (length mismatch etc).
class StructuralError : public Error {
public:
    using Error::Error;
};

class EmptyDatasetError : public Error {
public:
    using Error::Error;
};

/// A precondition on the caller's input was violated.
class ContractError : public Error {
public:
    using Error::Error;
};

class UnknownEgoError : public Error {
public:
    using Error::Error;
};

class NotAnAlterError : public Error {
public:
    using Error::Error;
};

/// A measure was requested on a sequence too short for it to be defined.
class UndefinedMeasureError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

class SchemaMismatchError : public Error {
public:
    using Error::Error;
};

/// Exhaustive enumeration requested above the configured size cap.
class CapExceededError : public Error {
public:
    using Error::Error;
};

}  // namespace hyperego
