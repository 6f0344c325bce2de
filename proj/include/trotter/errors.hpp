#pragma once

#include <stdexcept>
#include <string>

namespace trotter {

// Base class for every error raised by the library. Validation problems and
// numerical failures are distinguished so front ends can map them to
// different exit codes / HTTP statuses.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    /// Short machine-readable reason ("shape", "cap", ...).
    virtual const char* reason() const noexcept { return "invalid"; }
};

class ShapeError : public Error {
public:
    using Error::Error;
    const char* reason() const noexcept override { return "shape"; }
};

class SizeLimitError : public Error {
public:
    using Error::Error;
    const char* reason() const noexcept override { return "cap"; }
};

class DomainError : public Error {
public:
    using Error::Error;
    const char* reason() const noexcept override { return "domain"; }
};

class ParseError : public Error {
public:
    using Error::Error;
    const char* reason() const noexcept override { return "parse"; }
};

class FinitenessError : public Error {
public:
    using Error::Error;
    const char* reason() const noexcept override { return "finiteness"; }
};

class UnsupportedAlphabetError : public Error {
public:
    using Error::Error;
    const char* reason() const noexcept override { return "alphabet"; }
};

// Raised when a computation that passed validation produces garbage.
class NumericalError : public Error {
public:
    using Error::Error;
    const char* reason() const noexcept override { return "numerical"; }
};

} // namespace trotter
