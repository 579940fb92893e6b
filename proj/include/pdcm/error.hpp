#pragma once

#include <stdexcept>
#include <string>

namespace pdcm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quantity was requested outside the domain where it is defined
/// (wavelength outside every Sellmeier range, no real idler, unknown id).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A database or map document does not match its schema.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A parsed record violates a physical or bookkeeping invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace pdcm
