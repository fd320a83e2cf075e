#pragma once

#include <stdexcept>
#include <string>

namespace sepred {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An enumeration or search guard would be exceeded.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A certificate or self-check failed; signals a construction bug or a false claim.
class CertificateFailure : public Error {
public:
    using Error::Error;
};

}  // namespace sepred
