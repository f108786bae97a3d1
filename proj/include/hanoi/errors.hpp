#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hanoi {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter outside its documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Vertex 0 has no (level, index) decomposition.
class NoFactorization : public Error {
public:
    using Error::Error;
};

// The probability series has no usable first maximum.
class NoPeak : public Error {
public:
    using Error::Error;
};

// A run would exceed the configured amplitude-step budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace hanoi
