#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcg {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operand dimensions are incompatible (e.g. multiplying 2x3 by 2x2).
class ShapeError : public Error {
public:
    using Error::Error;
};

// A configured size cap would be exceeded.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A value lies outside its documented domain (control value out of range,
// duplicate control values in a product, empty marked set, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A construction invariant failed (non-unitary branch operator, non-finite
// entries, bad norm, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

// A JSON document does not match its documented schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

// Syntax error in predicate source (or an unparsable angle literal).
// Carries the byte offset of the failure and the set of tokens that would
// have been accepted there.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset,
               std::vector<std::string> expected = {})
        : Error(what), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// Ill-typed predicate: a logical operator applied to integers or a
// bitwise/comparison operator applied to booleans.
class TypeError : public Error {
public:
    using Error::Error;
};

}  // namespace fcg
