#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace polync {

using CellId = std::int64_t;
using VertexId = std::int64_t;

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data (a JSON document or in-memory structure) violates a schema
/// contract. Carries a JSON-pointer-style path to the offending location.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string pointer, const std::string& message)
        : std::runtime_error(pointer.empty() ? message : pointer + ": " + message),
          pointer_(std::move(pointer)) {}

    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

/// A cooperative cancellation callback fired during a long computation.
class Cancelled : public std::runtime_error {
public:
    Cancelled() : std::runtime_error("operation cancelled") {}
};

/// An internal cross-check failed; indicates a bug, not bad input.
class InternalCheckError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace polync
