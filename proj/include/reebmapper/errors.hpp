#pragma once

#include <stdexcept>
#include <string>

namespace reebmapper {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file.
struct ParseError : Error {
    using Error::Error;
};

// Structurally invalid data (dangling vertex id, duplicate vertex in a
// simplex, dimension out of range, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Caller violated an operation precondition.
struct PreconditionError : Error {
    using Error::Error;
};

// An internal consistency assertion failed.  Signals an implementation
// bug, never a property of the input; callers must not downgrade it.
struct InternalError : Error {
    using Error::Error;
};

// A machine check (diagram verification, equivalence check) failed.
struct CheckError : Error {
    using Error::Error;
};

}  // namespace reebmapper
