#pragma once

#include <stdexcept>
#include <string>

namespace mbqc {

// Base class for all library errors. The CLI maps these to exit status 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unknown vertex name, or a vertex index out of range.
struct IdentifierError : Error {
    using Error::Error;
};

// Bad arguments: malformed generator parameters, an order that is not a
// permutation of the measured vertices, dimension mismatches, exceeded
// enumeration caps, and similar caller mistakes.
struct ParameterError : Error {
    using Error::Error;
};

// Rejected text document. Carries a 1-based line number when known.
struct ParseError : Error {
    int line = 0;
    ParseError(int line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
    explicit ParseError(const std::string& what_) : Error(what_) {}
};

// A checked internal invariant failed. Seeing this is a bug.
struct InvariantError : Error {
    using Error::Error;
};

} // namespace mbqc
