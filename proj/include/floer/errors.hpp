#pragma once

#include <stdexcept>
#include <string>

namespace floer {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inverting the zero series (or a series that is zero to its truncation order).
struct ZeroInverse : Error {
    ZeroInverse() : Error("cannot invert the zero series") {}
};

// A computation needed a coefficient beyond the truncation order of its input.
struct InsufficientTruncation : Error {
    explicit InsufficientTruncation(const std::string& what) : Error(what) {}
};

// Boundary matrices do not square to zero.
struct NotAComplex : Error {
    explicit NotAComplex(const std::string& what) : Error(what) {}
};

struct NotBlockDiagonal : Error {
    explicit NotBlockDiagonal(const std::string& what) : Error(what) {}
};

struct NotACycle : Error {
    explicit NotACycle(const std::string& what) : Error(what) {}
};

struct MismatchedSupport : Error {
    explicit MismatchedSupport(const std::string& what) : Error(what) {}
};

struct GenerationFailed : Error {
    explicit GenerationFailed(const std::string& what) : Error(what) {}
};

// Malformed input file or unparsable value.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace floer
