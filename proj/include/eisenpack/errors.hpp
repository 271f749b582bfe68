#pragma once

#include <stdexcept>
#include <string>

namespace eisenpack {

/// Raised when a request is structurally valid but too large to compute
/// exhaustively (enumeration caps, code-space sizes, coset caps).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an input file (concatenation spec, code file, search config)
/// cannot be parsed.
class MalformedInputError : public std::runtime_error {
public:
    explicit MalformedInputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eisenpack
