#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural problems with a mesh: non-manifold edges, degenerate triangles,
/// bad indices, missing boundary.
class MeshError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

class SolverError : public Error {
public:
    using Error::Error;
};

/// Raised when an operation is called on an input outside its precondition
/// (wrong topology, too few samples, unknown suite).
class PreconditionError : public Error {
public:
    using Error::Error;
};

} // namespace steklov
