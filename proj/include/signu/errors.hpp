#pragma once

#include <stdexcept>
#include <string>

namespace signu {

/// Malformed input: unknown ids, bad files, violated graph invariants.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Instance exceeds a desk-scale bound (edge or vertex cap).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A reduction move was requested on an anchor that does not satisfy its preconditions.
class MoveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical precondition failure (e.g. a Schur pivot block that is not positive definite).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive search came back empty where a result is guaranteed.
/// Never swallowed: the CLI maps it to exit code 3.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace signu
