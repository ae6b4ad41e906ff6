#pragma once

#include <stdexcept>
#include <string>

namespace cgcodes {

// Thrown when an operation requires a nonsingular matrix.
struct SingularMatrix : std::invalid_argument {
    explicit SingularMatrix(const std::string& what) : std::invalid_argument(what) {}
};

// Constraint construction was asked for the identity element.
struct IdentityElement : std::invalid_argument {
    explicit IdentityElement(const std::string& what) : std::invalid_argument(what) {}
};

// A group table containing only the identity cannot yield an LP.
struct EmptyGroup : std::invalid_argument {
    explicit EmptyGroup(const std::string& what) : std::invalid_argument(what) {}
};

// Simplex failed to converge within its iteration cap, or a solution
// failed its round-trip verification.
struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// Even-dimension search invoked with an odd dimension (or vice versa).
struct InvalidDimension : std::invalid_argument {
    explicit InvalidDimension(const std::string& what) : std::invalid_argument(what) {}
};

// Odd-dimension codes require an even order.
struct OddOrder : std::invalid_argument {
    explicit OddOrder(const std::string& what) : std::invalid_argument(what) {}
};

// Brute-force oracle invoked above its size cap.
struct GuardExceeded : std::invalid_argument {
    explicit GuardExceeded(const std::string& what) : std::invalid_argument(what) {}
};

// A structural postcondition failed; indicates a bug or a violated
// precondition upstream.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Torus chart undefined when some radius vanishes.
struct DegenerateRadius : std::invalid_argument {
    explicit DegenerateRadius(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace cgcodes
