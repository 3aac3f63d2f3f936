#pragma once

#include <stdexcept>
#include <string>

namespace oplab {

struct InvalidOrliczFunction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteFunction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AbsoluteContinuityViolated : std::runtime_error {
    explicit AbsoluteContinuityViolated(std::string msg, std::size_t atom)
        : std::runtime_error(std::move(msg)), witness_atom(atom) {}
    std::size_t witness_atom;
};

struct CarrierMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotEquivalent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooManyAtoms : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RejectionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MapEscapesDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularTransformation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The theorems are unconditional under their preconditions; two independently
// computed verdicts disagreeing can only mean an implementation bug.
struct TheoremViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct PreconditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace oplab
