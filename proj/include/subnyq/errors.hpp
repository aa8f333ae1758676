#pragma once

#include <stdexcept>
#include <string>

namespace subnyq {

/// Invalid sizes, ranges or option values supplied by the caller.
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of a function (log of zero, zero gain).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// A matrix that must have full row rank does not.
struct singularity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative routine failed to converge.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A structural precondition on an input matrix does not hold (e.g. rows not orthonormal).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Exhaustive enumeration would exceed the configured cap.
struct size_error : std::length_error {
    using std::length_error::length_error;
};

/// A bound that holds deterministically was violated. Always a bug.
struct verification_error : std::logic_error {
    using std::logic_error::logic_error;
};

namespace detail {

template <class E>
inline void require(bool ok, const std::string& what) {
    if (!ok) throw E(what);
}

}  // namespace detail

}  // namespace subnyq
