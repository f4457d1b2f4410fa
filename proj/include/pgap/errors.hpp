#pragma once

#include <stdexcept>
#include <string>

namespace pgap {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter is outside the domain an operation accepts (p <= 1, N < 1, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Input data violates an operation's precondition (zero field, origin on a node, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// No branch of the ratio bound applies to the requested (p, N).
class NoBoundAvailable : public Error {
public:
    NoBoundAvailable(std::string hypothesis, const std::string& what)
        : Error(what), hypothesis_(std::move(hypothesis)) {}

    /// Name of the violated hypothesis, e.g. "N > p".
    [[nodiscard]] const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    std::string hypothesis_;
};

/// The initial eigenvalue sweep of the shooting method failed to straddle the target mode.
class BracketNotFound : public Error {
public:
    using Error::Error;
};

/// An iterative method stopped without meeting its tolerance.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// A numerical degeneracy that signals a bug or an unusable input (e.g. no sign change
/// during a bisection that must have one).
class NumericalDegeneracy : public Error {
public:
    using Error::Error;
};

/// An invariant the algorithm itself should guarantee was broken.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace pgap
