#pragma once

#include <stdexcept>
#include <string>

namespace hypinv {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Gamma/digamma evaluated at a non-positive integer.
struct PoleError : Error {
    using Error::Error;
};

// Input outside a function's stated domain (convergence condition,
// parameter range, mode restriction).
struct DomainError : Error {
    using Error::Error;
};

// Coefficient index beyond a series' truncation order.
struct OrderExceeded : Error {
    using Error::Error;
};

// Series reversion requested for a series with vanishing linear term,
// or inversion of a series with vanishing constant term.
struct NotInvertible : Error {
    using Error::Error;
};

// binom_pow requires constant term exactly 1.
struct ConstantTermNotOne : Error {
    using Error::Error;
};

// compose requires the inner series to have constant term 0.
struct NonzeroInnerConstant : Error {
    using Error::Error;
};

// A Pochhammer factor in a hypergeometric denominator vanished while the
// corresponding numerator term was still nonzero.
struct DenominatorPole : Error {
    using Error::Error;
};

// The B-matrix weight 1/(beta+k) hit beta = -k.
struct BetaPole : Error {
    using Error::Error;
};

// Forward substitution on a triangular matrix with a zero diagonal entry.
struct SingularDiagonal : Error {
    using Error::Error;
};

// Matrix operands with different n_max.
struct SizeMismatch : Error {
    using Error::Error;
};

// A sequence shorter than the matrix it is applied to.
struct LengthMismatch : Error {
    using Error::Error;
};

// Scalar evaluation requested outside the convergence disk.
struct OutsideRadius : Error {
    using Error::Error;
};

// The closed-form inverse mapping requires x != 0.
struct XZero : Error {
    using Error::Error;
};

// Scalar Newton continuation failed to track the principal branch.
struct BranchLost : Error {
    using Error::Error;
};

// An iteration failed to reach its contractual residual (signals a bug).
struct NoConvergence : Error {
    using Error::Error;
};

// Binary operation on operands from different scalar modes.
struct ModeMismatch : Error {
    using Error::Error;
};

// Malformed JSON or text input.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace hypinv
