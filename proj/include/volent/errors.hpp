#ifndef VOLENT_ERRORS_HPP
#define VOLENT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace volent {

/// Base class of all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Constructor parameters outside the ranges of the classification table.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

/// Custom invariants that contradict an externally supplied dimension.
class InconsistentCustomError : public Error {
public:
    using Error::Error;
};

/// Points of different realizations or mismatched shapes fed to a triple product.
class ShapeMismatchError : public Error {
public:
    using Error::Error;
};

/// Vector length does not match the rank of the domain.
class LengthMismatchError : public Error {
public:
    using Error::Error;
};

/// Eigenvalue vector lies outside the bounded realization.
class OutsideDomainError : public Error {
public:
    using Error::Error;
};

/// Scalar function undefined (non-finite) at a spectral value.
class FunctionDomainError : public Error {
public:
    using Error::Error;
};

/// Quadrature requested for an integration dimension it does not support.
class UnsupportedRankError : public Error {
public:
    using Error::Error;
};

class NonPositiveRadiusError : public Error {
public:
    using Error::Error;
};

/// Growth fit window too small or without distinct radii.
class FitDegenerateError : public Error {
public:
    using Error::Error;
};

/// Malformed spec string; carries the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

} // namespace volent

#endif
