#pragma once

#include <stdexcept>
#include <string>

namespace twinbeam {

/// A parameter lies outside the interval an operation accepts.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Parameters are individually in range but jointly inconsistent
/// (e.g. a correlation stronger than the light kind allows).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Matrix shapes or dimensions do not agree.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a trustworthy result:
/// degenerate null space, non-closing Bloch equations, unstable loop, ...
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace twinbeam
