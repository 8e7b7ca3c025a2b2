#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eofb {

/// A validated quantity (trace, hermiticity, positivity, norm, ...) is out of tolerance.
/// `magnitude()` is the observed deviation, not the tolerance.
class InvariantError : public std::domain_error {
public:
    InvariantError(std::string invariant, double magnitude);

    const std::string& invariant() const noexcept { return invariant_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    std::string invariant_;
    double magnitude_;
};

/// Dimensions outside the supported range (m, n < 2, m*n above the limit,
/// envelope dimension mismatch, two-copy operator too large).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed state file. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace eofb
