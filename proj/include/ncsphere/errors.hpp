#pragma once

#include <stdexcept>
#include <string>

namespace ncsphere {

// Bad arguments: out-of-range indices, empty parameter domains, malformed input.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Evaluation outside the region where a closed form is defined or analytic.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A vanishing denominator (metric determinant, curvature denominator, tan pole).
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

// Malformed input file; line and column are 1-based, 0 when unknown.
class ParseError : public InvalidArgument {
public:
    ParseError(const std::string& what, int line, int column)
        : InvalidArgument(what), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

} // namespace ncsphere
