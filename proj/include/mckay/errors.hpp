#pragma once

#include <stdexcept>
#include <string>

namespace mckay {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A closed-form estimator hit a (near-)zero denominator.
class DegenerateStatisticsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Intermediate value left the representable double range.
class NumericRangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Every profile grid point failed or produced an invalid estimate.
class NoValidEstimateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientReplicatesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical differentiation landed on a degenerate point.
class DifferentiationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mckay
