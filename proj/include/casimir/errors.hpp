#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Input outside an operation's domain (non-positive lengths, densities, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation at or past plate contact, where the ideal Casimir law diverges.
class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The configuration has no stable equilibrium (pull-in).
class UnstableConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The plate released at rest from the free length never turns around.
class CollapseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace casimir
