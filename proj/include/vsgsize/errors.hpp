#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsgsize {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One violated parameter bound, e.g. {"vsg.t_a", "t_a > 0"}.
struct Violation {
    std::string field;
    std::string bound;
};

/// Raised with every violated invariant of a configuration, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Malformed configuration text. `line` is 0 when the error is tied to a field rather than a position.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t line, std::string field);

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

/// Argument outside an operation's domain (empty trace, interval outside trace, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class InfeasibleOperatingPoint : public Error {
public:
    using Error::Error;
};

/// Non-finite state during integration.
class IntegrationFault : public Error {
public:
    IntegrationFault(std::int64_t step, double time);

    std::int64_t step() const noexcept { return step_; }
    double time() const noexcept { return time_; }

private:
    std::int64_t step_;
    double time_;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what);

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace vsgsize
