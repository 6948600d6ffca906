#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace xnmr {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed program or query text. Line and column are 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, std::string message);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

/// A variable that never occurs in a positive body literal.
/// rule_index is empty for query safety violations.
class SafetyError : public Error {
public:
    SafetyError(std::optional<std::size_t> rule_index, std::string variable);
    std::optional<std::size_t> rule_index() const noexcept { return rule_index_; }
    const std::string& variable() const noexcept { return variable_; }

private:
    std::optional<std::size_t> rule_index_;
    std::string variable_;
};

class ResourceLimitExceeded : public Error {
public:
    explicit ResourceLimitExceeded(std::size_t limit);
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
};

/// User program mentions a predicate in the reserved `__` namespace.
class InternalPredicateClash : public Error {
public:
    explicit InternalPredicateClash(std::string predicate);
    const std::string& predicate() const noexcept { return predicate_; }

private:
    std::string predicate_;
};

/// Malformed XGF document. Line is 1-based.
class FormatError : public Error {
public:
    FormatError(std::size_t line, std::string message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class OracleTooLarge : public Error {
public:
    OracleTooLarge(std::size_t atoms, std::size_t bound);
};

} // namespace xnmr
