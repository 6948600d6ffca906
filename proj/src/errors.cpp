#include "xnmr/errors.hpp"

#include <utility>

namespace xnmr {

SyntaxError::SyntaxError(std::size_t line, std::size_t column, std::string message)
    : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line), column_(column), message_(std::move(message)) {}

namespace {
std::string safety_text(const std::optional<std::size_t>& rule, const std::string& var) {
    if (rule) {
        return "unsafe variable " + var + " in rule " + std::to_string(*rule + 1);
    }
    return "unsafe variable " + var + " in query";
}
} // namespace

SafetyError::SafetyError(std::optional<std::size_t> rule_index, std::string variable)
    : Error(safety_text(rule_index, variable)), rule_index_(rule_index), variable_(std::move(variable)) {}

ResourceLimitExceeded::ResourceLimitExceeded(std::size_t limit)
    : Error("grounding exceeds the limit of " + std::to_string(limit) + " ground atoms"), limit_(limit) {}

InternalPredicateClash::InternalPredicateClash(std::string predicate)
    : Error("predicate " + predicate + " uses the reserved '__' prefix"), predicate_(std::move(predicate)) {}

FormatError::FormatError(std::size_t line, std::string message)
    : Error("xgf line " + std::to_string(line) + ": " + message), line_(line) {}

OracleTooLarge::OracleTooLarge(std::size_t atoms, std::size_t bound)
    : Error("oracle bound exceeded: " + std::to_string(atoms) + " atoms > " + std::to_string(bound)) {}

} // namespace xnmr
