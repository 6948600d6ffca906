#pragma once

// Abstract syntax of function-free normal logic programs, plus the parser
// and pretty-printer for the `.lp` source format.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace xnmr {

struct Term {
    enum class Kind { Constant, Integer, Variable };

    Kind kind = Kind::Constant;
    // Identifier text, or the canonical decimal form for integers.
    std::string text;

    static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }
    static Term integer(long long value) { return {Kind::Integer, std::to_string(value)}; }
    static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }

    bool is_variable() const noexcept { return kind == Kind::Variable; }

    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const noexcept { return args.size(); }
    bool is_ground() const noexcept;

    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Literal {
    Atom atom;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Rule {
    Atom head;
    std::vector<Literal> body;

    bool is_fact() const noexcept { return body.empty(); }

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

struct Program {
    std::vector<Rule> rules;
    // Parallel to rules; position of each clause's first token.
    std::vector<SourcePos> positions;

    void append(const Program& other);

    // Structural equality ignores source positions.
    friend bool operator==(const Program& a, const Program& b) { return a.rules == b.rules; }
};

struct Query {
    std::vector<Literal> literals;

    // Distinct variables in first-occurrence order.
    std::vector<std::string> variables() const;

    friend bool operator==(const Query&, const Query&) = default;
};

/// Parses a whole `.lp` source. Every rule is safety-checked.
/// Throws SyntaxError or SafetyError.
Program parse_program(std::string_view text);

/// Parses `lit, ..., lit`, optionally written as `?- ... .`
Query parse_query(std::string_view text);

/// Throws SafetyError if some variable of the rule lacks a positive body occurrence.
void check_safety(const Rule& rule, std::size_t rule_index);
void check_safety(const Query& query);

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const Literal& literal);
std::string to_string(const Rule& rule);
std::string to_string(const Program& program);
std::string to_string(const Query& query);

std::ostream& operator<<(std::ostream& os, const Atom& atom);
std::ostream& operator<<(std::ostream& os, const Rule& rule);

} // namespace xnmr
