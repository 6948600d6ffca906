#include "xnmr/syntax.hpp"

#include "xnmr/errors.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace xnmr {

bool Atom::is_ground() const noexcept {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

void Program::append(const Program& other) {
    rules.insert(rules.end(), other.rules.begin(), other.rules.end());
    positions.insert(positions.end(), other.positions.begin(), other.positions.end());
}

namespace {

void collect_variables(const Atom& atom, std::vector<std::string>& out) {
    for (const Term& t : atom.args) {
        if (t.is_variable() && std::find(out.begin(), out.end(), t.text) == out.end()) {
            out.push_back(t.text);
        }
    }
}

std::set<std::string> positive_variables(const std::vector<Literal>& body) {
    std::set<std::string> vars;
    for (const Literal& lit : body) {
        if (lit.negated) continue;
        for (const Term& t : lit.atom.args) {
            if (t.is_variable()) vars.insert(t.text);
        }
    }
    return vars;
}

} // namespace

std::vector<std::string> Query::variables() const {
    std::vector<std::string> vars;
    for (const Literal& lit : literals) collect_variables(lit.atom, vars);
    return vars;
}

void check_safety(const Rule& rule, std::size_t rule_index) {
    const std::set<std::string> bound = positive_variables(rule.body);
    std::vector<std::string> all;
    collect_variables(rule.head, all);
    for (const Literal& lit : rule.body) collect_variables(lit.atom, all);
    for (const std::string& v : all) {
        if (!bound.count(v)) throw SafetyError(rule_index, v);
    }
}

void check_safety(const Query& query) {
    const std::set<std::string> bound = positive_variables(query.literals);
    for (const std::string& v : query.variables()) {
        if (!bound.count(v)) throw SafetyError(std::nullopt, v);
    }
}

std::string to_string(const Term& term) { return term.text; }

std::string to_string(const Atom& atom) {
    std::string out = atom.predicate;
    if (!atom.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            if (i) out += ',';
            out += atom.args[i].text;
        }
        out += ')';
    }
    return out;
}

std::string to_string(const Literal& literal) {
    return literal.negated ? "not " + to_string(literal.atom) : to_string(literal.atom);
}

namespace {
std::string join_literals(const std::vector<Literal>& lits) {
    std::string out;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i) out += ", ";
        out += to_string(lits[i]);
    }
    return out;
}
} // namespace

std::string to_string(const Rule& rule) {
    if (rule.body.empty()) return to_string(rule.head) + ".";
    return to_string(rule.head) + " :- " + join_literals(rule.body) + ".";
}

std::string to_string(const Program& program) {
    std::string out;
    for (const Rule& r : program.rules) {
        out += to_string(r);
        out += '\n';
    }
    return out;
}

std::string to_string(const Query& query) { return join_literals(query.literals); }

std::ostream& operator<<(std::ostream& os, const Atom& atom) { return os << to_string(atom); }
std::ostream& operator<<(std::ostream& os, const Rule& rule) { return os << to_string(rule); }

} // namespace xnmr
