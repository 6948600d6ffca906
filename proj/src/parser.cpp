#include "xnmr/errors.hpp"
#include "xnmr/syntax.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>

namespace xnmr {
namespace {

enum class Tok { Ident, Var, Int, LParen, RParen, Comma, Dot, If, QueryMark, Not, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::Ident:     return "identifier";
        case Tok::Var:       return "variable";
        case Tok::Int:       return "integer";
        case Tok::LParen:    return "'('";
        case Tok::RParen:    return "')'";
        case Tok::Comma:     return "','";
        case Tok::Dot:       return "'.'";
        case Tok::If:        return "':-'";
        case Tok::QueryMark: return "'?-'";
        case Tok::Not:       return "'not'";
        case Tok::End:       return "end of input";
    }
    return "token";
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_blank();
        Token tok;
        tok.pos = {line_, column_};
        if (at_end()) {
            tok.kind = Tok::End;
            return tok;
        }
        const char c = peek();
        if (std::islower(static_cast<unsigned char>(c)) || c == '_' || std::isupper(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (!at_end() && ident_char(peek())) advance();
            tok.text = std::string(text_.substr(start, pos_ - start));
            if (std::islower(static_cast<unsigned char>(c))) {
                tok.kind = tok.text == "not" ? Tok::Not : Tok::Ident;
            } else if (tok.text.size() > 1 && tok.text[0] == '_' && tok.text[1] == '_') {
                // Reserved names lex as identifiers so the grounder can report the clash.
                tok.kind = Tok::Ident;
            } else {
                tok.kind = Tok::Var;
            }
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            std::size_t start = pos_;
            advance();
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
            if (!at_end() && ident_char(peek())) {
                throw SyntaxError(line_, column_, "malformed integer");
            }
            std::string_view digits = text_.substr(start, pos_ - start);
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
                throw SyntaxError(tok.pos.line, tok.pos.column, "integer out of 64-bit range");
            }
            tok.kind = Tok::Int;
            tok.text = std::to_string(value);
            return tok;
        }
        advance();
        switch (c) {
            case '(': tok.kind = Tok::LParen; return tok;
            case ')': tok.kind = Tok::RParen; return tok;
            case ',': tok.kind = Tok::Comma; return tok;
            case '.': tok.kind = Tok::Dot; return tok;
            case ':':
                if (!at_end() && peek() == '-') {
                    advance();
                    tok.kind = Tok::If;
                    return tok;
                }
                break;
            case '?':
                if (!at_end() && peek() == '-') {
                    advance();
                    tok.kind = Tok::QueryMark;
                    return tok;
                }
                break;
            default:
                break;
        }
        throw SyntaxError(tok.pos.line, tok.pos.column, std::string("unexpected character '") + c + "'");
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (!at_end()) {
            const char c = peek();
            if (c == '%') {
                while (!at_end() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    Program program() {
        Program prog;
        while (cur_.kind != Tok::End) {
            SourcePos pos = cur_.pos;
            Rule rule = clause();
            check_safety(rule, prog.rules.size());
            prog.rules.push_back(std::move(rule));
            prog.positions.push_back(pos);
        }
        return prog;
    }

    Query query() {
        bool marked = false;
        if (cur_.kind == Tok::QueryMark) {
            marked = true;
            shift();
        }
        Query q;
        q.literals = literals();
        if (cur_.kind == Tok::Dot) {
            shift();
        } else if (marked) {
            fail("expected '.' after query");
        }
        expect(Tok::End);
        check_safety(q);
        return q;
    }

private:
    Rule clause() {
        Rule rule;
        rule.head = atom();
        if (cur_.kind == Tok::If) {
            shift();
            rule.body = literals();
        }
        expect(Tok::Dot);
        return rule;
    }

    std::vector<Literal> literals() {
        std::vector<Literal> lits;
        lits.push_back(literal());
        while (cur_.kind == Tok::Comma) {
            shift();
            lits.push_back(literal());
        }
        return lits;
    }

    Literal literal() {
        Literal lit;
        if (cur_.kind == Tok::Not) {
            lit.negated = true;
            shift();
        }
        lit.atom = atom();
        return lit;
    }

    Atom atom() {
        if (cur_.kind != Tok::Ident) fail("expected predicate name");
        Atom a;
        a.predicate = cur_.text;
        shift();
        if (cur_.kind == Tok::LParen) {
            shift();
            a.args.push_back(term());
            while (cur_.kind == Tok::Comma) {
                shift();
                a.args.push_back(term());
            }
            expect(Tok::RParen);
        }
        return a;
    }

    Term term() {
        Term t;
        switch (cur_.kind) {
            case Tok::Ident:
                if (cur_.text.rfind("__", 0) == 0) fail("reserved name used as a term");
                t = Term::constant(cur_.text);
                break;
            case Tok::Not: t = Term::constant(cur_.text); break;
            case Tok::Var: t = Term::variable(cur_.text); break;
            case Tok::Int: t = Term{Term::Kind::Integer, cur_.text}; break;
            default: fail("expected a term");
        }
        shift();
        return t;
    }

    void expect(Tok kind) {
        if (cur_.kind != kind) fail(std::string("expected ") + describe(kind));
        shift();
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw SyntaxError(cur_.pos.line, cur_.pos.column, what + ", found " + describe(cur_.kind));
    }

    void shift() { cur_ = lexer_.next(); }

    Lexer lexer_;
    Token cur_;
};

} // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

Query parse_query(std::string_view text) { return Parser(text).query(); }

} // namespace xnmr
