#pragma once

// Test helpers: direct propositional conversion (bypassing the grounder) and
// seeded random program generators.

#include "xnmr/ground.hpp"
#include "xnmr/syntax.hpp"
#include "xnmr/wfs.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

namespace xnmr::test {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Every atom of a ground source program, numbered in text order; rules kept
// verbatim (no relevance, no literal deletion).
inline GroundProgram ground_all(std::string_view text) {
    const Program p = parse_program(text);
    std::vector<std::string> texts;
    for (const Rule& r : p.rules) {
        texts.push_back(to_string(r.head));
        for (const Literal& l : r.body) texts.push_back(to_string(l.atom));
    }
    GroundProgram gp;
    gp.atoms = AtomTable::from_texts(std::move(texts));
    for (const Rule& r : p.rules) {
        GroundRule g;
        g.head = *gp.atoms.find(to_string(r.head));
        for (const Literal& l : r.body) (l.negated ? g.neg : g.pos).push_back(*gp.atoms.find(to_string(l.atom)));
        for (AtomSet* s : {&g.pos, &g.neg}) {
            std::sort(s->begin(), s->end());
            s->erase(std::unique(s->begin(), s->end()), s->end());
        }
        gp.rules.push_back(std::move(g));
    }
    std::sort(gp.rules.begin(), gp.rules.end());
    gp.rules.erase(std::unique(gp.rules.begin(), gp.rules.end()), gp.rules.end());
    return gp;
}

inline ResidualProgram residual_all(std::string_view text) {
    GroundProgram gp = ground_all(text);
    return ResidualProgram{std::move(gp.atoms), std::move(gp.rules)};
}

inline AtomSet ids(const AtomTable& t, std::initializer_list<const char*> names) {
    AtomSet s;
    for (const char* n : names) s.push_back(t.find(n).value());
    std::sort(s.begin(), s.end());
    return s;
}

inline std::vector<std::string> names(const AtomTable& t, const AtomSet& s) {
    std::vector<std::string> out;
    for (AtomId a : s) out.push_back(t.text(a));
    return out;
}

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Random propositional rules over atoms p00..p(n-1).
inline GroundProgram random_ground(Rng& rng, std::size_t max_atoms = 12, std::size_t max_rules = 20) {
    const std::size_t n = uniform(rng, 1, max_atoms);
    std::vector<std::string> texts;
    for (std::size_t i = 0; i < n; ++i) texts.push_back("p" + std::string(i < 10 ? "0" : "") + std::to_string(i));
    GroundProgram gp;
    gp.atoms = AtomTable::from_texts(texts);
    const std::size_t m = uniform(rng, 0, max_rules);
    for (std::size_t r = 0; r < m; ++r) {
        GroundRule g;
        g.head = static_cast<AtomId>(uniform(rng, 1, n));
        const std::size_t np = uniform(rng, 0, 2);
        const std::size_t nn = uniform(rng, 0, 2);
        for (std::size_t i = 0; i < np; ++i) g.pos.push_back(static_cast<AtomId>(uniform(rng, 1, n)));
        for (std::size_t i = 0; i < nn; ++i) g.neg.push_back(static_cast<AtomId>(uniform(rng, 1, n)));
        for (AtomSet* s : {&g.pos, &g.neg}) {
            std::sort(s->begin(), s->end());
            s->erase(std::unique(s->begin(), s->end()), s->end());
        }
        gp.rules.push_back(std::move(g));
    }
    std::sort(gp.rules.begin(), gp.rules.end());
    gp.rules.erase(std::unique(gp.rules.begin(), gp.rules.end()), gp.rules.end());
    return gp;
}

inline ResidualProgram random_residual(Rng& rng, std::size_t max_atoms = 12, std::size_t max_rules = 20) {
    GroundProgram gp = random_ground(rng, max_atoms, max_rules);
    return ResidualProgram{std::move(gp.atoms), std::move(gp.rules)};
}

inline std::string ground_source(const GroundProgram& gp) {
    std::string out;
    for (const GroundRule& r : gp.rules) out += to_string(r, gp.atoms) + "\n";
    return out;
}

// Random safe non-ground program over predicates named prefix0..prefix(k-1),
// arity 0..2, constants c0..c2. Bodies may also mention `extern_preds`.
struct RandomProgramSpec {
    std::string prefix = "q";
    std::size_t predicates = 4;
    std::size_t max_rules = 8;
    std::vector<std::pair<std::string, std::size_t>> extern_preds;
};

inline std::size_t arity_of(std::size_t i) { return i % 3; }

inline Atom random_atom(Rng& rng, const std::string& pred, std::size_t arity, const std::vector<std::string>& vars) {
    Atom a;
    a.predicate = pred;
    for (std::size_t i = 0; i < arity; ++i) {
        if (!vars.empty() && uniform(rng, 0, 2) > 0) {
            a.args.push_back(Term::variable(vars[uniform(rng, 0, vars.size() - 1)]));
        } else {
            a.args.push_back(Term::constant("c" + std::to_string(uniform(rng, 0, 2))));
        }
    }
    return a;
}

inline Program random_program(Rng& rng, const RandomProgramSpec& spec) {
    std::vector<std::pair<std::string, std::size_t>> preds;
    for (std::size_t i = 0; i < spec.predicates; ++i) preds.emplace_back(spec.prefix + std::to_string(i), arity_of(i));
    std::vector<std::pair<std::string, std::size_t>> body_preds = preds;
    body_preds.insert(body_preds.end(), spec.extern_preds.begin(), spec.extern_preds.end());

    Program p;
    const std::size_t m = uniform(rng, 1, spec.max_rules);
    for (std::size_t r = 0; r < m; ++r) {
        Rule rule;
        const auto& head = preds[uniform(rng, 0, preds.size() - 1)];
        const std::size_t npos = uniform(rng, 0, 2);
        const std::size_t nneg = uniform(rng, 0, 2);
        std::vector<std::string> vars;
        for (std::size_t i = 0; i < npos; ++i) {
            const auto& bp = body_preds[uniform(rng, 0, body_preds.size() - 1)];
            Atom a = random_atom(rng, bp.first, bp.second, {"X", "Y"});
            for (const Term& t : a.args) {
                if (t.is_variable() && std::find(vars.begin(), vars.end(), t.text) == vars.end()) vars.push_back(t.text);
            }
            rule.body.push_back({std::move(a), false});
        }
        for (std::size_t i = 0; i < nneg; ++i) {
            const auto& bp = body_preds[uniform(rng, 0, body_preds.size() - 1)];
            rule.body.push_back({random_atom(rng, bp.first, bp.second, vars), true});
        }
        rule.head = random_atom(rng, head.first, head.second, vars);
        p.rules.push_back(std::move(rule));
        p.positions.push_back({});
    }
    return p;
}

inline Query random_query(Rng& rng, const std::string& prefix, std::size_t predicates) {
    const std::size_t i = uniform(rng, 0, predicates - 1);
    Query q;
    q.literals.push_back({random_atom(rng, prefix + std::to_string(i), arity_of(i), {"X", "Y"}), false});
    return q;
}

// Naive full instantiation over every constant of the program (plus
// `extra`), with no relevance filtering and no literal deletion.
inline GroundProgram full_ground(const std::vector<Rule>& rules, std::vector<std::string> extra = {}) {
    std::set<std::string> universe(extra.begin(), extra.end());
    for (const Rule& r : rules) {
        auto add = [&](const Atom& a) {
            for (const Term& t : a.args) {
                if (!t.is_variable()) universe.insert(t.text);
            }
        };
        add(r.head);
        for (const Literal& l : r.body) add(l.atom);
    }
    const std::vector<std::string> consts(universe.begin(), universe.end());

    struct Instance {
        std::string head;
        std::vector<std::string> pos, neg;
    };
    std::vector<Instance> instances;
    for (const Rule& r : rules) {
        std::vector<std::string> vars;
        auto collect = [&](const Atom& a) {
            for (const Term& t : a.args) {
                if (t.is_variable() && std::find(vars.begin(), vars.end(), t.text) == vars.end()) vars.push_back(t.text);
            }
        };
        collect(r.head);
        for (const Literal& l : r.body) collect(l.atom);
        if (!vars.empty() && consts.empty()) continue;
        std::vector<std::size_t> choice(vars.size(), 0);
        for (;;) {
            auto subst = [&](const Atom& a) {
                Atom g = a;
                for (Term& t : g.args) {
                    if (t.is_variable()) {
                        const auto k = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), t.text) - vars.begin());
                        t = Term::constant(consts[choice[k]]);
                    }
                }
                return to_string(g);
            };
            Instance in{subst(r.head), {}, {}};
            for (const Literal& l : r.body) (l.negated ? in.neg : in.pos).push_back(subst(l.atom));
            instances.push_back(std::move(in));
            std::size_t k = 0;
            while (k < choice.size() && ++choice[k] == consts.size()) choice[k++] = 0;
            if (k == choice.size()) break;
        }
    }
    std::vector<std::string> texts;
    for (const Instance& in : instances) {
        texts.push_back(in.head);
        texts.insert(texts.end(), in.pos.begin(), in.pos.end());
        texts.insert(texts.end(), in.neg.begin(), in.neg.end());
    }
    GroundProgram gp;
    gp.atoms = AtomTable::from_texts(std::move(texts));
    for (const Instance& in : instances) {
        GroundRule g;
        g.head = *gp.atoms.find(in.head);
        for (const auto& t : in.pos) g.pos.push_back(*gp.atoms.find(t));
        for (const auto& t : in.neg) g.neg.push_back(*gp.atoms.find(t));
        for (AtomSet* s : {&g.pos, &g.neg}) {
            std::sort(s->begin(), s->end());
            s->erase(std::unique(s->begin(), s->end()), s->end());
        }
        gp.rules.push_back(std::move(g));
    }
    std::sort(gp.rules.begin(), gp.rules.end());
    gp.rules.erase(std::unique(gp.rules.begin(), gp.rules.end()), gp.rules.end());
    return gp;
}

inline std::string predicate_of(const std::string& atom_text) { return atom_text.substr(0, atom_text.find('(')); }

} // namespace xnmr::test
