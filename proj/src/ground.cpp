#include "xnmr/ground.hpp"

#include "xnmr/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace xnmr {

AtomTable AtomTable::from_texts(std::vector<std::string> texts) {
    std::sort(texts.begin(), texts.end());
    texts.erase(std::unique(texts.begin(), texts.end()), texts.end());
    AtomTable table;
    table.texts_ = std::move(texts);
    table.ids_.reserve(table.texts_.size());
    for (std::size_t i = 0; i < table.texts_.size(); ++i) {
        table.ids_.emplace(table.texts_[i], static_cast<AtomId>(i + 1));
    }
    return table;
}

std::optional<AtomId> AtomTable::find(std::string_view text) const {
    auto it = ids_.find(std::string(text));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

Rule answer_rule(const Query& query) {
    Rule rule;
    rule.head.predicate = std::string(answer_predicate);
    for (const std::string& v : query.variables()) rule.head.args.push_back(Term::variable(v));
    rule.body = query.literals;
    return rule;
}

std::string to_string(const GroundRule& rule, const AtomTable& atoms) {
    std::string out = atoms.text(rule.head);
    if (rule.pos.empty() && rule.neg.empty()) return out + ".";
    out += " :- ";
    bool first = true;
    for (AtomId a : rule.pos) {
        if (!first) out += ", ";
        out += atoms.text(a);
        first = false;
    }
    for (AtomId a : rule.neg) {
        if (!first) out += ", ";
        out += "not " + atoms.text(a);
        first = false;
    }
    return out + ".";
}

namespace {

using SymId = std::uint32_t;
using PredId = std::uint32_t;
using Tuple = std::vector<SymId>;

// (predicate, tuple index) packed into one key.
using AtomKey = std::uint64_t;

AtomKey make_key(PredId pred, std::size_t index) {
    return (static_cast<AtomKey>(pred) << 32) | static_cast<AtomKey>(index);
}
PredId key_pred(AtomKey k) { return static_cast<PredId>(k >> 32); }
std::uint32_t key_index(AtomKey k) { return static_cast<std::uint32_t>(k & 0xffffffffu); }

struct TupleHash {
    std::size_t operator()(const Tuple& t) const noexcept {
        std::size_t h = t.size();
        for (SymId s : t) h ^= s + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

// Append-only relation; tuple indices never change, so iteration rounds can
// address deltas as index ranges.
class Relation {
public:
    explicit Relation(std::size_t arity) : arity_(arity), index_(arity) {}

    std::size_t size() const noexcept { return tuples_.size(); }
    const Tuple& tuple(std::size_t i) const { return tuples_[i]; }

    std::optional<std::size_t> find(const Tuple& t) const {
        auto it = lookup_.find(t);
        if (it == lookup_.end()) return std::nullopt;
        return it->second;
    }

    bool insert(const Tuple& t) {
        auto [it, fresh] = lookup_.emplace(t, tuples_.size());
        if (!fresh) return false;
        for (std::size_t p = 0; p < arity_; ++p) {
            index_[p][t[p]].push_back(static_cast<std::uint32_t>(tuples_.size()));
        }
        tuples_.push_back(t);
        return true;
    }

    // Ascending tuple indices having `value` at `position`.
    const std::vector<std::uint32_t>* column(std::size_t position, SymId value) const {
        auto it = index_[position].find(value);
        return it == index_[position].end() ? nullptr : &it->second;
    }

private:
    std::size_t arity_;
    std::vector<Tuple> tuples_;
    std::unordered_map<Tuple, std::size_t, TupleHash> lookup_;
    std::vector<std::unordered_map<SymId, std::vector<std::uint32_t>>> index_;
};

struct CTerm {
    bool is_var = false;
    std::uint32_t id = 0;  // variable slot or symbol
};

struct CAtom {
    PredId pred = 0;
    std::vector<CTerm> args;
};

struct CRule {
    CAtom head;
    std::vector<CAtom> pos;
    std::vector<CAtom> neg;
    std::size_t num_vars = 0;
};

struct Range {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

struct TempRule {
    AtomKey head;
    std::vector<AtomKey> pos;
    std::vector<AtomKey> neg;
};

constexpr SymId unbound = ~SymId{0};

class Grounder {
public:
    Grounder(const Program& program, const Query& query, const ResourceLimits& limits) : limits_(limits) {
        reject_reserved(program, query);
        std::vector<Rule> rules = program.rules;
        rules.push_back(answer_rule(query));
        answer_pred_ = pred_id(std::string(answer_predicate), query.variables().size());
        ground_query_ = query.variables().empty();

        std::vector<CRule> compiled;
        compiled.reserve(rules.size());
        for (const Rule& r : rules) compiled.push_back(compile(r));
        keep_relevant_predicates(compiled);
    }

    void saturate() {
        std::vector<std::size_t> prev_end(relations_.size(), 0);
        bool first = true;
        for (;;) {
            std::vector<std::size_t> end(relations_.size());
            for (std::size_t p = 0; p < relations_.size(); ++p) end[p] = relations_[p].size();
            if (!first && end == prev_end) break;

            pending_.clear();
            for (const CRule& rule : rules_) {
                if (first) {
                    std::vector<Range> ranges;
                    for (const CAtom& a : rule.pos) ranges.push_back({0, end[a.pred]});
                    join(rule, ranges, [&](const std::vector<SymId>& b) { derive(rule.head, b); });
                    continue;
                }
                for (std::size_t i = 0; i < rule.pos.size(); ++i) {
                    const PredId pi = rule.pos[i].pred;
                    if (prev_end[pi] == end[pi]) continue;
                    std::vector<Range> ranges;
                    for (std::size_t j = 0; j < rule.pos.size(); ++j) {
                        const PredId pj = rule.pos[j].pred;
                        if (j < i) ranges.push_back({0, prev_end[pj]});
                        else if (j == i) ranges.push_back({prev_end[pj], end[pj]});
                        else ranges.push_back({0, end[pj]});
                    }
                    join(rule, ranges, [&](const std::vector<SymId>& b) { derive(rule.head, b); });
                }
            }
            for (auto& [pred, tuple] : pending_) {
                if (relations_[pred].insert(tuple)) {
                    if (++interned_ > limits_.max_ground_atoms) throw ResourceLimitExceeded(limits_.max_ground_atoms);
                }
            }
            prev_end = std::move(end);
            first = false;
        }
    }

    std::vector<std::string> model_texts() const {
        std::vector<std::string> out;
        for (PredId p = 0; p < relations_.size(); ++p) {
            for (std::size_t i = 0; i < relations_[p].size(); ++i) out.push_back(text(make_key(p, i)));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    GroundProgram instantiate() const {
        std::vector<TempRule> ground;
        for (const CRule& rule : rules_) {
            std::vector<Range> ranges;
            for (const CAtom& a : rule.pos) ranges.push_back({0, relations_[a.pred].size()});
            join(rule, ranges, [&](const std::vector<SymId>& b) {
                TempRule tr;
                tr.head = *lookup(rule.head, b);
                for (const CAtom& a : rule.pos) tr.pos.push_back(*lookup(a, b));
                for (const CAtom& a : rule.neg) {
                    if (auto k = lookup(a, b)) tr.neg.push_back(*k);
                }
                ground.push_back(std::move(tr));
            });
        }

        // Atom-level relevance from the answer atoms.
        std::unordered_map<AtomKey, std::vector<std::size_t>> by_head;
        for (std::size_t i = 0; i < ground.size(); ++i) by_head[ground[i].head].push_back(i);

        std::vector<AtomKey> answers;
        for (std::size_t i = 0; i < relations_[answer_pred_].size(); ++i) answers.push_back(make_key(answer_pred_, i));
        std::vector<std::string> extra_texts;
        if (ground_query_ && answers.empty()) extra_texts.push_back(std::string(answer_predicate));

        std::unordered_set<AtomKey> seen(answers.begin(), answers.end());
        std::deque<AtomKey> queue(answers.begin(), answers.end());
        std::vector<std::size_t> kept;
        while (!queue.empty()) {
            const AtomKey a = queue.front();
            queue.pop_front();
            auto it = by_head.find(a);
            if (it == by_head.end()) continue;
            for (std::size_t ri : it->second) {
                kept.push_back(ri);
                for (const auto* body : {&ground[ri].pos, &ground[ri].neg}) {
                    for (AtomKey b : *body) {
                        if (seen.insert(b).second) queue.push_back(b);
                    }
                }
            }
        }

        std::map<AtomKey, std::string> texts;
        for (AtomKey k : seen) texts.emplace(k, text(k));
        std::vector<std::string> all = extra_texts;
        for (const auto& [k, t] : texts) all.push_back(t);

        GroundProgram gp;
        gp.atoms = AtomTable::from_texts(std::move(all));
        auto id_of = [&](AtomKey k) { return *gp.atoms.find(texts.at(k)); };
        for (std::size_t ri : kept) {
            const TempRule& tr = ground[ri];
            GroundRule g;
            g.head = id_of(tr.head);
            for (AtomKey k : tr.pos) g.pos.push_back(id_of(k));
            for (AtomKey k : tr.neg) g.neg.push_back(id_of(k));
            for (AtomSet* s : {&g.pos, &g.neg}) {
                std::sort(s->begin(), s->end());
                s->erase(std::unique(s->begin(), s->end()), s->end());
            }
            gp.rules.push_back(std::move(g));
        }
        std::sort(gp.rules.begin(), gp.rules.end());
        gp.rules.erase(std::unique(gp.rules.begin(), gp.rules.end()), gp.rules.end());

        for (AtomKey k : answers) gp.query_atoms.push_back(id_of(k));
        if (!extra_texts.empty()) gp.query_atoms.push_back(*gp.atoms.find(extra_texts.front()));
        std::sort(gp.query_atoms.begin(), gp.query_atoms.end());
        return gp;
    }

private:
    static void reject_reserved(const Program& program, const Query& query) {
        auto check = [](const Atom& a) {
            if (a.predicate.rfind("__", 0) == 0) throw InternalPredicateClash(a.predicate);
        };
        for (const Rule& r : program.rules) {
            check(r.head);
            for (const Literal& l : r.body) check(l.atom);
        }
        for (const Literal& l : query.literals) check(l.atom);
    }

    PredId pred_id(const std::string& name, std::size_t arity) {
        auto [it, fresh] = preds_.emplace(std::make_pair(name, arity), static_cast<PredId>(pred_names_.size()));
        if (fresh) {
            pred_names_.push_back(name);
            relations_.emplace_back(arity);
        }
        return it->second;
    }

    SymId sym_id(const std::string& text) {
        auto [it, fresh] = syms_.emplace(text, static_cast<SymId>(sym_names_.size()));
        if (fresh) sym_names_.push_back(text);
        return it->second;
    }

    CRule compile(const Rule& rule) {
        std::map<std::string, std::uint32_t> slots;
        auto compile_atom = [&](const Atom& a) {
            CAtom c;
            c.pred = pred_id(a.predicate, a.arity());
            for (const Term& t : a.args) {
                if (t.is_variable()) {
                    auto [it, fresh] = slots.emplace(t.text, static_cast<std::uint32_t>(slots.size()));
                    c.args.push_back({true, it->second});
                } else {
                    c.args.push_back({false, sym_id(t.text)});
                }
            }
            return c;
        };
        CRule c;
        // Positive literals first so every variable gets its slot from a binding occurrence.
        for (const Literal& l : rule.body) {
            if (!l.negated) c.pos.push_back(compile_atom(l.atom));
        }
        for (const Literal& l : rule.body) {
            if (l.negated) c.neg.push_back(compile_atom(l.atom));
        }
        c.head = compile_atom(rule.head);
        c.num_vars = slots.size();
        return c;
    }

    void keep_relevant_predicates(std::vector<CRule>& compiled) {
        std::vector<std::vector<PredId>> deps(pred_names_.size());
        for (const CRule& r : compiled) {
            for (const CAtom& a : r.pos) deps[r.head.pred].push_back(a.pred);
            for (const CAtom& a : r.neg) deps[r.head.pred].push_back(a.pred);
        }
        std::vector<bool> reach(pred_names_.size(), false);
        std::vector<PredId> stack{answer_pred_};
        reach[answer_pred_] = true;
        while (!stack.empty()) {
            PredId p = stack.back();
            stack.pop_back();
            for (PredId q : deps[p]) {
                if (!reach[q]) {
                    reach[q] = true;
                    stack.push_back(q);
                }
            }
        }
        for (CRule& r : compiled) {
            if (reach[r.head.pred]) rules_.push_back(std::move(r));
        }
    }

    template <class Emit>
    void join(const CRule& rule, const std::vector<Range>& ranges, Emit&& emit) const {
        std::vector<SymId> binding(rule.num_vars, unbound);
        join_from(rule, ranges, 0, binding, emit);
    }

    template <class Emit>
    void join_from(const CRule& rule, const std::vector<Range>& ranges, std::size_t at, std::vector<SymId>& binding,
                   Emit& emit) const {
        if (at == rule.pos.size()) {
            emit(binding);
            return;
        }
        const CAtom& lit = rule.pos[at];
        const Relation& rel = relations_[lit.pred];
        const Range range = ranges[at];
        if (range.lo >= range.hi) return;

        auto try_tuple = [&](std::size_t ti) {
            const Tuple& t = rel.tuple(ti);
            std::vector<std::uint32_t> newly;
            bool ok = true;
            for (std::size_t k = 0; k < lit.args.size() && ok; ++k) {
                const CTerm& a = lit.args[k];
                if (!a.is_var) {
                    ok = a.id == t[k];
                } else if (binding[a.id] == unbound) {
                    binding[a.id] = t[k];
                    newly.push_back(a.id);
                } else {
                    ok = binding[a.id] == t[k];
                }
            }
            if (ok) join_from(rule, ranges, at + 1, binding, emit);
            for (std::uint32_t v : newly) binding[v] = unbound;
        };

        // Use the column index of the first bound argument, if any.
        for (std::size_t k = 0; k < lit.args.size(); ++k) {
            const CTerm& a = lit.args[k];
            const SymId value = a.is_var ? binding[a.id] : a.id;
            if (value == unbound) continue;
            const auto* col = rel.column(k, value);
            if (!col) return;
            auto it = std::lower_bound(col->begin(), col->end(), range.lo);
            for (; it != col->end() && *it < range.hi; ++it) try_tuple(*it);
            return;
        }
        for (std::size_t ti = range.lo; ti < range.hi; ++ti) try_tuple(ti);
    }

    Tuple instantiate_args(const CAtom& a, const std::vector<SymId>& binding) const {
        Tuple t;
        t.reserve(a.args.size());
        for (const CTerm& c : a.args) t.push_back(c.is_var ? binding[c.id] : c.id);
        return t;
    }

    void derive(const CAtom& head, const std::vector<SymId>& binding) {
        Tuple t = instantiate_args(head, binding);
        if (!relations_[head.pred].find(t)) pending_.emplace_back(head.pred, std::move(t));
    }

    std::optional<AtomKey> lookup(const CAtom& a, const std::vector<SymId>& binding) const {
        auto idx = relations_[a.pred].find(instantiate_args(a, binding));
        if (!idx) return std::nullopt;
        return make_key(a.pred, *idx);
    }

    std::string text(AtomKey k) const {
        const PredId p = key_pred(k);
        const Tuple& t = relations_[p].tuple(key_index(k));
        std::string out = pred_names_[p];
        if (!t.empty()) {
            out += '(';
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) out += ',';
                out += sym_names_[t[i]];
            }
            out += ')';
        }
        return out;
    }

    ResourceLimits limits_;
    std::map<std::pair<std::string, std::size_t>, PredId> preds_;
    std::vector<std::string> pred_names_;
    std::vector<Relation> relations_;
    std::unordered_map<std::string, SymId> syms_;
    std::vector<std::string> sym_names_;
    std::vector<CRule> rules_;
    std::vector<std::pair<PredId, Tuple>> pending_;
    std::size_t interned_ = 0;
    PredId answer_pred_ = 0;
    bool ground_query_ = false;
};

} // namespace

GroundProgram relevant_ground(const Program& program, const Query& query, const ResourceLimits& limits) {
    Grounder g(program, query, limits);
    g.saturate();
    return g.instantiate();
}

std::vector<std::string> over_approximation(const Program& program, const Query& query,
                                            const ResourceLimits& limits) {
    Grounder g(program, query, limits);
    g.saturate();
    return g.model_texts();
}

} // namespace xnmr
