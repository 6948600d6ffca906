#include "xnmr/stable.hpp"

#include <algorithm>

namespace xnmr {

Assignment::Assignment(std::size_t atom_count) : values_(atom_count + 1, 0) {}

bool Assignment::assign(AtomId a, Value v) {
    const Value cur = value(a);
    if (cur == v) return true;
    if (cur != Value::Unknown) return false;
    values_[a] = static_cast<std::uint8_t>(v);
    trail_.push_back(a);
    return true;
}

void Assignment::pop_level() {
    const std::size_t start = level_starts_.back();
    level_starts_.pop_back();
    while (trail_.size() > start) {
        values_[trail_.back()] = 0;
        trail_.pop_back();
    }
}

AtomSet Assignment::true_atoms() const {
    AtomSet s;
    for (std::size_t a = 1; a < values_.size(); ++a) {
        if (values_[a] == static_cast<std::uint8_t>(Value::True)) s.push_back(static_cast<AtomId>(a));
    }
    return s;
}

namespace {

class Propagator {
public:
    explicit Propagator(const ResidualProgram& rp)
        : rules_(rp.rules), n_(rp.atoms.size()), watches_(n_ + 1), neg_watches_(n_ + 1) {
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            for (AtomId a : rules_[r].pos) watches_[a].push_back(r);
            for (AtomId a : rules_[r].neg) neg_watches_[a].push_back(r);
        }
    }

    // Returns false on conflict. Forward and dead-rule inferences are driven
    // by per-rule counters; the unfounded-set check runs once they settle.
    bool run(Assignment& a) const {
        Counters c;
        c.pending.resize(rules_.size());
        c.dead.assign(rules_.size(), 0);
        c.live.assign(n_ + 1, 0);
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            c.pending[r] = rules_[r].pos.size() + rules_[r].neg.size();
            ++c.live[rules_[r].head];
        }
        // Seed with rules already decided before any assignment is seen.
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            if (c.pending[r] == 0 && !a.assign(rules_[r].head, Value::True)) return false;
        }
        for (AtomId x = 1; x <= n_; ++x) {
            if (c.live[x] == 0 && !a.assign(x, Value::False)) return false;
        }
        std::size_t seen = 0;
        for (;;) {
            while (seen < a.trail().size()) {
                if (!notice(a, c, a.trail()[seen++])) return false;
            }
            if (!unfounded(a)) return false;
            if (seen == a.trail().size()) return true;
        }
    }

private:
    struct Counters {
        std::vector<std::size_t> pending;  // body literals not yet satisfied
        std::vector<char> dead;            // body contains a false literal
        std::vector<std::size_t> live;     // rules per head that are not dead
    };

    bool kill(Assignment& a, Counters& c, std::size_t r) const {
        if (c.dead[r]) return true;
        c.dead[r] = 1;
        const AtomId h = rules_[r].head;
        return --c.live[h] != 0 || a.assign(h, Value::False);
    }

    bool satisfy(Assignment& a, Counters& c, std::size_t r) const {
        return --c.pending[r] != 0 || a.assign(rules_[r].head, Value::True);
    }

    bool notice(Assignment& a, Counters& c, AtomId x) const {
        const bool t = a.is_true(x);
        for (std::size_t r : watches_[x]) {
            if (!(t ? satisfy(a, c, r) : kill(a, c, r))) return false;
        }
        for (std::size_t r : neg_watches_[x]) {
            if (!(t ? kill(a, c, r) : satisfy(a, c, r))) return false;
        }
        return true;
    }

    bool body_false(const GroundRule& r, const Assignment& a) const {
        return std::any_of(r.pos.begin(), r.pos.end(), [&](AtomId x) { return a.is_false(x); }) ||
               std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId x) { return a.is_true(x); });
    }

    // Greatest unfounded set: atoms without a non-circular derivation through
    // rules whose bodies are not already false.
    bool unfounded(Assignment& a) const {
        std::vector<char> founded(n_ + 1, 0);
        std::vector<std::size_t> missing(rules_.size(), 0);
        std::vector<AtomId> queue;
        constexpr auto disabled = static_cast<std::size_t>(-1);
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            const GroundRule& rule = rules_[r];
            if (a.is_false(rule.head) || body_false(rule, a)) {
                missing[r] = disabled;
                continue;
            }
            missing[r] = rule.pos.size();
            if (missing[r] == 0 && !founded[rule.head]) {
                founded[rule.head] = 1;
                queue.push_back(rule.head);
            }
        }
        while (!queue.empty()) {
            const AtomId x = queue.back();
            queue.pop_back();
            for (std::size_t r : watches_[x]) {
                if (missing[r] == disabled) continue;
                if (--missing[r] == 0 && !founded[rules_[r].head]) {
                    founded[rules_[r].head] = 1;
                    queue.push_back(rules_[r].head);
                }
            }
        }
        for (AtomId x = 1; x <= n_; ++x) {
            if (!founded[x] && !a.assign(x, Value::False)) return false;
        }
        return true;
    }

    const std::vector<GroundRule>& rules_;
    std::size_t n_;
    std::vector<std::vector<std::size_t>> watches_;
    std::vector<std::vector<std::size_t>> neg_watches_;
};

} // namespace

std::optional<Assignment> expand(const ResidualProgram& rp, Assignment a) {
    if (!Propagator(rp).run(a)) return std::nullopt;
    return a;
}

bool is_stable_model(const ResidualProgram& rp, const AtomSet& candidate) {
    return gl_reduct_least_model(rp, candidate) == candidate;
}

StableEnumerator::StableEnumerator(const ResidualProgram& rp)
    : rp_(&rp), occurrences_(rp.atoms.size() + 1, 0), assign_(rp.atoms.size()) {
    for (const GroundRule& r : rp.rules) {
        AtomSet body = r.pos;
        body.insert(body.end(), r.neg.begin(), r.neg.end());
        std::sort(body.begin(), body.end());
        body.erase(std::unique(body.begin(), body.end()), body.end());
        for (AtomId a : body) ++occurrences_[a];
    }
}

AtomId StableEnumerator::choose() const {
    AtomId best = 0;
    for (AtomId a = 1; a < occurrences_.size(); ++a) {
        if (!assign_.is_unknown(a)) continue;
        if (best == 0 || occurrences_[a] > occurrences_[best]) best = a;
    }
    return best;
}

bool StableEnumerator::backtrack() {
    while (!stack_.empty()) {
        Decision& top = stack_.back();
        assign_.pop_level();
        if (!top.flipped) {
            top.flipped = true;
            assign_.push_level();
            assign_.assign(top.atom, Value::False);
            return true;
        }
        stack_.pop_back();
    }
    return false;
}

std::optional<StableModel> StableEnumerator::next() {
    const Propagator prop(*rp_);
    while (!exhausted_) {
        if (resume_) {
            resume_ = false;
            if (!backtrack()) {
                exhausted_ = true;
                break;
            }
        }
        if (!prop.run(assign_)) {
            ++conflict_count_;
            resume_ = true;
            continue;
        }
        if (assign_.total()) {
            resume_ = true;
            AtomSet candidate = assign_.true_atoms();
            if (is_stable_model(*rp_, candidate)) return StableModel{std::move(candidate)};
            continue;
        }
        const AtomId atom = choose();
        ++decision_count_;
        stack_.push_back({atom, false});
        assign_.push_level();
        assign_.assign(atom, Value::True);
    }
    return std::nullopt;
}

std::vector<StableModel> enumerate_stable(const ResidualProgram& rp, std::optional<std::size_t> max_models) {
    std::vector<StableModel> models;
    StableEnumerator search(rp);
    while (!max_models || models.size() < *max_models) {
        auto m = search.next();
        if (!m) break;
        models.push_back(std::move(*m));
    }
    return models;
}

} // namespace xnmr
