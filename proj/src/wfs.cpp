#include "xnmr/wfs.hpp"

#include <algorithm>

namespace xnmr {

const char* to_string(Truth t) noexcept {
    switch (t) {
        case Truth::True:      return "true";
        case Truth::False:     return "false";
        case Truth::Undefined: return "undefined";
    }
    return "undefined";
}

Truth WfsResult::truth(AtomId id) const {
    if (std::binary_search(true_set.begin(), true_set.end(), id)) return Truth::True;
    if (std::binary_search(false_set.begin(), false_set.end(), id)) return Truth::False;
    return Truth::Undefined;
}

namespace {

using Bits = std::vector<char>;

Bits to_bits(const AtomSet& s, std::size_t n) {
    Bits b(n + 1, 0);
    for (AtomId a : s) b[a] = 1;
    return b;
}

AtomSet to_set(const Bits& b) {
    AtomSet s;
    for (std::size_t i = 1; i < b.size(); ++i) {
        if (b[i]) s.push_back(static_cast<AtomId>(i));
    }
    return s;
}

// Counter-based least model of the reduct; watch lists are built once and
// reused across the alternating fixpoint.
class ReductEvaluator {
public:
    ReductEvaluator(std::span<const GroundRule> rules, std::size_t atom_count)
        : rules_(rules), n_(atom_count), watches_(atom_count + 1) {
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            for (AtomId a : rules_[r].pos) watches_[a].push_back(r);
        }
    }

    Bits least_model(const Bits& assumed) const {
        Bits model(n_ + 1, 0);
        std::vector<std::size_t> missing(rules_.size(), 0);
        std::vector<AtomId> queue;
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            const GroundRule& rule = rules_[r];
            const bool blocked = std::any_of(rule.neg.begin(), rule.neg.end(), [&](AtomId a) { return assumed[a]; });
            if (blocked) {
                missing[r] = static_cast<std::size_t>(-1);
                continue;
            }
            missing[r] = rule.pos.size();
            if (missing[r] == 0 && !model[rule.head]) {
                model[rule.head] = 1;
                queue.push_back(rule.head);
            }
        }
        while (!queue.empty()) {
            const AtomId a = queue.back();
            queue.pop_back();
            for (std::size_t r : watches_[a]) {
                if (missing[r] == static_cast<std::size_t>(-1)) continue;
                if (--missing[r] == 0 && !model[rules_[r].head]) {
                    model[rules_[r].head] = 1;
                    queue.push_back(rules_[r].head);
                }
            }
        }
        return model;
    }

private:
    std::span<const GroundRule> rules_;
    std::size_t n_;
    std::vector<std::vector<std::size_t>> watches_;
};

} // namespace

AtomSet gl_reduct_least_model(std::span<const GroundRule> rules, std::size_t atom_count, const AtomSet& assumed) {
    return to_set(ReductEvaluator(rules, atom_count).least_model(to_bits(assumed, atom_count)));
}

AtomSet gl_reduct_least_model(const GroundProgram& gp, const AtomSet& assumed) {
    return gl_reduct_least_model(gp.rules, gp.atoms.size(), assumed);
}

AtomSet gl_reduct_least_model(const ResidualProgram& rp, const AtomSet& assumed) {
    return gl_reduct_least_model(rp.rules, rp.atoms.size(), assumed);
}

namespace {

WfsResult alternate(const GroundProgram& gp, std::vector<AtomSet>* trace) {
    const std::size_t n = gp.atoms.size();
    const ReductEvaluator gamma(gp.rules, n);
    Bits lower(n + 1, 0);
    Bits upper;
    for (;;) {
        if (trace) trace->push_back(to_set(lower));
        upper = gamma.least_model(lower);
        Bits next = gamma.least_model(upper);
        if (next == lower) break;
        lower = std::move(next);
    }
    if (trace) trace->push_back(to_set(lower));

    WfsResult w;
    for (std::size_t a = 1; a <= n; ++a) {
        const auto id = static_cast<AtomId>(a);
        if (lower[a]) w.true_set.push_back(id);
        else if (upper[a]) w.undefined_set.push_back(id);
        else w.false_set.push_back(id);
    }
    return w;
}

} // namespace

WfsResult well_founded(const GroundProgram& gp) { return alternate(gp, nullptr); }

std::vector<AtomSet> alternating_sequence(const GroundProgram& gp) {
    std::vector<AtomSet> trace;
    alternate(gp, &trace);
    return trace;
}

ResidualProgram extract_residual(const GroundProgram& gp, const WfsResult& w) {
    const std::size_t n = gp.atoms.size();
    std::vector<Truth> label(n + 1, Truth::False);
    for (AtomId a : w.true_set) label[a] = Truth::True;
    for (AtomId a : w.undefined_set) label[a] = Truth::Undefined;

    // Source ids are already in text order, so renumbering preserves it.
    std::vector<AtomId> renumber(n + 1, 0);
    std::vector<std::string> texts;
    for (AtomId a : w.undefined_set) {
        texts.push_back(gp.atoms.text(a));
        renumber[a] = static_cast<AtomId>(texts.size());
    }

    ResidualProgram rp;
    rp.atoms = AtomTable::from_texts(std::move(texts));
    for (const GroundRule& rule : gp.rules) {
        if (label[rule.head] != Truth::Undefined) continue;
        const bool dead =
            std::any_of(rule.pos.begin(), rule.pos.end(), [&](AtomId a) { return label[a] == Truth::False; }) ||
            std::any_of(rule.neg.begin(), rule.neg.end(), [&](AtomId a) { return label[a] == Truth::True; });
        if (dead) continue;
        GroundRule r;
        r.head = renumber[rule.head];
        for (AtomId a : rule.pos) {
            if (label[a] == Truth::Undefined) r.pos.push_back(renumber[a]);
        }
        for (AtomId a : rule.neg) {
            if (label[a] == Truth::Undefined) r.neg.push_back(renumber[a]);
        }
        rp.rules.push_back(std::move(r));
    }
    std::sort(rp.rules.begin(), rp.rules.end());
    rp.rules.erase(std::unique(rp.rules.begin(), rp.rules.end()), rp.rules.end());
    return rp;
}

} // namespace xnmr
