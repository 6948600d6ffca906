#pragma once

// Stable-model enumeration for residual programs: propagation (forward
// truth, dead-rule falsification, unfounded sets) plus chronological
// backtracking, with a final reduct check on every total assignment.

#include "xnmr/wfs.hpp"

#include <cstdint>
#include <optional>

namespace xnmr {

enum class Value : std::uint8_t { Unknown, True, False };

/// Partial three-valued assignment over atoms 1..n with a leveled trail.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t atom_count);

    std::size_t atom_count() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
    Value value(AtomId a) const { return static_cast<Value>(values_[a]); }
    bool is_true(AtomId a) const { return value(a) == Value::True; }
    bool is_false(AtomId a) const { return value(a) == Value::False; }
    bool is_unknown(AtomId a) const { return value(a) == Value::Unknown; }

    /// Returns false when `a` already holds the opposite value.
    bool assign(AtomId a, Value v);

    std::size_t level() const noexcept { return level_starts_.size(); }
    void push_level() { level_starts_.push_back(trail_.size()); }
    /// Unassigns everything recorded since the matching push_level.
    void pop_level();

    const std::vector<AtomId>& trail() const noexcept { return trail_; }
    bool total() const noexcept { return trail_.size() == atom_count(); }
    AtomSet true_atoms() const;

private:
    std::vector<std::uint8_t> values_;
    std::vector<AtomId> trail_;
    std::vector<std::size_t> level_starts_;
};

struct StableModel {
    AtomSet true_atoms;

    friend auto operator<=>(const StableModel&, const StableModel&) = default;
    friend bool operator==(const StableModel&, const StableModel&) = default;
};

/// Deterministic propagation fixpoint. Returns std::nullopt on conflict.
std::optional<Assignment> expand(const ResidualProgram& rp, Assignment a);

/// True iff the reduct least model of rp w.r.t. candidate equals candidate.
bool is_stable_model(const ResidualProgram& rp, const AtomSet& candidate);

/// Resumable enumeration. The program must outlive the enumerator.
class StableEnumerator {
public:
    explicit StableEnumerator(const ResidualProgram& rp);

    /// Next model in discovery order, or std::nullopt once the search space is exhausted.
    std::optional<StableModel> next();

    std::size_t decisions() const noexcept { return decision_count_; }
    std::size_t conflicts() const noexcept { return conflict_count_; }

private:
    struct Decision {
        AtomId atom;
        bool flipped;
    };

    bool backtrack();
    AtomId choose() const;

    const ResidualProgram* rp_;
    std::vector<std::size_t> occurrences_;
    Assignment assign_;
    std::vector<Decision> stack_;
    bool resume_ = false;
    bool exhausted_ = false;
    std::size_t decision_count_ = 0;
    std::size_t conflict_count_ = 0;
};

/// Up to max_models models in discovery order (all when max_models is empty).
std::vector<StableModel> enumerate_stable(const ResidualProgram& rp,
                                          std::optional<std::size_t> max_models = std::nullopt);

} // namespace xnmr
