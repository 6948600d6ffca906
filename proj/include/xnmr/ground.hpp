#pragma once

// Query-relevant grounding of function-free normal programs.

#include "xnmr/syntax.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace xnmr {

/// Ground atom identifier, dense from 1 within one AtomTable.
using AtomId = std::uint32_t;

/// Sorted, duplicate-free set of atom ids.
using AtomSet = std::vector<AtomId>;

/// Bidirectional map between canonical ground-atom text and ids. Ids follow
/// the ascending byte-wise order of the texts.
class AtomTable {
public:
    AtomTable() = default;

    /// Sorts and deduplicates the texts, then numbers them from 1.
    static AtomTable from_texts(std::vector<std::string> texts);

    std::size_t size() const noexcept { return texts_.size(); }
    bool empty() const noexcept { return texts_.empty(); }
    bool contains(AtomId id) const noexcept { return id >= 1 && id <= texts_.size(); }

    /// Precondition: contains(id).
    const std::string& text(AtomId id) const { return texts_[id - 1]; }
    std::optional<AtomId> find(std::string_view text) const;

    const std::vector<std::string>& texts() const noexcept { return texts_; }

    friend bool operator==(const AtomTable& a, const AtomTable& b) { return a.texts_ == b.texts_; }

private:
    std::vector<std::string> texts_;
    std::unordered_map<std::string, AtomId> ids_;
};

struct GroundRule {
    AtomId head = 0;
    AtomSet pos;
    AtomSet neg;

    friend auto operator<=>(const GroundRule&, const GroundRule&) = default;
    friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

struct GroundProgram {
    AtomTable atoms;
    // Sorted by (head, pos, neg), no duplicates.
    std::vector<GroundRule> rules;
    // Ids of the instantiated `__ans` atoms.
    AtomSet query_atoms;

    friend bool operator==(const GroundProgram&, const GroundProgram&) = default;
};

struct ResourceLimits {
    std::size_t max_ground_atoms = 1'000'000;
};

/// Name of the internal predicate that carries query answers.
inline constexpr std::string_view answer_predicate = "__ans";

/// Compiles the query into the rule `__ans(V1..Vk) :- query` where V1..Vk are
/// the query variables in first-occurrence order.
Rule answer_rule(const Query& query);

/// Ground subprogram relevant to the query:
///   1. keep rules whose head predicate is reachable from the query's
///      predicates in the predicate dependency graph;
///   2. instantiate over the least model of the positive projection, deleting
///      negative literals whose atom lies outside that model;
///   3. keep ground rules whose head is reachable from the answer atoms.
/// Throws InternalPredicateClash or ResourceLimitExceeded.
GroundProgram relevant_ground(const Program& program, const Query& query, const ResourceLimits& limits = {});

/// Canonical texts (sorted) of the positive over-approximation computed in
/// phase 2 of relevant_ground, over the predicate-relevant rules.
std::vector<std::string> over_approximation(const Program& program, const Query& query,
                                            const ResourceLimits& limits = {});

/// Renders a ground rule with atom texts, e.g. `p :- q, not r.`
std::string to_string(const GroundRule& rule, const AtomTable& atoms);

} // namespace xnmr
