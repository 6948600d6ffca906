#pragma once

// Well-founded model of a ground program and the residual program over its
// undefined atoms.

#include "xnmr/ground.hpp"

#include <span>

namespace xnmr {

enum class Truth { False, Undefined, True };

const char* to_string(Truth t) noexcept;

struct WfsResult {
    AtomSet true_set;
    AtomSet false_set;
    AtomSet undefined_set;

    /// Precondition: id belongs to one of the three sets.
    Truth truth(AtomId id) const;

    friend bool operator==(const WfsResult&, const WfsResult&) = default;
};

/// Simplified ground rules over exactly the undefined atoms of a WFS run.
/// Atom ids are renumbered densely in text order.
struct ResidualProgram {
    AtomTable atoms;
    std::vector<GroundRule> rules;

    bool empty() const noexcept { return atoms.empty() && rules.empty(); }

    friend bool operator==(const ResidualProgram&, const ResidualProgram&) = default;
};

/// Least model of the Gelfond-Lifschitz reduct of `rules` with respect to
/// `assumed`: rules with `not a`, a in assumed, are dropped; the remaining
/// negative literals are erased.
AtomSet gl_reduct_least_model(std::span<const GroundRule> rules, std::size_t atom_count, const AtomSet& assumed);
AtomSet gl_reduct_least_model(const GroundProgram& gp, const AtomSet& assumed);
AtomSet gl_reduct_least_model(const ResidualProgram& rp, const AtomSet& assumed);

/// Alternating fixpoint T(k+1) = G(G(T(k))) from the empty set.
WfsResult well_founded(const GroundProgram& gp);

/// The lower-bound sequence T(0) = {}, T(1), ..., T(k) = T(k+1) visited by well_founded.
std::vector<AtomSet> alternating_sequence(const GroundProgram& gp);

ResidualProgram extract_residual(const GroundProgram& gp, const WfsResult& w);

} // namespace xnmr
