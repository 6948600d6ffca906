#pragma once

// Exhaustive reference implementations used to cross-check the engine on
// small programs. They share no code with the fixpoint or search routines.

#include "xnmr/stable.hpp"

namespace xnmr::oracle {

inline constexpr std::size_t max_atoms = 20;

/// Enumerates every fixpoint of G(G(.)), checks that the least and greatest
/// ones bracket all others and are mapped onto each other by G, and returns
/// the induced partition. Throws OracleTooLarge above max_atoms.
WfsResult brute_force_wfs(const GroundProgram& gp);

/// Every subset that equals its own reduct least model, in lexicographic
/// order of the sorted id lists. Throws OracleTooLarge above max_atoms.
std::vector<StableModel> brute_force_stable(const ResidualProgram& rp);
std::vector<StableModel> brute_force_stable(const GroundProgram& gp);

} // namespace xnmr::oracle
