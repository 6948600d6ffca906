#pragma once

// XGF: canonical text interchange for ground and residual programs.
//
//   xgf 1
//   a <id> <atom-text>                          one per atom, ids 1..n ascending
//   r <head> <npos> <nneg> <pos ids> <neg ids>  one per rule, canonical order
//   e
//
// ASCII, LF line endings, single spaces, no comments or blank lines.

#include "xnmr/wfs.hpp"

#include <string>
#include <string_view>

namespace xnmr {

inline constexpr int xgf_version = 1;

std::string emit_xgf(const ResidualProgram& rp);
std::string emit_xgf(const GroundProgram& gp);
std::string emit_xgf(const AtomTable& atoms, std::span<const GroundRule> rules);

/// Strict canonical reader. Throws FormatError on any deviation.
ResidualProgram parse_xgf(std::string_view text);

} // namespace xnmr
