#include "xnmr/oracle.hpp"

#include "xnmr/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace xnmr::oracle {
namespace {

using Mask = std::uint32_t;

struct MaskRule {
    Mask head;
    Mask pos;
    Mask neg;
};

std::vector<MaskRule> to_masks(std::span<const GroundRule> rules) {
    std::vector<MaskRule> out;
    for (const GroundRule& r : rules) {
        MaskRule m{Mask{1} << (r.head - 1), 0, 0};
        for (AtomId a : r.pos) m.pos |= Mask{1} << (a - 1);
        for (AtomId a : r.neg) m.neg |= Mask{1} << (a - 1);
        out.push_back(m);
    }
    return out;
}

// Repeated full passes until nothing changes.
Mask reduct_least_model(const std::vector<MaskRule>& rules, Mask assumed) {
    Mask model = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (const MaskRule& r : rules) {
            if ((r.neg & assumed) != 0) continue;
            if ((r.pos & model) != r.pos) continue;
            if ((model & r.head) == 0) {
                model |= r.head;
                changed = true;
            }
        }
    }
    return model;
}

AtomSet to_set(Mask m, std::size_t n) {
    AtomSet s;
    for (std::size_t i = 0; i < n; ++i) {
        if (m & (Mask{1} << i)) s.push_back(static_cast<AtomId>(i + 1));
    }
    return s;
}

void check_bound(std::size_t n) {
    if (n > max_atoms) throw OracleTooLarge(n, max_atoms);
}

bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

std::vector<StableModel> stable_subsets(std::span<const GroundRule> rules, std::size_t n) {
    check_bound(n);
    const auto masks = to_masks(rules);
    std::vector<StableModel> out;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        if (reduct_least_model(masks, s) == s) out.push_back({to_set(s, n)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

WfsResult brute_force_wfs(const GroundProgram& gp) {
    const std::size_t n = gp.atoms.size();
    check_bound(n);
    const auto masks = to_masks(gp.rules);
    auto gamma = [&](Mask s) { return reduct_least_model(masks, s); };

    std::vector<Mask> fixpoints;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        if (gamma(gamma(s)) == s) fixpoints.push_back(s);
    }
    // G is antimonotone, so G(G(.)) is monotone and has a least and greatest fixpoint.
    auto least = std::find_if(fixpoints.begin(), fixpoints.end(), [&](Mask c) {
        return std::all_of(fixpoints.begin(), fixpoints.end(), [&](Mask f) { return subset(c, f); });
    });
    auto greatest = std::find_if(fixpoints.begin(), fixpoints.end(), [&](Mask c) {
        return std::all_of(fixpoints.begin(), fixpoints.end(), [&](Mask f) { return subset(f, c); });
    });
    if (least == fixpoints.end() || greatest == fixpoints.end()) {
        throw std::logic_error("brute_force_wfs: no least/greatest fixpoint");
    }
    if (gamma(*least) != *greatest || gamma(*greatest) != *least) {
        throw std::logic_error("brute_force_wfs: extreme fixpoints are not G-duals");
    }
    const Mask all = n == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << n) - 1);
    return WfsResult{to_set(*least, n), to_set(all & ~*greatest, n), to_set(*greatest & ~*least, n)};
}

std::vector<StableModel> brute_force_stable(const ResidualProgram& rp) {
    return stable_subsets(rp.rules, rp.atoms.size());
}

std::vector<StableModel> brute_force_stable(const GroundProgram& gp) {
    return stable_subsets(gp.rules, gp.atoms.size());
}

} // namespace xnmr::oracle
