#pragma once

#include "gtssm/group.hpp"
#include "gtssm/ssm.hpp"

namespace gtssm {

/// Section and cocycle data for a normal subgroup N of G: a deterministic
/// section s of the quotient map, the N-valued correction d with
/// s(h')s(h) = d(h',h) s(h'h), and the effective-token table
/// kappa(h', g) = d(h', h) * (s(h'h) n s(h'h)^{-1}) for g = s(h) n.
/// All entries live in N; identity rows are e.
struct SectionCocycle {
    QuotientMap quotient_map;
    std::vector<std::vector<elem_t>> d;      // [h'][h] -> element of N (G indices)
    std::vector<std::vector<elem_t>> kappa;  // [h'][g] -> element of N (G indices)
};

SectionCocycle build_section_cocycle(const FiniteGroup& g, const SubgroupMask& n);

/// Single-layer model for an Abelian group: coordinate j of token g rotates
/// by the (m_j/k_j)-th root of unity given by the group's invariant-factor
/// decomposition; b = 0, h0 = all-ones, decoder maps each root-of-unity
/// tuple back to its element.
DcdSsm compile_abelian(const FiniteGroup& g,
                       const FinitePrecisionConfig& cfg = FinitePrecisionConfig{});

/// Multi-layer model over the group's derived series (layer count =
/// derived length).  Throws NotSolvableError, carrying the stabilized
/// perfect subgroup, when the series never reaches {e}.
DcdSsm compile_group(const FiniteGroup& g,
                     const FinitePrecisionConfig& cfg = FinitePrecisionConfig{});

/// Like compile_group but honoring a caller-provided subnormal series with
/// Abelian factors (possibly longer than minimal).  Layer 1 tracks the top
/// factor; deeper layers run the recursively re-keyed model of the next
/// subgroup, with effective tokens kappa(layer-1 anchor, token).
DcdSsm compile_with_series(const FiniteGroup& g, const SubnormalSeries& series,
                           const FinitePrecisionConfig& cfg = FinitePrecisionConfig{});

}  // namespace gtssm
