#pragma once

#include <array>

#include "gtssm/group.hpp"
#include "gtssm/ssm.hpp"

namespace gtssm {

/// Hand-built realization of the two-automaton cascade for S3 and its
/// two-layer diagonal SSM equivalent.  Elements are indexed in the
/// classical table order [e,(12),(13),(23),(123),(132)], which pairs with
/// the generator words [e, s, sr2, sr, r, r2] for s=(12), r=(123).
struct S3Encoding {
    int alpha = 0;  // 0 or 1 swap exponent
    int beta = 0;   // 0, 1 or 2 rotation exponent
};

/// Cascade state held exactly: q1 = (-1)^q1_flips, q2 = exp(-2*pi*i*q2_exp/3).
/// Integer exponents keep the golden model free of floating point entirely.
struct CascadeState {
    int q1 = 1;      // +1 or -1
    int q2_exp = 0;  // 0, 1 or 2
    bool operator==(const CascadeState&) const = default;
};

S3Encoding encode_s3(elem_t g);
elem_t decode_s3(const S3Encoding& enc);

// Flip first, then rotate; the rotation direction follows the flipped q1.
CascadeState cascade_step(const CascadeState& state, const S3Encoding& enc);

// Throws when the state is not one of the six anchors (cannot happen for
// states produced by cascade_step).
elem_t cascade_decode(const CascadeState& state);

// The cascade run over a token sequence from the initial state, decoded
// after every step.
std::vector<elem_t> cascade_track(const std::vector<elem_t>& seq);

// Two-layer DCD SSM with the closed-form parameterization: layer 1 flips
// sign on swaps, layer 2 rotates by a cube root of unity whose direction
// is keyed on the (pre-update) layer-1 anchor.
DcdSsm analytic_model(const FinitePrecisionConfig& cfg = FinitePrecisionConfig{});

// Full 6x6 multiplication table recovered by running the cascade on every
// two-token sequence and decoding.
std::array<std::array<elem_t, 6>, 6> reproduce_cayley();

// The S3 group in the matching element order (same as symmetric_group(3)).
FiniteGroup s3_group();

}  // namespace gtssm
