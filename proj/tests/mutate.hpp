#pragma once

// Test-only helpers that corrupt a model in controlled ways, used to show
// the verifier actually has teeth.

#include "gtssm/rng.hpp"
#include "gtssm/ssm.hpp"

namespace gtssm::testsupport {

// Negates one lambda entry chosen by the rng.
inline void negate_random_lambda(DcdSsm& m, SplitMix64& rng) {
    const size_t r = rng.next_below(m.layers.size());
    LayerTable& l = m.layers[r];
    const size_t a = rng.next_below(l.context_anchors.size());
    const size_t t = rng.next_below(l.lambda[a].size());
    const size_t j = rng.next_below(l.lambda[a][t].size());
    l.lambda[a][t][j] = -l.lambda[a][t][j];
}

// Moves one decoder anchor by 3 * decode_tolerance in a random direction.
inline void perturb_random_anchor(DcdSsm& m, SplitMix64& rng) {
    const size_t i = rng.next_below(m.decoder_anchors.size());
    const size_t j = rng.next_below(m.decoder_anchors[i].size());
    const double ang = 6.283185307179586 * rng.next_unit();
    const double step = 3.0 * m.precision.decode_tolerance;
    m.decoder_anchors[i][j] += Cplx{step * std::cos(ang), step * std::sin(ang)};
}

}  // namespace gtssm::testsupport
