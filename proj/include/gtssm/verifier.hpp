#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtssm/group.hpp"
#include "gtssm/ssm.hpp"

namespace gtssm {

struct Counterexample {
    std::vector<elem_t> tokens;
    int step_index = 0;  // 1-based step at which the outputs diverged
    elem_t expected = 0;
    elem_t decoded = kDecodeMiss;  // kDecodeMiss marks a decode miss
};

struct TrackingReport {
    bool pass = true;
    long long sequences_checked = 0;
    std::optional<Counterexample> first_counterexample;
    double max_modulus_drift = 0.0;    // max | |coord|-1 | before quantization
    double max_decode_distance = 0.0;  // over successful decodes

    std::string to_json() const;
    std::string to_table() const;  // human-readable rendering
};

// Every token sequence of length <= max_len, enumerated by length then
// lexicographic token order (odometer), each checked at its final prefix —
// shorter prefixes are themselves enumerated sequences.  The first failure
// is therefore the minimal counterexample.
// Pre: |G|^max_len <= 10^8, otherwise BudgetExceededError.
TrackingReport verify_exhaustive(const DcdSsm& model, const FiniteGroup& g, int max_len);

// Largest max_len within verify_exhaustive's budget, capped at `want`.
int exhaustive_depth_within_budget(const FiniteGroup& g, int want);

// `count` sequences of length `len`; sequence i draws tokens from the
// SplitMix64 stream derived from (seed, i), checked at every prefix.
TrackingReport verify_random(const DcdSsm& model, const FiniteGroup& g, long count, int len,
                             std::uint64_t seed);

struct DriftProbe {
    double max_modulus_deviation = 0.0;
    double max_anchor_distance = 0.0;
};

// Runs forward over seq recording the per-step raw modulus deviation and
// the decoded state's distance to its nearest anchor.
DriftProbe drift_probe(const DcdSsm& model, const std::vector<elem_t>& seq);

struct DivergenceSummary {
    long alpha1 = 0;
    long alpha2 = 0;
    Cplx block_translation;               // displacement contributed per block
    std::vector<double> displacement;     // |x_k - x_0| after k blocks, k = 1..repeats
    long long projected_inf_step = 0;     // step count at which |x| would cross inf_threshold
};

// Builds the witness block for two neutral rotations about distinct centers,
// repeats it, and reports the (linearly growing) displacement plus the
// projected step at which the state magnitude crosses inf_threshold.
DivergenceSummary divergence_demo(Cplx lambda1, Cplx c1, Cplx lambda2, Cplx c2, int repeats,
                                  long bound = 720, double tol = 1e-9,
                                  double inf_threshold = 1e12);

}  // namespace gtssm
