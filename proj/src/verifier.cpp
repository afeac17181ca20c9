#include "gtssm/verifier.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "gtssm/rng.hpp"

namespace gtssm {

namespace {

using nlohmann::json;

json report_json(const TrackingReport& r) {
    json j;
    j["verdict"] = r.pass ? "pass" : "fail";
    j["sequences_checked"] = r.sequences_checked;
    j["max_modulus_drift"] = r.max_modulus_drift;
    j["max_decode_distance"] = r.max_decode_distance;
    if (r.first_counterexample) {
        const Counterexample& c = *r.first_counterexample;
        j["counterexample"] = {{"tokens", c.tokens},
                               {"step", c.step_index},
                               {"expected", c.expected},
                               {"decoded", c.decoded == kDecodeMiss ? json(nullptr) : json(c.decoded)}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

}  // namespace

std::string TrackingReport::to_json() const { return report_json(*this).dump(2); }

std::string TrackingReport::to_table() const {
    std::ostringstream out;
    out << "verdict              " << (pass ? "pass" : "fail") << "\n"
        << "sequences checked    " << sequences_checked << "\n"
        << "max modulus drift    " << max_modulus_drift << "\n"
        << "max decode distance  " << max_decode_distance << "\n";
    if (first_counterexample) {
        const Counterexample& c = *first_counterexample;
        out << "counterexample       step " << c.step_index << ", expected " << c.expected
            << ", decoded " << (c.decoded == kDecodeMiss ? std::string("<miss>") : std::to_string(c.decoded))
            << ", tokens [";
        for (size_t i = 0; i < c.tokens.size(); ++i) out << (i ? "," : "") << c.tokens[i];
        out << "]\n";
    }
    return out.str();
}

int exhaustive_depth_within_budget(const FiniteGroup& g, int want) {
    constexpr double kBudget = 1e8;
    int depth = 0;
    double pw = 1.0;
    while (depth < want) {
        pw *= g.order;
        if (pw > kBudget) break;
        ++depth;
    }
    return std::max(depth, 1);
}

TrackingReport verify_exhaustive(const DcdSsm& model, const FiniteGroup& g, int max_len) {
    if (max_len < 0) throw std::invalid_argument("verify_exhaustive: max_len >= 0");
    if (std::pow(static_cast<double>(g.order), static_cast<double>(max_len)) > 1e8)
        throw BudgetExceededError("|G|^max_len exceeds the 10^8 budget");

    TrackingReport rep;
    StepDiag diag;

    for (int len = 1; len <= max_len; ++len) {
        std::vector<elem_t> tokens(len, 0);
        std::vector<SsmState> states(len + 1, initial_state(model));
        std::vector<elem_t> oracle(len + 1, g.identity);
        int dirty = 0;
        for (;;) {
            for (int p = dirty; p < len; ++p) {
                states[p + 1] = states[p];
                try {
                    advance(model, states[p + 1], tokens[p], &diag);
                } catch (const MissingTableEntryError&) {
                    // the state escaped every compiled context anchor; that
                    // is a tracking failure, not a verifier crash
                    rep.pass = false;
                    rep.first_counterexample =
                        Counterexample{{tokens.begin(), tokens.begin() + p + 1}, p + 1,
                                       g.mul(oracle[p], tokens[p]), kDecodeMiss};
                    ++rep.sequences_checked;
                    return rep;
                }
                rep.max_modulus_drift = std::max(rep.max_modulus_drift, diag.modulus_deviation);
                oracle[p + 1] = g.mul(oracle[p], tokens[p]);
            }
            double dist = 0.0;
            const elem_t decoded = decode_state(model, states[len], &dist);
            if (decoded != kDecodeMiss)
                rep.max_decode_distance = std::max(rep.max_decode_distance, dist);
            ++rep.sequences_checked;
            if (decoded != oracle[len]) {
                rep.pass = false;
                rep.first_counterexample = Counterexample{tokens, len, oracle[len], decoded};
                return rep;
            }
            int p = len - 1;
            while (p >= 0 && tokens[p] + 1 == g.order) tokens[p--] = 0;
            if (p < 0) break;
            ++tokens[p];
            dirty = p;
        }
    }
    return rep;
}

TrackingReport verify_random(const DcdSsm& model, const FiniteGroup& g, long count, int len,
                             std::uint64_t seed) {
    TrackingReport rep;
    StepDiag diag;
    std::vector<elem_t> tokens(len);

    for (long i = 0; i < count; ++i) {
        SplitMix64 rng = derive_stream(seed, static_cast<std::uint64_t>(i));
        for (int t = 0; t < len; ++t)
            tokens[t] = static_cast<elem_t>(rng.next_below(static_cast<std::uint64_t>(g.order)));

        SsmState s = initial_state(model);
        elem_t expected = g.identity;
        for (int t = 0; t < len; ++t) {
            try {
                advance(model, s, tokens[t], &diag);
            } catch (const MissingTableEntryError&) {
                rep.pass = false;
                rep.first_counterexample =
                    Counterexample{{tokens.begin(), tokens.begin() + t + 1}, t + 1,
                                   g.mul(expected, tokens[t]), kDecodeMiss};
                ++rep.sequences_checked;
                return rep;
            }
            rep.max_modulus_drift = std::max(rep.max_modulus_drift, diag.modulus_deviation);
            expected = g.mul(expected, tokens[t]);
            double dist = 0.0;
            const elem_t decoded = decode_state(model, s, &dist);
            if (decoded != kDecodeMiss)
                rep.max_decode_distance = std::max(rep.max_decode_distance, dist);
            if (decoded != expected) {
                rep.pass = false;
                rep.first_counterexample = Counterexample{tokens, t + 1, expected, decoded};
                ++rep.sequences_checked;
                return rep;
            }
        }
        ++rep.sequences_checked;
    }
    return rep;
}

DriftProbe drift_probe(const DcdSsm& model, const std::vector<elem_t>& seq) {
    DriftProbe probe;
    SsmState s = initial_state(model);
    StepDiag diag;
    for (elem_t x : seq) {
        advance(model, s, x, &diag);
        probe.max_modulus_deviation = std::max(probe.max_modulus_deviation, diag.modulus_deviation);
        double dist = 0.0;
        decode_state(model, s, &dist);
        probe.max_anchor_distance = std::max(probe.max_anchor_distance, dist);
    }
    return probe;
}

DivergenceSummary divergence_demo(Cplx lambda1, Cplx c1, Cplx lambda2, Cplx c2, int repeats,
                                  long bound, double tol, double inf_threshold) {
    const AffineMap1D m1 = AffineMap1D::rotation_about(lambda1, c1);
    const AffineMap1D m2 = AffineMap1D::rotation_about(lambda2, c2);
    if (c1 == c2) throw DegenerateCentersError("divergence_demo: equal centers");

    const auto witness = divergence_witness(m1, m2, bound, tol);
    if (!witness) throw GtssmError("divergence_demo: no witness within bound/tolerance");

    DivergenceSummary out;
    out.alpha1 = witness->alpha1;
    out.alpha2 = witness->alpha2;

    AffineMap1D block = AffineMap1D::identity();
    for (long i = 0; i < witness->alpha1; ++i) block = compose(block, m1);
    for (long i = 0; i < witness->alpha2; ++i) block = compose(block, m2);
    out.block_translation = block.b;

    const Cplx x0 = c1;
    Cplx x = x0;
    out.displacement.reserve(repeats);
    for (int k = 0; k < repeats; ++k) {
        x = block.apply(x);
        out.displacement.push_back(std::abs(x - x0));
    }

    const double per_block = std::abs(out.block_translation);
    const long long block_len = witness->alpha1 + witness->alpha2;
    if (per_block > 0.0) {
        const double blocks_needed = std::ceil((inf_threshold - std::abs(x0)) / per_block);
        out.projected_inf_step = static_cast<long long>(blocks_needed) * block_len;
    }
    return out;
}

}  // namespace gtssm
