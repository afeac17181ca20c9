#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtssm/affine.hpp"
#include "gtssm/common.hpp"

namespace gtssm {

/// The executable finite-precision regime.  Every state component is put
/// through: (1) magnitude guard — anything past inf_threshold pins to the
/// Inf sentinel and stays there; (2) optional projection back onto the unit
/// circle when the value sits near it but off the rounding grid;
/// (3) decimal rounding of re/im to round_digits digits.
struct FinitePrecisionConfig {
    int round_digits = 12;        // in [4, 15]
    bool renormalize_unit = true;
    double decode_tolerance = 1e-6;
    double inf_threshold = 1e12;

    void validate() const;
};

Cplx quantize(Cplx z, const FinitePrecisionConfig& cfg);
bool is_inf_state(Cplx z);

/// Tabular transitions for one diagonal layer.  Rows are context anchors —
/// the finite alphabet of quantized joint states of all previous layers —
/// and columns are input tokens.  Layer 1 has the single empty anchor.
struct LayerTable {
    int dim = 0;
    int context_arity = 0;                  // number of previous layers consumed
    std::vector<CVec> context_anchors;      // each of length sum of previous dims
    std::vector<std::vector<CVec>> lambda;  // [anchor][token] -> dim multipliers
    std::vector<std::vector<CVec>> b;       // [anchor][token] -> dim offsets

    int anchor_count() const { return static_cast<int>(context_anchors.size()); }
    int token_count() const { return lambda.empty() ? 0 : static_cast<int>(lambda[0].size()); }
};

/// Compiled multi-layer input-dependent complex diagonal SSM plus its
/// nearest-anchor state decoder.
struct DcdSsm {
    std::string group_spec;
    FinitePrecisionConfig precision;
    std::vector<LayerTable> layers;
    std::vector<CVec> h0;              // per layer, already quantized
    std::vector<CVec> decoder_anchors; // joint states (concatenated layers)
    std::vector<elem_t> decoder_elements;

    int layer_count() const { return static_cast<int>(layers.size()); }
    int token_count() const { return layers.empty() ? 0 : layers[0].token_count(); }
    int joint_dim() const;

    // Structural checks: consistent dims, finite entries, decoder anchors
    // pairwise separated by more than 2 * decode_tolerance.  Throws.
    void validate() const;
};

struct SsmState {
    std::vector<CVec> h;
    long step_counter = 0;
};

SsmState initial_state(const DcdSsm& model);

// Nearest context anchor within decode_tolerance; MissingTableEntryError
// when the state is not near any compiled anchor.
int quantize_context(const LayerTable& layer, const CVec& joint_prev,
                     const FinitePrecisionConfig& cfg);

struct StepDiag {
    double modulus_deviation = 0.0;  // max | |coord|-1 | before quantization
};

// One recurrence step.  Layer r reads the pre-update states of layers 1..r-1.
void advance(const DcdSsm& model, SsmState& state, elem_t token, StepDiag* diag = nullptr);
SsmState step(const DcdSsm& model, const SsmState& state, elem_t token);

// Nearest decoder anchor within decode_tolerance, else kDecodeMiss.
elem_t decode_state(const DcdSsm& model, const SsmState& state, double* distance = nullptr);
elem_t decode_joint(const DcdSsm& model, const CVec& joint, double* distance = nullptr);

// Sequential evaluation; a decode miss at step t shows up as kDecodeMiss in
// the output rather than an exception.
std::vector<elem_t> forward(const DcdSsm& model, const std::vector<elem_t>& seq);

// Parallel-scan evaluation: layer by layer, each layer's per-step affine
// maps are prefix-composed with a fixed reduction shape once the previous
// layers' states are materialized.  Decoded outputs match forward() exactly.
std::vector<elem_t> scan_forward(const DcdSsm& model, const std::vector<elem_t>& seq);

// Single affine map equal to stepping `coord` of `layer` through the given
// (context anchor, token) list in order.
AffineMap1D lift_sequence(const LayerTable& layer, int coord,
                          const std::vector<std::pair<int, elem_t>>& keys);

// In-place inclusive prefix composition with a fixed tree shape
// (Hillis-Steele), so results do not depend on any parallel split.
void prefix_compose(std::vector<AffineMap1D>& maps);

// BFS closure of the quantized dynamics from h0, all tokens, up to
// `horizon` steps.  States within decode_tolerance of a decoder anchor are
// identified with that anchor; others count by their raw quantized bits.
// Throws StateExplosionError past 10^6 states.
std::vector<CVec> reachable_states(const DcdSsm& model, int horizon);

// ---- serialization ----------------------------------------------------------

inline constexpr const char* kModelFormatVersion = "gtssm-model/1";

std::string model_to_json(const DcdSsm& model);
DcdSsm model_from_json(const std::string& text);
void save_model(const DcdSsm& model, const std::string& path);
DcdSsm load_model(const std::string& path);

}  // namespace gtssm
