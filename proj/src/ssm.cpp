#include "gtssm/ssm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <unordered_set>

namespace gtssm {

void FinitePrecisionConfig::validate() const {
    if (round_digits < 4 || round_digits > 15)
        throw std::invalid_argument("round_digits must be in [4, 15]");
    if (decode_tolerance < 0) throw std::invalid_argument("decode_tolerance must be >= 0");
    if (inf_threshold <= 0) throw std::invalid_argument("inf_threshold must be positive");
}

namespace {

double round_component(double x, double scale) {
    // Past 2^53/scale the FP lattice is already coarser than the decimal
    // grid; rounding there would not be stable, so it is a no-op.
    if (std::abs(x) * scale >= 9007199254740992.0) return x;
    // normalize -0.0 so equal values share one bit pattern
    return std::round(x * scale) / scale + 0.0;
}

double pow10_table(int d) {
    static const double t[16] = {1e0, 1e1, 1e2,  1e3,  1e4,  1e5,  1e6,  1e7,
                                 1e8, 1e9, 1e10, 1e11, 1e12, 1e13, 1e14, 1e15};
    return t[d];
}

// Band around the unit circle inside which renormalization applies.
constexpr double kUnitBand = 1e-6;

double dist2(const CVec& a, const CVec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double dr = a[i].real() - b[i].real();
        const double di = a[i].imag() - b[i].imag();
        s += dr * dr + di * di;
    }
    return s;
}

}  // namespace

bool is_inf_state(Cplx z) {
    return std::isinf(z.real()) || std::isinf(z.imag()) || std::isnan(z.real()) ||
           std::isnan(z.imag());
}

Cplx quantize(Cplx z, const FinitePrecisionConfig& cfg) {
    if (is_inf_state(z) || std::abs(z.real()) > cfg.inf_threshold ||
        std::abs(z.imag()) > cfg.inf_threshold) {
        const double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
    }
    const double scale = pow10_table(cfg.round_digits);
    if (cfg.renormalize_unit) {
        // Grid points are left alone: that keeps quantize idempotent, and a
        // value that is already quantized needs no drift correction anyway.
        const bool on_grid = round_component(z.real(), scale) == z.real() &&
                             round_component(z.imag(), scale) == z.imag();
        if (!on_grid) {
            const double m = std::abs(z);
            if (m > 0.0 && std::abs(m - 1.0) <= kUnitBand) z /= m;
        }
    }
    return {round_component(z.real(), scale), round_component(z.imag(), scale)};
}

int DcdSsm::joint_dim() const {
    int d = 0;
    for (const auto& l : layers) d += l.dim;
    return d;
}

void DcdSsm::validate() const {
    precision.validate();
    if (layers.empty()) throw std::invalid_argument("model has no layers");
    const int tokens = layers[0].token_count();
    int prev_dims = 0;
    for (size_t r = 0; r < layers.size(); ++r) {
        const LayerTable& l = layers[r];
        if (l.dim <= 0) throw std::invalid_argument("layer dim must be positive");
        if (l.context_arity != static_cast<int>(r))
            throw std::invalid_argument("context arity must equal layer position");
        if (l.context_anchors.empty()) throw std::invalid_argument("layer has no context anchors");
        for (const CVec& a : l.context_anchors)
            if (static_cast<int>(a.size()) != prev_dims)
                throw std::invalid_argument("context anchor length mismatch");
        if (l.lambda.size() != l.context_anchors.size() || l.b.size() != l.context_anchors.size())
            throw std::invalid_argument("table row count mismatch");
        for (size_t a = 0; a < l.lambda.size(); ++a) {
            if (static_cast<int>(l.lambda[a].size()) != tokens ||
                static_cast<int>(l.b[a].size()) != tokens)
                throw std::invalid_argument("table column count mismatch");
            for (int t = 0; t < tokens; ++t) {
                if (static_cast<int>(l.lambda[a][t].size()) != l.dim ||
                    static_cast<int>(l.b[a][t].size()) != l.dim)
                    throw std::invalid_argument("table entry dim mismatch");
                for (int j = 0; j < l.dim; ++j) {
                    if (is_inf_state(l.lambda[a][t][j]) || is_inf_state(l.b[a][t][j]))
                        throw std::invalid_argument("non-finite table entry");
                    // expansive transitions blow up the state and can never
                    // help tracking; they are ruled out at the type level
                    if (std::abs(l.lambda[a][t][j]) > 1.0 + 1e-6)
                        throw std::invalid_argument("expansive lambda entry");
                }
            }
        }
        prev_dims += l.dim;
    }
    if (h0.size() != layers.size()) throw std::invalid_argument("h0 layer count mismatch");
    for (size_t r = 0; r < layers.size(); ++r)
        if (static_cast<int>(h0[r].size()) != layers[r].dim)
            throw std::invalid_argument("h0 dim mismatch");
    if (decoder_anchors.size() != decoder_elements.size())
        throw std::invalid_argument("decoder anchor/element count mismatch");
    for (const CVec& a : decoder_anchors)
        if (static_cast<int>(a.size()) != joint_dim())
            throw std::invalid_argument("decoder anchor length mismatch");
    const double min_sep = 2.0 * precision.decode_tolerance;
    for (size_t i = 0; i < decoder_anchors.size(); ++i)
        for (size_t j = i + 1; j < decoder_anchors.size(); ++j)
            if (std::sqrt(dist2(decoder_anchors[i], decoder_anchors[j])) <= min_sep)
                throw std::invalid_argument("decoder anchors closer than 2*decode_tolerance");
}

SsmState initial_state(const DcdSsm& model) {
    SsmState s;
    s.h = model.h0;
    return s;
}

int quantize_context(const LayerTable& layer, const CVec& joint_prev,
                     const FinitePrecisionConfig& cfg) {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int a = 0; a < layer.anchor_count(); ++a) {
        const double d2 = dist2(layer.context_anchors[a], joint_prev);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = a;
        }
    }
    if (best < 0 || std::sqrt(best_d2) > cfg.decode_tolerance)
        throw MissingTableEntryError("context state is not near any compiled anchor");
    return best;
}

void advance(const DcdSsm& model, SsmState& state, elem_t token, StepDiag* diag) {
    if (token < 0 || token >= model.token_count())
        throw std::out_of_range("advance: token out of range");
    if (diag) diag->modulus_deviation = 0.0;

    // Every layer keys on the pre-update states of the layers before it, so
    // all context anchors are resolved before anything updates.
    static thread_local std::vector<int> anchors;
    static thread_local CVec joint_prev;
    anchors.resize(model.layers.size());
    joint_prev.clear();
    for (size_t r = 0; r < model.layers.size(); ++r) {
        anchors[r] = quantize_context(model.layers[r], joint_prev, model.precision);
        joint_prev.insert(joint_prev.end(), state.h[r].begin(), state.h[r].end());
    }

    for (size_t r = 0; r < model.layers.size(); ++r) {
        const LayerTable& layer = model.layers[r];
        const CVec& lam = layer.lambda[anchors[r]][token];
        const CVec& off = layer.b[anchors[r]][token];
        for (int j = 0; j < layer.dim; ++j) {
            const Cplx raw = lam[j] * state.h[r][j] + off[j];
            if (diag && !is_inf_state(raw))
                diag->modulus_deviation =
                    std::max(diag->modulus_deviation, std::abs(std::abs(raw) - 1.0));
            state.h[r][j] = quantize(raw, model.precision);
        }
    }
    ++state.step_counter;
}

SsmState step(const DcdSsm& model, const SsmState& state, elem_t token) {
    SsmState next = state;
    advance(model, next, token);
    return next;
}

elem_t decode_joint(const DcdSsm& model, const CVec& joint, double* distance) {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < model.decoder_anchors.size(); ++i) {
        const double d2 = dist2(model.decoder_anchors[i], joint);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<int>(i);
        }
    }
    const double d = std::sqrt(best_d2);
    if (distance) *distance = d;
    if (best < 0 || d > model.precision.decode_tolerance) return kDecodeMiss;
    return model.decoder_elements[best];
}

namespace {

CVec joint_of(const SsmState& s) {
    CVec joint;
    for (const CVec& v : s.h) joint.insert(joint.end(), v.begin(), v.end());
    return joint;
}

}  // namespace

elem_t decode_state(const DcdSsm& model, const SsmState& state, double* distance) {
    return decode_joint(model, joint_of(state), distance);
}

std::vector<elem_t> forward(const DcdSsm& model, const std::vector<elem_t>& seq) {
    SsmState s = initial_state(model);
    std::vector<elem_t> out;
    out.reserve(seq.size());
    for (elem_t x : seq) {
        advance(model, s, x);
        out.push_back(decode_state(model, s));
    }
    return out;
}

void prefix_compose(std::vector<AffineMap1D>& maps) {
    const size_t n = maps.size();
    for (size_t offset = 1; offset < n; offset *= 2)
        for (size_t i = n; i-- > offset;)
            maps[i] = compose(maps[i - offset], maps[i]);
}

AffineMap1D lift_sequence(const LayerTable& layer, int coord,
                          const std::vector<std::pair<int, elem_t>>& keys) {
    if (coord < 0 || coord >= layer.dim) throw std::out_of_range("lift_sequence: coord");
    AffineMap1D acc = AffineMap1D::identity();
    for (const auto& [a, t] : keys) {
        if (a < 0 || a >= layer.anchor_count() || t < 0 || t >= layer.token_count())
            throw MissingTableEntryError("lift_sequence: key outside the table");
        acc = compose(acc, AffineMap1D(layer.lambda[a][t][coord], layer.b[a][t][coord]));
    }
    return acc;
}

std::vector<elem_t> scan_forward(const DcdSsm& model, const std::vector<elem_t>& seq) {
    const size_t n = seq.size();
    for (elem_t x : seq)
        if (x < 0 || x >= model.token_count())
            throw std::out_of_range("scan_forward: token out of range");

    // states[t] = per-layer state after t tokens (quantized), states[0] = h0
    std::vector<std::vector<CVec>> states(n + 1);
    states[0] = model.h0;
    for (size_t t = 1; t <= n; ++t) states[t].resize(model.layers.size());

    CVec empty_joint;
    std::vector<AffineMap1D> maps(n);
    for (size_t r = 0; r < model.layers.size(); ++r) {
        const LayerTable& layer = model.layers[r];
        // context anchor index stream from the already-materialized layers
        std::vector<int> anchor_idx(n);
        for (size_t t = 0; t < n; ++t) {
            CVec joint_prev;
            for (size_t q = 0; q < r; ++q)
                joint_prev.insert(joint_prev.end(), states[t][q].begin(), states[t][q].end());
            anchor_idx[t] = quantize_context(layer, joint_prev, model.precision);
        }
        for (int j = 0; j < layer.dim; ++j) {
            for (size_t t = 0; t < n; ++t)
                maps[t] = AffineMap1D(layer.lambda[anchor_idx[t]][seq[t]][j],
                                      layer.b[anchor_idx[t]][seq[t]][j]);
            std::vector<AffineMap1D> prefix(maps.begin(), maps.end());
            prefix_compose(prefix);
            for (size_t t = 1; t <= n; ++t) {
                if (states[t][r].empty()) states[t][r].resize(layer.dim);
                states[t][r][j] = quantize(prefix[t - 1].apply(model.h0[r][j]), model.precision);
            }
        }
    }

    std::vector<elem_t> out(n);
    for (size_t t = 1; t <= n; ++t) {
        CVec joint;
        for (const CVec& v : states[t]) joint.insert(joint.end(), v.begin(), v.end());
        out[t - 1] = decode_joint(model, joint);
    }
    return out;
}

namespace {

struct BitKey {
    std::string bytes;
    bool operator==(const BitKey& o) const { return bytes == o.bytes; }
};

struct BitKeyHash {
    size_t operator()(const BitKey& k) const { return std::hash<std::string>{}(k.bytes); }
};

BitKey key_of(const CVec& joint) {
    BitKey k;
    k.bytes.resize(joint.size() * 2 * sizeof(double));
    std::memcpy(k.bytes.data(), joint.data(), k.bytes.size());
    return k;
}

}  // namespace

std::vector<CVec> reachable_states(const DcdSsm& model, int horizon) {
    if (horizon < 0) throw std::invalid_argument("reachable_states: horizon >= 0");
    constexpr size_t kLimit = 1000000;

    // identify states with a decoder anchor when within tolerance
    auto canonical = [&](const CVec& joint) -> CVec {
        double d = 0.0;
        int best = -1;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < model.decoder_anchors.size(); ++i) {
            const double d2 = dist2(model.decoder_anchors[i], joint);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = static_cast<int>(i);
            }
        }
        d = std::sqrt(best_d2);
        if (best >= 0 && d <= model.precision.decode_tolerance) return model.decoder_anchors[best];
        return joint;
    };

    std::unordered_set<BitKey, BitKeyHash> seen;
    std::vector<CVec> out;
    std::vector<SsmState> frontier{initial_state(model)};
    seen.insert(key_of(canonical(joint_of(frontier[0]))));
    out.push_back(canonical(joint_of(frontier[0])));

    for (int depth = 0; depth < horizon && !frontier.empty(); ++depth) {
        std::vector<SsmState> next;
        for (const SsmState& s : frontier) {
            for (elem_t tok = 0; tok < model.token_count(); ++tok) {
                SsmState t = s;
                advance(model, t, tok);
                const CVec canon = canonical(joint_of(t));
                if (seen.insert(key_of(canon)).second) {
                    if (seen.size() > kLimit)
                        throw StateExplosionError("reachable state set exceeds 10^6");
                    out.push_back(canon);
                    next.push_back(std::move(t));
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace gtssm
