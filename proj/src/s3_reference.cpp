#include "gtssm/s3_reference.hpp"

#include <cmath>

namespace gtssm {

namespace {

// element index (table order) <-> (alpha, beta) of the word s^alpha r^beta
constexpr int kAlpha[6] = {0, 1, 1, 1, 0, 0};
constexpr int kBeta[6] = {0, 0, 2, 1, 1, 2};
constexpr elem_t kIndexOf[2][3] = {{0, 4, 5},   // alpha 0: e, r, r2
                                   {1, 3, 2}};  // alpha 1: s, sr, sr2

// decode table: [q1 == -1][q2_exp] -> element
constexpr elem_t kDecode[2][3] = {{0, 4, 5},   // (+1, k) -> r^k
                                  {1, 2, 3}};  // (-1, k) -> s, sr2, sr

}  // namespace

S3Encoding encode_s3(elem_t g) {
    if (g < 0 || g >= 6) throw std::out_of_range("encode_s3: element index");
    return {kAlpha[g], kBeta[g]};
}

elem_t decode_s3(const S3Encoding& enc) {
    if (enc.alpha < 0 || enc.alpha > 1 || enc.beta < 0 || enc.beta > 2)
        throw std::out_of_range("decode_s3: encoding out of range");
    return kIndexOf[enc.alpha][enc.beta];
}

CascadeState cascade_step(const CascadeState& state, const S3Encoding& enc) {
    CascadeState next = state;
    if (enc.alpha) next.q1 = -next.q1;
    // rotate by exp(-2*pi*i*beta/3) when q1 (after the flip) is +1,
    // by the conjugate when it is -1
    const int dir = next.q1;
    next.q2_exp = ((next.q2_exp + dir * enc.beta) % 3 + 3) % 3;
    return next;
}

elem_t cascade_decode(const CascadeState& state) {
    if ((state.q1 != 1 && state.q1 != -1) || state.q2_exp < 0 || state.q2_exp > 2)
        throw std::out_of_range("cascade_decode: unknown state");
    return kDecode[state.q1 == -1 ? 1 : 0][state.q2_exp];
}

std::vector<elem_t> cascade_track(const std::vector<elem_t>& seq) {
    std::vector<elem_t> out;
    out.reserve(seq.size());
    CascadeState s;
    for (elem_t g : seq) {
        s = cascade_step(s, encode_s3(g));
        out.push_back(cascade_decode(s));
    }
    return out;
}

DcdSsm analytic_model(const FinitePrecisionConfig& cfg) {
    cfg.validate();
    DcdSsm m;
    m.group_spec = "symmetric:3";
    m.precision = cfg;

    // cube roots of unity with negative orientation: w[k] = exp(-2*pi*i*k/3)
    const long double pi = 3.141592653589793238462643383279502884L;
    CVec w(3);
    for (int k = 0; k < 3; ++k) {
        const long double a = -2.0L * pi * k / 3.0L;
        w[k] = quantize({static_cast<double>(cosl(a)), static_cast<double>(sinl(a))}, cfg);
    }
    const Cplx plus{1.0, 0.0}, minus{-1.0, 0.0};

    LayerTable l1;
    l1.dim = 1;
    l1.context_arity = 0;
    l1.context_anchors = {CVec{}};
    l1.lambda.assign(1, std::vector<CVec>(6));
    l1.b.assign(1, std::vector<CVec>(6));
    for (elem_t g = 0; g < 6; ++g) {
        l1.lambda[0][g] = {encode_s3(g).alpha ? minus : plus};
        l1.b[0][g] = {Cplx{0.0, 0.0}};
    }

    LayerTable l2;
    l2.dim = 1;
    l2.context_arity = 1;
    l2.context_anchors = {CVec{plus}, CVec{minus}};
    l2.lambda.assign(2, std::vector<CVec>(6));
    l2.b.assign(2, std::vector<CVec>(6));
    for (int a = 0; a < 2; ++a) {
        const int q_pre = a == 0 ? 1 : -1;
        for (elem_t g = 0; g < 6; ++g) {
            const S3Encoding enc = encode_s3(g);
            const int dir = enc.alpha ? -q_pre : q_pre;  // post-flip direction
            const int k = ((enc.beta * dir) % 3 + 3) % 3;
            l2.lambda[a][g] = {w[k]};
            l2.b[a][g] = {Cplx{0.0, 0.0}};
        }
    }

    m.layers = {std::move(l1), std::move(l2)};
    m.h0 = {CVec{plus}, CVec{plus}};

    m.decoder_anchors.resize(6);
    m.decoder_elements.resize(6);
    for (int q = 0; q < 2; ++q)
        for (int k = 0; k < 3; ++k) {
            const elem_t g = kDecode[q][k];
            m.decoder_anchors[g] = {q == 0 ? plus : minus, w[k]};
            m.decoder_elements[g] = g;
        }
    m.validate();
    return m;
}

std::array<std::array<elem_t, 6>, 6> reproduce_cayley() {
    std::array<std::array<elem_t, 6>, 6> table{};
    for (elem_t a = 0; a < 6; ++a)
        for (elem_t b = 0; b < 6; ++b) {
            CascadeState s;
            s = cascade_step(s, encode_s3(a));
            s = cascade_step(s, encode_s3(b));
            table[a][b] = cascade_decode(s);
        }
    return table;
}

FiniteGroup s3_group() { return symmetric_group(3); }

}  // namespace gtssm
