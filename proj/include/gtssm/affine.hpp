#pragma once

#include <optional>

#include "gtssm/common.hpp"

namespace gtssm {

/// One-dimensional complex affine map h -> lambda*h + b.  This is the atom
/// all diagonal SSM dynamics reduce to: a layer coordinate under a fixed
/// (context, token) pair evolves by exactly one of these.
struct AffineMap1D {
    Cplx lambda{1.0, 0.0};
    Cplx b{0.0, 0.0};

    AffineMap1D() = default;
    AffineMap1D(Cplx lambda_, Cplx b_);  // rejects non-finite components

    Cplx apply(Cplx x) const { return lambda * x + b; }

    static AffineMap1D identity() { return {}; }
    static AffineMap1D rotation_about(Cplx lambda, Cplx center);
};

enum class DynamicsKind {
    Contraction,      // |lambda| < 1: converges to the fixed point
    NeutralRotation,  // |lambda| = 1, lambda != 1: circles the center forever
    AllFixed,         // lambda = 1, b = 0
    Translation,      // lambda = 1, b != 0: unbounded drift
    Expansive,        // |lambda| > 1: diverges unless started at the center
};

struct DynamicsClass {
    DynamicsKind kind;
    std::optional<Cplx> center;  // b/(1-lambda); absent iff lambda == 1
};

const char* dynamics_kind_name(DynamicsKind k);

// Exactly one class for every finite map.  `tol` widens only the
// |lambda| = 1 band; the lambda == 1 split is exact.
DynamicsClass classify(const AffineMap1D& m, double tol = 1e-9);

// Unique fixed point b/(1-lambda); empty when lambda == 1.
std::optional<Cplx> fixed_point(const AffineMap1D& m);

// Apply f first, then g: compose(f, g)(x) = g(f(x)).
AffineMap1D compose(const AffineMap1D& f, const AffineMap1D& g);

// lambda^t (x0 - c) + c for lambda != 1, else x0 + t*b.  Overflow is
// reported as the diverged sentinel below rather than raw inf/nan.
Cplx closed_form(const AffineMap1D& m, Cplx x0, long t);

Cplx diverged_value();
bool is_diverged(Cplx z);

// Translation produced by rotating by `lambda` about c1 and then by
// conj(lambda) about c2: (1 - conj(lambda)) * (c2 - c1).
// Throws DegenerateCentersError when c1 == c2 (the translation would be zero).
Cplx neutral_translation(Cplx lambda, Cplx c1, Cplx c2, double tol = 1e-9);

struct DivergenceWitness {
    long alpha1;
    long alpha2;
    double residual;  // |lambda1^a1 * lambda2^a2 - 1|
};

// Exponents making the two rotations compose into a near-exact translation:
// |lambda1^a1 * lambda2^a2 - 1| <= tol with neither factor itself ~1.
// Exhaustive over 1 <= a1, a2 <= bound, smallest residual wins, earliest
// (a1, a2) on ties.  Empty when nothing within `bound` reaches `tol`.
std::optional<DivergenceWitness> divergence_witness(const AffineMap1D& m1,
                                                    const AffineMap1D& m2,
                                                    long bound = 720,
                                                    double tol = 1e-9);

}  // namespace gtssm
