#include "gtssm/affine.hpp"

#include <cmath>
#include <limits>

namespace gtssm {

namespace {

bool finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kOverflowMagnitude = 1e300;

}  // namespace

AffineMap1D::AffineMap1D(Cplx lambda_, Cplx b_) : lambda(lambda_), b(b_) {
    if (!finite(lambda) || !finite(b))
        throw std::invalid_argument("AffineMap1D: non-finite component");
}

AffineMap1D AffineMap1D::rotation_about(Cplx lambda, Cplx center) {
    return AffineMap1D(lambda, center * (Cplx{1.0, 0.0} - lambda));
}

const char* dynamics_kind_name(DynamicsKind k) {
    switch (k) {
        case DynamicsKind::Contraction: return "Contraction";
        case DynamicsKind::NeutralRotation: return "NeutralRotation";
        case DynamicsKind::AllFixed: return "AllFixed";
        case DynamicsKind::Translation: return "Translation";
        case DynamicsKind::Expansive: return "Expansive";
    }
    return "?";
}

DynamicsClass classify(const AffineMap1D& m, double tol) {
    if (m.lambda == Cplx{1.0, 0.0}) {
        if (m.b == Cplx{0.0, 0.0}) return {DynamicsKind::AllFixed, std::nullopt};
        return {DynamicsKind::Translation, std::nullopt};
    }
    const Cplx center = m.b / (Cplx{1.0, 0.0} - m.lambda);
    const double r = std::abs(m.lambda);
    if (std::abs(r - 1.0) <= tol) return {DynamicsKind::NeutralRotation, center};
    if (r < 1.0) return {DynamicsKind::Contraction, center};
    return {DynamicsKind::Expansive, center};
}

std::optional<Cplx> fixed_point(const AffineMap1D& m) {
    if (m.lambda == Cplx{1.0, 0.0}) return std::nullopt;
    return m.b / (Cplx{1.0, 0.0} - m.lambda);
}

AffineMap1D compose(const AffineMap1D& f, const AffineMap1D& g) {
    // g(f(x)) = g.lambda*f.lambda*x + (g.lambda*f.b + g.b)
    return AffineMap1D(g.lambda * f.lambda, g.lambda * f.b + g.b);
}

Cplx diverged_value() {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
}

bool is_diverged(Cplx z) {
    return !finite(z) || std::abs(z.real()) > kOverflowMagnitude ||
           std::abs(z.imag()) > kOverflowMagnitude;
}

Cplx closed_form(const AffineMap1D& m, Cplx x0, long t) {
    if (t < 0) throw std::invalid_argument("closed_form: negative t");
    Cplx out;
    if (m.lambda == Cplx{1.0, 0.0}) {
        out = x0 + static_cast<double>(t) * m.b;
    } else {
        const Cplx c = m.b / (Cplx{1.0, 0.0} - m.lambda);
        const Cplx pw = std::pow(m.lambda, static_cast<double>(t));
        out = pw * (x0 - c) + c;
    }
    if (is_diverged(out)) return diverged_value();
    return out;
}

Cplx neutral_translation(Cplx lambda, Cplx c1, Cplx c2, double tol) {
    if (std::abs(std::abs(lambda) - 1.0) > tol || lambda == Cplx{1.0, 0.0})
        throw std::invalid_argument("neutral_translation: lambda must be a non-identity unit rotation");
    if (c1 == c2)
        throw DegenerateCentersError("neutral_translation: equal centers give the zero translation");
    return (Cplx{1.0, 0.0} - std::conj(lambda)) * (c2 - c1);
}

std::optional<DivergenceWitness> divergence_witness(const AffineMap1D& m1,
                                                    const AffineMap1D& m2,
                                                    long bound, double tol) {
    const DynamicsClass d1 = classify(m1);
    const DynamicsClass d2 = classify(m2);
    if (d1.kind != DynamicsKind::NeutralRotation || d2.kind != DynamicsKind::NeutralRotation)
        throw std::invalid_argument("divergence_witness: both maps must be neutral rotations");
    if (*d1.center == *d2.center)
        throw DegenerateCentersError("divergence_witness: rotations share a center");

    std::optional<DivergenceWitness> best;
    Cplx p1 = 1.0;
    for (long a1 = 1; a1 <= bound; ++a1) {
        p1 *= m1.lambda;
        if (std::abs(p1 - Cplx{1.0, 0.0}) <= tol) continue;  // trivial first factor
        Cplx p2 = 1.0;
        for (long a2 = 1; a2 <= bound; ++a2) {
            p2 *= m2.lambda;
            if (std::abs(p2 - Cplx{1.0, 0.0}) <= tol) continue;  // trivial second factor
            const double err = std::abs(p1 * p2 - Cplx{1.0, 0.0});
            if (!best || err < best->residual) best = DivergenceWitness{a1, a2, err};
        }
    }
    if (!best || best->residual > tol) return std::nullopt;
    return best;
}

}  // namespace gtssm
