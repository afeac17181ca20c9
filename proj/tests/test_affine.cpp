#include <doctest.h>

#include <cmath>
#include <limits>

#include "gtssm/affine.hpp"
#include "gtssm/rng.hpp"

using namespace gtssm;

namespace {

Cplx unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// independent oracle: iterate the step map
Cplx iterate(const AffineMap1D& m, Cplx x0, long t) {
    Cplx x = x0;
    for (long i = 0; i < t; ++i) x = m.apply(x);
    return x;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("classify: case split") {
    const DynamicsClass c1 = classify(AffineMap1D({0.5, 0.0}, {0.0, 0.0}));
    CHECK(c1.kind == DynamicsKind::Contraction);
    CHECK(std::abs(*c1.center) == 0.0);

    CHECK(classify(AffineMap1D({1.0, 0.0}, {0.0, 0.0})).kind == DynamicsKind::AllFixed);
    CHECK(classify(AffineMap1D({1.0, 0.0}, {3.0, 0.0})).kind == DynamicsKind::Translation);
    CHECK(classify(AffineMap1D({2.0, 0.0}, {-1.0, 0.0})).kind == DynamicsKind::Expansive);

    // rotation by pi/3 about c = b/(1-lambda); the orbit must keep its
    // distance to the center (checked over 100 iterates)
    const Cplx lam = unit(kPi / 3.0);
    const AffineMap1D rot(lam, {1.0, 0.0});
    const DynamicsClass c2 = classify(rot);
    CHECK(c2.kind == DynamicsKind::NeutralRotation);
    const Cplx center = Cplx{1.0, 0.0} / (Cplx{1.0, 0.0} - lam);
    CHECK(std::abs(*c2.center - center) < 1e-15);
    Cplx x{2.5, -0.25};
    const double radius = std::abs(x - center);
    for (int t = 0; t < 100; ++t) {
        x = rot.apply(x);
        CHECK(std::abs(std::abs(x - center) - radius) < 1e-12);
    }
}

TEST_CASE("classify: total and mutually exclusive on a class-spanning grid") {
    int seen[5] = {0, 0, 0, 0, 0};
    for (double r : {0.0, 0.3, 0.999, 1.0, 1.001, 2.0})
        for (int a = 0; a < 12; ++a)
            for (double br : {0.0, 1.0})
                for (double bi : {0.0, -2.0}) {
                    const Cplx lam = r * unit(2.0 * kPi * a / 12.0);
                    const AffineMap1D m(lam, {br, bi});
                    const DynamicsClass c = classify(m);
                    ++seen[static_cast<int>(c.kind)];
                    // expected class computed independently
                    DynamicsKind want;
                    if (lam == Cplx{1.0, 0.0})
                        want = m.b == Cplx{0.0, 0.0} ? DynamicsKind::AllFixed : DynamicsKind::Translation;
                    else if (std::abs(std::abs(lam) - 1.0) <= 1e-9)
                        want = DynamicsKind::NeutralRotation;
                    else if (std::abs(lam) < 1.0)
                        want = DynamicsKind::Contraction;
                    else
                        want = DynamicsKind::Expansive;
                    CHECK(c.kind == want);
                    CHECK(c.center.has_value() == (lam != Cplx{1.0, 0.0}));
                }
    for (int k = 0; k < 5; ++k) CHECK(seen[k] > 0);
}

TEST_CASE("fixed_point") {
    const auto fp = fixed_point(AffineMap1D({2.0, 0.0}, {-1.0, 0.0}));
    REQUIRE(fp.has_value());
    CHECK(std::abs(*fp - Cplx{1.0, 0.0}) == 0.0);
    CHECK(std::abs(Cplx{2.0, 0.0} * *fp + Cplx{-1.0, 0.0} - *fp) == 0.0);  // 2*1-1 = 1

    CHECK(!fixed_point(AffineMap1D({1.0, 0.0}, {3.0, 0.0})).has_value());

    const Cplx c0{0.25, -3.5};
    CHECK(*fixed_point(AffineMap1D({0.0, 0.0}, c0)) == c0);
}

TEST_CASE("compose: apply-f-first convention") {
    const AffineMap1D f({2.0, 0.0}, {1.0, 0.0});
    const AffineMap1D g({3.0, 0.0}, {0.0, 0.0});
    const AffineMap1D fg = compose(f, g);
    CHECK(fg.lambda == Cplx{6.0, 0.0});
    CHECK(fg.b == Cplx{3.0, 0.0});
    for (Cplx x : {Cplx{0.0, 0.0}, Cplx{1.0, 0.0}}) CHECK(fg.apply(x) == g.apply(f.apply(x)));

    const AffineMap1D id = AffineMap1D::identity();
    const AffineMap1D h({0.5, 0.25}, {1.0, -2.0});
    CHECK(compose(h, id).lambda == h.lambda);
    CHECK(compose(h, id).b == h.b);
    CHECK(compose(id, h).b == h.b);
}

TEST_CASE("compose: rotation then conjugate rotation is a translation") {
    SplitMix64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Cplx lam = unit(2.0 * kPi * rng.next_unit());
        const Cplx c1{4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0};
        const Cplx c2{4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0};
        const AffineMap1D comp = compose(AffineMap1D::rotation_about(lam, c1),
                                         AffineMap1D::rotation_about(std::conj(lam), c2));
        CHECK(std::abs(comp.lambda - Cplx{1.0, 0.0}) < 1e-12);
        const Cplx expected = (Cplx{1.0, 0.0} - std::conj(lam)) * (c2 - c1);
        CHECK(std::abs(comp.b - expected) < 1e-12);
    }
}

TEST_CASE("compose: associative on random triples") {
    SplitMix64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        auto rnd = [&] {
            return AffineMap1D(unit(2.0 * kPi * rng.next_unit()),
                               {rng.next_unit() - 0.5, rng.next_unit() - 0.5});
        };
        const AffineMap1D f = rnd(), g = rnd(), h = rnd();
        const AffineMap1D a = compose(compose(f, g), h);
        const AffineMap1D b = compose(f, compose(g, h));
        CHECK(std::abs(a.lambda - b.lambda) < 1e-12);
        CHECK(std::abs(a.b - b.b) < 1e-12);
    }
}

TEST_CASE("closed_form: worked values") {
    CHECK(closed_form(AffineMap1D({1.0, 0.0}, {2.0, 0.0}), {0.0, 0.0}, 5) == Cplx{10.0, 0.0});
    CHECK(std::abs(closed_form(AffineMap1D({0.5, 0.0}, {0.0, 0.0}), {8.0, 0.0}, 3) -
                   Cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(closed_form(AffineMap1D({0.0, 1.0}, {0.0, 0.0}), {1.0, 0.0}, 4) -
                   Cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("closed_form: matches iterated stepping to 1e-9 relative") {
    SplitMix64 rng(23);
    for (int i = 0; i < 20; ++i) {
        const double r = i % 3 == 0 ? 1.0 : rng.next_unit();  // |lambda| <= 1
        const AffineMap1D m(r * unit(2.0 * kPi * rng.next_unit()),
                            {rng.next_unit() - 0.5, rng.next_unit() - 0.5});
        const Cplx x0{rng.next_unit(), rng.next_unit()};
        for (long t : {0L, 1L, 7L, 100L, 10000L}) {
            const Cplx direct = closed_form(m, x0, t);
            const Cplx stepped = iterate(m, x0, t);
            const double scale = std::max(1.0, std::abs(stepped));
            CHECK(std::abs(direct - stepped) / scale < 1e-9);
        }
    }
}

TEST_CASE("closed_form: neutral rotations preserve the radius") {
    SplitMix64 rng(31);
    for (int i = 0; i < 10; ++i) {
        const Cplx lam = unit(2.0 * kPi * rng.next_unit());
        const AffineMap1D m = AffineMap1D::rotation_about(lam, {0.5, -1.5});
        const Cplx x0{2.0, 2.0};
        const double radius = std::abs(x0 - Cplx{0.5, -1.5});
        for (long t : {1L, 10L, 1000L})
            CHECK(std::abs(std::abs(closed_form(m, x0, t) - Cplx{0.5, -1.5}) - radius) < 1e-6);
    }
}

TEST_CASE("closed_form: overflow pins to the diverged sentinel") {
    const Cplx out = closed_form(AffineMap1D({2.0, 0.0}, {0.0, 0.0}), {1.0, 0.0}, 10000);
    CHECK(is_diverged(out));
}

TEST_CASE("neutral_translation") {
    // lambda = i about 0 then -i about 1: (1 - (-i)) * 1 = 1 + i
    const Cplx t1 = neutral_translation({0.0, 1.0}, {0.0, 0.0}, {1.0, 0.0});
    CHECK(std::abs(t1 - Cplx{1.0, 1.0}) < 1e-15);
    // cross-check against the numeric composition
    const AffineMap1D comp = compose(AffineMap1D::rotation_about({0.0, 1.0}, {0.0, 0.0}),
                                     AffineMap1D::rotation_about({0.0, -1.0}, {1.0, 0.0}));
    CHECK(std::abs(comp.b - t1) < 1e-15);

    CHECK(std::abs(neutral_translation({-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}) - Cplx{2.0, 0.0}) <
          1e-15);

    CHECK_THROWS_AS(neutral_translation({0.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}),
                    DegenerateCentersError);
}

TEST_CASE("divergence_witness: rational rotations") {
    const Cplx w = unit(2.0 * kPi / 3.0);
    const AffineMap1D m1 = AffineMap1D::rotation_about(w, {0.0, 0.0});
    const AffineMap1D m2 = AffineMap1D::rotation_about(w, {1.0, 0.0});
    const auto wit = divergence_witness(m1, m2);
    REQUIRE(wit.has_value());
    CHECK(wit->alpha1 == 1);
    CHECK(wit->alpha2 == 2);
    CHECK(std::abs(w - Cplx{1.0, 0.0}) > 0.1);          // first factor nontrivial
    CHECK(std::abs(w * w - Cplx{1.0, 0.0}) > 0.1);      // second factor nontrivial

    const AffineMap1D n1 = AffineMap1D::rotation_about({-1.0, 0.0}, {0.0, 0.0});
    const AffineMap1D n2 = AffineMap1D::rotation_about({-1.0, 0.0}, {1.0, 0.0});
    const auto wit2 = divergence_witness(n1, n2);
    REQUIRE(wit2.has_value());
    CHECK(wit2->alpha1 == 1);
    CHECK(wit2->alpha2 == 1);

    CHECK_THROWS_AS(divergence_witness(m1, AffineMap1D::rotation_about(w, {0.0, 0.0})),
                    DegenerateCentersError);
}

TEST_CASE("divergence_witness: repeated block displaces linearly") {
    const Cplx w = unit(2.0 * kPi / 3.0);
    const AffineMap1D m1 = AffineMap1D::rotation_about(w, {0.0, 0.0});
    const AffineMap1D m2 = AffineMap1D::rotation_about(w, {1.0, 0.0});
    const auto wit = divergence_witness(m1, m2);
    REQUIRE(wit.has_value());

    AffineMap1D block = AffineMap1D::identity();
    for (long i = 0; i < wit->alpha1; ++i) block = compose(block, m1);
    for (long i = 0; i < wit->alpha2; ++i) block = compose(block, m2);

    const double per_block = std::abs((Cplx{1.0, 0.0} - std::conj(w)) * Cplx{1.0, 0.0});
    Cplx x{0.0, 0.0};
    for (int k = 1; k <= 100; ++k) {
        x = block.apply(x);
        CHECK(std::abs(std::abs(x) - k * per_block) / (k * per_block) < 1e-6);
    }
}

TEST_CASE("divergence_witness: nothing within a tiny bound") {
    // rotation by an angle whose small powers never land near a full turn
    const AffineMap1D m1 = AffineMap1D::rotation_about(unit(0.1), {0.0, 0.0});
    const AffineMap1D m2 = AffineMap1D::rotation_about(unit(0.1), {1.0, 0.0});
    CHECK(!divergence_witness(m1, m2, 5, 1e-9).has_value());
}

TEST_CASE("AffineMap1D rejects non-finite components") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(AffineMap1D({inf, 0.0}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(AffineMap1D({0.0, 0.0}, {0.0, inf}), std::invalid_argument);
}
