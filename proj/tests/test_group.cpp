#include <doctest.h>

#include <algorithm>

#include "gtssm/group.hpp"
#include "gtssm/rng.hpp"

using namespace gtssm;

namespace {

// S3 multiplication table in the order [e,(12),(13),(23),(123),(132)],
// derived independently from the word algebra s^a r^b with s=(12), r=(123),
// s^2 = e, r^3 = e, rs = sr^2.  The element order pairs with the words
// [e, s, sr2, sr, r, r2].
constexpr elem_t kS3Table[6][6] = {
    {0, 1, 2, 3, 4, 5},
    {1, 0, 5, 4, 3, 2},
    {2, 4, 0, 5, 1, 3},
    {3, 5, 4, 0, 2, 1},
    {4, 2, 3, 1, 5, 0},
    {5, 3, 1, 2, 0, 4},
};

// word-algebra oracle: multiply s^a1 r^b1 by s^a2 r^b2 using rs = sr^2
std::pair<int, int> word_mul(std::pair<int, int> g1, std::pair<int, int> g2) {
    auto [a1, b1] = g1;
    auto [a2, b2] = g2;
    // r^b1 s = s r^(-b1)
    if (a2 == 1) return {(a1 + 1) % 2, ((b2 - b1) % 3 + 3) % 3};
    return {a1, (b1 + b2) % 3};
}

constexpr std::pair<int, int> kWords[6] = {{0, 0}, {1, 0}, {1, 2}, {1, 1}, {0, 1}, {0, 2}};

}  // namespace

TEST_CASE("cyclic(2) is the parity group") {
    const FiniteGroup g = cyclic_group(2);
    CHECK(g.order == 2);
    CHECK(g.cayley == std::vector<elem_t>{0, 1, 1, 0});
    CHECK(g.identity == 0);
}

TEST_CASE("symmetric(3) matches the classical table") {
    const FiniteGroup g = symmetric_group(3);
    REQUIRE(g.order == 6);
    CHECK(g.labels == std::vector<std::string>{"e", "(12)", "(13)", "(23)", "(123)", "(132)"});
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) CHECK(g.mul(a, b) == kS3Table[a][b]);

    // the positional pairing with the generator words holds: index i is
    // the word kWords[i], and the table is the word-algebra product
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            const auto w = word_mul(kWords[a], kWords[b]);
            const auto it = std::find(std::begin(kWords), std::end(kWords), w);
            CHECK(g.mul(a, b) == static_cast<elem_t>(it - std::begin(kWords)));
        }
}

TEST_CASE("construct_group sizes and specs") {
    CHECK(alternating_group(5).order == 60);  // 5!/2
    CHECK(alternating_group(4).order == 12);
    CHECK(symmetric_group(4).order == 24);
    CHECK(construct_group("product:cyclic:2,cyclic:4").order == 8);
    CHECK(construct_group("cyclic:60").spec == "cyclic:60");
    CHECK(GroupSpec::parse("product:cyclic:2,cyclic:4").to_string() == "product:cyclic:2,cyclic:4");
    CHECK_THROWS_AS(construct_group("frobnicate:3"), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_group(10081), SizeLimitError);
    CHECK_THROWS_AS(symmetric_group(8), SizeLimitError);
}

TEST_CASE("group_from_table rejects broken tables") {
    // a Latin square with identity but no associativity (order 5 loop)
    const std::vector<std::vector<elem_t>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(group_from_table(loop), InvalidTableError);

    // broken Latin square
    const std::vector<std::vector<elem_t>> dup = {{0, 1}, {1, 1}};
    CHECK_THROWS_AS(group_from_table(dup), InvalidTableError);

    // valid: C3 given raw
    const FiniteGroup c3 = group_from_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    CHECK(c3.order == 3);
    CHECK(c3.identity == 0);
}

TEST_CASE("multiply worked values") {
    const FiniteGroup s3 = symmetric_group(3);
    CHECK(multiply(s3, 1, 2) == 5);  // (12)(13) = (132)
    CHECK(multiply(s3, 0, 3) == 3);  // identity acts trivially

    const FiniteGroup c60 = cyclic_group(60);
    CHECK(multiply(c60, 51, 20) == 11);
    CHECK_THROWS_AS(multiply(c60, 60, 0), std::out_of_range);
}

TEST_CASE("inverse worked values") {
    const FiniteGroup c60 = cyclic_group(60);
    // oracle: scan row 51 for the identity column
    elem_t scanned = -1;
    for (int b = 0; b < 60; ++b)
        if (c60.mul(51, b) == c60.identity) scanned = b;
    CHECK(scanned == 9);
    CHECK(inverse(c60, 51) == 9);

    const FiniteGroup s3 = symmetric_group(3);
    CHECK(inverse(s3, 4) == 5);  // (123)^(-1) = (132)
    CHECK(s3.mul(4, 5) == s3.identity);
    CHECK(inverse(s3, 0) == 0);
}

TEST_CASE("is_abelian") {
    CHECK(is_abelian(cyclic_group(6)));
    CHECK(!is_abelian(symmetric_group(3)));
    CHECK(is_abelian(construct_group("product:cyclic:2,cyclic:4")));
}

TEST_CASE("commutator_subgroup") {
    const FiniteGroup c24 = cyclic_group(24);
    CHECK(commutator_subgroup(c24) == trivial_subgroup(c24));

    const FiniteGroup s3 = symmetric_group(3);
    SubgroupMask c3(6, 0);
    c3[0] = c3[4] = c3[5] = 1;  // {e, (123), (132)}
    CHECK(commutator_subgroup(s3) == c3);

    // A4: commutators close into the Klein four-group
    const FiniteGroup a4 = alternating_group(4);
    const SubgroupMask v4 = commutator_subgroup(a4);
    CHECK(mask_order(v4) == 4);
    for (elem_t x : mask_elements(v4))
        CHECK(a4.mul(x, x) == a4.identity);  // every element is an involution
    CHECK(is_normal(a4, v4));
}

TEST_CASE("derived_series") {
    const auto s3 = derived_series(symmetric_group(3));
    REQUIRE(s3.has_value());
    CHECK(s3->length() == 2);
    CHECK(mask_order(s3->chain[0]) == 6);
    CHECK(mask_order(s3->chain[1]) == 3);
    CHECK(mask_order(s3->chain[2]) == 1);

    CHECK(derived_series(cyclic_group(24))->length() == 1);

    const FiniteGroup a5 = alternating_group(5);
    CHECK(!derived_series(a5).has_value());
    CHECK(solvability_residual(a5) == full_subgroup(a5));  // A5 is its own derived subgroup

    const auto a4 = derived_series(alternating_group(4));
    REQUIRE(a4.has_value());
    CHECK(a4->length() == 2);
    validate_series(alternating_group(4), *a4);
}

TEST_CASE("derived series factors are Abelian") {
    for (const char* spec : {"symmetric:3", "alternating:4", "cyclic:24"}) {
        const FiniteGroup g = construct_group(spec);
        const auto series = derived_series(g);
        REQUIRE(series.has_value());
        for (size_t i = 0; i + 1 < series->chain.size(); ++i) {
            const SubgroupView amb = subgroup_view(g, series->chain[i]);
            SubgroupMask sub(amb.group.order, 0);
            for (elem_t x : mask_elements(series->chain[i + 1])) sub[amb.from_parent[x]] = 1;
            CHECK(is_abelian(quotient(amb.group, sub).quotient));
        }
    }
}

TEST_CASE("is_normal") {
    const FiniteGroup s3 = symmetric_group(3);
    SubgroupMask c3(6, 0);
    c3[0] = c3[4] = c3[5] = 1;
    CHECK(is_normal(s3, c3));

    SubgroupMask h(6, 0);
    h[0] = h[1] = 1;  // {e, (12)}: conjugating (12) by (123) escapes
    CHECK(is_subgroup(s3, h));
    CHECK(!is_normal(s3, h));

    CHECK(is_normal(s3, full_subgroup(s3)));

    SubgroupMask bad(6, 0);
    bad[0] = bad[4] = 1;  // not closed: (123)^2 = (132) missing
    CHECK_THROWS_AS(is_normal(s3, bad), NotASubgroupError);
}

TEST_CASE("quotient") {
    const FiniteGroup s3 = symmetric_group(3);
    SubgroupMask c3(6, 0);
    c3[0] = c3[4] = c3[5] = 1;
    const QuotientMap q = quotient(s3, c3);
    CHECK(q.quotient.order == 2);
    CHECK(q.section[q.projection[s3.identity]] == s3.identity);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            CHECK(q.quotient.mul(q.projection[a], q.projection[b]) == q.projection[s3.mul(a, b)]);

    // G/{e} is G again under the identity relabeling
    const QuotientMap qid = quotient(s3, trivial_subgroup(s3));
    CHECK(qid.quotient.order == 6);
    CHECK(qid.quotient.cayley == s3.cayley);

    // C6/C3: cosets {0,2,4} and {1,3,5}
    const FiniteGroup c6 = cyclic_group(6);
    SubgroupMask n(6, 0);
    n[0] = n[2] = n[4] = 1;
    const QuotientMap q2 = quotient(c6, n);
    CHECK(q2.quotient.order == 2);
    CHECK(q2.projection == std::vector<elem_t>{0, 1, 0, 1, 0, 1});

    SubgroupMask notnormal(6, 0);
    notnormal[0] = notnormal[1] = 1;
    CHECK_THROWS_AS(quotient(s3, notnormal), NotNormalError);
}

TEST_CASE("abelian_decomposition") {
    SUBCASE("cyclic(60): identity on residues") {
        const AbelianDecomposition d = abelian_decomposition(cyclic_group(60));
        CHECK(d.cyclic_orders == std::vector<int>{60});
        for (int a = 0; a < 60; ++a) CHECK(d.iso[a] == std::vector<int>{a});
    }
    SUBCASE("C2 x C4") {
        const AbelianDecomposition d =
            abelian_decomposition(construct_group("product:cyclic:2,cyclic:4"));
        CHECK(d.cyclic_orders == std::vector<int>{2, 4});
    }
    SUBCASE("C3 x C6 has invariant factors 3 | 6") {
        const FiniteGroup g = construct_group("product:cyclic:3,cyclic:6");
        const AbelianDecomposition d = abelian_decomposition(g);
        CHECK(d.cyclic_orders == std::vector<int>{3, 6});
        CHECK(6 % 3 == 0);
        // independent checks: bijectivity and the homomorphism law
        std::vector<std::vector<int>> seen;
        for (int a = 0; a < g.order; ++a) seen.push_back(d.iso[a]);
        std::sort(seen.begin(), seen.end());
        CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
        for (int a = 0; a < g.order; ++a)
            for (int b = 0; b < g.order; ++b)
                for (size_t j = 0; j < d.cyclic_orders.size(); ++j)
                    CHECK((d.iso[a][j] + d.iso[b][j]) % d.cyclic_orders[j] ==
                          d.iso[g.mul(a, b)][j]);
    }
    SUBCASE("product of factor orders is the group order") {
        for (const char* spec : {"cyclic:24", "product:cyclic:2,cyclic:4", "product:cyclic:3,cyclic:6"}) {
            const FiniteGroup g = construct_group(spec);
            const AbelianDecomposition d = abelian_decomposition(g);
            long prod = 1;
            for (size_t j = 0; j + 1 < d.cyclic_orders.size(); ++j)
                CHECK(d.cyclic_orders[j + 1] % d.cyclic_orders[j] == 0);
            for (int k : d.cyclic_orders) prod *= k;
            CHECK(prod == g.order);
        }
    }
    SUBCASE("rejects non-Abelian groups") {
        CHECK_THROWS_AS(abelian_decomposition(symmetric_group(3)), NotAbelianError);
    }
}

TEST_CASE("prefix_products") {
    const FiniteGroup c60 = cyclic_group(60);
    CHECK(prefix_products(c60, {51, 20, 4, 49}) == std::vector<elem_t>{51, 11, 15, 4});

    const FiniteGroup s3 = symmetric_group(3);
    CHECK(prefix_products(s3, {0, 0, 0}) == std::vector<elem_t>{0, 0, 0});
    // [s, sr] accumulates to [s, r]
    CHECK(prefix_products(s3, {1, 3}) == std::vector<elem_t>{1, 4});
    CHECK(prefix_products(s3, {}).empty());

    // oracle identity: a fold of multiply
    SplitMix64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<elem_t> seq(20);
        for (auto& x : seq) x = static_cast<elem_t>(rng.next_below(6));
        const auto got = prefix_products(s3, seq);
        elem_t acc = s3.identity;
        for (size_t t = 0; t < seq.size(); ++t) {
            acc = multiply(s3, acc, seq[t]);
            CHECK(got[t] == acc);
        }
    }
}

TEST_CASE("subgroup_view round trips") {
    const FiniteGroup s3 = symmetric_group(3);
    SubgroupMask c3(6, 0);
    c3[0] = c3[4] = c3[5] = 1;
    const SubgroupView v = subgroup_view(s3, c3);
    CHECK(v.group.order == 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK(v.to_parent[v.group.mul(a, b)] == s3.mul(v.to_parent[a], v.to_parent[b]));
}

TEST_CASE("validate_series rejects bad chains") {
    const FiniteGroup s3 = symmetric_group(3);
    SubgroupMask h(6, 0);
    h[0] = h[1] = 1;  // not normal in S3
    SubnormalSeries bad{{full_subgroup(s3), h, trivial_subgroup(s3)}};
    CHECK_THROWS_AS(validate_series(s3, bad), InvalidSeriesError);

    const FiniteGroup a5 = alternating_group(5);
    SubnormalSeries nonab{{full_subgroup(a5), trivial_subgroup(a5)}};
    CHECK_THROWS_AS(validate_series(a5, nonab), InvalidSeriesError);  // factor A5 not Abelian
}
