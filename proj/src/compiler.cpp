#include "gtssm/compiler.hpp"

#include <cmath>

#include "gtssm/verifier.hpp"

namespace gtssm {

namespace {

// Root of unity exp(2*pi*i * num/den) from the exact angle fraction,
// evaluated in extended precision and quantized once.
Cplx unit_root(int num, int den, const FinitePrecisionConfig& cfg) {
    num %= den;
    const long double angle = 2.0L * 3.141592653589793238462643383279502884L *
                              static_cast<long double>(num) / static_cast<long double>(den);
    const Cplx z{static_cast<double>(cosl(angle)), static_cast<double>(sinl(angle))};
    return quantize(z, cfg);
}

CVec root_tuple(const AbelianDecomposition& dec, elem_t h, const FinitePrecisionConfig& cfg) {
    CVec v(dec.cyclic_orders.size());
    for (size_t j = 0; j < v.size(); ++j)
        v[j] = unit_root(dec.iso[h][j], dec.cyclic_orders[j], cfg);
    return v;
}

// Per-level compilation data along a subnormal series.
struct Level {
    SubgroupView ambient;          // S_{j-1} as a standalone group
    SectionCocycle sc;             // for S_j normal in S_{j-1} (ambient indices)
    AbelianDecomposition dec;      // of the factor H_j = S_{j-1}/S_j
    std::vector<CVec> lambda_of_h; // quotient element -> root tuple
    // kappa lifted to parent indices: [h'][parent token] -> parent element of S_j
    std::vector<std::vector<elem_t>> kappa_parent;
};

// Safety gate after construction: exhaustive check to depth 5, budget-capped.
void preverify(const DcdSsm& model, const FiniteGroup& g) {
    constexpr long long kBudget = 10000000;
    int depth = 0;
    long long total = 0, pw = 1;
    while (depth < 5) {
        pw *= g.order;
        if (total + pw > kBudget) break;
        total += pw;
        ++depth;
    }
    if (depth == 0) depth = 1;
    const TrackingReport rep = verify_exhaustive(model, g, depth);
    if (!rep.pass) {
        std::string msg = "compiled model failed pre-verification";
        if (rep.first_counterexample) {
            msg += " at step " + std::to_string(rep.first_counterexample->step_index);
        }
        throw GtssmError(msg);
    }
}

}  // namespace

SectionCocycle build_section_cocycle(const FiniteGroup& g, const SubgroupMask& n) {
    SectionCocycle sc;
    sc.quotient_map = quotient(g, n);  // throws NotNormalError
    const QuotientMap& qm = sc.quotient_map;
    const int q = qm.quotient.order;

    sc.d.assign(q, std::vector<elem_t>(q));
    for (int hp = 0; hp < q; ++hp)
        for (int h = 0; h < q; ++h) {
            const elem_t s_hp = qm.section[hp];
            const elem_t s_h = qm.section[h];
            const elem_t s_hph = qm.section[qm.quotient.mul(hp, h)];
            const elem_t d = g.mul(g.mul(s_hp, s_h), g.inv(s_hph));
            if (!n[d]) throw GtssmError("cocycle value escaped the normal subgroup");
            sc.d[hp][h] = d;
        }

    sc.kappa.assign(q, std::vector<elem_t>(g.order));
    for (int hp = 0; hp < q; ++hp)
        for (int a = 0; a < g.order; ++a) {
            const int h = qm.projection[a];
            const elem_t nn = g.mul(g.inv(qm.section[h]), a);  // g = s(h) n
            const elem_t s_hph = qm.section[qm.quotient.mul(hp, h)];
            const elem_t conj = g.mul(g.mul(s_hph, nn), g.inv(s_hph));
            const elem_t k = g.mul(sc.d[hp][h], conj);
            if (!n[k]) throw GtssmError("kappa value escaped the normal subgroup");
            sc.kappa[hp][a] = k;
        }
    return sc;
}

DcdSsm compile_abelian(const FiniteGroup& g, const FinitePrecisionConfig& cfg) {
    SubnormalSeries series;
    series.chain = {full_subgroup(g), trivial_subgroup(g)};
    if (!is_abelian(g)) throw NotAbelianError("compile_abelian: group is not Abelian");
    return compile_with_series(g, series, cfg);
}

DcdSsm compile_group(const FiniteGroup& g, const FinitePrecisionConfig& cfg) {
    auto series = derived_series(g);
    if (!series) {
        SubgroupMask residual = solvability_residual(g);
        throw NotSolvableError("group " + g.spec + " is not solvable (perfect subgroup of order " +
                                   std::to_string(mask_order(residual)) + ")",
                               residual);
    }
    return compile_with_series(g, *series, cfg);
}

DcdSsm compile_with_series(const FiniteGroup& g, const SubnormalSeries& series,
                           const FinitePrecisionConfig& cfg) {
    cfg.validate();
    validate_series(g, series);
    const int k = series.length();

    std::vector<Level> levels;
    levels.reserve(k);
    for (int j = 0; j < k; ++j) {
        Level lv{subgroup_view(g, series.chain[j]), {}, {}, {}, {}};
        const SubgroupMask& smaller = series.chain[j + 1];
        SubgroupMask n_sub(lv.ambient.group.order, 0);
        for (int x = 0; x < g.order; ++x)
            if (smaller[x]) n_sub[lv.ambient.from_parent[x]] = 1;
        lv.sc = build_section_cocycle(lv.ambient.group, n_sub);
        lv.dec = abelian_decomposition(lv.sc.quotient_map.quotient);
        const int q = lv.sc.quotient_map.quotient.order;
        lv.lambda_of_h.resize(q);
        for (int h = 0; h < q; ++h) lv.lambda_of_h[h] = root_tuple(lv.dec, h, cfg);
        lv.kappa_parent.assign(q, std::vector<elem_t>(g.order, -1));
        levels.push_back(std::move(lv));
    }
    // kappa over parent tokens: defined only for tokens inside the level's
    // ambient subgroup, which is all that ever reaches it
    for (int j = 0; j < k; ++j) {
        Level& lv = levels[j];
        const int q = lv.sc.quotient_map.quotient.order;
        for (int hp = 0; hp < q; ++hp)
            for (elem_t sub = 0; sub < lv.ambient.group.order; ++sub)
                lv.kappa_parent[hp][lv.ambient.to_parent[sub]] =
                    lv.ambient.to_parent[lv.sc.kappa[hp][sub]];
    }

    DcdSsm model;
    model.group_spec = g.spec;
    model.precision = cfg;

    // enumerate context tuples (h_1..h_{j-1}) in odometer order, last fastest
    auto factor_order = [&](int j) { return levels[j].sc.quotient_map.quotient.order; };

    for (int j = 0; j < k; ++j) {
        LayerTable layer;
        layer.dim = static_cast<int>(levels[j].dec.cyclic_orders.size());
        layer.context_arity = j;

        long anchors = 1;
        for (int i = 0; i < j; ++i) anchors *= factor_order(i);
        layer.context_anchors.resize(anchors);
        layer.lambda.assign(anchors, std::vector<CVec>(g.order));
        layer.b.assign(anchors, std::vector<CVec>(g.order));

        std::vector<int> tuple(j, 0);
        for (long a = 0; a < anchors; ++a) {
            CVec anchor;
            for (int i = 0; i < j; ++i)
                anchor.insert(anchor.end(), levels[i].lambda_of_h[tuple[i]].begin(),
                              levels[i].lambda_of_h[tuple[i]].end());
            layer.context_anchors[a] = std::move(anchor);

            for (elem_t tok = 0; tok < g.order; ++tok) {
                elem_t eff = tok;
                for (int i = 0; i < j; ++i) eff = levels[i].kappa_parent[tuple[i]][eff];
                const elem_t sub = levels[j].ambient.from_parent[eff];
                const int h = levels[j].sc.quotient_map.projection[sub];
                layer.lambda[a][tok] = levels[j].lambda_of_h[h];
                layer.b[a][tok] = CVec(layer.dim, Cplx{0.0, 0.0});
            }

            for (int i = j - 1; i >= 0; --i) {
                if (++tuple[i] < factor_order(i)) break;
                tuple[i] = 0;
            }
        }
        model.h0.push_back(CVec(layer.dim, Cplx{1.0, 0.0}));
        model.layers.push_back(std::move(layer));
    }

    // decoder: element g sits at the concatenated root tuples of its
    // residue chain h_j, where n_0 = g and n_j = n_{j-1} * s(h_j)^{-1}
    model.decoder_anchors.resize(g.order);
    model.decoder_elements.resize(g.order);
    for (elem_t x = 0; x < g.order; ++x) {
        CVec anchor;
        elem_t n = x;
        for (int j = 0; j < k; ++j) {
            const Level& lv = levels[j];
            const elem_t sub = lv.ambient.from_parent[n];
            const int h = lv.sc.quotient_map.projection[sub];
            anchor.insert(anchor.end(), lv.lambda_of_h[h].begin(), lv.lambda_of_h[h].end());
            const elem_t s_h = lv.sc.quotient_map.section[h];  // ambient index
            n = lv.ambient.to_parent[lv.ambient.group.mul(sub, lv.ambient.group.inv(s_h))];
        }
        if (n != g.identity) throw GtssmError("decoder residue chain did not terminate at e");
        model.decoder_anchors[x] = std::move(anchor);
        model.decoder_elements[x] = x;
    }

    model.validate();
    preverify(model, g);
    return model;
}

}  // namespace gtssm
