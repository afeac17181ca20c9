#include "gtssm/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gtssm/rng.hpp"

namespace gtssm {

namespace {

void check_axioms(const FiniteGroup& g) {
    const int n = g.order;
    if (n <= 0) throw InvalidTableError("empty table");
    if (static_cast<long long>(g.cayley.size()) != static_cast<long long>(n) * n)
        throw InvalidTableError("table is not order x order");
    for (elem_t v : g.cayley)
        if (v < 0 || v >= n) throw InvalidTableError("entry out of range");

    // Latin square: every row and column a permutation.
    std::vector<std::uint8_t> seen(n);
    for (int a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < n; ++b) {
            if (seen[g.mul(a, b)]++) throw InvalidTableError("row is not a permutation");
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < n; ++b) {
            if (seen[g.mul(b, a)]++) throw InvalidTableError("column is not a permutation");
        }
    }

    for (int a = 0; a < n; ++a)
        if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a)
            throw InvalidTableError("identity row/column mismatch");

    for (int a = 0; a < n; ++a) {
        const elem_t b = g.inverse_table[a];
        if (g.mul(a, b) != g.identity || g.mul(b, a) != g.identity)
            throw InvalidTableError("missing two-sided inverse");
    }

    auto assoc = [&](int a, int b, int c) {
        return g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
    };
    if (n <= kExhaustiveAxiomLimit) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (!assoc(a, b, c)) throw InvalidTableError("associativity fails");
    } else {
        SplitMix64 rng(0x67724f5541580000ULL ^ static_cast<std::uint64_t>(n));
        for (int i = 0; i < 10000; ++i) {
            const int a = static_cast<int>(rng.next_below(n));
            const int b = static_cast<int>(rng.next_below(n));
            const int c = static_cast<int>(rng.next_below(n));
            if (!assoc(a, b, c)) throw InvalidTableError("associativity fails (sampled)");
        }
    }
}

// Fills identity + inverse_table from the raw cayley table, then validates.
void finalize(FiniteGroup& g) {
    const int n = g.order;
    g.identity = -1;
    for (int e = 0; e < n && g.identity < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = g.mul(e, a) == a && g.mul(a, e) == a;
        if (ok) g.identity = e;
    }
    if (g.identity < 0) throw InvalidTableError("no identity element");

    g.inverse_table.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity) {
                g.inverse_table[a] = b;
                break;
            }
        }
        if (g.inverse_table[a] < 0) throw InvalidTableError("element without inverse");
    }
    if (g.labels.empty()) {
        g.labels.resize(n);
        for (int i = 0; i < n; ++i) g.labels[i] = "g" + std::to_string(i);
    }
    check_axioms(g);
}

using Perm = std::vector<int>;

Perm compose_perm(const Perm& a, const Perm& b) {  // (a∘b)(p) = a(b(p))
    Perm c(a.size());
    for (size_t p = 0; p < a.size(); ++p) c[p] = a[b[p]];
    return c;
}

bool perm_even(const Perm& p) {
    int transpositions = 0;
    std::vector<std::uint8_t> seen(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

std::string cycle_label(const Perm& p) {
    std::string out;
    std::vector<std::uint8_t> seen(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        out += '(';
        for (size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            out += std::to_string(j + 1);  // 1-based points
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

FiniteGroup from_perms(std::vector<Perm> perms, std::string spec, std::string order_tag) {
    FiniteGroup g;
    g.order = static_cast<int>(perms.size());
    g.spec = std::move(spec);
    g.element_order = std::move(order_tag);
    g.cayley.resize(static_cast<size_t>(g.order) * g.order);

    std::vector<std::pair<Perm, int>> index;
    index.reserve(perms.size());
    for (int i = 0; i < g.order; ++i) index.emplace_back(perms[i], i);
    std::sort(index.begin(), index.end());
    auto lookup = [&](const Perm& p) {
        auto it = std::lower_bound(index.begin(), index.end(), p,
                                   [](const auto& e, const Perm& q) { return e.first < q; });
        return it->second;
    };

    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            g.cayley[static_cast<size_t>(a) * g.order + b] = lookup(compose_perm(perms[a], perms[b]));

    g.labels.resize(g.order);
    for (int i = 0; i < g.order; ++i) g.labels[i] = cycle_label(perms[i]);
    finalize(g);
    return g;
}

}  // namespace

FiniteGroup cyclic_group(int n) {
    if (n < 1) throw std::invalid_argument("cyclic: n >= 1");
    if (n > kOrderLimit) throw SizeLimitError("cyclic order exceeds limit");
    FiniteGroup g;
    g.order = n;
    g.spec = "cyclic:" + std::to_string(n);
    g.element_order = "residue";
    g.cayley.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.cayley[static_cast<size_t>(a) * n + b] = (a + b) % n;
    g.labels.resize(n);
    for (int i = 0; i < n; ++i) g.labels[i] = std::to_string(i);
    finalize(g);
    return g;
}

FiniteGroup symmetric_group(int n) {
    if (n < 1) throw std::invalid_argument("symmetric: n >= 1");
    if (factorial(n) > kOrderLimit) throw SizeLimitError("symmetric order exceeds limit");
    std::vector<Perm> perms;
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::string tag = "one-line-lex";
    if (n == 3) {
        // classical table ordering [e,(12),(13),(23),(123),(132)]
        perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
        tag = "s3-table";
    }
    return from_perms(std::move(perms), "symmetric:" + std::to_string(n), tag);
}

FiniteGroup alternating_group(int n) {
    if (n < 1) throw std::invalid_argument("alternating: n >= 1");
    if (factorial(n) / 2 > kOrderLimit) throw SizeLimitError("alternating order exceeds limit");
    std::vector<Perm> perms;
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        if (perm_even(p)) perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return from_perms(std::move(perms), "alternating:" + std::to_string(n), "one-line-lex");
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const long long n = static_cast<long long>(a.order) * b.order;
    if (n > kOrderLimit) throw SizeLimitError("product order exceeds limit");
    FiniteGroup g;
    g.order = static_cast<int>(n);
    g.spec = "product:" + a.spec + "," + b.spec;
    g.element_order = "pair-lex";
    g.cayley.resize(static_cast<size_t>(n) * n);
    auto idx = [&](int x, int y) { return x * b.order + y; };
    for (int xa = 0; xa < a.order; ++xa)
        for (int ya = 0; ya < b.order; ++ya)
            for (int xb = 0; xb < a.order; ++xb)
                for (int yb = 0; yb < b.order; ++yb)
                    g.cayley[static_cast<size_t>(idx(xa, ya)) * n + idx(xb, yb)] =
                        idx(a.mul(xa, xb), b.mul(ya, yb));
    g.labels.resize(n);
    for (int x = 0; x < a.order; ++x)
        for (int y = 0; y < b.order; ++y)
            g.labels[idx(x, y)] = "(" + a.labels[x] + "," + b.labels[y] + ")";
    finalize(g);
    return g;
}

FiniteGroup group_from_table(const std::vector<std::vector<elem_t>>& table,
                             std::vector<std::string> labels) {
    const int n = static_cast<int>(table.size());
    if (n > kOrderLimit) throw SizeLimitError("table order exceeds limit");
    FiniteGroup g;
    g.order = n;
    g.spec = "from_table:" + std::to_string(n);
    g.element_order = "as-given";
    g.cayley.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n) throw InvalidTableError("ragged table");
        for (int b = 0; b < n; ++b) g.cayley[static_cast<size_t>(a) * n + b] = table[a][b];
    }
    g.labels = std::move(labels);
    if (!g.labels.empty() && static_cast<int>(g.labels.size()) != n)
        throw InvalidTableError("label count mismatch");
    finalize(g);
    return g;
}

std::string GroupSpec::to_string() const {
    switch (kind) {
        case Kind::Cyclic: return "cyclic:" + std::to_string(n);
        case Kind::Symmetric: return "symmetric:" + std::to_string(n);
        case Kind::Alternating: return "alternating:" + std::to_string(n);
        case Kind::FromTable: return "from_table:" + std::to_string(n);
        case Kind::Product: {
            std::string out = "product:";
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i) out += ",";
                out += factors[i].to_string();
            }
            return out;
        }
    }
    return "?";
}

GroupSpec GroupSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("group spec: missing ':'");
    const std::string head = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    GroupSpec s;
    auto parse_n = [&](const std::string& v) {
        size_t used = 0;
        int n = std::stoi(v, &used);
        if (used != v.size() || n < 1) throw std::invalid_argument("group spec: bad parameter");
        return n;
    };
    if (head == "cyclic") {
        s.kind = Kind::Cyclic;
        s.n = parse_n(rest);
    } else if (head == "symmetric") {
        s.kind = Kind::Symmetric;
        s.n = parse_n(rest);
    } else if (head == "alternating") {
        s.kind = Kind::Alternating;
        s.n = parse_n(rest);
    } else if (head == "product") {
        s.kind = Kind::Product;
        std::stringstream ss(rest);
        std::string part;
        while (std::getline(ss, part, ',')) s.factors.push_back(parse(part));
        if (s.factors.size() < 2) throw std::invalid_argument("product: need at least two factors");
    } else {
        throw std::invalid_argument("group spec: unknown kind '" + head + "'");
    }
    return s;
}

FiniteGroup construct_group(const GroupSpec& spec) {
    switch (spec.kind) {
        case GroupSpec::Kind::Cyclic: return cyclic_group(spec.n);
        case GroupSpec::Kind::Symmetric: return symmetric_group(spec.n);
        case GroupSpec::Kind::Alternating: return alternating_group(spec.n);
        case GroupSpec::Kind::Product: {
            FiniteGroup g = construct_group(spec.factors[0]);
            for (size_t i = 1; i < spec.factors.size(); ++i)
                g = direct_product(g, construct_group(spec.factors[i]));
            return g;
        }
        case GroupSpec::Kind::FromTable:
            throw std::invalid_argument("from_table groups cannot be built from a spec string");
    }
    throw std::invalid_argument("bad spec");
}

FiniteGroup construct_group(const std::string& spec_text) {
    return construct_group(GroupSpec::parse(spec_text));
}

elem_t multiply(const FiniteGroup& g, elem_t a, elem_t b) {
    if (a < 0 || a >= g.order || b < 0 || b >= g.order)
        throw std::out_of_range("multiply: element index out of range");
    return g.mul(a, b);
}

elem_t inverse(const FiniteGroup& g, elem_t a) {
    if (a < 0 || a >= g.order) throw std::out_of_range("inverse: element index out of range");
    return g.inv(a);
}

bool is_abelian(const FiniteGroup& g) {
    for (int a = 0; a < g.order; ++a)
        for (int b = a + 1; b < g.order; ++b)
            if (g.mul(a, b) != g.mul(b, a)) return false;
    return true;
}

int element_order(const FiniteGroup& g, elem_t a) {
    int k = 1;
    elem_t x = a;
    while (x != g.identity) {
        x = g.mul(x, a);
        ++k;
    }
    return k;
}

std::vector<elem_t> prefix_products(const FiniteGroup& g, const std::vector<elem_t>& seq) {
    std::vector<elem_t> out;
    out.reserve(seq.size());
    elem_t acc = g.identity;
    for (elem_t x : seq) {
        acc = multiply(g, acc, x);
        out.push_back(acc);
    }
    return out;
}

bool is_subgroup(const FiniteGroup& g, const SubgroupMask& h) {
    if (static_cast<int>(h.size()) != g.order) return false;
    if (!h[g.identity]) return false;
    for (int a = 0; a < g.order; ++a) {
        if (!h[a]) continue;
        if (!h[g.inv(a)]) return false;
        for (int b = 0; b < g.order; ++b)
            if (h[b] && !h[g.mul(a, b)]) return false;
    }
    return true;
}

bool is_normal(const FiniteGroup& g, const SubgroupMask& h) {
    if (!is_subgroup(g, h)) throw NotASubgroupError("is_normal: mask is not a subgroup");
    for (int a = 0; a < g.order; ++a)
        for (int x = 0; x < g.order; ++x)
            if (h[x] && !h[g.mul(g.mul(a, x), g.inv(a))]) return false;
    return true;
}

SubgroupMask trivial_subgroup(const FiniteGroup& g) {
    SubgroupMask m(g.order, 0);
    m[g.identity] = 1;
    return m;
}

SubgroupMask full_subgroup(const FiniteGroup& g) { return SubgroupMask(g.order, 1); }

std::vector<elem_t> mask_elements(const SubgroupMask& m) {
    std::vector<elem_t> out;
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i]) out.push_back(static_cast<elem_t>(i));
    return out;
}

int mask_order(const SubgroupMask& m) {
    return static_cast<int>(std::count(m.begin(), m.end(), std::uint8_t{1}));
}

SubgroupMask commutator_subgroup(const FiniteGroup& g, const SubgroupMask& within) {
    SubgroupMask k(g.order, 0);
    k[g.identity] = 1;
    std::vector<elem_t> members{g.identity};

    auto add = [&](elem_t x) {
        if (!k[x]) {
            k[x] = 1;
            members.push_back(x);
        }
    };

    const std::vector<elem_t> elems = mask_elements(within);
    for (elem_t a : elems)
        for (elem_t b : elems)
            add(g.mul(g.mul(g.mul(a, b), g.inv(a)), g.inv(b)));

    // close the generating set under products
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = 0; j < members.size(); ++j) add(g.mul(members[i], members[j]));
    return k;
}

SubgroupMask commutator_subgroup(const FiniteGroup& g) {
    return commutator_subgroup(g, full_subgroup(g));
}

namespace {

// Runs the commutator iteration to its fixed point.
std::vector<SubgroupMask> derived_chain(const FiniteGroup& g) {
    std::vector<SubgroupMask> chain{full_subgroup(g)};
    for (;;) {
        SubgroupMask next = commutator_subgroup(g, chain.back());
        if (next == chain.back()) break;
        chain.push_back(std::move(next));
        if (mask_order(chain.back()) == 1) break;
    }
    return chain;
}

}  // namespace

std::optional<SubnormalSeries> derived_series(const FiniteGroup& g) {
    auto chain = derived_chain(g);
    if (mask_order(chain.back()) != 1) return std::nullopt;
    return SubnormalSeries{std::move(chain)};
}

SubgroupMask solvability_residual(const FiniteGroup& g) {
    return derived_chain(g).back();
}

void validate_series(const FiniteGroup& g, const SubnormalSeries& series) {
    if (series.chain.size() < 2) throw InvalidSeriesError("series needs at least two entries");
    if (series.chain.front() != full_subgroup(g))
        throw InvalidSeriesError("series must start at the full group");
    if (mask_order(series.chain.back()) != 1 || !series.chain.back()[g.identity])
        throw InvalidSeriesError("series must end at the trivial subgroup");
    for (size_t i = 0; i + 1 < series.chain.size(); ++i) {
        const SubgroupMask& big = series.chain[i];
        const SubgroupMask& small = series.chain[i + 1];
        for (int x = 0; x < g.order; ++x)
            if (small[x] && !big[x]) throw InvalidSeriesError("chain is not descending");
        SubgroupView amb = subgroup_view(g, big);
        SubgroupMask sub(amb.group.order, 0);
        for (int x = 0; x < g.order; ++x)
            if (small[x]) sub[amb.from_parent[x]] = 1;
        if (!is_subgroup(amb.group, sub)) throw InvalidSeriesError("chain entry is not a subgroup");
        if (!is_normal(amb.group, sub)) throw InvalidSeriesError("chain entry is not normal in its predecessor");
        QuotientMap q = quotient(amb.group, sub);
        if (!is_abelian(q.quotient)) throw InvalidSeriesError("factor is not Abelian");
    }
}

QuotientMap quotient(const FiniteGroup& g, const SubgroupMask& n) {
    if (!is_normal(g, n)) throw NotNormalError("quotient: subgroup is not normal");

    const std::vector<elem_t> nelems = mask_elements(n);
    std::vector<elem_t> coset_of(g.order, -1);
    std::vector<elem_t> reps;  // least element per coset, in discovery (= least-rep) order
    for (int a = 0; a < g.order; ++a) {
        if (coset_of[a] >= 0) continue;
        const elem_t c = static_cast<elem_t>(reps.size());
        reps.push_back(a);
        for (elem_t x : nelems) coset_of[g.mul(a, x)] = c;
    }

    QuotientMap qm;
    const int q = static_cast<int>(reps.size());
    qm.projection = coset_of;
    qm.section = reps;
    // identity coset maps to the identity element even if it is not the
    // least index (possible for from_table groups)
    qm.section[coset_of[g.identity]] = g.identity;

    qm.quotient.order = q;
    qm.quotient.spec = "quotient(" + g.spec + ")/" + std::to_string(mask_order(n));
    qm.quotient.element_order = "coset-least-rep";
    qm.quotient.cayley.resize(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            qm.quotient.cayley[static_cast<size_t>(a) * q + b] =
                coset_of[g.mul(qm.section[a], qm.section[b])];
    qm.quotient.labels.resize(q);
    for (int c = 0; c < q; ++c) qm.quotient.labels[c] = "[" + g.labels[qm.section[c]] + "]";
    finalize(qm.quotient);

    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (qm.quotient.mul(coset_of[a], coset_of[b]) != coset_of[g.mul(a, b)])
                throw NotNormalError("quotient: projection is not a homomorphism");
    return qm;
}

namespace {

// Searches for independent generators realizing the given (descending)
// cyclic orders as an internal direct product.  Small orders only; fine
// for the Abelian factors this project meets.
bool find_generators(const FiniteGroup& g, const std::vector<int>& orders_desc, size_t at,
                     std::vector<elem_t>& gens, std::vector<elem_t>& span,
                     std::vector<std::uint8_t>& in_span) {
    if (at == orders_desc.size()) return span.size() == static_cast<size_t>(g.order);
    const int want = orders_desc[at];
    for (int cand = 0; cand < g.order; ++cand) {
        if (element_order(g, cand) != want) continue;
        // extend span by <cand>; injectivity means no early collision
        std::vector<elem_t> extended = span;
        bool ok = true;
        elem_t p = cand;
        for (int k = 1; k < want && ok; ++k) {
            for (elem_t s : span) {
                const elem_t v = g.mul(s, p);
                if (in_span[v]) {
                    ok = false;
                    break;
                }
                extended.push_back(v);
            }
            if (ok)
                for (size_t i = span.size() * k; i < extended.size(); ++i) in_span[extended[i]] = 1;
            p = g.mul(p, cand);
        }
        if (ok) {
            gens.push_back(cand);
            std::vector<elem_t> saved_span = span;
            span = extended;
            if (find_generators(g, orders_desc, at + 1, gens, span, in_span)) return true;
            span = saved_span;
            gens.pop_back();
        }
        // reset membership to current span
        std::fill(in_span.begin(), in_span.end(), 0);
        for (elem_t s : span) in_span[s] = 1;
    }
    return false;
}

}  // namespace

AbelianDecomposition abelian_decomposition(const FiniteGroup& g) {
    if (!is_abelian(g)) throw NotAbelianError("abelian_decomposition: group is not Abelian");

    AbelianDecomposition out;
    if (g.order == 1) {
        out.cyclic_orders = {1};
        out.iso = {{0}};
        return out;
    }

    // Invariant factors from the primary decomposition: for each prime p,
    // counting solutions of x^(p^k) = e pins down the multiset of cyclic
    // p-power factors; zipping the per-prime lists largest-first gives the
    // invariant factors.
    std::vector<int> orders;  // built largest-first
    {
        std::vector<int> elem_orders(g.order);
        for (int a = 0; a < g.order; ++a) elem_orders[a] = element_order(g, a);

        std::vector<std::pair<int, int>> pf;  // (p, a) with p^a || |G|
        {
            int m = g.order;
            for (int p = 2; static_cast<long long>(p) * p <= m; ++p) {
                if (m % p) continue;
                int a = 0;
                while (m % p == 0) {
                    m /= p;
                    ++a;
                }
                pf.emplace_back(p, a);
            }
            if (m > 1) pf.emplace_back(m, 1);
        }

        std::vector<std::vector<int>> primary;  // per prime: exponent list, descending
        for (auto [p, a] : pf) {
            std::vector<int> c(a + 1, 0);  // c[k] = log_p #{x : order(x) | p^k}
            long long pk = 1;
            for (int k = 0; k <= a; ++k) {
                int cnt = 0;
                for (int x = 0; x < g.order; ++x)
                    if (pk % elem_orders[x] == 0) ++cnt;
                int lg = 0;
                while (cnt > 1) {
                    if (cnt % p) throw NotAbelianError("abelian_decomposition: bad p-power count");
                    cnt /= p;
                    ++lg;
                }
                c[k] = lg;
                pk *= p;
            }
            std::vector<int> exps;
            for (int k = a; k >= 1; --k) {
                const int at_least_k = c[k] - c[k - 1];
                const int at_least_k1 = (k + 1 <= a) ? c[k + 1] - c[k] : 0;
                for (int i = 0; i < at_least_k - at_least_k1; ++i) exps.push_back(k);
            }
            primary.push_back(std::move(exps));
        }

        size_t nfac = 0;
        for (const auto& v : primary) nfac = std::max(nfac, v.size());
        for (size_t i = 0; i < nfac; ++i) {
            long long d = 1;
            for (size_t pi = 0; pi < primary.size(); ++pi)
                if (i < primary[pi].size())
                    for (int k = 0; k < primary[pi][i]; ++k) d *= pf[pi].first;
            orders.push_back(static_cast<int>(d));
        }
    }

    std::vector<elem_t> gens;
    std::vector<elem_t> span{g.identity};
    std::vector<std::uint8_t> in_span(g.order, 0);
    in_span[g.identity] = 1;
    if (!find_generators(g, orders, 0, gens, span, in_span))
        throw NotAbelianError("abelian_decomposition: generator search failed");

    // exponent tuples by walking the product enumeration
    const size_t ncomp = orders.size();
    out.iso.assign(g.order, std::vector<int>(ncomp, 0));
    {
        std::vector<int> exps(ncomp, 0);
        std::vector<std::uint8_t> filled(g.order, 0);
        elem_t cur = g.identity;
        auto write = [&](elem_t v) {
            for (size_t j = 0; j < ncomp; ++j) out.iso[v][ncomp - 1 - j] = exps[j];  // ascending order
            filled[v] = 1;
        };
        // odometer over exponent tuples, maintaining the running product
        std::vector<elem_t> partial(ncomp + 1, g.identity);  // partial[j] = prod of gens[0..j-1]^exps
        size_t total = 1;
        for (int k : orders) total *= static_cast<size_t>(k);
        for (size_t it = 0;; ++it) {
            cur = partial[ncomp];
            write(cur);
            if (it + 1 == total) break;
            size_t j = ncomp;
            while (j > 0 && exps[j - 1] + 1 == orders[j - 1]) {
                exps[--j] = 0;
            }
            ++exps[j - 1];
            for (size_t r = j - 1; r < ncomp; ++r) {
                elem_t p = partial[r];
                for (int k = 0; k < exps[r]; ++k) p = g.mul(p, gens[r]);
                partial[r + 1] = p;
            }
        }
        for (int a = 0; a < g.order; ++a)
            if (!filled[a]) throw NotAbelianError("abelian_decomposition: enumeration not onto");
    }

    out.cyclic_orders.assign(orders.rbegin(), orders.rend());  // ascending, each divides the next

    // exhaustive homomorphism check
    const auto& ks = out.cyclic_orders;
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b) {
            const elem_t ab = g.mul(a, b);
            for (size_t j = 0; j < ncomp; ++j)
                if ((out.iso[a][j] + out.iso[b][j]) % ks[j] != out.iso[ab][j])
                    throw NotAbelianError("abelian_decomposition: iso is not a homomorphism");
        }
    return out;
}

SubgroupView subgroup_view(const FiniteGroup& g, const SubgroupMask& mask) {
    if (!is_subgroup(g, mask)) throw NotASubgroupError("subgroup_view: mask is not a subgroup");
    SubgroupView v;
    v.to_parent = mask_elements(mask);
    v.from_parent.assign(g.order, -1);
    for (size_t i = 0; i < v.to_parent.size(); ++i) v.from_parent[v.to_parent[i]] = static_cast<elem_t>(i);

    const int m = static_cast<int>(v.to_parent.size());
    v.group.order = m;
    v.group.spec = "subgroup(" + g.spec + "):" + std::to_string(m);
    v.group.element_order = "parent-order";
    v.group.cayley.resize(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            v.group.cayley[static_cast<size_t>(a) * m + b] =
                v.from_parent[g.mul(v.to_parent[a], v.to_parent[b])];
    v.group.labels.resize(m);
    for (int i = 0; i < m; ++i) v.group.labels[i] = g.labels[v.to_parent[i]];
    finalize(v.group);
    return v;
}

}  // namespace gtssm
