#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtssm/common.hpp"

namespace gtssm {

// Largest group order accepted by construct_group.
inline constexpr int kOrderLimit = 10080;
// Orders up to this get the full O(n^3) associativity sweep; larger tables
// are spot-checked on 10^4 seeded random triples.
inline constexpr int kExhaustiveAxiomLimit = 256;

/// Finite group as an explicit Cayley table with canonical element indexing.
///
/// Indexing conventions (these are what make datasets bit-reproducible):
///   cyclic:n      residues 0..n-1
///   symmetric:n   permutations ordered lexicographically by one-line
///                 notation, except n=3 which uses the classical table
///                 ordering [e,(12),(13),(23),(123),(132)]
///   alternating:n even permutations, lexicographic one-line order
///   product:a,b   index of (x, y) is x*|B| + y
///
/// Multiplication a⊙b composes permutations as (a⊙b)(p) = a(b(p)); at the
/// sequence level new tokens multiply on the right: y_t = x_1⊙…⊙x_t.
struct FiniteGroup {
    int order = 0;
    std::vector<elem_t> cayley;  // row-major order x order; row = left operand
    elem_t identity = 0;
    std::vector<elem_t> inverse_table;
    std::vector<std::string> labels;
    std::string spec;           // compact descriptor, e.g. "cyclic:60"
    std::string element_order;  // indexing convention tag, rides in dataset headers

    elem_t mul(elem_t a, elem_t b) const { return cayley[static_cast<size_t>(a) * order + b]; }
    elem_t inv(elem_t a) const { return inverse_table[a]; }
    const std::string& label(elem_t a) const { return labels[a]; }
};

using SubgroupMask = std::vector<std::uint8_t>;  // length = order, 1 = member

/// Descending chain from the full group to {e}; every entry is normal in
/// its predecessor and consecutive quotients are Abelian.
struct SubnormalSeries {
    std::vector<SubgroupMask> chain;  // chain.front() = G, chain.back() = {e}
    int length() const { return static_cast<int>(chain.size()) - 1; }
};

struct AbelianDecomposition {
    std::vector<int> cyclic_orders;       // invariant factors, each divides the next
    std::vector<std::vector<int>> iso;    // element index -> exponent tuple
};

struct QuotientMap {
    FiniteGroup quotient;
    std::vector<elem_t> projection;  // G index -> quotient index
    std::vector<elem_t> section;     // quotient index -> coset representative in G
};

// ---- construction ----------------------------------------------------------

struct GroupSpec {
    enum class Kind { Cyclic, Symmetric, Alternating, Product, FromTable };
    Kind kind = Kind::Cyclic;
    int n = 1;                       // cyclic/symmetric/alternating parameter
    std::vector<GroupSpec> factors;  // product factors

    std::string to_string() const;
    static GroupSpec parse(const std::string& text);  // throws on bad grammar
};

FiniteGroup construct_group(const GroupSpec& spec);
FiniteGroup construct_group(const std::string& spec_text);

FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n);
FiniteGroup alternating_group(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup group_from_table(const std::vector<std::vector<elem_t>>& table,
                             std::vector<std::string> labels = {});

// ---- elementary queries ----------------------------------------------------

elem_t multiply(const FiniteGroup& g, elem_t a, elem_t b);
elem_t inverse(const FiniteGroup& g, elem_t a);
bool is_abelian(const FiniteGroup& g);
int element_order(const FiniteGroup& g, elem_t a);

std::vector<elem_t> prefix_products(const FiniteGroup& g, const std::vector<elem_t>& seq);

// ---- subgroup machinery ----------------------------------------------------

bool is_subgroup(const FiniteGroup& g, const SubgroupMask& h);
// Throws NotASubgroupError when h is not a subgroup.
bool is_normal(const FiniteGroup& g, const SubgroupMask& h);
SubgroupMask trivial_subgroup(const FiniteGroup& g);
SubgroupMask full_subgroup(const FiniteGroup& g);
std::vector<elem_t> mask_elements(const SubgroupMask& m);
int mask_order(const SubgroupMask& m);

// Smallest normal subgroup with Abelian quotient (closure of commutators).
SubgroupMask commutator_subgroup(const FiniteGroup& g);
// Same, restricted to the subgroup picked out by `within`.
SubgroupMask commutator_subgroup(const FiniteGroup& g, const SubgroupMask& within);

// Derived series G ⊵ [G,G] ⊵ … ; empty when the iteration stalls above {e}.
// The stalled (perfect) subgroup is then available via solvability_residual.
std::optional<SubnormalSeries> derived_series(const FiniteGroup& g);
// {e}-mask iff solvable; otherwise the stabilized perfect subgroup.
SubgroupMask solvability_residual(const FiniteGroup& g);

// Throws InvalidSeriesError unless chain runs G -> {e} with each entry
// normal in its predecessor and all factors Abelian.
void validate_series(const FiniteGroup& g, const SubnormalSeries& series);

// Throws NotNormalError when n is not normal.  Section picks the
// least-index representative per coset (identity coset -> identity).
QuotientMap quotient(const FiniteGroup& g, const SubgroupMask& n);

// Throws NotAbelianError.  Exhaustively verified bijective homomorphism.
AbelianDecomposition abelian_decomposition(const FiniteGroup& g);

// Subgroup re-indexed as a standalone group, with index maps both ways.
struct SubgroupView {
    FiniteGroup group;
    std::vector<elem_t> to_parent;    // sub index -> parent index
    std::vector<elem_t> from_parent;  // parent index -> sub index or -1
};
SubgroupView subgroup_view(const FiniteGroup& g, const SubgroupMask& mask);

}  // namespace gtssm
