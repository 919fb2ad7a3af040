#pragma once

// Finite groups as explicit Cayley tables, plus the subgroup / coset /
// conjugacy combinatorics the cohomology formulas index over.  Element 0 is
// always the identity; all representative choices (class reps, coset reps,
// double-coset reps) are lex-minimal by element index so that every
// downstream construction is reproducible across runs.

#include <memory>
#include <string>
#include <vector>

#include "blockstein/errors.hpp"

namespace blockstein {

struct GroupTable;
using GroupPtr = std::shared_ptr<const GroupTable>;

struct GroupTable {
    int n = 1;
    std::vector<int> mult;            // n*n, mult[a*n+b] = a*b
    std::vector<int> inv;             // two-sided inverses
    std::vector<std::string> labels;  // empty or size n

    int mul(int a, int b) const { return mult[size_t(a) * n + b]; }
    int invert(int a) const { return inv[a]; }
    int conj(int g, int a) const { return mul(mul(g, a), inv[g]); }  // ^g a = g a g^-1
    int conj_by_inv(int g, int a) const { return mul(mul(inv[g], a), g); }  // a^g
    int order_of(int a) const;
    int exponent() const;
    bool is_abelian() const;
    std::string label(int a) const;

    // Validates identity, inverses and associativity (exhaustive for n <= 64,
    // 10^4 random triples above).
    static GroupPtr make(int n, std::vector<int> mult, std::vector<std::string> labels = {});
};

struct Subgroup {
    GroupPtr parent;
    std::vector<int> elems;  // sorted element indices
    bool normal_in_parent = false;

    int order() const { return int(elems.size()); }
    bool contains(int g) const;
    int position_of(int g) const;  // index into elems, -1 if absent
};

struct DoubleCosetDecomposition {
    GroupPtr parent;
    std::vector<int> reps;    // ascending lex-minimal representatives
    std::vector<int> rep_of;  // element -> its double-coset representative
};

struct GroupHom {
    GroupPtr domain, codomain;
    std::vector<int> image;  // image[g] per domain element

    int operator()(int g) const { return image[g]; }
};
GroupHom make_hom(GroupPtr dom, GroupPtr cod, std::vector<int> image);  // validated

// Catalog names: C{n}, D{n} (order 2n), Q8, S2..S4, A4, and direct products
// joined with 'x' (e.g. C2xC2).  Deterministic element order, identity first.
GroupPtr from_catalog(const std::string& name, int order_cap = 64);
GroupPtr from_mult_table(int n, const std::vector<std::vector<int>>& table, int order_cap = 64);

struct ConjClass {
    int rep;                  // lex-minimal member
    std::vector<int> members; // sorted
};
// g_1 = identity first, remaining classes by ascending representative.
std::vector<ConjClass> conjugacy_classes(const GroupTable& G);

Subgroup whole_group(GroupPtr G);
Subgroup trivial_subgroup(GroupPtr G);
Subgroup make_subgroup(GroupPtr G, std::vector<int> elems);  // validated, normality computed
Subgroup subgroup_closure(GroupPtr G, const std::vector<int>& gens);
Subgroup centralizer(GroupPtr G, int g);
Subgroup centralizer_of_set(GroupPtr G, const std::vector<int>& set);
Subgroup normalizer(GroupPtr G, const Subgroup& S);
Subgroup intersect(const Subgroup& A, const Subgroup& B);
Subgroup conjugate_subgroup(const Subgroup& S, int g);  // ^g S
bool subgroup_leq(const Subgroup& A, const Subgroup& B);
bool subgroups_conjugate(const Subgroup& A, const Subgroup& B);

std::vector<int> left_coset_reps(const Subgroup& H);   // G = disjoint union of t H
std::vector<int> right_coset_reps(const Subgroup& H);  // G = disjoint union of H t
DoubleCosetDecomposition double_cosets(GroupPtr G, const Subgroup& H, const Subgroup& K);

Subgroup sylow_p(GroupPtr G, int p);
std::vector<Subgroup> p_subgroups_up_to_conj(GroupPtr G, int p);

// A subgroup realized as a group table of its own, with index maps.
struct SubgroupTable {
    GroupPtr table;
    GroupPtr parent;
    std::vector<int> to_parent;    // table index -> parent element
    std::vector<int> from_parent;  // parent element -> table index, -1 outside
};
SubgroupTable subgroup_table(const Subgroup& H);

// All subgroups of a (small) group given by its own table, ascending by
// order then lex.  Intended for p-groups of order <= 16.
std::vector<Subgroup> all_subgroups(GroupPtr G);

struct DirectSquare {
    GroupPtr pxp;       // P x P on pair indices a*|P|+b
    Subgroup delta;     // diagonal subgroup
    GroupHom embed;     // P -> PxP, a -> (a,a)
    GroupHom proj1, proj2;
    int n = 1;          // |P|

    int pair(int a, int b) const { return a * n + b; }
    int first(int g) const { return g / n; }
    int second(int g) const { return g % n; }
};
DirectSquare direct_square_with_delta(GroupPtr P);

// Q_x = {(a, a^x) : a in P meet ^xP} as a subgroup of PxP.  P is a subgroup
// of some ambient group, given by its table, and x is an ambient element.
Subgroup q_x_subgroup(const SubgroupTable& P, const DirectSquare& ds, int x);
// Q_{u,v,x} = Delta P meet ^{(u,v)} Q_x; u,v are P-table indices.
Subgroup q_uvx_subgroup(const SubgroupTable& P, const DirectSquare& ds, int u, int v, int x);

}  // namespace blockstein
