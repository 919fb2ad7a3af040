#pragma once

// Finite-dimensional modules over group algebras: the coefficient modules the
// cohomology engine consumes (group algebra under conjugation, blocks, source
// algebras) and the module-theoretic algorithms behind the structural
// decompositions (radical, idempotent lifting, indecomposable summands,
// certified isomorphism testing, induction).

#include <memory>
#include <optional>
#include <vector>

#include "blockstein/exactlin.hpp"
#include "blockstein/grp.hpp"

namespace blockstein {

struct GModule;
using ModulePtr = std::shared_ptr<const GModule>;

// Bilinear pairing mu: M x M -> M given by structure constants,
// tensor[(i*dim+j)*dim+k] = coefficient of e_k in mu(e_i, e_j).
struct Pairing {
    int dim = 0;
    std::vector<int> tensor;
    std::vector<int> unit;

    int coeff(int i, int j, int k) const { return tensor[(size_t(i) * dim + j) * dim + k]; }
};

struct GModule {
    GroupPtr group;
    FieldSpec field;
    int dim = 0;
    std::vector<Matrix> action;   // one invertible matrix per group element
    std::optional<Pairing> mu;    // present for algebra coefficients

    bool trivial_action = false;  // every action matrix is the identity

    std::vector<int> act(int g, const std::vector<int>& v) const;
    std::vector<int> mul(const std::vector<int>& x, const std::vector<int>& y) const;  // needs mu
};

// Validates the homomorphism property of the action (exhaustively for
// |G| <= 24, sampling above), and the algebra laws when mu is present.
// mu_equivariant additionally requires the group to act by algebra
// automorphisms (true for conjugation actions, false for bimodule actions).
ModulePtr make_module(GroupPtr G, FieldSpec F, std::vector<Matrix> action,
                      std::optional<Pairing> mu = std::nullopt, bool mu_equivariant = true);

struct ModuleHom {
    ModulePtr domain, codomain;
    Matrix mat;
};

struct AlgebraElement {
    ModulePtr parent;  // must carry mu
    std::vector<int> coords;
};

ModulePtr conjugation_module(GroupPtr G, const FieldSpec& F);  // kG, g.a = gag^-1
ModulePtr trivial_module(GroupPtr H, const FieldSpec& F);      // k
ModulePtr group_algebra_bimodule(GroupPtr G, const DirectSquare& ds, const FieldSpec& F);
// Permutation module k[HxK] on a double coset, as a module over ds.pxp with
// (u,v).g = u g v^-1; basis = sorted elements of the coset (ambient indices).
ModulePtr double_coset_module(const SubgroupTable& P, const DirectSquare& ds,
                              const std::vector<int>& coset_elems, const FieldSpec& F);

ModulePtr restrict_module(const ModulePtr& M, const SubgroupTable& H);
ModulePtr restrict_along(const ModulePtr& M, const GroupHom& phi);  // injective phi
ModulePtr induce(const SubgroupTable& H, const ModulePtr& MH);      // Ind_H^G

std::vector<ModuleHom> hom_space(const ModulePtr& M, const ModulePtr& N);

// ------------------------------------------------------------------ Algebra
//
// A finite-dimensional associative unital algebra by structure constants.
// Supports the radical via the characteristic-polynomial-coefficient chain
// (with a Frobenius-kernel shortcut for commutative algebras), Berlekamp-style
// idempotent splitting over the semisimple quotient, and exact idempotent
// lifting by p-th powers.

struct Algebra {
    FieldSpec field;
    int dim = 0;
    std::vector<int> mult;  // (i*dim+j)*dim+k structure constants
    std::vector<int> unit;

    int coeff(int i, int j, int k) const { return mult[(size_t(i) * dim + j) * dim + k]; }
    std::vector<int> mul(const std::vector<int>& x, const std::vector<int>& y) const;
    std::vector<int> power(std::vector<int> x, long e) const;
    bool is_commutative() const;
};

Algebra algebra_of(const GModule& M);  // requires mu

// Subalgebra spanned by the given columns of the parent coordinate space;
// throws if not closed or if the designated unit is absent.
struct Subalgebra {
    Algebra alg;
    Matrix basis;  // parent_dim x alg.dim
    ColspaceSolver into_basis;

    std::vector<int> to_sub(const std::vector<int>& parent_vec) const;
    std::vector<int> to_parent(const std::vector<int>& sub_vec) const;
};
Subalgebra subalgebra(const Algebra& parent, const Matrix& basis_cols, const std::vector<int>& unit_parent);

// Jacobson radical, returned as a matrix whose columns are a basis.
Matrix algebra_radical(const Algebra& A);

// Orthogonal primitive idempotents summing to 1, each certified local
// (dim eAe/J(eAe) = 1).  Throws SplittingError when the field is too small.
std::vector<std::vector<int>> algebra_primitive_idempotents(const Algebra& A);

// Quotient A/I by a (two-sided ideal) subspace, with section data.
struct QuotientAlgebra {
    Algebra alg;
    std::vector<int> section_cols;  // chosen coordinate representatives (indices of A-basis vectors)
    Matrix ideal_basis;
    ColspaceSolver proj_solver;     // columns [ideal_basis | section vectors]

    std::vector<int> project(const std::vector<int>& v) const;
    std::vector<int> lift(const std::vector<int>& q) const;
};
QuotientAlgebra quotient_algebra(const Algebra& A, const Matrix& ideal_cols);

// ker(x -> x^{p^s}) for commutative algebras: the nilradical.
Matrix commutative_nilradical(const Algebra& A);

Matrix ideal_generated_by(const Algebra& A, const std::vector<int>& x);
bool ideal_is_nilpotent(const Algebra& A, const Matrix& ideal_cols);

// Elementwise exhaustive oracle: J(A) = { x : the two-sided ideal generated
// by x is nilpotent }.  Only usable when q^dim is small; used to cross-check
// the production radical.
Matrix radical_bruteforce(const Algebra& A, long element_cap = 4096);

// --------------------------------------------------------- module algorithms

Matrix radical_of_algebra_module(const GModule& A);  // radical basis of a module-with-multiplication
std::vector<AlgebraElement> primitive_idempotents(const ModulePtr& A);

struct Summand {
    std::vector<int> idempotent;  // in End(M) coordinates, as a dim x dim matrix flattened? no: as matrix
    Matrix idem_matrix;           // dim x dim endomorphism
    ModulePtr module;
    ModuleHom embed;   // summand -> M
    ModuleHom project; // M -> summand
};
std::vector<Summand> decompose_indecomposable(const ModulePtr& M);

enum class IsoOutcome { Iso, None, Undecided };
struct IsoResult {
    IsoOutcome outcome;
    std::optional<ModuleHom> iso;
};
IsoResult iso_test(const ModulePtr& M, const ModulePtr& N, uint64_t seed = 0);

// Fixed points of the group action: {v : g v = v for all g}.
Matrix fixed_point_basis(const GModule& M);

}  // namespace blockstein
