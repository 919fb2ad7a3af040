#pragma once

// The additive decomposition of H*(G,kG) over centralizers of conjugacy-class
// representatives, the double-coset product formula for cup products of
// gamma-images, and the resulting Bockstein on Hochschild cohomology.

#include "blockstein/cohomology.hpp"

namespace blockstein {

struct HHProductPlan {
    int i = 0, j = 0;
    struct Term {
        int x;       // double coset representative of G_i \ G / G_j
        int l;       // unique class index with g_l = ygi * yx gj
        int y;       // lex-minimal witness
        SubKey W;    // yx G_j meet y G_i
    };
    std::vector<Term> terms;
};

struct HHDecompositionMap {
    int deg = 0;
    std::vector<int> comp_dims;  // dim H^n(G_i, k)
    int total = 0;               // dim H^n(G, kG)
    Matrix forward;              // class coords -> stacked component coords
};

class Hochschild {
  public:
    Hochschild(GroupPtr G, const FieldSpec& F, long budget = 200000, int max_degree = 3);

    GroupPtr group() const { return G_; }
    const FieldSpec& field() const { return F_; }
    Tower& kg() { return kg_; }
    Tower& triv() { return triv_; }

    int class_count() const { return int(classes_.size()); }
    int class_rep(int i) const { return classes_[i].rep; }
    const Subgroup& centralizer_of(int i) const { return cents_[i]; }
    const Matrix& theta_matrix(int i) const { return theta_[i]; }
    const Matrix& pi_matrix(int i) const { return pi_[i]; }

    // pi_{g_i}^* res^G_{G_i}: trivial-coefficient cochain over G_i
    Cochain component(const Cochain& f, int i);
    // gamma_i = tr_{G_i}^G theta_{g_i}^*: kG-coefficient cochain over G
    Cochain gamma(int i, const Cochain& f_i);

    // the additive decomposition at one degree, certified bijective
    HHDecompositionMap decompose(int n);

    HHProductPlan product_plan(int i, int j);
    // product formula evaluation on gamma-images; result over G with kG coefficients
    Cochain product_formula(int i, const Cochain& fi, int j, const Cochain& fj);
    Cochain direct_cup(const Cochain& a, const Cochain& b) { return kg_.cup(a, b); }

    // Bockstein through the decomposition: decompose, apply the
    // trivial-coefficient Bockstein per centralizer, reassemble with gamma
    Cochain bockstein(const Cochain& a);

  private:
    GroupPtr G_;
    FieldSpec F_;
    Tower kg_;
    Tower triv_;
    std::vector<ConjClass> classes_;
    std::vector<Subgroup> cents_;
    std::vector<Matrix> theta_, pi_;
};

}  // namespace blockstein
