#pragma once

// The source algebra ikGi of a block as a module over P x P and over the
// diagonal, the decomposition isomorphism s onto double-coset permutation
// modules, the theta/pi/gamma map families indexed by Mackey labels
// (x, (u_x,v_x)), the additive decomposition of H^*(Delta P, ikGi), the
// structure-constant product formula, and the source-algebra Bockstein.
//
// Cohomology over Delta P is computed over P itself (u acting as m -> umu^-1);
// the diagonal subgroups Q_{u,v,x} enter through their first components.

#include "blockstein/blocks.hpp"

namespace blockstein {

struct SourceLabel {
    int x_idx = 0;   // index into Y
    int u = 0, v = 0;  // P-table indices, (u_x, v_x) in [Q_x]
    SubKey C;        // first components of Q_{u_x,v_x}, a subgroup of the P-table
    Matrix theta;    // dimA x 1: lambda -> lambda s^{-1}(u x v^{-1})
    Matrix pi;       // 1 x dimA: delta_{u,v,x} after projection to the x component
};

struct SourceProductPlan {
    int ix = 0, iy = 0;
    struct Entry {
        int w;               // double-coset representative in Delta P (P-table index)
        int z_idx;           // index into Y
        int alpha;           // coefficient (field code)
        int u_prime, v_prime;  // canonical factorization of the support element
        int label;           // located label index for (z, (u_z, v_z))
        int r;               // lex-minimal witness in Delta P (P-table index)
    };
    std::vector<int> w_reps;
    std::map<int, SubKey> wprime;  // per w: W' = Q_{u_x,v_x} meet ^w Q_{u_y,v_y}
    std::vector<Entry> entries;
};

class SourceEngine {
  public:
    SourceEngine(BlocksEngine& blocks, int block_index, uint64_t iso_seed = 0);

    BlocksEngine& blocks() { return blocks_; }
    const FieldSpec& field() const { return F_; }
    const Subgroup& defect() const { return P_; }
    const SubgroupTable& p_table() const { return Pt_; }
    const DirectSquare& square() const { return ds_; }
    const std::vector<int>& source_idempotent() const { return i_idem_; }
    const Matrix& a_basis() const { return a_basis_; }
    int dim_a() const { return a_basis_.cols; }
    const std::vector<int>& Y() const { return Y_; }
    const Matrix& s_matrix() const { return s_mat_; }
    const std::vector<std::vector<std::pair<int, int>>>& qx_reps() const { return qx_reps_; }

    Tower& a_tower() { return *a_tower_; }
    Tower& p_triv() { return *p_triv_; }

    int label_count() const { return int(labels_.size()); }
    const SourceLabel& label(int idx) const { return labels_[idx]; }

    // coefficient maps for one label, applied valuewise
    Cochain theta_star(int idx, const Cochain& f);
    Cochain pi_star(int idx, const Cochain& f);
    // gamma = tr_{Q_{u,v,x}}^{Delta P} after theta*
    Cochain gamma(int idx, const Cochain& f);
    // pi* after restriction: the forward components of the decomposition
    Cochain component(const Cochain& a, int idx);

    struct DecompositionMap {
        int deg = 0;
        int total = 0;
        std::vector<int> comp_dims;
        Matrix forward;
    };
    DecompositionMap decompose(int n);  // certified bijective

    SourceProductPlan product_plan(int ix, int iy);
    Cochain product_formula(int ix, const Cochain& f, int iy, const Cochain& g);
    Cochain direct_cup(const Cochain& a, const Cochain& b) { return a_tower_->cup(a, b); }
    Cochain bockstein(const Cochain& a);

    // multiplication in A-coordinates
    std::vector<int> a_mul(const std::vector<int>& x, const std::vector<int>& y) const;
    // s^{-1} of a concatenated double-coset basis vector index
    std::vector<int> s_inv_column(int global_index) const;
    int coset_offset(int x_idx) const { return coset_offsets_[x_idx]; }
    const std::vector<int>& coset_elements(int x_idx) const { return coset_elems_[x_idx]; }

  private:
    BlocksEngine& blocks_;
    int block_index_;
    FieldSpec F_;
    Subgroup P_;
    SubgroupTable Pt_;
    DirectSquare ds_;
    std::vector<int> i_idem_;
    Matrix a_basis_;
    ColspaceSolver a_solver_;
    ModulePtr a_pxp_;
    ModulePtr a_p_;
    std::vector<int> Y_;
    std::vector<std::vector<int>> coset_elems_;
    std::vector<int> coset_offsets_;
    Matrix s_mat_, s_inv_;
    std::vector<std::vector<std::pair<int, int>>> qx_reps_;
    std::vector<Subgroup> qx_subs_;  // Q_x inside PxP
    std::vector<SourceLabel> labels_;
    std::shared_ptr<Tower> a_tower_, p_triv_;

    void build_source_idempotent();
    void build_s(uint64_t iso_seed);
    void build_labels();
    int locate_label(int z_idx, int pxp_pair) const;  // by double-coset rep
};

}  // namespace blockstein
