#pragma once

// Block decomposition of kG, defect groups via the Brauer map, Brauer pairs
// through the normal-subpair characterization, stable-element block
// cohomology inside H^*(P,k), and the Bockstein maps on Hochschild cohomology
// of a block and on block cohomology.

#include "blockstein/hochschild.hpp"

namespace blockstein {

// smallest m with p^m = 1 mod the p'-part of exp(G); F_{p^m} then splits G
// and all of its subgroups
int splitting_degree(const GroupTable& G, int p);

struct BrauerPair {
    Subgroup Q;
    std::vector<int> e_Q;  // block of k C_G(Q), coordinates over C_G(Q) elements
    Subgroup stabilizer;   // N_G(Q, e_Q)
};

struct BlockData {
    int index = 0;
    std::vector<int> idempotent;  // b in kG coordinates
    ModulePtr module;             // B = kGb under conjugation, with multiplication
    Matrix inclusion;             // |G| x dim B
    Matrix projection;            // dim B x |G|
    bool principal = false;

    bool has_defect = false;
    Subgroup defect;
    std::vector<int> e_P;  // block of k C_G(P)

    bool has_pairs = false;
    std::vector<BrauerPair> pairs;  // one per Q <= P, ascending order then lex
};

class BlocksEngine {
  public:
    BlocksEngine(GroupPtr G, int p, int m = 0, long budget = 200000, int max_degree = 3);

    GroupPtr group() const { return G_; }
    const FieldSpec& field() const { return F_; }
    int prime() const { return F_.p; }
    Hochschild& hh() { return hh_; }
    Tower& triv() { return hh_.triv(); }
    Tower& kg() { return hh_.kg(); }
    Tower& block_tower(int index);

    std::vector<BlockData>& blocks();
    BlockData& block(int index);
    void compute_defect(BlockData& b);
    void compute_brauer_pairs(BlockData& b);

    // truncation of a Q-fixed element of kG to its C_G(Q) support
    std::vector<int> brauer_map(const Subgroup& Q, const std::vector<int>& a);
    // block idempotents of k C for a subgroup C, ascending by coordinates
    const std::vector<std::vector<int>>& subgroup_blocks(const Subgroup& C);

    // stable-element subspace of H^n(P,k); columns are class coordinates
    const Matrix& block_cohomology(BlockData& b, int n);
    // beta_P restricted to the stable subspace, in stable-basis coordinates
    std::vector<int> block_cohomology_bockstein(BlockData& b, int r, const std::vector<int>& coords);

    struct PhiMap {
        int deg = 0;
        int total = 0;                    // dim H^n(G, B)
        std::vector<int> comp_dims;      // dim H_B^n(G_i, k)
        std::vector<Matrix> image_bases; // per class index i
        Matrix forward;                  // stacked full H^n(G_i,k) coordinates
    };
    PhiMap hh_block_decompose(int index, int n);

    // Phi components and the gamma assembly at cochain level
    Cochain block_component(int index, const Cochain& a, int i);
    Cochain gamma_block(int index, int i, const Cochain& f_i);
    // p^* beta_G i^* (the defining route)
    Cochain hh_block_bockstein(int index, const Cochain& a);
    // decompose, Bockstein per centralizer, reassemble (the transported route)
    Cochain hh_block_bockstein_transported(int index, const Cochain& a);

  private:
    GroupPtr G_;
    FieldSpec F_;
    long budget_;
    int max_degree_;
    Hochschild hh_;
    bool blocks_done_ = false;
    std::vector<BlockData> blocks_;
    std::map<int, std::shared_ptr<Tower>> block_towers_;
    std::map<std::vector<int>, std::vector<std::vector<int>>> sub_blocks_;
    std::map<std::pair<int, int>, Matrix> stable_;
    std::map<std::pair<int, int>, ColspaceSolver> stable_solver_;

    std::vector<int> to_subcoords(const SubgroupTable& C, const std::vector<int>& a_kG) const;
    std::vector<int> to_kg_coords(const SubgroupTable& C, const std::vector<int>& a_sub) const;
    BrauerPair make_pair(BlockData& b, const Subgroup& Q, std::map<std::vector<int>, BrauerPair>& memo);
};

}  // namespace blockstein
