#pragma once

// Group cohomology H^n(H, M) on the normalized bar resolution, for H a
// subgroup of a fixed ambient group and M a fixed coefficient module, with
// the structural maps (cup with pairing, restriction, transfer, conjugation)
// and the two Bockstein constructions (trivial-coefficient lift and the
// connecting homomorphism of the mod-p^2 coefficient sequence).
//
// A Tower owns one ambient group and one coefficient module and caches
// subgroup tables, cochain spaces, coboundary solvers and the comparison
// chain maps that implement the transfer.  Cochains are dense value tables
// over tuples of non-identity elements; values on tuples containing the
// identity are implicitly zero.

#include <map>
#include <memory>
#include <vector>

#include "blockstein/exactlin.hpp"
#include "blockstein/gmod.hpp"
#include "blockstein/grp.hpp"

namespace blockstein {

using SubKey = std::vector<int>;  // sorted ambient element indices

struct Cochain {
    SubKey sub;
    int deg = 0;
    std::vector<int> vals;  // tuple-major, dim-M codes per tuple

    bool operator==(const Cochain& o) const {
        return sub == o.sub && deg == o.deg && vals == o.vals;
    }
};

struct CocycleClass {
    SubKey sub;
    int deg = 0;
    std::vector<int> coords;

    bool is_zero() const {
        for (int c : coords)
            if (c) return false;
        return true;
    }
    bool operator==(const CocycleClass& o) const {
        return sub == o.sub && deg == o.deg && coords == o.coords;
    }
};

class Tower {
  public:
    Tower(GroupPtr G, ModulePtr M, long budget = 200000, int max_degree = 3);

    const GroupTable& group() const { return *G_; }
    GroupPtr group_ptr() const { return G_; }
    const GModule& module() const { return *M_; }
    const FieldSpec& field() const { return M_->field; }
    long budget() const { return budget_; }
    int max_degree() const { return max_degree_; }

    SubKey whole() const;
    const SubgroupTable& sub_table(const SubKey& H);
    ModulePtr sub_module(const SubKey& H);

    long tuple_count(const SubKey& H, int deg);
    Cochain zero_cochain(const SubKey& H, int deg);
    // value access: tuple entries are H-table indices (nonzero)
    std::vector<int> value_at(const Cochain& f, const std::vector<int>& tuple);

    Cochain add(const Cochain& a, const Cochain& b) const;
    Cochain subtract(const Cochain& a, const Cochain& b) const;
    Cochain scale(int c, const Cochain& a) const;

    Cochain delta(const SubKey& H, const Cochain& f);
    bool is_cocycle(const SubKey& H, const Cochain& f);

    // cohomology space with a deterministic basis of cocycles
    struct Space {
        int deg = 0;
        int dim = 0;
        std::vector<std::vector<int>> basis;  // value arrays of basis cocycles
        ColspaceSolver class_solver;          // columns [coboundary basis | chosen cocycles]
        int b_cols = 0;
    };
    const Space& space(const SubKey& H, int deg);
    CocycleClass class_of(const SubKey& H, const Cochain& f);
    Cochain rep_of(const CocycleClass& c);
    bool is_coboundary(const SubKey& H, const Cochain& f);
    bool cohomologous(const SubKey& H, const Cochain& a, const Cochain& b);

    // structural maps
    Cochain res(const Cochain& f, const SubKey& H);            // H inside f.sub
    Cochain transfer(const Cochain& f, const SubKey& K);       // f.sub inside K
    Cochain conj(int g, const Cochain& f);                     // f over H -> over gHg^-1
    Cochain cup(const Cochain& f, const Cochain& g);           // pairing = module mu

    // apply a coefficient map M -> M' (matrix over the common field, assumed
    // equivariant for the subgroup) landing in another tower over the same
    // ambient group
    static Cochain map_coeffs(Tower& target, const Matrix& h, const Cochain& f);

    // Bocksteins
    Cochain bockstein_trivial(const Cochain& f);     // trivial coefficients
    Cochain bockstein_connecting(const Cochain& f);  // integral-permutation lift, checked

  private:
    struct PhiTable;  // comparison chain map B(K) -> B(H) data per degree

    GroupPtr G_;
    ModulePtr M_;
    long budget_;
    int max_degree_;
    GaloisRingSpec gr_;

    std::map<SubKey, SubgroupTable> tables_;
    std::map<SubKey, ModulePtr> modules_;
    std::map<std::pair<SubKey, int>, Matrix> delta_mats_;
    std::map<std::pair<SubKey, int>, Space> spaces_;
    std::map<std::pair<SubKey, int>, ColspaceSolver> cobound_;
    std::map<std::pair<SubKey, SubKey>, std::shared_ptr<PhiTable>> phis_;
    std::map<SubKey, std::vector<Matrix>> lifted_actions_;  // GR lifts per subgroup
    bool lift_checked_ = false;

    const Matrix& delta_matrix(const SubKey& H, int deg);
    const ColspaceSolver& cobound_solver(const SubKey& H, int deg);
    PhiTable& phi(const SubKey& K, const SubKey& H, int deg);
    const std::vector<Matrix>& lifted_action(const SubKey& H);
    void check_budget(const SubKey& H, int deg);
};

// convenience for building towers
Tower make_trivial_tower(GroupPtr G, const FieldSpec& F, long budget = 200000, int max_degree = 3);

}  // namespace blockstein
