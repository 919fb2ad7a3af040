#include "blockstein/hochschild.hpp"

#include <algorithm>

namespace blockstein {

Hochschild::Hochschild(GroupPtr G, const FieldSpec& F, long budget, int max_degree)
    : G_(G),
      F_(F),
      kg_(G, conjugation_module(G, F), budget, max_degree),
      triv_(G, trivial_module(G, F), budget, max_degree),
      classes_(conjugacy_classes(*G)) {
    for (auto& c : classes_) {
        cents_.push_back(centralizer(G_, c.rep));
        Matrix th(G_->n, 1, F_);
        th.at(c.rep, 0) = 1;
        theta_.push_back(th);
        Matrix pi(1, G_->n, F_);
        pi.at(0, c.rep) = 1;
        pi_.push_back(pi);
    }
}

Cochain Hochschild::component(const Cochain& f, int i) {
    Cochain r = kg_.res(f, cents_[i].elems);
    return Tower::map_coeffs(triv_, pi_[i], r);
}

Cochain Hochschild::gamma(int i, const Cochain& f_i) {
    if (f_i.sub != cents_[i].elems)
        throw UsageError("gamma: cochain not over the centralizer of class " + std::to_string(i));
    Cochain up = Tower::map_coeffs(kg_, theta_[i], f_i);
    return kg_.transfer(up, kg_.whole());
}

HHDecompositionMap Hochschild::decompose(int n) {
    HHDecompositionMap m;
    m.deg = n;
    const auto& sp = kg_.space(kg_.whole(), n);
    m.total = sp.dim;
    int rows = 0;
    for (size_t i = 0; i < classes_.size(); ++i) {
        int d = triv_.space(cents_[i].elems, n).dim;
        m.comp_dims.push_back(d);
        rows += d;
    }
    m.forward = Matrix(rows, m.total, F_);
    for (int c = 0; c < m.total; ++c) {
        CocycleClass cl;
        cl.sub = kg_.whole();
        cl.deg = n;
        cl.coords.assign(m.total, 0);
        cl.coords[c] = 1;
        Cochain rep = kg_.rep_of(cl);
        int off = 0;
        for (size_t i = 0; i < classes_.size(); ++i) {
            auto comp = component(rep, i);
            auto cc = triv_.class_of(cents_[i].elems, comp);
            for (size_t k = 0; k < cc.coords.size(); ++k) m.forward.at(off + int(k), c) = cc.coords[k];
            off += m.comp_dims[i];
        }
    }
    int sum = 0;
    for (int d : m.comp_dims) sum += d;
    if (sum != m.total || rank(m.forward) != m.total)
        throw ConsistencyError("additive decomposition is not bijective at degree " + std::to_string(n));
    return m;
}

HHProductPlan Hochschild::product_plan(int i, int j) {
    HHProductPlan plan;
    plan.i = i;
    plan.j = j;
    const GroupTable& G = *G_;
    auto dc = double_cosets(G_, cents_[i], cents_[j]);
    int gi = classes_[i].rep, gj = classes_[j].rep;
    for (int x : dc.reps) {
        int found_l = -1, found_y = -1;
        for (int y = 0; y < G.n; ++y) {
            int c = G.mul(G.conj(y, gi), G.conj(G.mul(y, x), gj));
            for (size_t l = 0; l < classes_.size(); ++l) {
                if (classes_[l].rep != c) continue;
                if (found_l >= 0 && found_l != int(l))
                    throw ConsistencyError("product plan: non-unique class index l(x)");
                if (found_l < 0) {
                    found_l = int(l);
                    found_y = y;
                }
            }
        }
        if (found_l < 0) throw ConsistencyError("product plan: no witness for l(x)");
        HHProductPlan::Term t;
        t.x = x;
        t.l = found_l;
        t.y = found_y;
        Subgroup yGi = conjugate_subgroup(cents_[i], found_y);
        Subgroup yxGj = conjugate_subgroup(cents_[j], G.mul(found_y, x));
        t.W = intersect(yxGj, yGi).elems;
        // the witness equation and W <= G_l, exactly
        int gl = G.mul(G.conj(found_y, gi), G.conj(G.mul(found_y, x), gj));
        if (gl != classes_[found_l].rep) throw ConsistencyError("product plan witness equation fails");
        for (int w : t.W)
            if (G.mul(w, gl) != G.mul(gl, w))
                throw ConsistencyError("product plan: W does not centralize g_l");
        plan.terms.push_back(std::move(t));
    }
    return plan;
}

Cochain Hochschild::product_formula(int i, const Cochain& fi, int j, const Cochain& fj) {
    HHProductPlan plan = product_plan(i, j);
    const GroupTable& G = *G_;
    Cochain acc = kg_.zero_cochain(kg_.whole(), fi.deg + fj.deg);
    for (const auto& t : plan.terms) {
        Cochain a = triv_.conj(t.y, fi);                 // over yG_i
        Cochain b = triv_.conj(G.mul(t.y, t.x), fj);     // over yxG_j
        Cochain ra = triv_.res(a, t.W);
        Cochain rb = triv_.res(b, t.W);
        Cochain cupped = triv_.cup(ra, rb);
        Cochain up = triv_.transfer(cupped, cents_[t.l].elems);
        acc = kg_.add(acc, gamma(t.l, up));
    }
    return acc;
}

Cochain Hochschild::bockstein(const Cochain& a) {
    Cochain acc = kg_.zero_cochain(kg_.whole(), a.deg + 1);
    for (size_t i = 0; i < classes_.size(); ++i) {
        Cochain f_i = component(a, int(i));
        Cochain b_i = triv_.bockstein_trivial(f_i);
        acc = kg_.add(acc, gamma(int(i), b_i));
    }
    return acc;
}

}  // namespace blockstein
