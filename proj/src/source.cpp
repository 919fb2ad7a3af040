#include "blockstein/source.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace blockstein {

SourceEngine::SourceEngine(BlocksEngine& blocks, int block_index, uint64_t iso_seed)
    : blocks_(blocks), block_index_(block_index), F_(blocks.field()) {
    BlockData& b = blocks_.block(block_index);
    blocks_.compute_defect(b);
    P_ = b.defect;
    Pt_ = subgroup_table(P_);
    ds_ = direct_square_with_delta(Pt_.table);
    build_source_idempotent();
    build_s(iso_seed);
    build_labels();
    a_tower_ = std::make_shared<Tower>(Pt_.table, a_p_, blocks_.kg().budget(), blocks_.kg().max_degree());
    p_triv_ = std::make_shared<Tower>(Pt_.table, trivial_module(Pt_.table, F_), blocks_.kg().budget(),
                                      blocks_.kg().max_degree());
}

void SourceEngine::build_source_idempotent() {
    BlockData& b = blocks_.block(block_index_);
    GroupPtr G = blocks_.group();
    const GModule& KG = blocks_.kg().module();
    Algebra A = algebra_of(KG);
    // fixed points of P-conjugation inside the block kGb
    int dimB = b.inclusion.cols;
    std::vector<std::vector<int>> rows;
    for (int u : P_.elems) {
        // (act_u - id) composed with the inclusion
        Matrix C = mat_mul(KG.action[u], b.inclusion);
        for (int r = 0; r < G->n; ++r) {
            std::vector<int> row(dimB);
            bool nz = false;
            for (int c = 0; c < dimB; ++c) {
                row[c] = F_.sub(C.at(r, c), b.inclusion.at(r, c));
                if (row[c]) nz = true;
            }
            if (nz) rows.push_back(std::move(row));
        }
    }
    Matrix sys(int(rows.size()), dimB, F_);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < dimB; ++c) sys.at(int(r), c) = rows[r][c];
    Matrix K = kernel_basis(sys);
    // fixed-point algebra basis in kG coordinates
    std::vector<std::vector<int>> fixed_cols;
    for (int j = 0; j < K.cols; ++j) fixed_cols.push_back(mat_vec(b.inclusion, column_of(K, j)));
    Matrix fixed = from_columns(fixed_cols, G->n, Ring(F_));
    Subalgebra C = subalgebra(A, fixed, b.idempotent);
    auto prims = algebra_primitive_idempotents(C.alg);
    std::vector<std::vector<int>> valid;
    for (auto& e : prims) {
        auto e_kg = C.to_parent(e);
        auto br = blocks_.brauer_map(P_, e_kg);
        bool nz = false;
        for (int v : br)
            if (v) { nz = true; break; }
        if (nz) valid.push_back(e_kg);
    }
    if (valid.empty())
        throw ConsistencyError("no primitive fixed-point idempotent with nonzero Brauer image");
    std::sort(valid.begin(), valid.end());
    i_idem_ = valid[0];
    // basis of A = i kG i
    EchelonSpan span(F_, G->n);
    for (int g = 0; g < G->n; ++g) {
        std::vector<int> e(G->n, 0);
        e[g] = 1;
        span.add(A.mul(A.mul(i_idem_, e), i_idem_));
    }
    a_basis_ = from_columns(span.rows(), G->n, Ring(F_));
    a_solver_ = ColspaceSolver(a_basis_);
    int dimA = a_basis_.cols;
    // A as a PxP module: (u,v) m = u m v^{-1}
    std::vector<Matrix> act_pxp(ds_.pxp->n);
    for (int g = 0; g < ds_.pxp->n; ++g) {
        int u = Pt_.to_parent[ds_.first(g)], v = Pt_.to_parent[ds_.second(g)];
        Matrix M(dimA, dimA, F_);
        for (int c = 0; c < dimA; ++c) {
            auto col = column_of(a_basis_, c);
            std::vector<int> moved(G->n, 0);
            for (int a = 0; a < G->n; ++a)
                if (col[a]) {
                    int img = G->mul(G->mul(u, a), G->invert(v));
                    moved[img] = F_.add(moved[img], col[a]);
                }
            auto x = a_solver_.solve(moved);
            if (!x) throw ConsistencyError("ikGi is not PxP stable");
            for (int r = 0; r < dimA; ++r) M.at(r, c) = (*x)[r];
        }
        act_pxp[g] = std::move(M);
    }
    a_pxp_ = make_module(ds_.pxp, F_, act_pxp);
    // A over P with conjugation action and the algebra pairing
    std::vector<Matrix> act_p(Pt_.table->n);
    for (int u = 0; u < Pt_.table->n; ++u) act_p[u] = act_pxp[ds_.pair(u, u)];
    Pairing mu;
    mu.dim = dimA;
    mu.tensor.assign(size_t(dimA) * dimA * dimA, 0);
    for (int i = 0; i < dimA; ++i)
        for (int j = 0; j < dimA; ++j) {
            auto prod = A.mul(column_of(a_basis_, i), column_of(a_basis_, j));
            auto x = a_solver_.solve(prod);
            if (!x) throw ConsistencyError("ikGi not closed under multiplication");
            for (int k = 0; k < dimA; ++k) mu.tensor[(size_t(i) * dimA + j) * dimA + k] = (*x)[k];
        }
    auto unit = a_solver_.solve(i_idem_);
    if (!unit) throw ConsistencyError("source idempotent outside ikGi");
    mu.unit = *unit;
    a_p_ = make_module(Pt_.table, F_, act_p, std::move(mu));
}

std::vector<int> SourceEngine::a_mul(const std::vector<int>& x, const std::vector<int>& y) const {
    return a_p_->mul(x, y);
}

void SourceEngine::build_s(uint64_t iso_seed) {
    GroupPtr G = blocks_.group();
    int dimA = a_basis_.cols;
    auto dc = double_cosets(G, P_, P_);
    // candidate modules per double coset
    struct Cand {
        int x;
        std::vector<int> elems;
        ModulePtr mod;
    };
    std::vector<Cand> cands;
    for (int x : dc.reps) {
        Cand c;
        c.x = x;
        std::set<int> elems;
        for (int u : P_.elems)
            for (int v : P_.elems) elems.insert(G->mul(G->mul(u, x), v));
        c.elems.assign(elems.begin(), elems.end());
        c.mod = double_coset_module(Pt_, ds_, c.elems, F_);
        cands.push_back(std::move(c));
    }
    auto summands = decompose_indecomposable(a_pxp_);
    int ns = int(summands.size());
    // certified isomorphism edges
    std::vector<std::vector<std::optional<ModuleHom>>> edge(ns);
    bool undecided = false;
    for (int s = 0; s < ns; ++s) {
        edge[s].resize(cands.size());
        for (size_t c = 0; c < cands.size(); ++c) {
            if (summands[s].module->dim != int(cands[c].elems.size())) continue;
            auto r = iso_test(summands[s].module, cands[c].mod, iso_seed);
            if (r.outcome == IsoOutcome::Iso) edge[s][c] = r.iso;
            if (r.outcome == IsoOutcome::Undecided) undecided = true;
        }
    }
    // deterministic system of distinct representatives, smallest x first
    std::vector<int> match(ns, -1);
    std::vector<bool> used(cands.size(), false);
    std::function<bool(int)> sdr = [&](int s) -> bool {
        if (s == ns) return true;
        for (size_t c = 0; c < cands.size(); ++c) {
            if (used[c] || !edge[s][c]) continue;
            used[c] = true;
            match[s] = int(c);
            if (sdr(s + 1)) return true;
            used[c] = false;
            match[s] = -1;
        }
        return false;
    };
    if (!sdr(0)) {
        if (undecided)
            throw UnsupportedError("source decomposition: isomorphism test undecided");
        throw UnsupportedError(
            "source decomposition needs a duplicate double-coset label; unsupported input");
    }
    // order the summands by matched coset: identity coset first, then ascending
    std::vector<int> order(ns);
    for (int s = 0; s < ns; ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int xa = cands[match[a]].x, xb = cands[match[b]].x;
        bool ia = std::binary_search(cands[match[a]].elems.begin(), cands[match[a]].elems.end(), 0);
        bool ib = std::binary_search(cands[match[b]].elems.begin(), cands[match[b]].elems.end(), 0);
        if (ia != ib) return ia;
        return xa < xb;
    });
    int offset = 0;
    std::vector<std::vector<int>> s_rows(dimA);
    for (int oi = 0; oi < ns; ++oi) {
        int s = order[oi];
        const Cand& c = cands[match[s]];
        Y_.push_back(c.x);
        coset_elems_.push_back(c.elems);
        coset_offsets_.push_back(offset);
        // rows of s for this component: iso * projection
        Matrix block = mat_mul(edge[s][match[s]]->mat, summands[s].project.mat);
        for (int r = 0; r < block.rows; ++r) {
            s_rows[offset + r].assign(dimA, 0);
            for (int cc = 0; cc < dimA; ++cc) s_rows[offset + r][cc] = block.at(r, cc);
        }
        offset += block.rows;
    }
    if (offset != dimA) throw ConsistencyError("source decomposition dimensions do not add up");
    s_mat_ = Matrix(dimA, dimA, F_);
    for (int r = 0; r < dimA; ++r)
        for (int c = 0; c < dimA; ++c) s_mat_.at(r, c) = s_rows[r][c];
    s_inv_ = inverse(s_mat_);
    // exact PxP-equivariance of s
    for (int g = 0; g < ds_.pxp->n; ++g) {
        // codomain action permutes each coset basis
        Matrix cod(dimA, dimA, F_);
        int u = Pt_.to_parent[ds_.first(g)], v = Pt_.to_parent[ds_.second(g)];
        for (size_t xi = 0; xi < Y_.size(); ++xi) {
            const auto& elems = coset_elems_[xi];
            for (size_t a = 0; a < elems.size(); ++a) {
                int img = G->mul(G->mul(u, elems[a]), G->invert(v));
                auto it = std::lower_bound(elems.begin(), elems.end(), img);
                cod.at(coset_offsets_[xi] + int(it - elems.begin()), coset_offsets_[xi] + int(a)) = 1;
            }
        }
        if (!(mat_mul(s_mat_, a_pxp_->action[g]) == mat_mul(cod, s_mat_)))
            throw ConsistencyError("s is not PxP-equivariant");
    }
}

std::vector<int> SourceEngine::s_inv_column(int global_index) const {
    return column_of(s_inv_, global_index);
}

void SourceEngine::build_labels() {
    GroupPtr G = blocks_.group();
    int dimA = a_basis_.cols;
    for (size_t xi = 0; xi < Y_.size(); ++xi) {
        int x = Y_[xi];
        Subgroup qx = q_x_subgroup(Pt_, ds_, x);
        qx_subs_.push_back(qx);
        auto dc = double_cosets(ds_.pxp, ds_.delta, qx);
        std::vector<std::pair<int, int>> reps;
        for (int rep : dc.reps) reps.emplace_back(ds_.first(rep), ds_.second(rep));
        qx_reps_.push_back(reps);
        for (auto [u, v] : reps) {
            SourceLabel lab;
            lab.x_idx = int(xi);
            lab.u = u;
            lab.v = v;
            Subgroup quv = q_uvx_subgroup(Pt_, ds_, u, v, x);
            for (int e : quv.elems) lab.C.push_back(ds_.first(e));
            std::sort(lab.C.begin(), lab.C.end());
            // theta: s^{-1} at the basis element u x v^{-1} of the x component
            int g = G->mul(G->mul(Pt_.to_parent[u], x), G->invert(Pt_.to_parent[v]));
            const auto& elems = coset_elems_[xi];
            auto it = std::lower_bound(elems.begin(), elems.end(), g);
            if (it == elems.end() || *it != g)
                throw ConsistencyError("u x v^{-1} missing from its double coset");
            int pos = coset_offsets_[xi] + int(it - elems.begin());
            lab.theta = Matrix(dimA, 1, F_);
            auto col = column_of(s_inv_, pos);
            for (int r = 0; r < dimA; ++r) lab.theta.at(r, 0) = col[r];
            // pi: sum of s rows at basis elements with delta_{u,v,x} = 1,
            // evaluating the indicator on every factorization for consistency
            std::set<int> accept_set;  // pxp pair indices in Q_{u,v,x}(u,v)Q_x
            for (int e1 : quv.elems)
                for (int e2 : qx.elems)
                    accept_set.insert(ds_.pxp->mul(ds_.pxp->mul(e1, ds_.pair(u, v)), e2));
            lab.pi = Matrix(1, dimA, F_);
            for (size_t a = 0; a < elems.size(); ++a) {
                int ge = elems[a];
                int seen = -1;
                for (int uu = 0; uu < Pt_.table->n; ++uu) {
                    // ge = uu x vv with vv in P  <=>  x^{-1} uu^{-1} ge in P
                    int rest = G->mul(G->invert(x), G->mul(G->invert(Pt_.to_parent[uu]), ge));
                    int vv = Pt_.from_parent[rest];
                    if (vv < 0) continue;
                    // pair (u', v'^{-1}) with ge = u' x v'
                    int inv_vv = Pt_.table->invert(vv);
                    int ind = accept_set.count(ds_.pair(uu, inv_vv)) ? 1 : 0;
                    if (seen < 0)
                        seen = ind;
                    else if (seen != ind)
                        throw ConsistencyError("delta indicator inconsistent across factorizations");
                }
                if (seen == 1) {
                    for (int c = 0; c < dimA; ++c)
                        lab.pi.at(0, c) =
                            F_.add(lab.pi.at(0, c), s_mat_.at(coset_offsets_[xi] + int(a), c));
                }
            }
            // pi after theta is the identity of k
            int pt = 0;
            for (int c = 0; c < dimA; ++c)
                pt = F_.add(pt, F_.mul(lab.pi.at(0, c), lab.theta.at(c, 0)));
            if (pt != 1) throw ConsistencyError("pi after theta is not the identity");
            labels_.push_back(std::move(lab));
        }
    }
}

Cochain SourceEngine::theta_star(int idx, const Cochain& f) {
    return Tower::map_coeffs(*a_tower_, labels_[idx].theta, f);
}

Cochain SourceEngine::pi_star(int idx, const Cochain& f) {
    return Tower::map_coeffs(*p_triv_, labels_[idx].pi, f);
}

Cochain SourceEngine::gamma(int idx, const Cochain& f) {
    if (f.sub != labels_[idx].C) throw UsageError("gamma: cochain not over Q_{u,v,x}");
    Cochain up = theta_star(idx, f);
    return a_tower_->transfer(up, a_tower_->whole());
}

Cochain SourceEngine::component(const Cochain& a, int idx) {
    Cochain r = a_tower_->res(a, labels_[idx].C);
    return pi_star(idx, r);
}

SourceEngine::DecompositionMap SourceEngine::decompose(int n) {
    DecompositionMap m;
    m.deg = n;
    const auto& sp = a_tower_->space(a_tower_->whole(), n);
    m.total = sp.dim;
    int rows = 0;
    for (int idx = 0; idx < label_count(); ++idx) {
        int d = p_triv_->space(labels_[idx].C, n).dim;
        m.comp_dims.push_back(d);
        rows += d;
    }
    m.forward = Matrix(rows, m.total, F_);
    for (int c = 0; c < m.total; ++c) {
        CocycleClass cl;
        cl.sub = a_tower_->whole();
        cl.deg = n;
        cl.coords.assign(m.total, 0);
        cl.coords[c] = 1;
        Cochain rep = a_tower_->rep_of(cl);
        int off = 0;
        for (int idx = 0; idx < label_count(); ++idx) {
            auto comp = component(rep, idx);
            auto cc = p_triv_->class_of(labels_[idx].C, comp);
            for (size_t k = 0; k < cc.coords.size(); ++k) m.forward.at(off + int(k), c) = cc.coords[k];
            off += m.comp_dims[idx];
        }
    }
    int sum = 0;
    for (int d : m.comp_dims) sum += d;
    if (sum != m.total || rank(m.forward) != m.total)
        throw ConsistencyError("source additive decomposition not bijective at degree " +
                               std::to_string(n));
    return m;
}

int SourceEngine::locate_label(int z_idx, int pxp_pair) const {
    // the unique label (z, (u_z,v_z)) whose [Q_z] representative matches the
    // Delta P \ PxP / Q_z double coset of the given pair
    auto dc = double_cosets(ds_.pxp, ds_.delta, qx_subs_[z_idx]);
    int rep = dc.rep_of[pxp_pair];
    int base = 0;
    for (int i = 0; i < z_idx; ++i) base += int(qx_reps_[i].size());
    for (size_t k = 0; k < qx_reps_[z_idx].size(); ++k) {
        if (ds_.pair(qx_reps_[z_idx][k].first, qx_reps_[z_idx][k].second) == rep)
            return base + int(k);
    }
    throw ConsistencyError("located pair is not among the chosen representatives");
}

SourceProductPlan SourceEngine::product_plan(int ix, int iy) {
    SourceProductPlan plan;
    plan.ix = ix;
    plan.iy = iy;
    GroupPtr G = blocks_.group();
    const GroupTable& T = *Pt_.table;
    const SourceLabel& lx = labels_[ix];
    const SourceLabel& ly = labels_[iy];
    Subgroup Cx = make_subgroup(Pt_.table, lx.C);
    Subgroup Cy = make_subgroup(Pt_.table, ly.C);
    auto dc = double_cosets(Pt_.table, Cx, Cy);
    plan.w_reps = dc.reps;
    int dimA = a_basis_.cols;
    for (int w : plan.w_reps) {
        // W' = Q_{u_x,v_x} meet ^w Q_{u_y,v_y} on the P side
        SubKey wp;
        for (int c : lx.C) {
            int back = T.conj_by_inv(w, c);
            if (std::binary_search(ly.C.begin(), ly.C.end(), back)) wp.push_back(c);
        }
        std::sort(wp.begin(), wp.end());
        plan.wprime[w] = wp;
        // s^{-1}(u_x x v_x^{-1}) s^{-1}(w u_y y v_y^{-1} w^{-1})
        std::vector<int> a1 = column_of(labels_[ix].theta, 0);
        int yelem = Y_[ly.x_idx];
        int g2 = G->mul(G->mul(G->mul(Pt_.to_parent[w], Pt_.to_parent[ly.u]), yelem),
                        G->invert(G->mul(Pt_.to_parent[w], Pt_.to_parent[ly.v])));
        const auto& yelems = coset_elems_[ly.x_idx];
        auto it = std::lower_bound(yelems.begin(), yelems.end(), g2);
        if (it == yelems.end() || *it != g2)
            throw ConsistencyError("conjugated basis element left its double coset");
        std::vector<int> a2 = column_of(s_inv_, coset_offsets_[ly.x_idx] + int(it - yelems.begin()));
        std::vector<int> prod = a_mul(a1, a2);
        std::vector<int> sc = mat_vec(s_mat_, prod);
        // re-multiplication identity: the expansion reassembles the product
        std::vector<int> rebuilt(dimA, 0);
        for (int gi = 0; gi < dimA; ++gi) {
            if (!sc[gi]) continue;
            auto col = column_of(s_inv_, gi);
            for (int r = 0; r < dimA; ++r) rebuilt[r] = F_.add(rebuilt[r], F_.mul(sc[gi], col[r]));
        }
        if (rebuilt != prod) throw ConsistencyError("product expansion does not re-multiply");
        for (size_t zi = 0; zi < Y_.size(); ++zi) {
            int z = Y_[zi];
            const auto& elems = coset_elems_[zi];
            for (size_t a = 0; a < elems.size(); ++a) {
                int alpha = sc[coset_offsets_[zi] + int(a)];
                if (!alpha) continue;
                int ge = elems[a];
                // canonical factorization ge = u' z v'^{-1}, lex-minimal u'
                int up = -1, vp = -1;
                for (int uu = 0; uu < T.n; ++uu) {
                    // u'^{-1} ge must lie in z P
                    int t2 = Pt_.from_parent[G->mul(G->invert(z), G->mul(G->invert(Pt_.to_parent[uu]), ge))];
                    if (t2 < 0) continue;
                    up = uu;
                    vp = T.invert(t2);  // ge = u' z t2 = u' z v'^{-1}
                    break;
                }
                if (up < 0) throw ConsistencyError("support element admits no factorization");
                int pair = ds_.pair(up, vp);
                int lab = locate_label(int(zi), pair);
                // lex-minimal witness r with (r,r)(u',v') in (u_z,v_z) Q_z
                const SourceLabel& lz = labels_[lab];
                std::set<int> target;
                for (int q : qx_subs_[zi].elems)
                    target.insert(ds_.pxp->mul(ds_.pair(lz.u, lz.v), q));
                int r = -1;
                for (int rr = 0; rr < T.n; ++rr) {
                    if (target.count(ds_.pxp->mul(ds_.pair(rr, rr), pair))) { r = rr; break; }
                }
                if (r < 0) throw ConsistencyError("no witness for the located representative");
                SourceProductPlan::Entry e;
                e.w = w;
                e.z_idx = int(zi);
                e.alpha = alpha;
                e.u_prime = up;
                e.v_prime = vp;
                e.label = lab;
                e.r = r;
                plan.entries.push_back(e);
            }
        }
    }
    return plan;
}

Cochain SourceEngine::product_formula(int ix, const Cochain& f, int iy, const Cochain& g) {
    SourceProductPlan plan = product_plan(ix, iy);
    const GroupTable& T = *Pt_.table;
    Cochain acc = a_tower_->zero_cochain(a_tower_->whole(), f.deg + g.deg);
    for (const auto& e : plan.entries) {
        const SourceLabel& lz = labels_[e.label];
        const SubKey& wp = plan.wprime.at(e.w);
        // ^r W' and the intersection Q_{u_z,v_z} meet ^r W'
        SubKey inter;
        for (int c : lz.C) {
            int back = T.conj_by_inv(e.r, c);
            if (std::binary_search(wp.begin(), wp.end(), back)) inter.push_back(c);
        }
        std::sort(inter.begin(), inter.end());
        Cochain rf = p_triv_->res(p_triv_->conj(e.r, f), inter);
        Cochain rg = p_triv_->res(p_triv_->conj(T.mul(e.r, e.w), g), inter);
        Cochain cupped = p_triv_->cup(rf, rg);
        Cochain up = p_triv_->transfer(cupped, lz.C);
        Cochain term = gamma(e.label, up);
        acc = a_tower_->add(acc, a_tower_->scale(e.alpha, term));
    }
    return acc;
}

Cochain SourceEngine::bockstein(const Cochain& a) {
    Cochain acc = a_tower_->zero_cochain(a_tower_->whole(), a.deg + 1);
    for (int idx = 0; idx < label_count(); ++idx) {
        Cochain f = component(a, idx);
        Cochain beta = p_triv_->bockstein_trivial(f);
        acc = a_tower_->add(acc, gamma(idx, beta));
    }
    return acc;
}

}  // namespace blockstein
