#include "blockstein/blocks.hpp"

#include <algorithm>

namespace blockstein {

int splitting_degree(const GroupTable& G, int p) {
    int e = G.exponent();
    while (e % p == 0) e /= p;
    if (e == 1) return 1;
    int m = 1;
    long pm = p % e;
    while (pm != 1) {
        pm = (pm * p) % e;
        ++m;
    }
    return m;
}

BlocksEngine::BlocksEngine(GroupPtr G, int p, int m, long budget, int max_degree)
    : G_(G),
      F_(p, m > 0 ? m : splitting_degree(*G, p)),
      budget_(budget),
      max_degree_(max_degree),
      hh_(G, F_, budget, max_degree) {
    if (G_->n % p != 0)
        throw UsageError("the characteristic must divide the group order");
}

Tower& BlocksEngine::block_tower(int index) {
    auto it = block_towers_.find(index);
    if (it != block_towers_.end()) return *it->second;
    BlockData& b = block(index);
    auto tw = std::make_shared<Tower>(G_, b.module, budget_, max_degree_);
    block_towers_[index] = tw;
    return *tw;
}

std::vector<BlockData>& BlocksEngine::blocks() {
    if (blocks_done_) return blocks_;
    const GModule& KG = hh_.kg().module();
    Algebra A = algebra_of(KG);
    Matrix Zb = fixed_point_basis(KG);  // conjugation-fixed = center, class sums
    std::vector<int> unit(G_->n, 0);
    unit[0] = 1;
    Subalgebra Z = subalgebra(A, Zb, unit);
    auto idems = algebra_primitive_idempotents(Z.alg);
    std::vector<std::vector<int>> bs;
    for (auto& e : idems) bs.push_back(Z.to_parent(e));
    std::sort(bs.begin(), bs.end());
    // exact sanity: orthogonal decomposition of 1
    std::vector<int> sum(G_->n, 0);
    for (auto& b : bs)
        for (int i = 0; i < G_->n; ++i) sum[i] = F_.add(sum[i], b[i]);
    if (sum != unit) throw ConsistencyError("block idempotents do not sum to 1");
    for (size_t i = 0; i < bs.size(); ++i)
        for (size_t j = 0; j < bs.size(); ++j) {
            auto prod = A.mul(bs[i], bs[j]);
            if (i == j ? prod != bs[i] : prod != std::vector<int>(G_->n, 0))
                throw ConsistencyError("block idempotents not orthogonal");
        }
    for (size_t bi = 0; bi < bs.size(); ++bi) {
        BlockData bd;
        bd.index = int(bi);
        bd.idempotent = bs[bi];
        // basis of kGb
        EchelonSpan span(F_, G_->n);
        std::vector<std::vector<int>> cols;
        for (int i = 0; i < G_->n; ++i) {
            std::vector<int> e(G_->n, 0);
            e[i] = 1;
            auto v = A.mul(e, bs[bi]);
            if (span.add(v)) cols.push_back(v);
        }
        bd.inclusion = from_columns(span.rows(), G_->n, Ring(F_));
        int dimB = bd.inclusion.cols;
        ColspaceSolver inc(bd.inclusion);
        bd.projection = Matrix(dimB, G_->n, F_);
        for (int i = 0; i < G_->n; ++i) {
            std::vector<int> e(G_->n, 0);
            e[i] = 1;
            auto x = inc.solve(A.mul(e, bs[bi]));
            if (!x) throw ConsistencyError("block projection failed");
            for (int r = 0; r < dimB; ++r) bd.projection.at(r, i) = (*x)[r];
        }
        if (!(mat_mul(bd.projection, bd.inclusion) == Matrix::identity(dimB, F_)))
            throw ConsistencyError("p o i is not the identity on the block");
        std::vector<Matrix> action(G_->n);
        for (int g = 0; g < G_->n; ++g)
            action[g] = mat_mul(bd.projection, mat_mul(KG.action[g], bd.inclusion));
        Pairing mu;
        mu.dim = dimB;
        mu.tensor.assign(size_t(dimB) * dimB * dimB, 0);
        for (int i = 0; i < dimB; ++i)
            for (int j = 0; j < dimB; ++j) {
                auto prod = A.mul(column_of(bd.inclusion, i), column_of(bd.inclusion, j));
                auto x = inc.solve(prod);
                if (!x) throw ConsistencyError("block not closed under multiplication");
                for (int k = 0; k < dimB; ++k) mu.tensor[(size_t(i) * dimB + j) * dimB + k] = (*x)[k];
            }
        auto u = inc.solve(bs[bi]);
        if (!u) throw ConsistencyError("block idempotent outside its block");
        mu.unit = *u;
        bd.module = make_module(G_, F_, std::move(action), std::move(mu));
        int aug = 0;
        for (int c : bs[bi]) aug = F_.add(aug, c);
        bd.principal = aug != 0;
        blocks_.push_back(std::move(bd));
    }
    blocks_done_ = true;
    return blocks_;
}

BlockData& BlocksEngine::block(int index) {
    auto& bs = blocks();
    if (index < 0 || index >= int(bs.size()))
        throw UsageError("block index out of range: " + std::to_string(index));
    return bs[index];
}

std::vector<int> BlocksEngine::to_subcoords(const SubgroupTable& C, const std::vector<int>& a) const {
    std::vector<int> out(C.table->n, 0);
    for (int i = 0; i < C.table->n; ++i) out[i] = a[C.to_parent[i]];
    return out;
}

std::vector<int> BlocksEngine::to_kg_coords(const SubgroupTable& C, const std::vector<int>& a) const {
    std::vector<int> out(G_->n, 0);
    for (int i = 0; i < C.table->n; ++i) out[C.to_parent[i]] = a[i];
    return out;
}

std::vector<int> BlocksEngine::brauer_map(const Subgroup& Q, const std::vector<int>& a) {
    // require a to be Q-fixed before truncating
    for (int q : Q.elems)
        for (int g = 0; g < G_->n; ++g)
            if (a[g] != a[G_->conj(q, g)])
                throw UsageError("Brauer map applied to a non-Q-fixed element");
    Subgroup C = centralizer_of_set(G_, Q.elems);
    std::vector<int> out(G_->n, 0);
    for (int c : C.elems) out[c] = a[c];
    return out;
}

const std::vector<std::vector<int>>& BlocksEngine::subgroup_blocks(const Subgroup& C) {
    auto it = sub_blocks_.find(C.elems);
    if (it != sub_blocks_.end()) return it->second;
    SubgroupTable Ct = subgroup_table(C);
    auto M = conjugation_module(Ct.table, F_);
    Algebra A = algebra_of(*M);
    Matrix Zb = fixed_point_basis(*M);
    std::vector<int> unit(Ct.table->n, 0);
    unit[0] = 1;
    Subalgebra Z = subalgebra(A, Zb, unit);
    auto idems = algebra_primitive_idempotents(Z.alg);
    std::vector<std::vector<int>> bs;
    for (auto& e : idems) bs.push_back(Z.to_parent(e));
    std::sort(bs.begin(), bs.end());
    auto res = sub_blocks_.emplace(C.elems, std::move(bs));
    return res.first->second;
}

void BlocksEngine::compute_defect(BlockData& b) {
    if (b.has_defect) return;
    auto reps = p_subgroups_up_to_conj(G_, F_.p);
    std::vector<int> nonzero;  // indices into reps
    for (size_t i = 0; i < reps.size(); ++i) {
        auto br = brauer_map(reps[i], b.idempotent);
        bool z = true;
        for (int v : br)
            if (v) { z = false; break; }
        if (!z) nonzero.push_back(int(i));
    }
    if (nonzero.empty()) throw ConsistencyError("Brauer map vanishes on every p-subgroup");
    int maxord = 0;
    for (int i : nonzero) maxord = std::max(maxord, reps[i].order());
    std::vector<int> maximal;
    for (int i : nonzero)
        if (reps[i].order() == maxord) maximal.push_back(i);
    if (maximal.size() != 1)
        throw ConsistencyError("defect group not unique up to conjugacy");
    b.defect = reps[maximal[0]];
    // the maximal pair: lex-minimal block of kC_G(P) appearing in Br_P(b)
    Subgroup C = centralizer_of_set(G_, b.defect.elems);
    SubgroupTable Ct = subgroup_table(C);
    auto br = to_subcoords(Ct, brauer_map(b.defect, b.idempotent));
    auto Mc = conjugation_module(Ct.table, F_);
    bool found = false;
    for (const auto& e : subgroup_blocks(C)) {
        auto prod = Mc->mul(e, br);
        if (prod == e) {
            b.e_P = e;
            found = true;
            break;
        }
    }
    if (!found) throw ConsistencyError("no maximal Brauer pair above the block");
    b.has_defect = true;
}

BrauerPair BlocksEngine::make_pair(BlockData& b, const Subgroup& Q,
                                   std::map<std::vector<int>, BrauerPair>& memo) {
    auto it = memo.find(Q.elems);
    if (it != memo.end()) return it->second;
    BrauerPair bp;
    bp.Q = Q;
    if (Q.elems == b.defect.elems) {
        bp.e_Q = b.e_P;
    } else {
        // R = N_P(Q), strictly bigger than Q inside the p-group P
        std::vector<int> relems;
        for (int x : b.defect.elems) {
            bool norm = true;
            for (int q : Q.elems)
                if (!Q.contains(G_->conj(x, q))) { norm = false; break; }
            if (norm) relems.push_back(x);
        }
        Subgroup R = make_subgroup(G_, relems);
        if (R.order() <= Q.order()) throw ConsistencyError("normalizer did not grow in a p-group");
        BrauerPair above = make_pair(b, R, memo);
        Subgroup CQ = centralizer_of_set(G_, Q.elems);
        SubgroupTable CQt = subgroup_table(CQ);
        Subgroup CR = centralizer_of_set(G_, R.elems);
        SubgroupTable CRt = subgroup_table(CR);
        auto McR = conjugation_module(CRt.table, F_);
        std::vector<std::vector<int>> found;
        for (const auto& f : subgroup_blocks(CQ)) {
            auto f_kg = to_kg_coords(CQt, f);
            // R-stable?
            bool stable = true;
            for (int x : R.elems) {
                for (int g = 0; g < G_->n && stable; ++g)
                    if (f_kg[g] != f_kg[G_->conj(x, g)]) stable = false;
                if (!stable) break;
            }
            if (!stable) continue;
            // Br_R(f) e_R = e_R
            auto brf = to_subcoords(CRt, brauer_map(R, f_kg));
            auto prod = McR->mul(brf, above.e_Q);
            if (prod == above.e_Q) found.push_back(f);
        }
        if (found.size() != 1)
            throw ConsistencyError("Brauer pair not unique below (" + std::to_string(found.size()) +
                                   " candidates)");
        bp.e_Q = found[0];
    }
    // stabilizer N_G(Q, e_Q)
    Subgroup NQ = normalizer(G_, Q);
    SubgroupTable CQt = subgroup_table(centralizer_of_set(G_, Q.elems));
    auto e_kg = to_kg_coords(CQt, bp.e_Q);
    std::vector<int> stab;
    for (int g : NQ.elems) {
        bool fix = true;
        for (int x = 0; x < G_->n && fix; ++x)
            if (e_kg[x] != e_kg[G_->conj(g, x)]) fix = false;
        if (fix) stab.push_back(g);
    }
    bp.stabilizer = make_subgroup(G_, stab);
    // principal blocks stay principal down the chain
    if (b.principal) {
        int aug = 0;
        for (int c : bp.e_Q) aug = F_.add(aug, c);
        if (aug == 0) throw ConsistencyError("principal pair lost the augmentation");
    }
    memo.emplace(Q.elems, bp);
    return bp;
}

void BlocksEngine::compute_brauer_pairs(BlockData& b) {
    if (b.has_pairs) return;
    compute_defect(b);
    SubgroupTable Pt = subgroup_table(b.defect);
    std::vector<Subgroup> subs = all_subgroups(Pt.table);
    std::map<std::vector<int>, BrauerPair> memo;
    for (const Subgroup& S : subs) {
        std::vector<int> elems;
        for (int e : S.elems) elems.push_back(Pt.to_parent[e]);
        Subgroup Q = make_subgroup(G_, elems);
        b.pairs.push_back(make_pair(b, Q, memo));
    }
    b.has_pairs = true;
}

const Matrix& BlocksEngine::block_cohomology(BlockData& b, int n) {
    auto key = std::make_pair(b.index, n);
    auto it = stable_.find(key);
    if (it != stable_.end()) return it->second;
    compute_brauer_pairs(b);
    Tower& T = triv();
    const SubKey& P = b.defect.elems;
    int D = T.space(P, n).dim;
    std::vector<Cochain> reps;
    for (int c = 0; c < D; ++c) {
        CocycleClass cl;
        cl.sub = P;
        cl.deg = n;
        cl.coords.assign(D, 0);
        cl.coords[c] = 1;
        reps.push_back(T.rep_of(cl));
    }
    std::vector<std::vector<int>> rows;  // each of length D
    for (const auto& bp : b.pairs) {
        if (n >= 1 && bp.Q.order() == 1) continue;  // H^n(1,k) = 0
        int dQ = T.space(bp.Q.elems, n).dim;
        if (dQ == 0) continue;
        std::vector<Cochain> resreps;
        std::vector<std::vector<int>> rescoords;
        for (int c = 0; c < D; ++c) {
            resreps.push_back(T.res(reps[c], bp.Q.elems));
            rescoords.push_back(T.class_of(bp.Q.elems, resreps.back()).coords);
        }
        for (int g : bp.stabilizer.elems) {
            std::vector<std::vector<int>> block_rows(dQ, std::vector<int>(D, 0));
            for (int c = 0; c < D; ++c) {
                auto cg = T.class_of(bp.Q.elems, T.conj(g, resreps[c]));
                for (int k = 0; k < dQ; ++k)
                    block_rows[k][c] = F_.sub(rescoords[c][k], cg.coords[k]);
            }
            for (auto& r : block_rows) rows.push_back(std::move(r));
        }
    }
    Matrix sys(int(rows.size()), D, F_);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < D; ++c) sys.at(int(r), c) = rows[r][c];
    Matrix K = kernel_basis(sys);
    stable_solver_.emplace(key, ColspaceSolver(K));
    auto res = stable_.emplace(key, std::move(K));
    return res.first->second;
}

std::vector<int> BlocksEngine::block_cohomology_bockstein(BlockData& b, int r,
                                                          const std::vector<int>& coords) {
    const Matrix& basis_r = block_cohomology(b, r);
    Tower& T = triv();
    const SubKey& P = b.defect.elems;
    std::vector<int> cl_coords = mat_vec(basis_r, coords);
    CocycleClass cl;
    cl.sub = P;
    cl.deg = r;
    cl.coords = cl_coords;
    Cochain rep = T.rep_of(cl);
    Cochain beta = T.bockstein_trivial(rep);
    auto bc = T.class_of(P, beta);
    block_cohomology(b, r + 1);  // ensure solver exists
    auto& solver = stable_solver_.at(std::make_pair(b.index, r + 1));
    auto x = solver.solve(bc.coords);
    if (!x)
        throw ConsistencyError("Bockstein left the stable subspace");
    return *x;
}

BlocksEngine::PhiMap BlocksEngine::hh_block_decompose(int index, int n) {
    block(index);  // ensure the block exists
    Tower& TB = block_tower(index);
    Tower& T = triv();
    PhiMap m;
    m.deg = n;
    const auto& sp = TB.space(TB.whole(), n);
    m.total = sp.dim;
    int s = hh_.class_count();
    std::vector<std::vector<std::vector<int>>> comp_coords(s);
    std::vector<int> full_dims(s);
    for (int i = 0; i < s; ++i) full_dims[i] = T.space(hh_.centralizer_of(i).elems, n).dim;
    int rows = 0;
    for (int i = 0; i < s; ++i) rows += full_dims[i];
    m.forward = Matrix(rows, m.total, F_);
    for (int c = 0; c < m.total; ++c) {
        CocycleClass cl;
        cl.sub = TB.whole();
        cl.deg = n;
        cl.coords.assign(m.total, 0);
        cl.coords[c] = 1;
        Cochain rep = TB.rep_of(cl);
        int off = 0;
        for (int i = 0; i < s; ++i) {
            Cochain comp = block_component(index, rep, i);
            auto cc = T.class_of(hh_.centralizer_of(i).elems, comp);
            comp_coords[i].push_back(cc.coords);
            for (size_t k = 0; k < cc.coords.size(); ++k)
                m.forward.at(off + int(k), c) = cc.coords[k];
            off += full_dims[i];
        }
    }
    for (int i = 0; i < s; ++i) {
        EchelonSpan span(F_, full_dims[i]);
        for (auto& v : comp_coords[i]) span.add(v);
        m.comp_dims.push_back(span.dim());
        m.image_bases.push_back(from_columns(span.rows(), full_dims[i], Ring(F_)));
    }
    // Phi is injective onto its image and the gamma assembly is a left
    // inverse; the component images need not be independent, so their
    // dimensions may sum to more than dim H^n(G,B).
    if (rank(m.forward) != m.total)
        throw ConsistencyError("block decomposition is not injective at degree " + std::to_string(n));
    for (int c = 0; c < m.total; ++c) {
        CocycleClass cl;
        cl.sub = TB.whole();
        cl.deg = n;
        cl.coords.assign(m.total, 0);
        cl.coords[c] = 1;
        Cochain rep = TB.rep_of(cl);
        Cochain back = TB.zero_cochain(TB.whole(), n);
        for (int i = 0; i < s; ++i)
            back = TB.add(back, gamma_block(index, i, block_component(index, rep, i)));
        if (!TB.cohomologous(TB.whole(), back, rep))
            throw ConsistencyError("gamma assembly is not a left inverse of Phi at degree " +
                                   std::to_string(n));
    }
    return m;
}

Cochain BlocksEngine::block_component(int index, const Cochain& a, int i) {
    BlockData& b = block(index);
    Cochain in_kg = Tower::map_coeffs(kg(), b.inclusion, a);
    return hh_.component(in_kg, i);
}

Cochain BlocksEngine::gamma_block(int index, int i, const Cochain& f_i) {
    BlockData& b = block(index);
    Cochain g = hh_.gamma(i, f_i);
    return Tower::map_coeffs(block_tower(index), b.projection, g);
}

Cochain BlocksEngine::hh_block_bockstein(int index, const Cochain& a) {
    BlockData& b = block(index);
    Cochain in_kg = Tower::map_coeffs(kg(), b.inclusion, a);
    Cochain beta = hh_.bockstein(in_kg);
    return Tower::map_coeffs(block_tower(index), b.projection, beta);
}

Cochain BlocksEngine::hh_block_bockstein_transported(int index, const Cochain& a) {
    Tower& TB = block_tower(index);
    Cochain acc = TB.zero_cochain(TB.whole(), a.deg + 1);
    for (int i = 0; i < hh_.class_count(); ++i) {
        Cochain f_i = block_component(index, a, i);
        Cochain beta = triv().bockstein_trivial(f_i);
        acc = TB.add(acc, gamma_block(index, i, beta));
    }
    return acc;
}

}  // namespace blockstein
