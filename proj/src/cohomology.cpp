#include "blockstein/cohomology.hpp"

#include <algorithm>

namespace blockstein {

namespace {

// tuples of non-identity table indices, big-endian mixed radix
struct Codec {
    int n1;  // group order minus 1

    long count(int d) const {
        long c = 1;
        for (int i = 0; i < d; ++i) c *= n1;
        return c;
    }
    void decode(long code, int d, int* out) const {
        for (int i = d - 1; i >= 0; --i) {
            out[i] = int(code % n1) + 1;
            code /= n1;
        }
    }
    long encode(const int* t, int d) const {
        long code = 0;
        for (int i = 0; i < d; ++i) code = code * n1 + (t[i] - 1);
        return code;
    }
};

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

// Comparison chain map B(K) -> B(H) for H <= K, per degree; the contracting
// homotopy leaves only prefix-identity chains, so a value is a list of
// (H-tuple code, coefficient mod p) per (right-coset-rep, K-tuple).
struct Tower::PhiTable {
    std::vector<int> right_reps;  // K = union of H t
    std::vector<int> left_reps;   // K = union of t H
    std::vector<int> rc_rep_idx;  // per K element
    std::vector<int> rc_h;        // per K element, K-table index of the H part
    std::vector<std::vector<std::vector<std::pair<long, int>>>> levels;
};

Tower::Tower(GroupPtr G, ModulePtr M, long budget, int max_degree)
    : G_(std::move(G)), M_(std::move(M)), budget_(budget), max_degree_(max_degree), gr_(M_->field) {
    if (M_->group != G_) throw UsageError("tower module must live over the ambient group");
}

Tower make_trivial_tower(GroupPtr G, const FieldSpec& F, long budget, int max_degree) {
    return Tower(G, trivial_module(G, F), budget, max_degree);
}

SubKey Tower::whole() const {
    SubKey k(G_->n);
    for (int i = 0; i < G_->n; ++i) k[i] = i;
    return k;
}

const SubgroupTable& Tower::sub_table(const SubKey& H) {
    auto it = tables_.find(H);
    if (it != tables_.end()) return it->second;
    Subgroup S = make_subgroup(G_, H);
    auto res = tables_.emplace(H, subgroup_table(S));
    return res.first->second;
}

ModulePtr Tower::sub_module(const SubKey& H) {
    auto it = modules_.find(H);
    if (it != modules_.end()) return it->second;
    ModulePtr m;
    if (int(H.size()) == G_->n) {
        m = M_;
    } else {
        m = restrict_module(M_, sub_table(H));
    }
    modules_.emplace(H, m);
    return m;
}

long Tower::tuple_count(const SubKey& H, int deg) {
    Codec c{int(H.size()) - 1};
    return c.count(deg);
}

void Tower::check_budget(const SubKey& H, int deg) {
    long sz = ipow(long(H.size()), deg) * std::max(1, M_->dim);
    if (sz > budget_)
        throw ResourceError("cohomology budget exceeded: |H|^" + std::to_string(deg) +
                            " * dim M = " + std::to_string(sz) + " > " + std::to_string(budget_));
}

Cochain Tower::zero_cochain(const SubKey& H, int deg) {
    Cochain f;
    f.sub = H;
    f.deg = deg;
    f.vals.assign(size_t(tuple_count(H, deg)) * M_->dim, 0);
    return f;
}

std::vector<int> Tower::value_at(const Cochain& f, const std::vector<int>& tuple) {
    int dim = M_->dim;
    for (int x : tuple)
        if (x == 0) return std::vector<int>(dim, 0);
    Codec c{int(f.sub.size()) - 1};
    long code = c.encode(tuple.data(), f.deg);
    return std::vector<int>(f.vals.begin() + code * dim, f.vals.begin() + (code + 1) * dim);
}

Cochain Tower::add(const Cochain& a, const Cochain& b) const {
    if (a.sub != b.sub || a.deg != b.deg) throw UsageError("cochain shape mismatch");
    Cochain c = a;
    const FieldSpec& F = M_->field;
    for (size_t i = 0; i < c.vals.size(); ++i) c.vals[i] = F.add(a.vals[i], b.vals[i]);
    return c;
}

Cochain Tower::subtract(const Cochain& a, const Cochain& b) const {
    if (a.sub != b.sub || a.deg != b.deg) throw UsageError("cochain shape mismatch");
    Cochain c = a;
    const FieldSpec& F = M_->field;
    for (size_t i = 0; i < c.vals.size(); ++i) c.vals[i] = F.sub(a.vals[i], b.vals[i]);
    return c;
}

Cochain Tower::scale(int s, const Cochain& a) const {
    Cochain c = a;
    const FieldSpec& F = M_->field;
    for (auto& v : c.vals) v = F.mul(s, v);
    return c;
}

Cochain Tower::delta(const SubKey& H, const Cochain& f) {
    if (f.sub != H) throw UsageError("delta: cochain not over the given subgroup");
    const SubgroupTable& st = sub_table(H);
    const GroupTable& T = *st.table;
    ModulePtr Msub = sub_module(H);
    const FieldSpec& F = M_->field;
    int dim = M_->dim;
    int d = f.deg;
    Codec c{T.n - 1};
    Cochain out = zero_cochain(H, d + 1);
    long N = c.count(d + 1);
    std::vector<int> tup(d + 1), sub(d > 0 ? d : 1);
    std::vector<int> acc(dim);
    for (long code = 0; code < N; ++code) {
        c.decode(code, d + 1, tup.data());
        std::fill(acc.begin(), acc.end(), 0);
        {
            long fc = d == 0 ? 0 : c.encode(tup.data() + 1, d);
            const int* fv = &f.vals[fc * dim];
            if (Msub->trivial_action) {
                for (int k = 0; k < dim; ++k) acc[k] = fv[k];
            } else {
                const Matrix& A = Msub->action[tup[0]];
                for (int r = 0; r < dim; ++r) {
                    int s = 0;
                    for (int k = 0; k < dim; ++k)
                        if (A.at(r, k) && fv[k]) s = F.add(s, F.mul(A.at(r, k), fv[k]));
                    acc[r] = s;
                }
            }
        }
        for (int i = 1; i <= d; ++i) {
            int merged = T.mul(tup[i - 1], tup[i]);
            if (merged == 0) continue;
            for (int j = 0; j < i - 1; ++j) sub[j] = tup[j];
            sub[i - 1] = merged;
            for (int j = i + 1; j <= d; ++j) sub[j - 1] = tup[j];
            long fc = c.encode(sub.data(), d);
            const int* fv = &f.vals[fc * dim];
            if (i % 2) {
                for (int k = 0; k < dim; ++k)
                    if (fv[k]) acc[k] = F.sub(acc[k], fv[k]);
            } else {
                for (int k = 0; k < dim; ++k)
                    if (fv[k]) acc[k] = F.add(acc[k], fv[k]);
            }
        }
        {
            long fc = d == 0 ? 0 : c.encode(tup.data(), d);
            const int* fv = &f.vals[fc * dim];
            if ((d + 1) % 2) {
                for (int k = 0; k < dim; ++k)
                    if (fv[k]) acc[k] = F.sub(acc[k], fv[k]);
            } else {
                for (int k = 0; k < dim; ++k)
                    if (fv[k]) acc[k] = F.add(acc[k], fv[k]);
            }
        }
        std::copy(acc.begin(), acc.end(), out.vals.begin() + code * dim);
    }
    return out;
}

bool Tower::is_cocycle(const SubKey& H, const Cochain& f) {
    Cochain d = delta(H, f);
    for (int v : d.vals)
        if (v) return false;
    return true;
}

const Matrix& Tower::delta_matrix(const SubKey& H, int deg) {
    auto key = std::make_pair(H, deg);
    auto it = delta_mats_.find(key);
    if (it != delta_mats_.end()) return it->second;
    check_budget(H, deg);
    const SubgroupTable& st = sub_table(H);
    const GroupTable& T = *st.table;
    ModulePtr Msub = sub_module(H);
    const FieldSpec& F = M_->field;
    int dim = M_->dim;
    Codec c{T.n - 1};
    long Nin = c.count(deg), Nout = c.count(deg + 1);
    if (Nout * dim > (1 << 22))
        throw ResourceError("coboundary matrix too large at degree " + std::to_string(deg));
    Matrix D(int(Nout) * dim, int(Nin) * dim, F);
    std::vector<int> tup(deg + 1), sub(deg > 0 ? deg : 1);
    for (long code = 0; code < Nout; ++code) {
        c.decode(code, deg + 1, tup.data());
        long rbase = code * dim;
        {
            long fc = deg == 0 ? 0 : c.encode(tup.data() + 1, deg);
            const Matrix& A = Msub->action[tup[0]];
            for (int r = 0; r < dim; ++r)
                for (int k = 0; k < dim; ++k)
                    if (A.at(r, k))
                        D.at(int(rbase) + r, int(fc * dim) + k) =
                            F.add(D.at(int(rbase) + r, int(fc * dim) + k), A.at(r, k));
        }
        for (int i = 1; i <= deg; ++i) {
            int merged = T.mul(tup[i - 1], tup[i]);
            if (merged == 0) continue;
            for (int j = 0; j < i - 1; ++j) sub[j] = tup[j];
            sub[i - 1] = merged;
            for (int j = i + 1; j <= deg; ++j) sub[j - 1] = tup[j];
            long fc = c.encode(sub.data(), deg);
            int sgn = i % 2;
            for (int k = 0; k < dim; ++k) {
                int& cell = D.at(int(rbase) + k, int(fc * dim) + k);
                cell = sgn ? F.sub(cell, 1) : F.add(cell, 1);
            }
        }
        {
            long fc = deg == 0 ? 0 : c.encode(tup.data(), deg);
            int sgn = (deg + 1) % 2;
            for (int k = 0; k < dim; ++k) {
                int& cell = D.at(int(rbase) + k, int(fc * dim) + k);
                cell = sgn ? F.sub(cell, 1) : F.add(cell, 1);
            }
        }
    }
    auto res = delta_mats_.emplace(key, std::move(D));
    return res.first->second;
}

const ColspaceSolver& Tower::cobound_solver(const SubKey& H, int deg) {
    auto key = std::make_pair(H, deg);
    auto it = cobound_.find(key);
    if (it != cobound_.end()) return it->second;
    if (deg < 1) throw UsageError("no coboundaries in degree 0");
    const Matrix& D = delta_matrix(H, deg - 1);
    auto res = cobound_.emplace(key, ColspaceSolver(D));
    return res.first->second;
}

const Tower::Space& Tower::space(const SubKey& H, int deg) {
    auto key = std::make_pair(H, deg);
    auto it = spaces_.find(key);
    if (it != spaces_.end()) return it->second;
    if (deg > max_degree_)
        throw ResourceError("degree " + std::to_string(deg) + " beyond max_degree " +
                            std::to_string(max_degree_));
    const FieldSpec& F = M_->field;
    int dim = M_->dim;
    long N = tuple_count(H, deg);
    int len = int(N) * dim;
    Space sp;
    sp.deg = deg;
    Matrix Z = kernel_basis(delta_matrix(H, deg));
    EchelonSpan span(F, len);
    if (deg >= 1) {
        const Matrix& Dm = delta_matrix(H, deg - 1);
        for (int j = 0; j < Dm.cols; ++j) span.add(column_of(Dm, j));
    }
    std::vector<std::vector<int>> bcols = span.rows();
    sp.b_cols = int(bcols.size());
    for (int j = 0; j < Z.cols; ++j) {
        auto v = column_of(Z, j);
        if (span.add(v)) sp.basis.push_back(v);
    }
    sp.dim = int(sp.basis.size());
    std::vector<std::vector<int>> all = bcols;
    for (auto& v : sp.basis) all.push_back(v);
    sp.class_solver = ColspaceSolver(from_columns(all, len, Ring(F)));
    auto res = spaces_.emplace(key, std::move(sp));
    return res.first->second;
}

CocycleClass Tower::class_of(const SubKey& H, const Cochain& f) {
    if (!is_cocycle(H, f)) throw ConsistencyError("class_of on a non-cocycle");
    const Space& sp = space(H, f.deg);
    auto x = sp.class_solver.solve(f.vals);
    if (!x) throw ConsistencyError("cocycle outside the cocycle space");
    CocycleClass c;
    c.sub = H;
    c.deg = f.deg;
    c.coords.assign(x->begin() + sp.b_cols, x->end());
    return c;
}

Cochain Tower::rep_of(const CocycleClass& cl) {
    const Space& sp = space(cl.sub, cl.deg);
    Cochain f = zero_cochain(cl.sub, cl.deg);
    const FieldSpec& F = M_->field;
    for (size_t i = 0; i < cl.coords.size(); ++i) {
        int c = cl.coords[i];
        if (!c) continue;
        for (size_t k = 0; k < f.vals.size(); ++k)
            if (sp.basis[i][k]) f.vals[k] = F.add(f.vals[k], F.mul(c, sp.basis[i][k]));
    }
    return f;
}

bool Tower::is_coboundary(const SubKey& H, const Cochain& f) {
    if (f.deg == 0) {
        for (int v : f.vals)
            if (v) return false;
        return true;
    }
    return cobound_solver(H, f.deg).in_colspace(f.vals);
}

bool Tower::cohomologous(const SubKey& H, const Cochain& a, const Cochain& b) {
    return is_coboundary(H, subtract(a, b));
}

Cochain Tower::res(const Cochain& f, const SubKey& H) {
    const SubKey& K = f.sub;
    const SubgroupTable& Kst = sub_table(K);
    const SubgroupTable& Hst = sub_table(H);
    for (int h : H)
        if (!std::binary_search(K.begin(), K.end(), h))
            throw UsageError("res: target is not a subgroup of the source");
    int dim = M_->dim, d = f.deg;
    Codec ch{int(H.size()) - 1}, ck{int(K.size()) - 1};
    Cochain out = zero_cochain(H, d);
    long N = ch.count(d);
    std::vector<int> tup(d), ktup(d);
    for (long code = 0; code < N; ++code) {
        ch.decode(code, d, tup.data());
        for (int i = 0; i < d; ++i) ktup[i] = Kst.from_parent[Hst.to_parent[tup[i]]];
        long kcode = d == 0 ? 0 : ck.encode(ktup.data(), d);
        std::copy(f.vals.begin() + kcode * dim, f.vals.begin() + (kcode + 1) * dim,
                  out.vals.begin() + code * dim);
    }
    return out;
}

Cochain Tower::conj(int g, const Cochain& f) {
    const SubKey& H = f.sub;
    const SubgroupTable& Hst = sub_table(H);
    SubKey target;
    for (int a : H) target.push_back(G_->conj(g, a));
    std::sort(target.begin(), target.end());
    const SubgroupTable& Tst = sub_table(target);
    int dim = M_->dim, d = f.deg;
    Codec ct{int(target.size()) - 1}, ch{int(H.size()) - 1};
    Cochain out = zero_cochain(target, d);
    long N = ct.count(d);
    std::vector<int> tup(d), htup(d);
    const Matrix& act = M_->action[g];
    const FieldSpec& F = M_->field;
    for (long code = 0; code < N; ++code) {
        ct.decode(code, d, tup.data());
        for (int i = 0; i < d; ++i)
            htup[i] = Hst.from_parent[G_->conj_by_inv(g, Tst.to_parent[tup[i]])];
        long hcode = d == 0 ? 0 : ch.encode(htup.data(), d);
        const int* fv = &f.vals[hcode * dim];
        int* ov = &out.vals[code * dim];
        if (M_->trivial_action) {
            std::copy(fv, fv + dim, ov);
        } else {
            for (int r = 0; r < dim; ++r) {
                int s = 0;
                for (int k = 0; k < dim; ++k)
                    if (act.at(r, k) && fv[k]) s = F.add(s, F.mul(act.at(r, k), fv[k]));
                ov[r] = s;
            }
        }
    }
    return out;
}

Cochain Tower::cup(const Cochain& f, const Cochain& g) {
    if (f.sub != g.sub) throw UsageError("cup: cochains over different subgroups");
    if (!M_->mu) throw UsageError("cup: module carries no pairing");
    const SubKey& H = f.sub;
    const SubgroupTable& st = sub_table(H);
    const GroupTable& T = *st.table;
    ModulePtr Msub = sub_module(H);
    int dim = M_->dim, m = f.deg, n = g.deg;
    Codec c{T.n - 1};
    Cochain out = zero_cochain(H, m + n);
    long N = c.count(m + n);
    std::vector<int> tup(m + n);
    for (long code = 0; code < N; ++code) {
        c.decode(code, m + n, tup.data());
        long fc = m == 0 ? 0 : c.encode(tup.data(), m);
        long gc = n == 0 ? 0 : c.encode(tup.data() + m, n);
        std::vector<int> fv(f.vals.begin() + fc * dim, f.vals.begin() + (fc + 1) * dim);
        std::vector<int> gv(g.vals.begin() + gc * dim, g.vals.begin() + (gc + 1) * dim);
        int prefix = 0;
        for (int i = 0; i < m; ++i) prefix = T.mul(prefix, tup[i]);
        auto val = Msub->mul(fv, Msub->act(prefix, gv));
        std::copy(val.begin(), val.end(), out.vals.begin() + code * dim);
    }
    return out;
}

// ---------------------------------------------------------------- transfer

Tower::PhiTable& Tower::phi(const SubKey& K, const SubKey& H, int deg) {
    auto key = std::make_pair(K, H);
    auto it = phis_.find(key);
    std::shared_ptr<PhiTable> pt;
    if (it != phis_.end()) {
        pt = it->second;
    } else {
        pt = std::make_shared<PhiTable>();
        const SubgroupTable& Kst = sub_table(K);
        std::vector<int> h_in_K;
        for (int h : H) {
            int pos = Kst.from_parent[h];
            if (pos < 0) throw UsageError("transfer: source is not a subgroup of the target");
            h_in_K.push_back(pos);
        }
        std::sort(h_in_K.begin(), h_in_K.end());
        Subgroup Hk = make_subgroup(Kst.table, h_in_K);
        pt->right_reps = right_coset_reps(Hk);
        pt->left_reps = left_coset_reps(Hk);
        const GroupTable& T = *Kst.table;
        pt->rc_rep_idx.assign(T.n, -1);
        pt->rc_h.assign(T.n, -1);
        for (size_t ti = 0; ti < pt->right_reps.size(); ++ti)
            for (int h : h_in_K) {
                int k = T.mul(h, pt->right_reps[ti]);
                pt->rc_rep_idx[k] = int(ti);
                pt->rc_h[k] = h;
            }
        pt->levels.resize(1);
        pt->levels[0].assign(pt->right_reps.size(), {{0L, 1}});
        phis_.emplace(key, pt);
    }
    const SubgroupTable& Kst = sub_table(K);
    const SubgroupTable& Hst = sub_table(H);
    const GroupTable& T = *Kst.table;
    int p = M_->field.p;
    Codec ck{T.n - 1};
    Codec chh{int(H.size()) - 1};
    while (int(pt->levels.size()) <= deg) {
        int d = int(pt->levels.size());
        check_budget(K, d);
        long Nd = ck.count(d);
        long Nprev = d - 1 == 0 ? 1 : ck.count(d - 1);
        int nreps = int(pt->right_reps.size());
        std::vector<std::vector<std::pair<long, int>>> lvl(size_t(nreps) * Nd);
        std::vector<int> tup(d), sub(d > 0 ? d : 1), ztup(d > 0 ? d : 1), ntup(d);
        for (int ti = 0; ti < nreps; ++ti) {
            int trep = pt->right_reps[ti];
            for (long code = 0; code < Nd; ++code) {
                ck.decode(code, d, tup.data());
                std::map<long, int> acc;
                auto add_term = [&](int sign, int gpre, const int* ytup) {
                    int hK = pt->rc_h[gpre];
                    int tpi = pt->rc_rep_idx[gpre];
                    if (hK == 0) return;  // normalized: the homotopy kills prefix-identity chains
                    long ycode = d - 1 == 0 ? 0 : ck.encode(ytup, d - 1);
                    int hH = Hst.from_parent[Kst.to_parent[hK]];
                    const auto& terms = pt->levels[d - 1][size_t(tpi) * Nprev + ycode];
                    for (auto& [zc, co] : terms) {
                        if (d - 1 > 0) chh.decode(zc, d - 1, ztup.data());
                        ntup[0] = hH;
                        for (int i = 0; i < d - 1; ++i) ntup[i + 1] = ztup[i];
                        long nc = chh.encode(ntup.data(), d);
                        acc[nc] = ((acc[nc] + sign * co) % p + p) % p;
                    }
                };
                {
                    int g0 = T.mul(trep, tup[0]);
                    add_term(1, g0, tup.data() + 1);
                }
                for (int i = 1; i < d; ++i) {
                    int merged = T.mul(tup[i - 1], tup[i]);
                    if (merged == 0) continue;
                    for (int j = 0; j < i - 1; ++j) sub[j] = tup[j];
                    sub[i - 1] = merged;
                    for (int j = i + 1; j < d; ++j) sub[j - 1] = tup[j];
                    add_term(i % 2 ? -1 : 1, trep, sub.data());
                }
                add_term(d % 2 ? -1 : 1, trep, tup.data());
                auto& out = lvl[size_t(ti) * Nd + code];
                for (auto& [zc, co] : acc)
                    if (co % p) out.emplace_back(zc, co % p);
            }
        }
        pt->levels.push_back(std::move(lvl));
    }
    return *pt;
}

Cochain Tower::transfer(const Cochain& f, const SubKey& K) {
    const SubKey& H = f.sub;
    PhiTable& pt = phi(K, H, f.deg);
    const SubgroupTable& Kst = sub_table(K);
    const GroupTable& T = *Kst.table;
    ModulePtr MK = sub_module(K);
    const FieldSpec& F = M_->field;
    int dim = M_->dim, d = f.deg;
    Codec ck{T.n - 1};
    long N = d == 0 ? 1 : ck.count(d);
    Cochain out = zero_cochain(K, d);
    std::vector<int> inner(dim);
    for (long code = 0; code < N; ++code) {
        int* ov = &out.vals[code * dim];
        std::vector<int> acc(dim, 0);
        for (int t : pt.left_reps) {
            int tinv = T.invert(t);
            int h_t = pt.rc_h[tinv];
            int tpi = pt.rc_rep_idx[tinv];
            const auto& terms = pt.levels[d][size_t(tpi) * N + code];
            if (terms.empty()) continue;
            std::fill(inner.begin(), inner.end(), 0);
            for (auto& [zc, co] : terms) {
                const int* fv = &f.vals[zc * dim];
                int cf = F.from_int(co);
                for (int k = 0; k < dim; ++k)
                    if (fv[k]) inner[k] = F.add(inner[k], F.mul(cf, fv[k]));
            }
            int e = T.mul(t, h_t);
            auto moved = MK->act(e, inner);
            for (int k = 0; k < dim; ++k) acc[k] = F.add(acc[k], moved[k]);
        }
        std::copy(acc.begin(), acc.end(), ov);
    }
    return out;
}

Cochain Tower::map_coeffs(Tower& target, const Matrix& h, const Cochain& f) {
    int din = h.cols, dout = h.rows;
    const FieldSpec& F = target.field();
    Codec c{int(f.sub.size()) - 1};
    long N = c.count(f.deg);
    Cochain out = target.zero_cochain(f.sub, f.deg);
    for (long code = 0; code < N; ++code) {
        const int* fv = &f.vals[code * din];
        int* ov = &out.vals[code * dout];
        for (int r = 0; r < dout; ++r) {
            int s = 0;
            for (int k = 0; k < din; ++k)
                if (h.at(r, k) && fv[k]) s = F.add(s, F.mul(h.at(r, k), fv[k]));
            ov[r] = s;
        }
    }
    return out;
}

// -------------------------------------------------------------- bocksteins

Cochain Tower::bockstein_trivial(const Cochain& f) {
    if (!M_->trivial_action || M_->dim != 1)
        throw UsageError("bockstein_trivial requires trivial one-dimensional coefficients");
    const SubKey& H = f.sub;
    const SubgroupTable& st = sub_table(H);
    const GroupTable& T = *st.table;
    const FieldSpec& F = M_->field;
    int d = f.deg;
    Codec c{T.n - 1};
    std::vector<int> lifted(f.vals.size());
    for (size_t i = 0; i < f.vals.size(); ++i) lifted[i] = lift_code(F, gr_, f.vals[i]);
    Cochain out = zero_cochain(H, d + 1);
    long N = c.count(d + 1);
    std::vector<int> tup(d + 1), sub(d > 0 ? d : 1);
    for (long code = 0; code < N; ++code) {
        c.decode(code, d + 1, tup.data());
        int acc = d == 0 ? lifted[0] : lifted[c.encode(tup.data() + 1, d)];
        for (int i = 1; i <= d; ++i) {
            int merged = T.mul(tup[i - 1], tup[i]);
            if (merged == 0) continue;
            for (int j = 0; j < i - 1; ++j) sub[j] = tup[j];
            sub[i - 1] = merged;
            for (int j = i + 1; j <= d; ++j) sub[j - 1] = tup[j];
            int v = lifted[c.encode(sub.data(), d)];
            acc = i % 2 ? gr_.sub(acc, v) : gr_.add(acc, v);
        }
        {
            int v = d == 0 ? lifted[0] : lifted[c.encode(tup.data(), d)];
            acc = (d + 1) % 2 ? gr_.sub(acc, v) : gr_.add(acc, v);
        }
        out.vals[code] = divide_code_by_p(gr_, F, acc);
    }
    return out;
}

const std::vector<Matrix>& Tower::lifted_action(const SubKey& H) {
    auto it = lifted_actions_.find(H);
    if (it != lifted_actions_.end()) return it->second;
    ModulePtr Msub = sub_module(H);
    const FieldSpec& F = M_->field;
    int nh = int(H.size());
    std::vector<Matrix> lifts;
    for (int h = 0; h < nh; ++h) {
        Matrix L(M_->dim, M_->dim, Ring(gr_));
        for (int r = 0; r < M_->dim; ++r)
            for (int cc = 0; cc < M_->dim; ++cc)
                L.at(r, cc) = lift_code(F, gr_, Msub->action[h].at(r, cc));
        lifts.push_back(std::move(L));
    }
    const GroupTable& T = *sub_table(H).table;
    for (int a = 0; a < nh; ++a)
        for (int b = 0; b < nh; ++b)
            if (!(mat_mul(lifts[a], lifts[b]) == lifts[T.mul(a, b)]))
                throw UnsupportedError(
                    "coefficient lift is not multiplicative mod p^2; the connecting "
                    "Bockstein needs a permutation-style module");
    auto res = lifted_actions_.emplace(H, std::move(lifts));
    return res.first->second;
}

Cochain Tower::bockstein_connecting(const Cochain& f) {
    const SubKey& H = f.sub;
    const std::vector<Matrix>& lifts = lifted_action(H);
    const SubgroupTable& st = sub_table(H);
    const GroupTable& T = *st.table;
    const FieldSpec& F = M_->field;
    int dim = M_->dim, d = f.deg;
    Codec c{T.n - 1};
    std::vector<int> lifted(f.vals.size());
    for (size_t i = 0; i < f.vals.size(); ++i) lifted[i] = lift_code(F, gr_, f.vals[i]);
    Cochain out = zero_cochain(H, d + 1);
    long N = c.count(d + 1);
    std::vector<int> tup(d + 1), sub(d > 0 ? d : 1);
    std::vector<int> acc(dim), fv(dim);
    for (long code = 0; code < N; ++code) {
        c.decode(code, d + 1, tup.data());
        {
            long fc = d == 0 ? 0 : c.encode(tup.data() + 1, d);
            std::copy(lifted.begin() + fc * dim, lifted.begin() + (fc + 1) * dim, fv.begin());
            const Matrix& A = lifts[tup[0]];
            for (int r = 0; r < dim; ++r) {
                int s = 0;
                for (int k = 0; k < dim; ++k)
                    if (A.at(r, k) && fv[k]) s = gr_.add(s, gr_.mul(A.at(r, k), fv[k]));
                acc[r] = s;
            }
        }
        for (int i = 1; i <= d; ++i) {
            int merged = T.mul(tup[i - 1], tup[i]);
            if (merged == 0) continue;
            for (int j = 0; j < i - 1; ++j) sub[j] = tup[j];
            sub[i - 1] = merged;
            for (int j = i + 1; j <= d; ++j) sub[j - 1] = tup[j];
            long fc = c.encode(sub.data(), d);
            for (int k = 0; k < dim; ++k) {
                int v = lifted[fc * dim + k];
                if (v) acc[k] = i % 2 ? gr_.sub(acc[k], v) : gr_.add(acc[k], v);
            }
        }
        {
            long fc = d == 0 ? 0 : c.encode(tup.data(), d);
            for (int k = 0; k < dim; ++k) {
                int v = lifted[fc * dim + k];
                if (v) acc[k] = (d + 1) % 2 ? gr_.sub(acc[k], v) : gr_.add(acc[k], v);
            }
        }
        for (int k = 0; k < dim; ++k) out.vals[code * dim + k] = divide_code_by_p(gr_, F, acc[k]);
    }
    return out;
}

}  // namespace blockstein
