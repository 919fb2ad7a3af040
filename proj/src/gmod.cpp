#include "blockstein/gmod.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace blockstein {

namespace {

uint64_t xorshift(uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
}

std::vector<int> generators_of(const GroupTable& G) {
    std::vector<int> gens;
    std::set<int> have = {0};
    auto Gp = std::make_shared<GroupTable>(G);
    for (int g = 1; g < G.n; ++g) {
        if (have.count(g)) continue;
        gens.push_back(g);
        Subgroup S = subgroup_closure(Gp, gens);
        have.clear();
        have.insert(S.elems.begin(), S.elems.end());
        if (int(have.size()) == G.n) break;
    }
    return gens;
}

using SpanBuilder = EchelonSpan;

}  // namespace

// ----------------------------------------------------------------- GModule

std::vector<int> GModule::act(int g, const std::vector<int>& v) const {
    if (trivial_action) return v;
    return mat_vec(action[g], v);
}

std::vector<int> GModule::mul(const std::vector<int>& x, const std::vector<int>& y) const {
    if (!mu) throw UsageError("module carries no pairing");
    std::vector<int> out(dim, 0);
    for (int i = 0; i < dim; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < dim; ++j) {
            if (y[j] == 0) continue;
            int c = field.mul(x[i], y[j]);
            for (int k = 0; k < dim; ++k) {
                int t = mu->coeff(i, j, k);
                if (t) out[k] = field.add(out[k], field.mul(c, t));
            }
        }
    }
    return out;
}

ModulePtr make_module(GroupPtr G, FieldSpec F, std::vector<Matrix> action, std::optional<Pairing> mu,
                      bool mu_equivariant) {
    auto M = std::make_shared<GModule>();
    M->group = G;
    M->field = F;
    if (int(action.size()) != G->n) throw UsageError("need one action matrix per group element");
    M->dim = action.empty() ? 0 : action[0].rows;
    for (auto& A : action)
        if (A.rows != M->dim || A.cols != M->dim || !ring_equal(A.ring, Ring(F)))
            throw UsageError("action matrix shape or ring mismatch");
    M->action = std::move(action);
    if (!(M->action[0] == Matrix::identity(M->dim, F)))
        throw UsageError("identity must act as the identity matrix");
    if (G->n <= 24) {
        for (int g = 0; g < G->n; ++g)
            for (int h = 0; h < G->n; ++h)
                if (!(mat_mul(M->action[g], M->action[h]) == M->action[G->mul(g, h)]))
                    throw UsageError("action is not a homomorphism");
    } else {
        uint64_t s = 0xabcdefULL;
        for (int t = 0; t < 200; ++t) {
            int g = int(xorshift(s) % G->n), h = int(xorshift(s) % G->n);
            if (!(mat_mul(M->action[g], M->action[h]) == M->action[G->mul(g, h)]))
                throw UsageError("action is not a homomorphism");
        }
    }
    M->trivial_action = true;
    for (int g = 0; g < G->n && M->trivial_action; ++g)
        if (!(M->action[g] == M->action[0])) M->trivial_action = false;
    if (mu) {
        if (mu->dim != M->dim || int(mu->unit.size()) != M->dim)
            throw UsageError("pairing dimension mismatch");
        M->mu = std::move(mu);
        const int d = M->dim;
        auto basis = [&](int i) {
            std::vector<int> v(d, 0);
            v[i] = 1;
            return v;
        };
        for (int i = 0; i < d; ++i) {
            if (M->mul(M->mu->unit, basis(i)) != basis(i) || M->mul(basis(i), M->mu->unit) != basis(i))
                throw UsageError("pairing unit law fails");
        }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    if (M->mul(M->mul(basis(i), basis(j)), basis(k)) !=
                        M->mul(basis(i), M->mul(basis(j), basis(k))))
                        throw UsageError("pairing is not associative");
        if (mu_equivariant)
            for (int g = 0; g < G->n; ++g)
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        if (M->act(g, M->mul(basis(i), basis(j))) !=
                            M->mul(M->act(g, basis(i)), M->act(g, basis(j))))
                            throw UsageError("group does not act by algebra automorphisms");
    }
    return M;
}

ModulePtr conjugation_module(GroupPtr G, const FieldSpec& F) {
    int n = G->n;
    std::vector<Matrix> action(n, Matrix(n, n, F));
    for (int g = 0; g < n; ++g)
        for (int a = 0; a < n; ++a) action[g].at(G->conj(g, a), a) = 1;
    Pairing mu;
    mu.dim = n;
    mu.tensor.assign(size_t(n) * n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mu.tensor[(size_t(i) * n + j) * n + G->mul(i, j)] = 1;
    mu.unit.assign(n, 0);
    mu.unit[0] = 1;
    return make_module(G, F, std::move(action), std::move(mu));
}

ModulePtr trivial_module(GroupPtr H, const FieldSpec& F) {
    std::vector<Matrix> action(H->n, Matrix::identity(1, F));
    Pairing mu;
    mu.dim = 1;
    mu.tensor = {1};
    mu.unit = {1};
    return make_module(H, F, std::move(action), std::move(mu));
}

ModulePtr group_algebra_bimodule(GroupPtr G, const DirectSquare& ds, const FieldSpec& F) {
    int n = G->n;
    std::vector<Matrix> action(ds.pxp->n, Matrix(n, n, F));
    for (int g = 0; g < ds.pxp->n; ++g) {
        int u = ds.first(g), v = ds.second(g);
        for (int a = 0; a < n; ++a) action[g].at(G->mul(G->mul(u, a), G->invert(v)), a) = 1;
    }
    Pairing mu;
    mu.dim = n;
    mu.tensor.assign(size_t(n) * n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mu.tensor[(size_t(i) * n + j) * n + G->mul(i, j)] = 1;
    mu.unit.assign(n, 0);
    mu.unit[0] = 1;
    return make_module(ds.pxp, F, std::move(action), std::move(mu), /*mu_equivariant=*/false);
}

ModulePtr double_coset_module(const SubgroupTable& P, const DirectSquare& ds,
                              const std::vector<int>& coset_elems, const FieldSpec& F) {
    const GroupTable& G = *P.parent;
    std::map<int, int> pos;
    for (size_t i = 0; i < coset_elems.size(); ++i) pos[coset_elems[i]] = int(i);
    int d = int(coset_elems.size());
    std::vector<Matrix> action(ds.pxp->n, Matrix(d, d, F));
    for (int g = 0; g < ds.pxp->n; ++g) {
        int u = P.to_parent[ds.first(g)], v = P.to_parent[ds.second(g)];
        for (int a = 0; a < d; ++a) {
            int img = G.mul(G.mul(u, coset_elems[a]), G.invert(v));
            auto it = pos.find(img);
            if (it == pos.end()) throw ConsistencyError("double coset not stable under PxP");
            action[g].at(it->second, a) = 1;
        }
    }
    return make_module(ds.pxp, F, std::move(action));
}

ModulePtr restrict_module(const ModulePtr& M, const SubgroupTable& H) {
    if (H.parent != M->group) throw UsageError("restrict: subgroup of a different group");
    std::vector<Matrix> action(H.table->n);
    for (int h = 0; h < H.table->n; ++h) action[h] = M->action[H.to_parent[h]];
    return make_module(H.table, M->field, std::move(action), M->mu);
}

ModulePtr restrict_along(const ModulePtr& M, const GroupHom& phi) {
    if (phi.codomain != M->group) throw UsageError("restrict_along: codomain mismatch");
    std::set<int> img(phi.image.begin(), phi.image.end());
    if (int(img.size()) != phi.domain->n)
        throw UnsupportedError("restriction along a non-injective map");
    std::vector<Matrix> action(phi.domain->n);
    for (int h = 0; h < phi.domain->n; ++h) action[h] = M->action[phi.image[h]];
    return make_module(phi.domain, M->field, std::move(action), M->mu);
}

ModulePtr induce(const SubgroupTable& H, const ModulePtr& MH) {
    if (MH->group != H.table) throw UsageError("induce: module not over the subgroup table");
    GroupPtr G = H.parent;
    Subgroup Hsub = make_subgroup(G, H.to_parent);
    std::vector<int> reps = left_coset_reps(Hsub);
    int nc = int(reps.size()), dm = MH->dim;
    int dim = nc * dm;
    std::vector<int> coset_of(G->n, -1), h_part(G->n, -1);
    for (int i = 0; i < nc; ++i)
        for (int h = 0; h < H.table->n; ++h) {
            int g = G->mul(reps[i], H.to_parent[h]);
            coset_of[g] = i;
            h_part[g] = h;
        }
    const FieldSpec& F = MH->field;
    std::vector<Matrix> action(G->n, Matrix(dim, dim, F));
    for (int g = 0; g < G->n; ++g)
        for (int i = 0; i < nc; ++i) {
            int gt = G->mul(g, reps[i]);
            int k = coset_of[gt], h = h_part[gt];
            const Matrix& Ah = MH->action[h];
            for (int r = 0; r < dm; ++r)
                for (int c = 0; c < dm; ++c)
                    if (Ah.at(r, c)) action[g].at(k * dm + r, i * dm + c) = Ah.at(r, c);
        }
    return make_module(G, F, std::move(action));
}

std::vector<ModuleHom> hom_space(const ModulePtr& M, const ModulePtr& N) {
    if (M->group != N->group || !(M->field == N->field))
        throw UsageError("hom_space: group or field mismatch");
    const FieldSpec& F = M->field;
    std::vector<int> gens = generators_of(*M->group);
    if (gens.empty()) gens.push_back(0);
    int dm = M->dim, dn = N->dim;
    int vars = dn * dm;  // X[r][c] at r*dm+c
    Matrix sys(int(gens.size()) * vars, vars, F);
    int row = 0;
    for (int g : gens) {
        const Matrix& A = M->action[g];
        const Matrix& B = N->action[g];
        for (int r = 0; r < dn; ++r)
            for (int c = 0; c < dm; ++c) {
                // (X A - B X)[r][c] = 0
                for (int k = 0; k < dm; ++k)
                    if (A.at(k, c))
                        sys.at(row, r * dm + k) = F.add(sys.at(row, r * dm + k), A.at(k, c));
                for (int k = 0; k < dn; ++k)
                    if (B.at(r, k))
                        sys.at(row, k * dm + c) = F.sub(sys.at(row, k * dm + c), B.at(r, k));
                ++row;
            }
    }
    Matrix K = kernel_basis(sys);
    std::vector<ModuleHom> out;
    for (int j = 0; j < K.cols; ++j) {
        ModuleHom h;
        h.domain = M;
        h.codomain = N;
        h.mat = Matrix(dn, dm, Ring(F));
        for (int r = 0; r < dn; ++r)
            for (int c = 0; c < dm; ++c) h.mat.at(r, c) = K.at(r * dm + c, j);
        out.push_back(std::move(h));
    }
    return out;
}

// ------------------------------------------------------------------ Algebra

std::vector<int> Algebra::mul(const std::vector<int>& x, const std::vector<int>& y) const {
    std::vector<int> out(dim, 0);
    for (int i = 0; i < dim; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < dim; ++j) {
            if (y[j] == 0) continue;
            int c = field.mul(x[i], y[j]);
            for (int k = 0; k < dim; ++k) {
                int t = coeff(i, j, k);
                if (t) out[k] = field.add(out[k], field.mul(c, t));
            }
        }
    }
    return out;
}

std::vector<int> Algebra::power(std::vector<int> x, long e) const {
    std::vector<int> r = unit;
    while (e > 0) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

bool Algebra::is_commutative() const {
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (coeff(i, j, k) != coeff(j, i, k)) return false;
    return true;
}

Algebra algebra_of(const GModule& M) {
    if (!M.mu) throw UsageError("module carries no pairing");
    Algebra A;
    A.field = M.field;
    A.dim = M.dim;
    A.mult = M.mu->tensor;
    A.unit = M.mu->unit;
    return A;
}

std::vector<int> Subalgebra::to_sub(const std::vector<int>& parent_vec) const {
    auto x = into_basis.solve(parent_vec);
    if (!x) throw ConsistencyError("vector not in subalgebra span");
    return *x;
}

std::vector<int> Subalgebra::to_parent(const std::vector<int>& sub_vec) const {
    return mat_vec(basis, sub_vec);
}

Subalgebra subalgebra(const Algebra& parent, const Matrix& basis_cols, const std::vector<int>& unit_parent) {
    Subalgebra S;
    S.basis = basis_cols;
    S.into_basis = ColspaceSolver(basis_cols);
    int d = basis_cols.cols;
    S.alg.field = parent.field;
    S.alg.dim = d;
    S.alg.mult.assign(size_t(d) * d * d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            auto prod = parent.mul(column_of(basis_cols, i), column_of(basis_cols, j));
            auto c = S.into_basis.solve(prod);
            if (!c) throw UsageError("span is not closed under multiplication");
            for (int k = 0; k < d; ++k) S.alg.mult[(size_t(i) * d + j) * d + k] = (*c)[k];
        }
    auto u = S.into_basis.solve(unit_parent);
    if (!u) throw UsageError("unit not contained in subalgebra span");
    S.alg.unit = *u;
    return S;
}

// --------------------------------------------------- polynomials over F_q

namespace {

using Poly = std::vector<int>;  // low..high, trimmed

void ptrim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmul(const FieldSpec& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    return c;
}

std::pair<Poly, Poly> pdivmod(const FieldSpec& F, Poly a, Poly b) {
    ptrim(a);
    ptrim(b);
    if (b.empty()) throw UsageError("polynomial division by zero");
    int db = int(b.size()) - 1;
    int lead_inv = F.inv(b.back());
    Poly q;
    while (!a.empty() && int(a.size()) - 1 >= db) {
        int k = int(a.size()) - 1 - db;
        int c = F.mul(a.back(), lead_inv);
        if (int(q.size()) < k + 1) q.resize(k + 1, 0);
        q[k] = c;
        for (int i = 0; i <= db; ++i) a[k + i] = F.sub(a[k + i], F.mul(c, b[i]));
        ptrim(a);
    }
    return {q, a};
}

Poly pmod(const FieldSpec& F, const Poly& a, const Poly& b) { return pdivmod(F, a, b).second; }

// extended euclid: (g, u) with u*a = g mod b, g monic gcd
std::pair<Poly, Poly> pegcd_u(const FieldSpec& F, Poly a, Poly b) {
    Poly r0 = a, r1 = b, u0 = {1}, u1 = {};
    ptrim(r0);
    ptrim(r1);
    while (!r1.empty()) {
        auto [q, r2] = pdivmod(F, r0, r1);
        Poly u2 = u0;
        Poly qu = pmul(F, q, u1);
        if (u2.size() < qu.size()) u2.resize(qu.size(), 0);
        for (size_t i = 0; i < qu.size(); ++i) u2[i] = F.sub(u2[i], qu[i]);
        ptrim(u2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    ptrim(r0);
    if (!r0.empty()) {
        int c = F.inv(r0.back());
        for (int& x : r0) x = F.mul(c, x);
        for (int& x : u0) x = F.mul(c, x);
    }
    return {r0, u0};
}

int peval(const FieldSpec& F, const Poly& f, int x) {
    int v = 0;
    for (int i = int(f.size()) - 1; i >= 0; --i) v = F.add(F.mul(v, x), f[i]);
    return v;
}

std::vector<int> peval_alg(const Algebra& A, const Poly& f, const std::vector<int>& x) {
    std::vector<int> v(A.dim, 0);
    for (int i = int(f.size()) - 1; i >= 0; --i) {
        v = A.mul(v, x);
        if (f[i])
            for (int k = 0; k < A.dim; ++k)
                v[k] = A.field.add(v[k], A.field.mul(f[i], A.unit[k]));
    }
    return v;
}

// smallest-degree monic factor by trial division; {} when irreducible
Poly smallest_factor(const FieldSpec& F, const Poly& f) {
    int deg = int(f.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) {
            count *= F.q;
            if (count > 600000) throw UnsupportedError("polynomial factorization too large");
        }
        for (long code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            long c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = int(c % F.q);
                c /= F.q;
            }
            g[d] = 1;
            if (pmod(F, f, g).empty()) return g;
        }
    }
    return {};
}

Poly min_poly(const Algebra& A, const std::vector<int>& x) {
    SpanBuilder span(A.field, A.dim);
    std::vector<std::vector<int>> powers;
    std::vector<int> cur = A.unit;
    while (span.add(cur)) {
        powers.push_back(cur);
        cur = A.mul(cur, x);
    }
    int k = int(powers.size());
    Matrix Mx = from_columns(powers, A.dim, Ring(A.field));
    auto c = solve(Mx, cur);
    if (!c) throw ConsistencyError("minimal polynomial solve failed");
    Poly f(k + 1, 0);
    f[k] = 1;
    for (int i = 0; i < k; ++i) f[i] = A.field.neg((*c)[i]);
    return f;
}

// idempotent e(x) with e = 1 mod f1, e = 0 mod f2 for coprime f1*f2
std::vector<int> crt_idempotent(const Algebra& A, const std::vector<int>& x, const Poly& f1, const Poly& f2) {
    const FieldSpec& F = A.field;
    auto [g, u] = pegcd_u(F, f2, f1);  // u*f2 = g mod f1
    if (int(g.size()) != 1) throw ConsistencyError("CRT factors not coprime");
    int ginv = F.inv(g[0]);
    Poly uu = u;
    for (int& c : uu) c = F.mul(ginv, c);
    Poly e = pmod(F, pmul(F, uu, f2), pmul(F, f1, f2));
    return peval_alg(A, e, x);
}

// characteristic polynomial via Hessenberg reduction, monic, low to high
Poly char_poly(const FieldSpec& F, Matrix H) {
    int n = H.rows;
    for (int c = 0; c + 2 < n; ++c) {
        int piv = -1;
        for (int r = c + 1; r < n; ++r)
            if (H.at(r, c)) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != c + 1) {
            for (int j = 0; j < n; ++j) std::swap(H.at(piv, j), H.at(c + 1, j));
            for (int i = 0; i < n; ++i) std::swap(H.at(i, piv), H.at(i, c + 1));
        }
        int inv = F.inv(H.at(c + 1, c));
        for (int r = c + 2; r < n; ++r) {
            int f = F.mul(H.at(r, c), inv);
            if (!f) continue;
            for (int j = 0; j < n; ++j) H.at(r, j) = F.sub(H.at(r, j), F.mul(f, H.at(c + 1, j)));
            for (int i = 0; i < n; ++i) H.at(i, c + 1) = F.add(H.at(i, c + 1), F.mul(f, H.at(i, r)));
        }
    }
    std::vector<Poly> p(n + 1);
    p[0] = {1};
    for (int m = 1; m <= n; ++m) {
        // p_m = (x - h_{mm}) p_{m-1} - sum_i h_{im} (prod_{j=i..m-2} h_{j+2,j+1}) p_{i-1}
        Poly t(m + 1, 0);
        for (size_t i = 0; i < p[m - 1].size(); ++i) {
            t[i + 1] = F.add(t[i + 1], p[m - 1][i]);
            t[i] = F.sub(t[i], F.mul(H.at(m - 1, m - 1), p[m - 1][i]));
        }
        int sub_prod = 1;
        for (int i = m - 1; i >= 1; --i) {
            sub_prod = F.mul(sub_prod, H.at(i, i - 1));
            if (!sub_prod) break;
            int coef = F.mul(H.at(i - 1, m - 1), sub_prod);
            if (!coef) continue;
            for (size_t j = 0; j < p[i - 1].size(); ++j)
                t[j] = F.sub(t[j], F.mul(coef, p[i - 1][j]));
        }
        p[m] = std::move(t);
    }
    return p[n];
}

}  // namespace

// ------------------------------------------------------------------ radical

Matrix commutative_nilradical(const Algebra& A) {
    const FieldSpec& F = A.field;
    // x -> x^q is F_q-linear; nilpotents form the kernel of its iterate
    Matrix Frob(A.dim, A.dim, F);
    for (int i = 0; i < A.dim; ++i) {
        std::vector<int> e(A.dim, 0);
        e[i] = 1;
        auto w = A.power(e, F.q);
        for (int r = 0; r < A.dim; ++r) Frob.at(r, i) = w[r];
    }
    long qs = F.q;
    Matrix Fs = Frob;
    while (qs < A.dim) {
        Fs = mat_mul(Fs, Frob);
        qs *= F.q;
    }
    return kernel_basis(Fs);
}

namespace {

// F_p view of an F_q-algebra (restriction of scalars)
struct FpView {
    const Algebra* A;
    FieldSpec Fp;
    int e, d, n;

    std::vector<int> to_fp(const std::vector<int>& v) const {
        std::vector<int> w(n);
        for (int i = 0; i < d; ++i) {
            auto dig = A->field.digits(v[i]);
            for (int j = 0; j < e; ++j) w[size_t(i) * e + j] = dig[j];
        }
        return w;
    }
    std::vector<int> to_fq(const std::vector<int>& w) const {
        std::vector<int> v(d);
        for (int i = 0; i < d; ++i) {
            std::vector<int> dig(w.begin() + size_t(i) * e, w.begin() + size_t(i) * e + e);
            v[i] = A->field.from_digits(dig);
        }
        return v;
    }
    Matrix left_mult_fp(const std::vector<int>& z) const {
        Matrix L(n, n, Fp);
        for (int col = 0; col < n; ++col) {
            std::vector<int> w(n, 0);
            w[col] = 1;
            auto pf = to_fp(A->mul(z, to_fq(w)));
            for (int r = 0; r < n; ++r) L.at(r, col) = pf[r];
        }
        return L;
    }
};

// radical by the decreasing chain of kernels of the characteristic-polynomial
// coefficient functionals c_{p^i}(L_{xy}); over F_p these are linear on each
// stage of the chain.
Matrix radical_chain(const Algebra& A) {
    FpView V{&A, FieldSpec(A.field.p, 1), A.field.m, A.dim, A.field.m * A.dim};
    const FieldSpec& Fp = V.Fp;
    Matrix B = Matrix::identity(V.n, Fp);  // columns: F_p-basis of current stage
    for (long pi = 1; pi <= V.n; pi *= A.field.p) {
        int nb = B.cols;
        if (nb == 0) break;
        Matrix C(nb, nb, Fp);
        std::vector<std::vector<int>> basis_fq(nb);
        for (int k = 0; k < nb; ++k) basis_fq[k] = V.to_fq(column_of(B, k));
        for (int xk = 0; xk < nb; ++xk)
            for (int yl = 0; yl < nb; ++yl) {
                auto prod = A.mul(basis_fq[xk], basis_fq[yl]);
                Poly cp = char_poly(Fp, V.left_mult_fp(prod));
                C.at(yl, xk) = cp[V.n - pi];
            }
        Matrix K = kernel_basis(C);
        B = mat_mul(B, K);
    }
    SpanBuilder span(A.field, A.dim);
    std::vector<std::vector<int>> cols;
    for (int j = 0; j < B.cols; ++j) {
        auto v = V.to_fq(column_of(B, j));
        if (span.add(v)) cols.push_back(v);
    }
    return from_columns(cols, A.dim, Ring(A.field));
}

bool in_span(const FieldSpec& F, const Matrix& cols, const std::vector<int>& v) {
    SpanBuilder s(F, cols.rows);
    for (int j = 0; j < cols.cols; ++j) s.add(column_of(cols, j));
    return s.contains(v);
}

}  // namespace

Matrix ideal_generated_by(const Algebra& A, const std::vector<int>& x) {
    SpanBuilder span(A.field, A.dim);
    std::vector<std::vector<int>> basis_vecs, work;
    if (span.add(x)) {
        basis_vecs.push_back(x);
        work.push_back(x);
    }
    while (!work.empty()) {
        auto v = work.back();
        work.pop_back();
        for (int i = 0; i < A.dim; ++i) {
            std::vector<int> e(A.dim, 0);
            e[i] = 1;
            for (auto w : {A.mul(e, v), A.mul(v, e)}) {
                if (span.add(w)) {
                    basis_vecs.push_back(w);
                    work.push_back(w);
                }
            }
        }
    }
    return from_columns(basis_vecs, A.dim, Ring(A.field));
}

bool ideal_is_nilpotent(const Algebra& A, const Matrix& ideal_cols) {
    std::vector<std::vector<int>> cur;
    for (int j = 0; j < ideal_cols.cols; ++j) cur.push_back(column_of(ideal_cols, j));
    int steps = 1;
    long pw = 1;
    while (pw < A.dim) {
        pw *= 2;
        ++steps;
    }
    for (int s = 0; s <= steps; ++s) {
        if (cur.empty()) return true;
        SpanBuilder span(A.field, A.dim);
        std::vector<std::vector<int>> next;
        for (auto& a : cur)
            for (auto& b : cur) {
                auto prod = A.mul(a, b);
                if (span.add(prod)) next.push_back(prod);
            }
        cur = std::move(next);
    }
    return cur.empty();
}

Matrix radical_bruteforce(const Algebra& A, long element_cap) {
    long total = 1;
    for (int i = 0; i < A.dim; ++i) {
        total *= A.field.q;
        if (total > element_cap) throw ResourceError("radical_bruteforce: element count exceeds cap");
    }
    SpanBuilder span(A.field, A.dim);
    std::vector<std::vector<int>> cols;
    for (long code = 1; code < total; ++code) {
        std::vector<int> v(A.dim);
        long c = code;
        for (int i = 0; i < A.dim; ++i) {
            v[i] = int(c % A.field.q);
            c /= A.field.q;
        }
        if (ideal_is_nilpotent(A, ideal_generated_by(A, v)) && span.add(v)) cols.push_back(v);
    }
    return from_columns(cols, A.dim, Ring(A.field));
}

Matrix algebra_radical(const Algebra& A) {
    Matrix J = A.is_commutative() ? commutative_nilradical(A) : radical_chain(A);
    const FieldSpec& F = A.field;
    for (int j = 0; j < J.cols; ++j) {
        auto v = column_of(J, j);
        for (int i = 0; i < A.dim; ++i) {
            std::vector<int> e(A.dim, 0);
            e[i] = 1;
            if (!in_span(F, J, A.mul(e, v)) || !in_span(F, J, A.mul(v, e)))
                throw ConsistencyError("computed radical is not an ideal");
        }
    }
    if (!ideal_is_nilpotent(A, J)) throw ConsistencyError("computed radical is not nilpotent");
    // maximality cross-check on small quotients: no nonzero element of A/J
    // may generate a nilpotent ideal
    int dq = A.dim - J.cols;
    long total = 1;
    bool small = dq > 0;
    for (int i = 0; i < dq && small; ++i) {
        total *= F.q;
        if (total > 1024) small = false;
    }
    if (small) {
        QuotientAlgebra Q = quotient_algebra(A, J);
        for (long code = 1; code < total; ++code) {
            std::vector<int> v(dq);
            long c = code;
            for (int i = 0; i < dq; ++i) {
                v[i] = int(c % F.q);
                c /= F.q;
            }
            if (ideal_is_nilpotent(Q.alg, ideal_generated_by(Q.alg, v)))
                throw ConsistencyError("radical not maximal: quotient has a nil ideal");
        }
    }
    return J;
}

// ----------------------------------------------------------------- quotient

QuotientAlgebra quotient_algebra(const Algebra& A, const Matrix& ideal_cols) {
    QuotientAlgebra Q;
    Q.ideal_basis = ideal_cols;
    const FieldSpec& F = A.field;
    SpanBuilder span(F, A.dim);
    for (int j = 0; j < ideal_cols.cols; ++j) span.add(column_of(ideal_cols, j));
    // ideal check
    for (int j = 0; j < ideal_cols.cols; ++j) {
        auto v = column_of(ideal_cols, j);
        for (int i = 0; i < A.dim; ++i) {
            std::vector<int> e(A.dim, 0);
            e[i] = 1;
            if (!span.contains(A.mul(e, v)) || !span.contains(A.mul(v, e)))
                throw UsageError("quotient by a non-ideal subspace");
        }
    }
    for (int i = 0; i < A.dim; ++i) {
        std::vector<int> e(A.dim, 0);
        e[i] = 1;
        if (!span.contains(e)) {
            span.add(e);
            Q.section_cols.push_back(i);
        }
    }
    std::vector<std::vector<int>> all;
    for (int j = 0; j < ideal_cols.cols; ++j) all.push_back(column_of(ideal_cols, j));
    for (int i : Q.section_cols) {
        std::vector<int> e(A.dim, 0);
        e[i] = 1;
        all.push_back(e);
    }
    Q.proj_solver = ColspaceSolver(from_columns(all, A.dim, Ring(F)));
    int dq = int(Q.section_cols.size());
    Q.alg.field = F;
    Q.alg.dim = dq;
    Q.alg.mult.assign(size_t(dq) * dq * dq, 0);
    for (int i = 0; i < dq; ++i) {
        std::vector<int> ei(dq, 0);
        ei[i] = 1;
        for (int j = 0; j < dq; ++j) {
            std::vector<int> ej(dq, 0);
            ej[j] = 1;
            auto pr = Q.project(A.mul(Q.lift(ei), Q.lift(ej)));
            for (int k = 0; k < dq; ++k) Q.alg.mult[(size_t(i) * dq + j) * dq + k] = pr[k];
        }
    }
    Q.alg.unit = Q.project(A.unit);
    return Q;
}

std::vector<int> QuotientAlgebra::project(const std::vector<int>& v) const {
    auto x = proj_solver.solve(v);
    if (!x) throw ConsistencyError("quotient projection failed");
    int nb = ideal_basis.cols;
    return std::vector<int>(x->begin() + nb, x->end());
}

std::vector<int> QuotientAlgebra::lift(const std::vector<int>& q) const {
    std::vector<int> v(ideal_basis.rows, 0);
    for (size_t i = 0; i < section_cols.size(); ++i) v[section_cols[i]] = q[i];
    return v;
}

// ----------------------------------------------- semisimple idempotents

namespace {

Matrix center_basis(const Algebra& A) {
    const FieldSpec& F = A.field;
    Matrix sys(A.dim * A.dim, A.dim, F);
    int row = 0;
    for (int j = 0; j < A.dim; ++j)
        for (int k = 0; k < A.dim; ++k) {
            for (int i = 0; i < A.dim; ++i)
                sys.at(row, i) = F.sub(A.coeff(i, j, k), A.coeff(j, i, k));
            ++row;
        }
    return kernel_basis(sys);
}

Subalgebra corner_algebra(const Algebra& A, const std::vector<int>& e) {
    SpanBuilder span(A.field, A.dim);
    std::vector<std::vector<int>> cols;
    for (int i = 0; i < A.dim; ++i) {
        std::vector<int> b(A.dim, 0);
        b[i] = 1;
        auto v = A.mul(A.mul(e, b), e);
        if (span.add(v)) cols.push_back(v);
    }
    return subalgebra(A, from_columns(cols, A.dim, Ring(A.field)), e);
}

bool is_scalar(const Algebra& A, const std::vector<int>& v) {
    int idx = -1;
    for (int i = 0; i < A.dim; ++i)
        if (A.unit[i]) { idx = i; break; }
    if (idx < 0) return false;
    int c = A.field.mul(v[idx], A.field.inv(A.unit[idx]));
    for (int i = 0; i < A.dim; ++i)
        if (v[i] != A.field.mul(c, A.unit[i])) return false;
    return true;
}

std::optional<std::vector<int>> try_split_element(const Algebra& A, const std::vector<int>& x) {
    if (is_scalar(A, x)) return std::nullopt;
    Poly mu = min_poly(A, x);
    const FieldSpec& F = A.field;
    for (int lam = 0; lam < F.q; ++lam) {
        if (peval(F, mu, lam) == 0) {
            Poly f1 = {F.neg(lam), 1};
            Poly f2 = pdivmod(F, mu, f1).first;
            if (peval(F, f2, lam) != 0) return crt_idempotent(A, x, f1, f2);
            return std::nullopt;  // repeated root: not semisimple here
        }
    }
    Poly f1 = smallest_factor(F, mu);
    if (f1.empty()) return std::nullopt;  // irreducible minimal polynomial
    Poly f2 = pdivmod(F, mu, f1).first;
    if (!pmod(F, f2, f1).empty()) return crt_idempotent(A, x, f1, f2);
    return std::nullopt;
}

// nontrivial idempotent of a semisimple algebra C with dim >= 2
std::vector<int> split_semisimple(const Algebra& C, uint64_t seed) {
    const FieldSpec& F = C.field;
    Matrix Z = center_basis(C);
    if (Z.cols >= 2) {
        Subalgebra ZS = subalgebra(C, Z, C.unit);
        int dz = ZS.alg.dim;
        Matrix FrobMinusId(dz, dz, F);
        for (int i = 0; i < dz; ++i) {
            std::vector<int> e(dz, 0);
            e[i] = 1;
            auto w = ZS.alg.power(e, F.q);
            for (int r = 0; r < dz; ++r)
                FrobMinusId.at(r, i) = F.sub(w[r], r == i ? 1 : 0);
        }
        Matrix K = kernel_basis(FrobMinusId);
        if (K.cols >= 2) {
            for (int j = 0; j < K.cols; ++j) {
                auto e = try_split_element(ZS.alg, column_of(K, j));
                if (e) return ZS.to_parent(*e);
            }
            throw ConsistencyError("Berlekamp subspace failed to split");
        }
        throw SplittingError("coefficient field does not split the algebra (enlarge m)");
    }
    // central simple over F_q, hence a full matrix algebra; find an element
    // with a reducible minimal polynomial
    auto basis = [&](int i) {
        std::vector<int> v(C.dim, 0);
        v[i] = 1;
        return v;
    };
    std::vector<std::vector<int>> cands;
    for (int i = 0; i < C.dim; ++i) cands.push_back(basis(i));
    for (int i = 0; i < C.dim; ++i)
        for (int j = i + 1; j < C.dim; ++j) {
            std::vector<int> v(C.dim, 0);
            v[i] = v[j] = 1;
            cands.push_back(v);
        }
    for (int i = 0; i < C.dim; ++i)
        for (int j = 0; j < C.dim; ++j)
            if (i != j) cands.push_back(C.mul(basis(i), basis(j)));
    for (auto& x : cands) {
        bool zero = true;
        for (int v : x)
            if (v) { zero = false; break; }
        if (zero) continue;
        auto e = try_split_element(C, x);
        if (e) return *e;
    }
    uint64_t s = seed ^ 0x9e3779b97f4a7c15ULL;
    for (int t = 0; t < 20000; ++t) {
        std::vector<int> x(C.dim);
        for (int& v : x) v = int(xorshift(s) % F.q);
        auto e = try_split_element(C, x);
        if (e) return *e;
    }
    throw ConsistencyError("failed to split a matrix algebra");
}

}  // namespace

std::vector<std::vector<int>> algebra_primitive_idempotents(const Algebra& A) {
    const FieldSpec& F = A.field;
    Matrix J = algebra_radical(A);
    QuotientAlgebra Q = quotient_algebra(A, J);
    std::vector<std::vector<int>> work = {Q.alg.unit};
    std::vector<std::vector<int>> finals;
    while (!work.empty()) {
        auto e = work.front();
        work.erase(work.begin());
        Subalgebra C = corner_algebra(Q.alg, e);
        if (C.alg.dim == 1) {
            finals.push_back(e);
            continue;
        }
        auto f = C.to_parent(split_semisimple(C.alg, 0x5eedULL));
        std::vector<int> rest(e.size());
        for (size_t i = 0; i < e.size(); ++i) rest[i] = F.sub(e[i], f[i]);
        work.insert(work.begin(), rest);
        work.insert(work.begin(), f);
    }
    int smax = 2;
    long ps = F.p;
    while (ps < A.dim) {
        ps *= F.p;
        ++smax;
    }
    std::vector<std::vector<int>> lifted;
    std::vector<int> c = A.unit;
    for (auto& ebar : finals) {
        auto a = A.mul(A.mul(c, Q.lift(ebar)), c);
        for (int it = 0; it <= smax + 2; ++it) {
            if (A.mul(a, a) == a) break;
            a = A.power(a, F.p);
        }
        if (!(A.mul(a, a) == a)) throw ConsistencyError("idempotent lifting did not converge");
        lifted.push_back(a);
        for (size_t i = 0; i < c.size(); ++i) c[i] = F.sub(c[i], a[i]);
    }
    for (int v : c)
        if (v) throw ConsistencyError("lifted idempotents do not sum to 1");
    for (size_t i = 0; i < lifted.size(); ++i)
        for (size_t j = 0; j < lifted.size(); ++j) {
            auto prod = A.mul(lifted[i], lifted[j]);
            if (i == j) {
                if (prod != lifted[i]) throw ConsistencyError("idempotent check failed");
            } else {
                for (int v : prod)
                    if (v) throw ConsistencyError("idempotents not orthogonal");
            }
        }
    for (auto& e : lifted) {
        Subalgebra C = corner_algebra(A, e);
        Matrix Jc = algebra_radical(C.alg);
        if (C.alg.dim - Jc.cols != 1) throw ConsistencyError("lifted idempotent is not primitive");
    }
    return lifted;
}

// ------------------------------------------------------- module operations

Matrix radical_of_algebra_module(const GModule& A) { return algebra_radical(algebra_of(A)); }

std::vector<AlgebraElement> primitive_idempotents(const ModulePtr& A) {
    auto idems = algebra_primitive_idempotents(algebra_of(*A));
    std::vector<AlgebraElement> out;
    for (auto& v : idems) out.push_back(AlgebraElement{A, v});
    return out;
}

Matrix fixed_point_basis(const GModule& M) {
    const FieldSpec& F = M.field;
    std::vector<int> gens = generators_of(*M.group);
    if (gens.empty()) return Matrix::identity(M.dim, F);
    Matrix sys(int(gens.size()) * M.dim, M.dim, F);
    int row = 0;
    for (int g : gens)
        for (int r = 0; r < M.dim; ++r) {
            for (int c = 0; c < M.dim; ++c)
                sys.at(row, c) = F.sub(M.action[g].at(r, c), r == c ? 1 : 0);
            ++row;
        }
    return kernel_basis(sys);
}

namespace {

Algebra end_algebra(const std::vector<ModuleHom>& homs, const ModulePtr& M) {
    const FieldSpec& F = M->field;
    int h = int(homs.size());
    int d = M->dim;
    std::vector<std::vector<int>> flat;
    for (auto& hm : homs) flat.emplace_back(hm.mat.a.begin(), hm.mat.a.end());
    ColspaceSolver flat_solver(from_columns(flat, d * d, Ring(F)));
    Algebra E;
    E.field = F;
    E.dim = h;
    E.mult.assign(size_t(h) * h * h, 0);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            Matrix prod = mat_mul(homs[i].mat, homs[j].mat);
            auto c = flat_solver.solve(std::vector<int>(prod.a.begin(), prod.a.end()));
            if (!c) throw ConsistencyError("hom space not closed under composition");
            for (int k = 0; k < h; ++k) E.mult[(size_t(i) * h + j) * h + k] = (*c)[k];
        }
    Matrix I = Matrix::identity(d, F);
    auto u = flat_solver.solve(std::vector<int>(I.a.begin(), I.a.end()));
    if (!u) throw ConsistencyError("identity not in End(M)");
    E.unit = *u;
    return E;
}

}  // namespace

std::vector<Summand> decompose_indecomposable(const ModulePtr& M) {
    const FieldSpec& F = M->field;
    auto homs = hom_space(M, M);
    Algebra E = end_algebra(homs, M);
    auto idems = algebra_primitive_idempotents(E);
    std::vector<Summand> out;
    int dim_total = 0;
    for (auto& coords : idems) {
        Matrix em(M->dim, M->dim, F);
        for (size_t k = 0; k < coords.size(); ++k)
            if (coords[k]) em = mat_add(em, mat_scale(homs[k].mat, coords[k]));
        SpanBuilder span(F, M->dim);
        std::vector<std::vector<int>> img;
        for (int c = 0; c < M->dim; ++c) {
            auto v = column_of(em, c);
            if (span.add(v)) img.push_back(v);
        }
        Matrix emb = from_columns(img, M->dim, Ring(F));
        int sd = emb.cols;
        ColspaceSolver embs(emb);
        Matrix proj(sd, M->dim, F);
        for (int c = 0; c < M->dim; ++c) {
            auto x = embs.solve(column_of(em, c));
            if (!x) throw ConsistencyError("summand projection failed");
            for (int r = 0; r < sd; ++r) proj.at(r, c) = (*x)[r];
        }
        std::vector<Matrix> action(M->group->n);
        for (int g = 0; g < M->group->n; ++g)
            action[g] = mat_mul(proj, mat_mul(M->action[g], emb));
        ModulePtr S = make_module(M->group, F, std::move(action));
        Summand s;
        s.idempotent = coords;
        s.idem_matrix = em;
        s.module = S;
        s.embed = ModuleHom{S, M, emb};
        s.project = ModuleHom{M, S, proj};
        dim_total += sd;
        out.push_back(std::move(s));
    }
    if (dim_total != M->dim) throw ConsistencyError("summand dimensions do not add up");
    return out;
}

IsoResult iso_test(const ModulePtr& M, const ModulePtr& N, uint64_t seed) {
    if (M->group != N->group || !(M->field == N->field))
        throw UsageError("iso_test: group or field mismatch");
    if (M->dim != N->dim) return {IsoOutcome::None, std::nullopt};
    const FieldSpec& F = M->field;
    bool same = true;
    for (int g = 0; g < M->group->n && same; ++g)
        if (!(M->action[g] == N->action[g])) same = false;
    if (same) return {IsoOutcome::Iso, ModuleHom{M, N, Matrix::identity(M->dim, F)}};
    auto homs = hom_space(M, N);
    int h = int(homs.size());
    if (h == 0) return {IsoOutcome::None, std::nullopt};
    auto try_combo = [&](const std::vector<int>& c) -> std::optional<Matrix> {
        Matrix T(N->dim, M->dim, F);
        for (int k = 0; k < h; ++k)
            if (c[k]) T = mat_add(T, mat_scale(homs[k].mat, c[k]));
        if (rank(T) == M->dim) return T;
        return std::nullopt;
    };
    long total = 1;
    bool full_sweep = true;
    for (int i = 0; i < h; ++i) {
        total *= F.q;
        if (total > 4096) { full_sweep = false; break; }
    }
    long sweep_count = full_sweep ? total : 4096;
    for (long code = 1; code < sweep_count; ++code) {
        std::vector<int> c(h, 0);
        long cc = code;
        for (int i = 0; i < h && cc; ++i) {
            c[i] = int(cc % F.q);
            cc /= F.q;
        }
        auto T = try_combo(c);
        if (T) return {IsoOutcome::Iso, ModuleHom{M, N, *T}};
    }
    if (full_sweep) return {IsoOutcome::None, std::nullopt};
    uint64_t s = seed ^ 0xC0FFEEULL;
    if (!s) s = 0xC0FFEEULL;
    for (int t = 0; t < 4096; ++t) {
        std::vector<int> c(h);
        for (int& v : c) v = int(xorshift(s) % F.q);
        auto T = try_combo(c);
        if (T) return {IsoOutcome::Iso, ModuleHom{M, N, *T}};
    }
    return {IsoOutcome::Undecided, std::nullopt};
}

}  // namespace blockstein
