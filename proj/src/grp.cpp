#include "blockstein/grp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace blockstein {

namespace {

struct SplitName {
    std::vector<std::string> factors;
};

SplitName split_product(const std::string& name) {
    SplitName s;
    std::string cur;
    for (char c : name) {
        if (c == 'x') {
            if (cur.empty()) throw UsageError("bad group name: " + name);
            s.factors.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (cur.empty()) throw UsageError("bad group name: " + name);
    s.factors.push_back(cur);
    return s;
}

GroupPtr cyclic(int n) {
    std::vector<int> mult(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mult[size_t(a) * n + b] = (a + b) % n;
    std::vector<std::string> labels(n);
    for (int a = 0; a < n; ++a) labels[a] = a == 0 ? "1" : "g^" + std::to_string(a);
    return GroupTable::make(n, std::move(mult), std::move(labels));
}

// dihedral of order 2n: elements r^i s^j, index i + n*j, s r s^-1 = r^-1
GroupPtr dihedral(int n) {
    int N = 2 * n;
    std::vector<int> mult(size_t(N) * N);
    auto idx = [n](int i, int j) { return i + n * j; };
    for (int i1 = 0; i1 < n; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) {
                    int i = j1 == 0 ? (i1 + i2) % n : ((i1 - i2) % n + n) % n;
                    mult[size_t(idx(i1, j1)) * N + idx(i2, j2)] = idx(i, (j1 + j2) % 2);
                }
    std::vector<std::string> labels(N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 2; ++j)
            labels[idx(i, j)] = (i == 0 && j == 0) ? "1" : "r^" + std::to_string(i) + (j ? "s" : "");
    return GroupTable::make(N, std::move(mult), std::move(labels));
}

GroupPtr quaternion8() {
    // element index = 2*unit + sign, units 0:1 1:i 2:j 3:k, sign 1 = negative
    int unit[4][4] = {
        {0, 1, 2, 3},
        {1, 0, 3, 2},
        {2, 3, 0, 1},
        {3, 2, 1, 0},
    };
    int sign[4][4] = {
        {0, 0, 0, 0},
        {0, 1, 0, 1},  // i*i=-1, i*j=k, i*k=-j
        {0, 1, 1, 0},  // j*i=-k, j*j=-1, j*k=i
        {0, 0, 1, 1},  // k*i=j, k*j=-i, k*k=-1
    };
    std::vector<int> mult(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a >> 1, sa = a & 1, ub = b >> 1, sb = b & 1;
            int uc = unit[ua][ub];
            int sc = (sa + sb + sign[ua][ub]) % 2;
            mult[size_t(a) * 8 + b] = 2 * uc + sc;
        }
    std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    return GroupTable::make(8, std::move(mult), std::move(labels));
}

std::vector<std::vector<int>> permutations_lex(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<std::vector<int>> all;
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return all;
}

bool perm_even(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0;
}

std::string perm_label(const std::vector<int>& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) s += std::to_string(p[i]);
    return s + ")";
}

GroupPtr perm_group(const std::vector<std::vector<int>>& perms) {
    int N = int(perms.size());
    int deg = int(perms[0].size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < N; ++i) index[perms[i]] = i;
    std::vector<int> mult(size_t(N) * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            std::vector<int> c(deg);
            for (int x = 0; x < deg; ++x) c[x] = perms[a][perms[b][x]];
            auto it = index.find(c);
            if (it == index.end()) throw UsageError("permutation set not closed");
            mult[size_t(a) * N + b] = it->second;
        }
    std::vector<std::string> labels(N);
    for (int i = 0; i < N; ++i) labels[i] = perm_label(perms[i]);
    return GroupTable::make(N, std::move(mult), std::move(labels));
}

GroupPtr symmetric(int n) {
    if (n < 2 || n > 4) throw UsageError("S_n supported for 2 <= n <= 4");
    return perm_group(permutations_lex(n));
}

GroupPtr alternating4() {
    std::vector<std::vector<int>> evens;
    for (auto& p : permutations_lex(4))
        if (perm_even(p)) evens.push_back(p);
    return perm_group(evens);
}

GroupPtr direct_product(const GroupTable& A, const GroupTable& B) {
    int N = A.n * B.n;
    std::vector<int> mult(size_t(N) * N);
    auto idx = [&](int a, int b) { return a * B.n + b; };
    for (int a1 = 0; a1 < A.n; ++a1)
        for (int b1 = 0; b1 < B.n; ++b1)
            for (int a2 = 0; a2 < A.n; ++a2)
                for (int b2 = 0; b2 < B.n; ++b2)
                    mult[size_t(idx(a1, b1)) * N + idx(a2, b2)] = idx(A.mul(a1, a2), B.mul(b1, b2));
    std::vector<std::string> labels(N);
    for (int a = 0; a < A.n; ++a)
        for (int b = 0; b < B.n; ++b) labels[idx(a, b)] = "(" + A.label(a) + "," + B.label(b) + ")";
    return GroupTable::make(N, std::move(mult), std::move(labels));
}

GroupPtr single_factor(const std::string& name) {
    if (name == "Q8") return quaternion8();
    if (name == "A4") return alternating4();
    if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'D' || name[0] == 'S')) {
        int n = 0;
        for (size_t i = 1; i < name.size(); ++i) {
            if (!isdigit(name[i])) throw UsageError("unknown group name: " + name);
            n = n * 10 + (name[i] - '0');
        }
        if (n <= 0) throw UsageError("unknown group name: " + name);
        if (name[0] == 'C') return cyclic(n);
        if (name[0] == 'D') return dihedral(n);
        return symmetric(n);
    }
    throw UsageError("unknown group name: " + name);
}

uint64_t splitmix(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

// ------------------------------------------------------------- GroupTable

int GroupTable::order_of(int a) const {
    int x = a, o = 1;
    while (x != 0) {
        x = mul(x, a);
        ++o;
    }
    return o;
}

int GroupTable::exponent() const {
    long e = 1;
    for (int a = 0; a < n; ++a) {
        long o = order_of(a);
        e = std::lcm(e, o);
    }
    return int(e);
}

bool GroupTable::is_abelian() const {
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::string GroupTable::label(int a) const {
    if (!labels.empty()) return labels[a];
    return "g" + std::to_string(a);
}

GroupPtr GroupTable::make(int n, std::vector<int> mult, std::vector<std::string> labels) {
    if (n < 1 || int(mult.size()) != n * n) throw UsageError("bad multiplication table size");
    for (int v : mult)
        if (v < 0 || v >= n) throw UsageError("multiplication table entry out of range");
    auto G = std::make_shared<GroupTable>();
    G->n = n;
    G->mult = std::move(mult);
    G->labels = std::move(labels);
    for (int a = 0; a < n; ++a)
        if (G->mul(0, a) != a || G->mul(a, 0) != a)
            throw UsageError("element 0 is not a two-sided identity");
    G->inv.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (G->mul(a, b) == 0 && G->mul(b, a) == 0) {
                G->inv[a] = b;
                break;
            }
        if (G->inv[a] < 0) throw UsageError("element without two-sided inverse");
    }
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (G->mul(G->mul(a, b), c) != G->mul(a, G->mul(b, c)))
                        throw UsageError("multiplication table is not associative");
    } else {
        uint64_t s = 0x5eedULL;
        for (int t = 0; t < 10000; ++t) {
            int a = int(splitmix(s) % n), b = int(splitmix(s) % n), c = int(splitmix(s) % n);
            if (G->mul(G->mul(a, b), c) != G->mul(a, G->mul(b, c)))
                throw UsageError("multiplication table is not associative");
        }
    }
    return G;
}

// ---------------------------------------------------------------- Subgroup

bool Subgroup::contains(int g) const {
    return std::binary_search(elems.begin(), elems.end(), g);
}

int Subgroup::position_of(int g) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), g);
    if (it == elems.end() || *it != g) return -1;
    return int(it - elems.begin());
}

GroupPtr from_catalog(const std::string& name, int order_cap) {
    auto parts = split_product(name);
    GroupPtr G = single_factor(parts.factors[0]);
    for (size_t i = 1; i < parts.factors.size(); ++i)
        G = direct_product(*G, *single_factor(parts.factors[i]));
    if (G->n > order_cap)
        throw ResourceError("group order " + std::to_string(G->n) + " exceeds cap " + std::to_string(order_cap));
    return G;
}

GroupPtr from_mult_table(int n, const std::vector<std::vector<int>>& table, int order_cap) {
    if (n > order_cap)
        throw ResourceError("group order " + std::to_string(n) + " exceeds cap " + std::to_string(order_cap));
    if (int(table.size()) != n) throw UsageError("table row count mismatch");
    std::vector<int> mult;
    mult.reserve(size_t(n) * n);
    for (auto& row : table) {
        if (int(row.size()) != n) throw UsageError("table column count mismatch");
        for (int v : row) mult.push_back(v);
    }
    return GroupTable::make(n, std::move(mult));
}

std::vector<ConjClass> conjugacy_classes(const GroupTable& G) {
    std::vector<bool> seen(G.n, false);
    std::vector<ConjClass> classes;
    for (int a = 0; a < G.n; ++a) {
        if (seen[a]) continue;
        std::set<int> members;
        for (int g = 0; g < G.n; ++g) members.insert(G.conj(g, a));
        ConjClass c;
        c.rep = *members.begin();
        c.members.assign(members.begin(), members.end());
        for (int m : c.members) seen[m] = true;
        classes.push_back(std::move(c));
    }
    // scanning from 0 already yields identity first and ascending lex-minimal reps
    return classes;
}

Subgroup whole_group(GroupPtr G) {
    Subgroup S;
    S.parent = G;
    S.elems.resize(G->n);
    for (int i = 0; i < G->n; ++i) S.elems[i] = i;
    S.normal_in_parent = true;
    return S;
}

Subgroup trivial_subgroup(GroupPtr G) {
    Subgroup S;
    S.parent = G;
    S.elems = {0};
    S.normal_in_parent = true;
    return S;
}

namespace {

bool closed_under(const GroupTable& G, const std::vector<int>& elems) {
    std::vector<bool> in(G.n, false);
    for (int e : elems) in[e] = true;
    if (!in[0]) return false;
    for (int a : elems) {
        if (!in[G.invert(a)]) return false;
        for (int b : elems)
            if (!in[G.mul(a, b)]) return false;
    }
    return true;
}

bool normal_in(const GroupTable& G, const std::vector<int>& elems) {
    std::vector<bool> in(G.n, false);
    for (int e : elems) in[e] = true;
    for (int g = 0; g < G.n; ++g)
        for (int a : elems)
            if (!in[G.conj(g, a)]) return false;
    return true;
}

}  // namespace

Subgroup make_subgroup(GroupPtr G, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (!closed_under(*G, elems)) throw UsageError("element set is not a subgroup");
    Subgroup S;
    S.parent = G;
    S.elems = std::move(elems);
    S.normal_in_parent = normal_in(*G, S.elems);
    return S;
}

Subgroup subgroup_closure(GroupPtr G, const std::vector<int>& gens) {
    std::set<int> elems = {0};
    std::vector<int> queue = {0};
    for (int g : gens)
        if (elems.insert(g).second) queue.push_back(g);
    while (!queue.empty()) {
        int a = queue.back();
        queue.pop_back();
        std::vector<int> cur(elems.begin(), elems.end());
        for (int b : cur) {
            for (int c : {G->mul(a, b), G->mul(b, a), G->invert(a)})
                if (elems.insert(c).second) queue.push_back(c);
        }
    }
    return make_subgroup(G, std::vector<int>(elems.begin(), elems.end()));
}

Subgroup centralizer(GroupPtr G, int g) {
    std::vector<int> elems;
    for (int x = 0; x < G->n; ++x)
        if (G->mul(x, g) == G->mul(g, x)) elems.push_back(x);
    return make_subgroup(G, std::move(elems));
}

Subgroup centralizer_of_set(GroupPtr G, const std::vector<int>& set) {
    std::vector<int> elems;
    for (int x = 0; x < G->n; ++x) {
        bool ok = true;
        for (int g : set)
            if (G->mul(x, g) != G->mul(g, x)) { ok = false; break; }
        if (ok) elems.push_back(x);
    }
    return make_subgroup(G, std::move(elems));
}

Subgroup normalizer(GroupPtr G, const Subgroup& S) {
    std::vector<int> elems;
    for (int g = 0; g < G->n; ++g) {
        bool ok = true;
        for (int a : S.elems)
            if (!S.contains(G->conj(g, a))) { ok = false; break; }
        if (ok) elems.push_back(g);
    }
    return make_subgroup(G, std::move(elems));
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) {
    std::vector<int> elems;
    for (int a : A.elems)
        if (B.contains(a)) elems.push_back(a);
    return make_subgroup(A.parent, std::move(elems));
}

Subgroup conjugate_subgroup(const Subgroup& S, int g) {
    std::vector<int> elems;
    for (int a : S.elems) elems.push_back(S.parent->conj(g, a));
    return make_subgroup(S.parent, std::move(elems));
}

bool subgroup_leq(const Subgroup& A, const Subgroup& B) {
    for (int a : A.elems)
        if (!B.contains(a)) return false;
    return true;
}

bool subgroups_conjugate(const Subgroup& A, const Subgroup& B) {
    if (A.order() != B.order()) return false;
    const GroupTable& G = *A.parent;
    for (int g = 0; g < G.n; ++g) {
        bool ok = true;
        for (int a : A.elems)
            if (!B.contains(G.conj(g, a))) { ok = false; break; }
        if (ok) return true;
    }
    return false;
}

std::vector<int> left_coset_reps(const Subgroup& H) {
    const GroupTable& G = *H.parent;
    std::vector<bool> seen(G.n, false);
    std::vector<int> reps;
    for (int g = 0; g < G.n; ++g) {
        if (seen[g]) continue;
        reps.push_back(g);
        for (int h : H.elems) seen[G.mul(g, h)] = true;
    }
    return reps;
}

std::vector<int> right_coset_reps(const Subgroup& H) {
    const GroupTable& G = *H.parent;
    std::vector<bool> seen(G.n, false);
    std::vector<int> reps;
    for (int g = 0; g < G.n; ++g) {
        if (seen[g]) continue;
        reps.push_back(g);
        for (int h : H.elems) seen[G.mul(h, g)] = true;
    }
    return reps;
}

DoubleCosetDecomposition double_cosets(GroupPtr G, const Subgroup& H, const Subgroup& K) {
    DoubleCosetDecomposition d;
    d.parent = G;
    d.rep_of.assign(G->n, -1);
    for (int g = 0; g < G->n; ++g) {
        if (d.rep_of[g] >= 0) continue;
        d.reps.push_back(g);
        for (int h : H.elems)
            for (int k : K.elems) d.rep_of[G->mul(G->mul(h, g), k)] = g;
    }
    return d;
}

Subgroup sylow_p(GroupPtr G, int p) {
    int order = G->n;
    int ppart = 1;
    while (order % p == 0) {
        order /= p;
        ppart *= p;
    }
    Subgroup S = trivial_subgroup(G);
    while (S.order() < ppart) {
        Subgroup N = normalizer(G, S);
        int ext = -1;
        for (int g : N.elems) {
            if (S.contains(g)) continue;
            int o = G->order_of(g);
            bool ppower = true;
            while (o > 1) {
                if (o % p) { ppower = false; break; }
                o /= p;
            }
            if (!ppower) continue;
            std::vector<int> gens = S.elems;
            gens.push_back(g);
            Subgroup T = subgroup_closure(G, gens);
            int to = T.order();
            while (to % p == 0) to /= p;
            if (to == 1) { ext = g; S = T; break; }
        }
        if (ext < 0) break;
    }
    if (S.order() != ppart) throw ConsistencyError("Sylow construction did not reach full p-part");
    return S;
}

std::vector<Subgroup> all_subgroups(GroupPtr G) {
    if (G->n > 16)
        throw ResourceError("exhaustive subgroup enumeration capped at order 16, got " +
                            std::to_string(G->n));
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> queue;
    Subgroup triv = trivial_subgroup(G);
    seen.insert(triv.elems);
    queue.push_back(triv.elems);
    while (!queue.empty()) {
        std::vector<int> cur = queue.back();
        queue.pop_back();
        for (int g = 1; g < G->n; ++g) {
            if (std::binary_search(cur.begin(), cur.end(), g)) continue;
            std::vector<int> gens = cur;
            gens.push_back(g);
            Subgroup T = subgroup_closure(G, gens);
            if (seen.insert(T.elems).second) queue.push_back(T.elems);
        }
    }
    std::vector<Subgroup> out;
    for (auto& e : seen) out.push_back(make_subgroup(G, e));
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elems < b.elems;
    });
    return out;
}

std::vector<Subgroup> p_subgroups_up_to_conj(GroupPtr G, int p) {
    Subgroup P = sylow_p(G, p);
    SubgroupTable Pt = subgroup_table(P);
    std::vector<Subgroup> inside = all_subgroups(Pt.table);
    std::vector<Subgroup> reps;
    for (const Subgroup& S : inside) {
        std::vector<int> elems;
        for (int e : S.elems) elems.push_back(Pt.to_parent[e]);
        Subgroup SG = make_subgroup(G, std::move(elems));
        bool dup = false;
        for (const Subgroup& R : reps)
            if (subgroups_conjugate(R, SG)) { dup = true; break; }
        if (!dup) reps.push_back(std::move(SG));
    }
    std::sort(reps.begin(), reps.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elems < b.elems;
    });
    return reps;
}

SubgroupTable subgroup_table(const Subgroup& H) {
    SubgroupTable st;
    st.parent = H.parent;
    st.to_parent = H.elems;
    st.from_parent.assign(H.parent->n, -1);
    for (size_t i = 0; i < H.elems.size(); ++i) st.from_parent[H.elems[i]] = int(i);
    int n = H.order();
    std::vector<int> mult(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int prod = H.parent->mul(H.elems[a], H.elems[b]);
            int pos = st.from_parent[prod];
            if (pos < 0) throw ConsistencyError("subgroup not closed in subgroup_table");
            mult[size_t(a) * n + b] = pos;
        }
    std::vector<std::string> labels(n);
    for (int a = 0; a < n; ++a) labels[a] = H.parent->label(H.elems[a]);
    st.table = GroupTable::make(n, std::move(mult), std::move(labels));
    return st;
}

GroupHom make_hom(GroupPtr dom, GroupPtr cod, std::vector<int> image) {
    if (int(image.size()) != dom->n) throw UsageError("hom image size mismatch");
    if (image[0] != 0) throw UsageError("hom must send identity to identity");
    for (int a = 0; a < dom->n; ++a)
        for (int b = 0; b < dom->n; ++b)
            if (cod->mul(image[a], image[b]) != image[dom->mul(a, b)])
                throw UsageError("map is not a homomorphism");
    GroupHom h;
    h.domain = std::move(dom);
    h.codomain = std::move(cod);
    h.image = std::move(image);
    return h;
}

DirectSquare direct_square_with_delta(GroupPtr P) {
    DirectSquare ds;
    ds.n = P->n;
    int n = P->n, N = n * n;
    std::vector<int> mult(size_t(N) * N);
    for (int a1 = 0; a1 < n; ++a1)
        for (int b1 = 0; b1 < n; ++b1)
            for (int a2 = 0; a2 < n; ++a2)
                for (int b2 = 0; b2 < n; ++b2)
                    mult[size_t(a1 * n + b1) * N + (a2 * n + b2)] =
                        P->mul(a1, a2) * n + P->mul(b1, b2);
    std::vector<std::string> labels(N);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) labels[a * n + b] = "(" + P->label(a) + "," + P->label(b) + ")";
    ds.pxp = GroupTable::make(N, std::move(mult), std::move(labels));
    std::vector<int> diag;
    for (int a = 0; a < n; ++a) diag.push_back(a * n + a);
    ds.delta = make_subgroup(ds.pxp, std::move(diag));
    std::vector<int> emb(n), p1(N), p2(N);
    for (int a = 0; a < n; ++a) emb[a] = a * n + a;
    for (int g = 0; g < N; ++g) {
        p1[g] = g / n;
        p2[g] = g % n;
    }
    ds.embed = make_hom(P, ds.pxp, std::move(emb));
    ds.proj1 = make_hom(ds.pxp, P, std::move(p1));
    ds.proj2 = make_hom(ds.pxp, P, std::move(p2));
    return ds;
}

Subgroup q_x_subgroup(const SubgroupTable& P, const DirectSquare& ds, int x) {
    const GroupTable& G = *P.parent;
    int xi = G.invert(x);
    std::vector<int> elems;
    for (int ai = 0; ai < P.table->n; ++ai) {
        int a = P.to_parent[ai];
        int ax = G.mul(G.mul(xi, a), x);  // a^x
        int pos = P.from_parent[ax];
        if (pos < 0) continue;  // a outside P meet ^xP
        elems.push_back(ds.pair(ai, pos));
    }
    return make_subgroup(ds.pxp, std::move(elems));
}

Subgroup q_uvx_subgroup(const SubgroupTable& P, const DirectSquare& ds, int u, int v, int x) {
    Subgroup qx = q_x_subgroup(P, ds, x);
    const GroupTable& T = *P.table;
    std::vector<int> elems;
    for (int w = 0; w < T.n; ++w) {
        // (w,w) in ^{(u,v)} Q_x  <=>  (u^-1 w u, v^-1 w v) in Q_x
        int a = T.mul(T.mul(T.invert(u), w), u);
        int b = T.mul(T.mul(T.invert(v), w), v);
        if (qx.contains(ds.pair(a, b))) elems.push_back(ds.pair(w, w));
    }
    return make_subgroup(ds.pxp, std::move(elems));
}

}  // namespace blockstein
