#include "blockstein/exactlin.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace blockstein {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// ---- polynomial helpers over F_p (coefficient vectors, low to high) ----

std::vector<int> poly_mul_p(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = int((c[i + j] + long(a[i]) * b[j]) % p);
    return c;
}

void poly_trim(std::vector<int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a by monic b
std::vector<int> poly_mod_p(std::vector<int> a, const std::vector<int>& b, int p) {
    poly_trim(a);
    int db = int(b.size()) - 1;
    while (int(a.size()) - 1 >= db) {
        int k = int(a.size()) - 1 - db;
        int c = a.back();
        if (c != 0)
            for (int i = 0; i <= db; ++i)
                a[k + i] = ((a[k + i] - c * b[i]) % p + p) % p;
        a.pop_back();
        poly_trim(a);
    }
    return a;
}

bool poly_is_zero(const std::vector<int>& a) {
    for (int c : a)
        if (c) return false;
    return true;
}

bool is_irreducible(const std::vector<int>& f, int p) {
    int m = int(f.size()) - 1;
    if (m < 1 || f[m] != 1) return false;
    if (m == 1) return true;
    // no root in F_p
    for (int r = 0; r < p; ++r) {
        long v = 0, x = 1;
        for (int i = 0; i <= m; ++i) {
            v = (v + f[i] * x) % p;
            x = (x * r) % p;
        }
        if (v == 0) return false;
    }
    // trial division by monic polynomials of degree 2..m/2
    for (int d = 2; 2 * d <= m; ++d) {
        long count = ipow(p, d);
        for (long code = 0; code < count; ++code) {
            std::vector<int> g(d + 1, 0);
            long c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = int(c % p);
                c /= p;
            }
            g[d] = 1;
            if (poly_is_zero(poly_mod_p(f, g, p))) return false;
        }
    }
    return true;
}

int smallest_primitive_root(int p) {
    if (p == 2) return 1;
    for (int g = 2; g < p; ++g) {
        long x = 1;
        bool prim = true;
        for (int e = 1; e < p - 1; ++e) {
            x = (x * g) % p;
            if (x == 1) { prim = false; break; }
        }
        if (prim) return g;
    }
    return 1;
}

// Conway polynomials for the common small cases; everything else falls back
// to the first irreducible monic polynomial in ascending code order.
const std::map<std::pair<int, int>, std::vector<int>>& conway_table() {
    static const std::map<std::pair<int, int>, std::vector<int>> t = {
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{7, 2}, {3, 6, 1}},
    };
    return t;
}

std::vector<int> default_modulus(int p, int m) {
    if (m == 1) {
        int g = smallest_primitive_root(p);
        return {(p - g) % p, 1};  // x - g
    }
    auto it = conway_table().find({p, m});
    if (it != conway_table().end()) return it->second;
    long count = ipow(p, m);
    for (long code = 0; code < count; ++code) {
        std::vector<int> f(m + 1, 0);
        long c = code;
        for (int i = 0; i < m; ++i) {
            f[i] = int(c % p);
            c /= p;
        }
        f[m] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw ConsistencyError("no irreducible polynomial found");
}

}  // namespace

// ---------------------------------------------------------------- FieldSpec

FieldSpec::FieldSpec(int p_, int m_) : p(p_), m(m_) {
    if (!is_prime(p)) throw UsageError("field characteristic must be prime: " + std::to_string(p));
    if (m < 1) throw UsageError("extension degree must be >= 1");
    if (ipow(p, m) > (1 << 20)) throw ResourceError("field size p^m too large");
    modulus = default_modulus(p, m);
    init();
}

FieldSpec::FieldSpec(int p_, int m_, std::vector<int> modulus_) : p(p_), m(m_), modulus(std::move(modulus_)) {
    if (!is_prime(p)) throw UsageError("field characteristic must be prime: " + std::to_string(p));
    if (m < 1) throw UsageError("extension degree must be >= 1");
    if (int(modulus.size()) != m + 1 || modulus[m] != 1)
        throw UsageError("modulus must be monic of degree m");
    for (int c : modulus)
        if (c < 0 || c >= p) throw UsageError("modulus coefficients must be reduced mod p");
    if (!is_irreducible(modulus, p)) throw UsageError("modulus is reducible over F_p");
    if (ipow(p, m) > (1 << 20)) throw ResourceError("field size p^m too large");
    init();
}

void FieldSpec::init() {
    if (modulus.empty()) modulus = {1, 1};  // default F_2: x + 1
    q = int(ipow(p, m));
    if (q <= 1024) {
        auto t = std::make_shared<Tables>();
        t->add.resize(size_t(q) * q);
        t->mul.resize(size_t(q) * q);
        t->neg.resize(q);
        t->inv.resize(q);
        for (int a = 0; a < q; ++a) {
            t->neg[a] = int16_t(neg_slow(a));
            for (int b = 0; b < q; ++b) {
                t->add[size_t(a) * q + b] = int16_t(add_slow(a, b));
                t->mul[size_t(a) * q + b] = int16_t(mul_slow(a, b));
            }
        }
        t->inv[0] = 0;
        for (int a = 1; a < q; ++a) {
            for (int b = 1; b < q; ++b)
                if (t->mul[size_t(a) * q + b] == 1) {
                    t->inv[a] = int16_t(b);
                    break;
                }
        }
        tab_ = t;
    }
}

int FieldSpec::add_slow(int a, int b) const {
    int r = 0, mult = 1;
    for (int i = 0; i < m; ++i) {
        int da = a % p, db = b % p;
        a /= p;
        b /= p;
        r += ((da + db) % p) * mult;
        mult *= p;
    }
    return r;
}

int FieldSpec::neg_slow(int a) const {
    int r = 0, mult = 1;
    for (int i = 0; i < m; ++i) {
        int da = a % p;
        a /= p;
        r += ((p - da) % p) * mult;
        mult *= p;
    }
    return r;
}

int FieldSpec::mul_slow(int a, int b) const {
    std::vector<int> da = digits(a), db = digits(b);
    auto prod = poly_mul_p(da, db, p);
    auto rem = poly_mod_p(prod, modulus, p);
    rem.resize(m, 0);
    return from_digits(rem);
}

int FieldSpec::inv(int a) const {
    if (a == 0) throw UsageError("division by zero in field");
    if (tab_) return tab_->inv[a];
    return pow(a, q - 2);
}

int FieldSpec::pow(int a, long e) const {
    long qm1 = q - 1;
    if (a == 0) return e == 0 ? 1 : 0;
    e %= qm1;
    if (e < 0) e += qm1;
    int r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::vector<int> FieldSpec::digits(int a) const {
    std::vector<int> d(m);
    for (int i = 0; i < m; ++i) {
        d[i] = a % p;
        a /= p;
    }
    return d;
}

int FieldSpec::from_digits(const std::vector<int>& d) const {
    int r = 0, mult = 1;
    for (int i = 0; i < m; ++i) {
        r += (i < int(d.size()) ? d[i] : 0) * mult;
        mult *= p;
    }
    return r;
}

// ----------------------------------------------------------- GaloisRingSpec

GaloisRingSpec::GaloisRingSpec(const FieldSpec& f) : p(f.p), m(f.m) {
    modulus = f.modulus;  // entries in [0,p) are already valid mod p^2 representatives
    q = ipow(long(p) * p, m);
    if (q > (1 << 24)) throw ResourceError("Galois ring too large");
}

std::vector<int> GaloisRingSpec::digits(int a) const {
    int pp = p2();
    std::vector<int> d(m);
    for (int i = 0; i < m; ++i) {
        d[i] = a % pp;
        a /= pp;
    }
    return d;
}

int GaloisRingSpec::from_digits(const std::vector<int>& d) const {
    int pp = p2();
    long r = 0, mult = 1;
    for (int i = 0; i < m; ++i) {
        r += long(i < int(d.size()) ? d[i] : 0) * mult;
        mult *= pp;
    }
    return int(r);
}

int GaloisRingSpec::add(int a, int b) const {
    int pp = p2();
    long r = 0, mult = 1;
    for (int i = 0; i < m; ++i) {
        int da = a % pp, db = b % pp;
        a /= pp;
        b /= pp;
        r += long((da + db) % pp) * mult;
        mult *= pp;
    }
    return int(r);
}

int GaloisRingSpec::sub(int a, int b) const { return add(a, neg(b)); }

int GaloisRingSpec::neg(int a) const {
    int pp = p2();
    long r = 0, mult = 1;
    for (int i = 0; i < m; ++i) {
        int da = a % pp;
        a /= pp;
        r += long((pp - da) % pp) * mult;
        mult *= pp;
    }
    return int(r);
}

int GaloisRingSpec::mul(int a, int b) const {
    int pp = p2();
    std::vector<int> da = digits(a), db = digits(b);
    std::vector<int> c(2 * m - 1, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            c[i + j] = int((c[i + j] + long(da[i]) * db[j]) % pp);
    // reduce by the monic modulus, coefficients mod p^2
    for (int k = 2 * m - 2; k >= m; --k) {
        int coef = c[k];
        if (coef == 0) continue;
        c[k] = 0;
        for (int i = 0; i < m; ++i)
            c[k - m + i] = int(((c[k - m + i] - long(coef) * modulus[i]) % pp + pp) % pp);
    }
    c.resize(m);
    return from_digits(c);
}

// ------------------------------------------------------------ lift / reduce

int lift_code(const FieldSpec& f, const GaloisRingSpec& r, int a) {
    auto d = f.digits(a);
    return r.from_digits(d);
}

int reduce_code(const GaloisRingSpec& r, const FieldSpec& f, int a) {
    auto d = r.digits(a);
    for (int& c : d) c %= f.p;
    return f.from_digits(d);
}

int divide_code_by_p(const GaloisRingSpec& r, const FieldSpec& f, int a) {
    auto d = r.digits(a);
    for (int& c : d) {
        if (c % f.p != 0) throw ConsistencyError("Bockstein lift not divisible by p");
        c /= f.p;
    }
    return f.from_digits(d);
}

std::vector<int> lift_mod_p2(const FieldSpec& f, const GaloisRingSpec& r, const std::vector<int>& v) {
    std::vector<int> w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = lift_code(f, r, v[i]);
    return w;
}

std::vector<int> reduce_mod_p(const GaloisRingSpec& r, const FieldSpec& f, const std::vector<int>& v) {
    std::vector<int> w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = reduce_code(r, f, v[i]);
    return w;
}

// ----------------------------------------------------------------- Matrix

const FieldSpec& Matrix::field() const {
    if (!is_field(ring)) throw UnsupportedError("operation requires a field, got Galois ring");
    return std::get<FieldSpec>(ring);
}

Matrix Matrix::identity(int n, const Ring& rg) {
    Matrix I(n, n, rg);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

bool Matrix::is_zero() const {
    for (int v : a)
        if (v) return false;
    return true;
}

namespace {

int ring_add(const Ring& r, int a, int b) {
    if (is_field(r)) return std::get<FieldSpec>(r).add(a, b);
    return std::get<GaloisRingSpec>(r).add(a, b);
}
int ring_sub(const Ring& r, int a, int b) {
    if (is_field(r)) return std::get<FieldSpec>(r).sub(a, b);
    return std::get<GaloisRingSpec>(r).sub(a, b);
}
int ring_mul(const Ring& r, int a, int b) {
    if (is_field(r)) return std::get<FieldSpec>(r).mul(a, b);
    return std::get<GaloisRingSpec>(r).mul(a, b);
}

void check_same_ring(const Matrix& A, const Matrix& B) {
    if (!ring_equal(A.ring, B.ring)) throw UsageError("matrix ring mismatch");
}

}  // namespace

Matrix mat_add(const Matrix& A, const Matrix& B) {
    check_same_ring(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw UsageError("matrix shape mismatch in add");
    Matrix C(A.rows, A.cols, A.ring);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = ring_add(A.ring, A.a[i], B.a[i]);
    return C;
}

Matrix mat_sub(const Matrix& A, const Matrix& B) {
    check_same_ring(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw UsageError("matrix shape mismatch in sub");
    Matrix C(A.rows, A.cols, A.ring);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = ring_sub(A.ring, A.a[i], B.a[i]);
    return C;
}

Matrix mat_mul(const Matrix& A, const Matrix& B) {
    check_same_ring(A, B);
    if (A.cols != B.rows) throw UsageError("matrix shape mismatch in mul");
    Matrix C(A.rows, B.cols, A.ring);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            int aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols; ++j) {
                int b = B.at(k, j);
                if (b == 0) continue;
                C.at(i, j) = ring_add(A.ring, C.at(i, j), ring_mul(A.ring, aik, b));
            }
        }
    return C;
}

Matrix mat_scale(const Matrix& A, int c) {
    Matrix C(A.rows, A.cols, A.ring);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = ring_mul(A.ring, A.a[i], c);
    return C;
}

std::vector<int> mat_vec(const Matrix& A, const std::vector<int>& v) {
    if (int(v.size()) != A.cols) throw UsageError("matvec shape mismatch");
    std::vector<int> w(A.rows, 0);
    for (int i = 0; i < A.rows; ++i) {
        int acc = 0;
        for (int j = 0; j < A.cols; ++j) {
            int aij = A.at(i, j);
            if (aij == 0 || v[j] == 0) continue;
            acc = ring_add(A.ring, acc, ring_mul(A.ring, aij, v[j]));
        }
        w[i] = acc;
    }
    return w;
}

Matrix transpose(const Matrix& A) {
    Matrix C(A.cols, A.rows, A.ring);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(j, i) = A.at(i, j);
    return C;
}

Matrix hstack(const Matrix& A, const Matrix& B) {
    check_same_ring(A, B);
    if (A.rows != B.rows) throw UsageError("hstack row mismatch");
    Matrix C(A.rows, A.cols + B.cols, A.ring);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

Matrix from_columns(const std::vector<std::vector<int>>& cols, int nrows, const Ring& rg) {
    Matrix C(nrows, int(cols.size()), rg);
    for (size_t j = 0; j < cols.size(); ++j) {
        if (int(cols[j].size()) != nrows) throw UsageError("column length mismatch");
        for (int i = 0; i < nrows; ++i) C.at(i, int(j)) = cols[j][i];
    }
    return C;
}

std::vector<int> column_of(const Matrix& A, int c) {
    std::vector<int> v(A.rows);
    for (int i = 0; i < A.rows; ++i) v[i] = A.at(i, c);
    return v;
}

// ------------------------------------------------------------- elimination

namespace {

// In-place Gauss-Jordan over the field; returns pivot columns.  When T is
// non-null it must start as the identity and receives the same row operations.
std::vector<int> eliminate(Matrix& M, Matrix* T) {
    const FieldSpec& F = M.field();
    const int q = F.q;
    const int16_t* mul_t = nullptr;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int pr = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r) {
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(pr, j), M.at(r, j));
            if (T)
                for (int j = 0; j < T->cols; ++j) std::swap(T->at(pr, j), T->at(r, j));
        }
        int pv = M.at(r, c);
        if (pv != 1) {
            int ipv = F.inv(pv);
            for (int j = c; j < M.cols; ++j) M.at(r, j) = F.mul(ipv, M.at(r, j));
            if (T)
                for (int j = 0; j < T->cols; ++j) T->at(r, j) = F.mul(ipv, T->at(r, j));
        }
        for (int i = 0; i < M.rows; ++i) {
            if (i == r) continue;
            int f = M.at(i, c);
            if (f == 0) continue;
            const int* src = &M.a[size_t(r) * M.cols];
            int* dst = &M.a[size_t(i) * M.cols];
            for (int j = c; j < M.cols; ++j) {
                if (src[j]) dst[j] = F.sub(dst[j], F.mul(f, src[j]));
            }
            if (T) {
                const int* ts = &T->a[size_t(r) * T->cols];
                int* td = &T->a[size_t(i) * T->cols];
                for (int j = 0; j < T->cols; ++j)
                    if (ts[j]) td[j] = F.sub(td[j], F.mul(f, ts[j]));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    (void)q;
    (void)mul_t;
    return pivots;
}

}  // namespace

RrefResult rref(const Matrix& M) {
    RrefResult res;
    res.R = M;
    res.T = Matrix::identity(M.rows, M.ring);
    res.pivots = eliminate(res.R, &res.T);
    return res;
}

Matrix rref_plain(const Matrix& M, std::vector<int>* pivots) {
    Matrix R = M;
    auto p = eliminate(R, nullptr);
    if (pivots) *pivots = std::move(p);
    return R;
}

int rank(const Matrix& M) {
    std::vector<int> p;
    rref_plain(M, &p);
    return int(p.size());
}

Matrix kernel_basis(const Matrix& M) {
    const FieldSpec& F = M.field();
    std::vector<int> pivots;
    Matrix R = rref_plain(M, &pivots);
    std::vector<bool> is_piv(M.cols, false);
    for (int c : pivots) is_piv[c] = true;
    std::vector<std::vector<int>> cols;
    for (int j = 0; j < M.cols; ++j) {
        if (is_piv[j]) continue;
        std::vector<int> x(M.cols, 0);
        x[j] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = F.neg(R.at(int(i), j));
        cols.push_back(std::move(x));
    }
    return from_columns(cols, M.cols, M.ring);
}

std::optional<std::vector<int>> solve(const Matrix& M, const std::vector<int>& b) {
    if (int(b.size()) != M.rows) throw UsageError("solve: rhs length mismatch");
    Matrix aug = hstack(M, from_columns({b}, M.rows, M.ring));
    std::vector<int> pivots;
    Matrix R = rref_plain(aug, &pivots);
    if (!pivots.empty() && pivots.back() == M.cols) return std::nullopt;
    std::vector<int> x(M.cols, 0);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = R.at(int(i), M.cols);
    return x;
}

Matrix inverse(const Matrix& M) {
    if (M.rows != M.cols) throw UsageError("inverse of non-square matrix");
    RrefResult r = rref(M);
    if (int(r.pivots.size()) != M.rows) throw UsageError("matrix is singular");
    return r.T;
}

// ------------------------------------------------------------ EchelonSpan

bool EchelonSpan::add(std::vector<int> v) {
    reduce(v);
    int lead = -1;
    for (int i = 0; i < len_; ++i)
        if (v[i]) { lead = i; break; }
    if (lead < 0) return false;
    int c = f_.inv(v[lead]);
    for (int& x : v) x = f_.mul(c, x);
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    for (size_t i = rows_.size() - 1; i > 0 && leads_[i] < leads_[i - 1]; --i) {
        std::swap(rows_[i], rows_[i - 1]);
        std::swap(leads_[i], leads_[i - 1]);
    }
    return true;
}

bool EchelonSpan::contains(std::vector<int> v) const {
    reduce(v);
    for (int x : v)
        if (x) return false;
    return true;
}

void EchelonSpan::reduce(std::vector<int>& v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        int c = v[leads_[r]];
        if (!c) continue;
        for (int i = leads_[r]; i < len_; ++i)
            if (rows_[r][i]) v[i] = f_.sub(v[i], f_.mul(c, rows_[r][i]));
    }
}

// --------------------------------------------------------- ColspaceSolver

ColspaceSolver::ColspaceSolver(const Matrix& M)
    : rows_(M.rows), cols_(M.cols), f_(M.field()) {
    Matrix Mt = transpose(M);
    Matrix U = Matrix::identity(cols_, M.ring);
    std::vector<int> piv = eliminate(Mt, &U);
    rank_ = int(piv.size());
    rt_ = Matrix(rank_, rows_, M.ring);
    u_ = Matrix(rank_, cols_, M.ring);
    for (int i = 0; i < rank_; ++i) {
        for (int j = 0; j < rows_; ++j) rt_.at(i, j) = Mt.at(i, j);
        for (int j = 0; j < cols_; ++j) u_.at(i, j) = U.at(i, j);
    }
    piv_ = piv;
}

bool ColspaceSolver::in_colspace(const std::vector<int>& b) const {
    return solve(b).has_value();
}

std::optional<std::vector<int>> ColspaceSolver::solve(const std::vector<int>& b) const {
    if (int(b.size()) != rows_) throw UsageError("colspace solve: length mismatch");
    std::vector<int> r = b;
    std::vector<int> coef(rank_, 0);
    for (int i = 0; i < rank_; ++i) {
        int c = r[piv_[i]];
        if (c == 0) continue;
        coef[i] = c;
        const int* row = &rt_.a[size_t(i) * rows_];
        for (int j = piv_[i]; j < rows_; ++j)
            if (row[j]) r[j] = f_.sub(r[j], f_.mul(c, row[j]));
    }
    for (int v : r)
        if (v) return std::nullopt;
    std::vector<int> x(cols_, 0);
    for (int i = 0; i < rank_; ++i) {
        if (coef[i] == 0) continue;
        for (int j = 0; j < cols_; ++j)
            if (u_.at(i, j)) x[j] = f_.add(x[j], f_.mul(coef[i], u_.at(i, j)));
    }
    return x;
}

}  // namespace blockstein
