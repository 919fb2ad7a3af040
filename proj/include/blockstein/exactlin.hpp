#pragma once

// Exact dense linear algebra over F_{p^m} and over the Galois ring GR(p^2,m).
//
// Field elements are stored as integer codes in [0, p^m): the base-p digits of
// a code are the coefficients of the element in the monomial basis
// 1, x, ..., x^{m-1} modulo a fixed monic irreducible polynomial.  Galois-ring
// elements use base-p^2 digits the same way.  All operations reduce to
// canonical representatives.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blockstein/errors.hpp"

namespace blockstein {

struct FieldSpec {
    int p = 2;
    int m = 1;
    std::vector<int> modulus;  // coefficients c0..cm, cm = 1, entries in [0,p)
    int q = 2;                 // p^m

    FieldSpec() { init(); }
    FieldSpec(int p_, int m_);                                // table / lex-first modulus
    FieldSpec(int p_, int m_, std::vector<int> modulus_);     // explicit, validated

    bool operator==(const FieldSpec& o) const {
        return p == o.p && m == o.m && modulus == o.modulus;
    }

    int add(int a, int b) const { return tab_ ? tab_->add[a * q + b] : add_slow(a, b); }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const { return tab_ ? tab_->neg[a] : neg_slow(a); }
    int mul(int a, int b) const { return tab_ ? tab_->mul[a * q + b] : mul_slow(a, b); }
    int inv(int a) const;
    int pow(int a, long e) const;

    // c mod p as a constant polynomial
    int from_int(long c) const {
        int r = int(((c % p) + p) % p);
        return r;
    }
    std::vector<int> digits(int a) const;     // base-p, length m
    int from_digits(const std::vector<int>& d) const;

  private:
    struct Tables {
        std::vector<int16_t> add, mul;
        std::vector<int16_t> neg, inv;
    };
    std::shared_ptr<const Tables> tab_;
    void init();
    int add_slow(int a, int b) const;
    int neg_slow(int a) const;
    int mul_slow(int a, int b) const;
};

struct GaloisRingSpec {
    int p = 2;
    int m = 1;
    std::vector<int> modulus;  // lift of the field modulus, entries in [0,p^2)
    long q = 4;                // (p^2)^m: size of the code space

    GaloisRingSpec() = default;
    explicit GaloisRingSpec(const FieldSpec& f);

    bool operator==(const GaloisRingSpec& o) const {
        return p == o.p && m == o.m && modulus == o.modulus;
    }

    int p2() const { return p * p; }
    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int from_int(long c) const {
        int pp = p2();
        return int(((c % pp) + pp) % pp);
    }
    std::vector<int> digits(int a) const;  // base-p^2, length m
    int from_digits(const std::vector<int>& d) const;
};

using Ring = std::variant<FieldSpec, GaloisRingSpec>;

inline bool ring_equal(const Ring& a, const Ring& b) { return a == b; }
inline bool is_field(const Ring& r) { return std::holds_alternative<FieldSpec>(r); }

// Coordinatewise lift F_{p^m} -> GR(p^2,m): each base-p digit c goes to the
// same integer representative in Z/p^2.  reduce_mod_p is the inverse direction.
int lift_code(const FieldSpec& f, const GaloisRingSpec& r, int a);
int reduce_code(const GaloisRingSpec& r, const FieldSpec& f, int a);
// For a ring code all of whose digits are multiples of p, the unique field
// code with p * lift(result) == input digitwise.
int divide_code_by_p(const GaloisRingSpec& r, const FieldSpec& f, int a);

std::vector<int> lift_mod_p2(const FieldSpec& f, const GaloisRingSpec& r, const std::vector<int>& v);
std::vector<int> reduce_mod_p(const GaloisRingSpec& r, const FieldSpec& f, const std::vector<int>& v);

struct Matrix {
    int rows = 0;
    int cols = 0;
    Ring ring;
    std::vector<int> a;  // row-major codes

    Matrix() : ring(FieldSpec()) {}
    Matrix(int r, int c, Ring rg) : rows(r), cols(c), ring(std::move(rg)), a(size_t(r) * c, 0) {}

    int& at(int r, int c) { return a[size_t(r) * cols + c]; }
    int at(int r, int c) const { return a[size_t(r) * cols + c]; }

    const FieldSpec& field() const;  // throws UnsupportedError on a Galois ring

    static Matrix identity(int n, const Ring& rg);
    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && ring_equal(ring, o.ring) && a == o.a;
    }
    bool is_zero() const;
};

Matrix mat_add(const Matrix& A, const Matrix& B);
Matrix mat_sub(const Matrix& A, const Matrix& B);
Matrix mat_mul(const Matrix& A, const Matrix& B);
Matrix mat_scale(const Matrix& A, int c);
std::vector<int> mat_vec(const Matrix& A, const std::vector<int>& v);
Matrix transpose(const Matrix& A);
Matrix hstack(const Matrix& A, const Matrix& B);
Matrix from_columns(const std::vector<std::vector<int>>& cols, int nrows, const Ring& rg);
std::vector<int> column_of(const Matrix& A, int c);

struct RrefResult {
    Matrix R;                // reduced row echelon form
    std::vector<int> pivots; // strictly increasing pivot columns
    Matrix T;                // invertible, T * M = R
};

RrefResult rref(const Matrix& M);                        // field matrices only
Matrix rref_plain(const Matrix& M, std::vector<int>* pivots = nullptr);
int rank(const Matrix& M);
Matrix kernel_basis(const Matrix& M);                    // columns span ker M
std::optional<std::vector<int>> solve(const Matrix& M, const std::vector<int>& b);
Matrix inverse(const Matrix& M);                         // throws if singular

// Incremental echelon span of vectors over a field.
class EchelonSpan {
  public:
    EchelonSpan(const FieldSpec& f, int len) : f_(f), len_(len) {}

    bool add(std::vector<int> v);            // true if v was independent
    bool contains(std::vector<int> v) const;
    int dim() const { return int(rows_.size()); }
    const std::vector<std::vector<int>>& rows() const { return rows_; }

  private:
    void reduce(std::vector<int>& v) const;
    FieldSpec f_;
    int len_;
    std::vector<std::vector<int>> rows_;
    std::vector<int> leads_;
};

// Factor a matrix once, then answer many "is b in the column space / express b
// in the original columns" queries.  Row-space echelon of the transpose keeps
// the transform small (cols x cols) even when rows is large.
class ColspaceSolver {
  public:
    ColspaceSolver() = default;
    explicit ColspaceSolver(const Matrix& M);
    bool in_colspace(const std::vector<int>& b) const;
    // x with M x = b, free coordinates 0; nullopt if inconsistent
    std::optional<std::vector<int>> solve(const std::vector<int>& b) const;
    int rank() const { return rank_; }

  private:
    int rows_ = 0, cols_ = 0, rank_ = 0;
    FieldSpec f_;
    Matrix rt_;            // echelon rows spanning the column space (rank_ x rows_)
    std::vector<int> piv_; // pivot positions of rt_ rows
    Matrix u_;             // rt_ = u_ * M^T  (rank_ x cols_)
};

}  // namespace blockstein
