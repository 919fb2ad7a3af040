#include <doctest.h>

#include "blockstein/exactlin.hpp"

using namespace blockstein;

namespace {

uint64_t rng_state = 0x1234567ULL;
uint64_t next_u64() {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 7;
    rng_state ^= rng_state << 17;
    return rng_state;
}

Matrix field_mat(const FieldSpec& F, int r, int c, std::vector<int> entries) {
    Matrix M(r, c, F);
    M.a = std::move(entries);
    return M;
}

}  // namespace

TEST_CASE("field construction and arithmetic") {
    FieldSpec f2(2, 1);
    CHECK(f2.q == 2);
    CHECK(f2.add(1, 1) == 0);
    CHECK(f2.mul(1, 1) == 1);

    FieldSpec f4(2, 2);
    CHECK(f4.q == 4);
    // x * x = x + 1 under x^2+x+1
    CHECK(f4.mul(2, 2) == 3);
    for (int a = 1; a < 4; ++a) CHECK(f4.mul(a, f4.inv(a)) == 1);

    FieldSpec f9(3, 2);
    CHECK(f9.q == 9);
    for (int a = 1; a < 9; ++a) CHECK(f9.mul(a, f9.inv(a)) == 1);
    // distributivity spot check
    for (int t = 0; t < 200; ++t) {
        int a = int(next_u64() % 9), b = int(next_u64() % 9), c = int(next_u64() % 9);
        CHECK(f9.mul(a, f9.add(b, c)) == f9.add(f9.mul(a, b), f9.mul(a, c)));
    }

    CHECK_THROWS_AS(FieldSpec(4, 1), UsageError);
    CHECK_THROWS_AS(FieldSpec(2, 2, {0, 0, 1}), UsageError);  // x^2 reducible
}

TEST_CASE("rref examples") {
    FieldSpec f2(2, 1);
    SUBCASE("identity 3x3") {
        Matrix I = Matrix::identity(3, f2);
        auto r = rref(I);
        CHECK(r.R == I);
        CHECK(r.pivots == std::vector<int>{0, 1, 2});
        CHECK(mat_mul(r.T, I) == r.R);
    }
    SUBCASE("zero 2x4") {
        Matrix Z(2, 4, f2);
        auto r = rref(Z);
        CHECK(r.R.is_zero());
        CHECK(r.pivots.empty());
    }
    SUBCASE("F2 [[1,1],[1,1]]") {
        Matrix M = field_mat(f2, 2, 2, {1, 1, 1, 1});
        auto r = rref(M);
        CHECK(r.R == field_mat(f2, 2, 2, {1, 1, 0, 0}));
        CHECK(r.pivots == std::vector<int>{0});
        CHECK(mat_mul(r.T, M) == r.R);
        CHECK(rank(r.T) == 2);  // transform invertible
    }
    SUBCASE("galois ring rejected") {
        GaloisRingSpec gr(f2);
        Matrix M(2, 2, gr);
        CHECK_THROWS_AS(rref(M), UnsupportedError);
    }
    SUBCASE("rref idempotence on random matrices") {
        FieldSpec f3(3, 1);
        for (int t = 0; t < 20; ++t) {
            Matrix M(4, 6, f3);
            for (auto& v : M.a) v = int(next_u64() % 3);
            Matrix R = rref_plain(M);
            CHECK(rref_plain(R) == R);
        }
    }
}

TEST_CASE("kernel examples and rank-nullity") {
    FieldSpec f3(3, 1);
    SUBCASE("identity has empty kernel") {
        CHECK(kernel_basis(Matrix::identity(3, f3)).cols == 0);
    }
    SUBCASE("zero matrix has full kernel") {
        Matrix Z(4, 4, f3);
        CHECK(kernel_basis(Z).cols == 4);
    }
    SUBCASE("F3 [[1,2]] kernel is span{(1,1)}") {
        Matrix M = field_mat(f3, 1, 2, {1, 2});
        Matrix K = kernel_basis(M);
        REQUIRE(K.cols == 1);
        CHECK(mat_mul(M, K).is_zero());
        // (1,1) spans: x + 2y = 0 over F3
        CHECK(K.at(0, 0) == K.at(1, 0));
        CHECK(K.at(0, 0) != 0);
    }
    SUBCASE("rank + nullity = cols on random matrices") {
        FieldSpec f4(2, 2);
        for (int t = 0; t < 20; ++t) {
            Matrix M(5, 7, f4);
            for (auto& v : M.a) v = int(next_u64() % 4);
            CHECK(rank(M) + kernel_basis(M).cols == M.cols);
            CHECK(mat_mul(M, kernel_basis(M)).is_zero());
        }
    }
}

TEST_CASE("solve") {
    FieldSpec f2(2, 1);
    SUBCASE("identity: solution is b") {
        Matrix I = Matrix::identity(3, f2);
        auto x = solve(I, {1, 0, 1});
        REQUIRE(x.has_value());
        CHECK(*x == std::vector<int>{1, 0, 1});
    }
    SUBCASE("zero matrix, b != 0: no solution") {
        Matrix Z(2, 2, f2);
        CHECK(!solve(Z, {1, 0}).has_value());
    }
    SUBCASE("F2 [[1,1]] x = [1] -> (1,0)") {
        Matrix M = field_mat(f2, 1, 2, {1, 1});
        auto x = solve(M, {1});
        REQUIRE(x.has_value());
        CHECK(*x == std::vector<int>{1, 0});
    }
}

TEST_CASE("lift and reduce round trip") {
    FieldSpec f2(2, 1);
    GaloisRingSpec z4(f2);
    SUBCASE("F2 vector (1,0,1) lifts to (1,0,1) in Z/4") {
        auto v = lift_mod_p2(f2, z4, {1, 0, 1});
        CHECK(v == std::vector<int>{1, 0, 1});
        CHECK(reduce_mod_p(z4, f2, v) == std::vector<int>{1, 0, 1});
    }
    SUBCASE("zero lifts to zero") {
        CHECK(lift_mod_p2(f2, z4, {0}) == std::vector<int>{0});
    }
    SUBCASE("round trip on 100 random vectors over F9") {
        FieldSpec f9(3, 2);
        GaloisRingSpec gr(f9);
        for (int t = 0; t < 100; ++t) {
            std::vector<int> v(6);
            for (auto& c : v) c = int(next_u64() % 9);
            CHECK(reduce_mod_p(gr, f9, lift_mod_p2(f9, gr, v)) == v);
        }
    }
    SUBCASE("GR multiplication reduces to field multiplication") {
        FieldSpec f9(3, 2);
        GaloisRingSpec gr(f9);
        for (int t = 0; t < 200; ++t) {
            int a = int(next_u64() % 9), b = int(next_u64() % 9);
            int la = lift_code(f9, gr, a), lb = lift_code(f9, gr, b);
            CHECK(reduce_code(gr, f9, gr.mul(la, lb)) == f9.mul(a, b));
            CHECK(reduce_code(gr, f9, gr.add(la, lb)) == f9.add(a, b));
        }
    }
}

TEST_CASE("colspace solver matches direct solve") {
    FieldSpec f3(3, 1);
    for (int t = 0; t < 30; ++t) {
        Matrix M(6, 4, f3);
        for (auto& v : M.a) v = int(next_u64() % 3);
        ColspaceSolver cs(M);
        for (int s = 0; s < 5; ++s) {
            std::vector<int> b(6);
            for (auto& v : b) v = int(next_u64() % 3);
            auto x1 = solve(M, b);
            auto x2 = cs.solve(b);
            CHECK(x1.has_value() == x2.has_value());
            if (x2) CHECK(mat_vec(M, *x2) == b);
        }
        // columns of M itself are in the column space
        for (int c = 0; c < M.cols; ++c) CHECK(cs.in_colspace(column_of(M, c)));
    }
}

TEST_CASE("inverse") {
    FieldSpec f5(5, 1);
    Matrix M(3, 3, f5);
    M.a = {1, 2, 0, 0, 1, 3, 4, 0, 2};
    Matrix Mi = inverse(M);
    CHECK(mat_mul(M, Mi) == Matrix::identity(3, f5));
    CHECK(mat_mul(Mi, M) == Matrix::identity(3, f5));
}
