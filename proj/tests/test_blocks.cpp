#include <doctest.h>

#include "blockstein/blocks.hpp"

using namespace blockstein;

namespace {

Cochain basis_rep(Tower& tw, const SubKey& H, int deg, int idx) {
    CocycleClass c;
    c.sub = H;
    c.deg = deg;
    c.coords.assign(tw.space(H, deg).dim, 0);
    c.coords[idx] = 1;
    return tw.rep_of(c);
}

}  // namespace

TEST_CASE("splitting degrees") {
    CHECK(splitting_degree(*from_catalog("C2"), 2) == 1);
    CHECK(splitting_degree(*from_catalog("C2xC2"), 2) == 1);
    CHECK(splitting_degree(*from_catalog("S3"), 2) == 2);  // order of 2 mod 3
    CHECK(splitting_degree(*from_catalog("S3"), 3) == 1);  // order of 3 mod 2
    CHECK(splitting_degree(*from_catalog("C4"), 2) == 1);
    CHECK(splitting_degree(*from_catalog("Q8"), 2) == 1);
}

TEST_CASE("block decomposition") {
    SUBCASE("C_p has a single block") {
        BlocksEngine eng(from_catalog("C3"), 3);
        CHECK(eng.blocks().size() == 1);
        CHECK(eng.block(0).module->dim == 3);
        CHECK(eng.block(0).principal);
    }
    SUBCASE("S3 at p=3: a single block of dim 6") {
        // the normal Sylow C3 forces one block: kC_G(C3) = kC3 is local
        BlocksEngine eng(from_catalog("S3"), 3);
        REQUIRE(eng.blocks().size() == 1);
        CHECK(eng.block(0).module->dim == 6);
        CHECK(eng.block(0).principal);
    }
    SUBCASE("S3 at p=2: blocks of dims 2+4") {
        BlocksEngine eng(from_catalog("S3"), 2);
        CHECK(eng.field().m == 2);  // auto-enlarged to F4
        REQUIRE(eng.blocks().size() == 2);
        std::vector<int> dims = {eng.block(0).module->dim, eng.block(1).module->dim};
        std::sort(dims.begin(), dims.end());
        CHECK(dims == std::vector<int>{2, 4});
    }
    SUBCASE("dim H^n(G,kG) = sum over blocks of dim H^n(G,B)") {
        BlocksEngine eng(from_catalog("S3"), 3);
        for (int n = 0; n <= 2; ++n) {
            int total = eng.kg().space(eng.kg().whole(), n).dim;
            int sum = 0;
            for (size_t i = 0; i < eng.blocks().size(); ++i) {
                Tower& tb = eng.block_tower(int(i));
                sum += tb.space(tb.whole(), n).dim;
            }
            CHECK(total == sum);
        }
    }
    SUBCASE("characteristic must divide the order") {
        CHECK_THROWS_AS(BlocksEngine(from_catalog("C3"), 2), UsageError);
    }
}

TEST_CASE("defect groups") {
    SUBCASE("p-group: defect is the whole group") {
        BlocksEngine eng(from_catalog("Q8"), 2);
        auto& b = eng.block(0);
        eng.compute_defect(b);
        CHECK(b.defect.order() == 8);
    }
    SUBCASE("S3 at p=3: the block has defect C3") {
        BlocksEngine eng(from_catalog("S3"), 3);
        for (auto& b : eng.blocks()) {
            eng.compute_defect(b);
            CHECK(b.defect.order() == 3);
        }
    }
    SUBCASE("S3 at p=2: principal block has defect 2, the other defect 0") {
        BlocksEngine eng(from_catalog("S3"), 2);
        for (auto& b : eng.blocks()) {
            eng.compute_defect(b);
            if (b.principal)
                CHECK(b.defect.order() == 2);
            else
                CHECK(b.defect.order() == 1);
        }
    }
}

TEST_CASE("brauer pairs") {
    SUBCASE("Q = P gives e_P back") {
        BlocksEngine eng(from_catalog("S3"), 3);
        auto& b = eng.block(0);
        eng.compute_brauer_pairs(b);
        bool found = false;
        for (auto& bp : b.pairs)
            if (bp.Q.elems == b.defect.elems) {
                CHECK(bp.e_Q == b.e_P);
                found = true;
            }
        CHECK(found);
    }
    SUBCASE("principal block pairs carry the principal blocks (augmentation)") {
        BlocksEngine eng(from_catalog("S3"), 3);
        for (auto& b : eng.blocks()) {
            if (!b.principal) continue;
            eng.compute_brauer_pairs(b);
            for (auto& bp : b.pairs) {
                int aug = 0;
                for (int c : bp.e_Q) aug = eng.field().add(aug, c);
                CHECK(aug != 0);
            }
        }
    }
    SUBCASE("S3 p=3 principal block: N_G(C3, e) = S3") {
        BlocksEngine eng(from_catalog("S3"), 3);
        for (auto& b : eng.blocks()) {
            if (!b.principal) continue;
            eng.compute_brauer_pairs(b);
            for (auto& bp : b.pairs)
                if (bp.Q.order() == 3) CHECK(bp.stabilizer.order() == 6);
        }
    }
    SUBCASE("pair count equals the number of subgroups of P") {
        BlocksEngine eng(from_catalog("S3"), 2);
        for (auto& b : eng.blocks()) {
            eng.compute_brauer_pairs(b);
            if (b.defect.order() == 2) CHECK(b.pairs.size() == 2);
            if (b.defect.order() == 1) CHECK(b.pairs.size() == 1);
        }
    }
}

TEST_CASE("block cohomology (stable elements)") {
    SUBCASE("G = P: the full cohomology of P") {
        BlocksEngine eng(from_catalog("C4"), 2);
        auto& b = eng.block(0);
        for (int n = 0; n <= 3; ++n) {
            const Matrix& st = eng.block_cohomology(b, n);
            CHECK(st.cols == eng.triv().space(b.defect.elems, n).dim);
        }
    }
    SUBCASE("S3 p=3 principal block: dims 1,0,0,1 and an eigenspace oracle") {
        BlocksEngine eng(from_catalog("S3"), 3);
        for (auto& b : eng.blocks()) {
            if (!b.principal) continue;
            int expect[4] = {1, 0, 0, 1};
            for (int n = 0; n <= 3; ++n) {
                const Matrix& st = eng.block_cohomology(b, n);
                CHECK(st.cols == expect[n]);
                // independent oracle: fixed space of the order-2 action on H^n(C3,k)
                Tower& T = eng.triv();
                const SubKey& P = b.defect.elems;
                int D = T.space(P, n).dim;
                int t = -1;
                for (int g : eng.group()->n ? std::vector<int>{1, 2, 3, 4, 5} : std::vector<int>{})
                    if (eng.group()->order_of(g) == 2) { t = g; break; }
                REQUIRE(t >= 0);
                Matrix act(D, D, eng.field());
                for (int c = 0; c < D; ++c) {
                    Cochain rep = basis_rep(T, P, n, c);
                    auto cc = T.class_of(P, T.conj(t, rep));
                    for (int r = 0; r < D; ++r) act.at(r, c) = cc.coords[r];
                }
                Matrix diff = mat_sub(act, Matrix::identity(D, eng.field()));
                CHECK(kernel_basis(diff).cols == st.cols);
            }
        }
    }
    SUBCASE("beta maps stable classes to stable classes") {
        BlocksEngine eng(from_catalog("S3"), 3);
        for (auto& b : eng.blocks()) {
            if (!b.principal) continue;
            for (int r = 0; r <= 2; ++r) {
                const Matrix& st = eng.block_cohomology(b, r);
                for (int c = 0; c < st.cols; ++c) {
                    std::vector<int> coords(st.cols, 0);
                    coords[c] = 1;
                    // membership is asserted inside; degree-0 must map to zero
                    auto out = eng.block_cohomology_bockstein(b, r, coords);
                    if (r == 0)
                        for (int v : out) CHECK(v == 0);
                }
            }
        }
    }
    SUBCASE("G = P = C2: beta(x) = x^2 stays stable and is nonzero") {
        BlocksEngine eng(from_catalog("C2"), 2);
        auto& b = eng.block(0);
        const Matrix& st1 = eng.block_cohomology(b, 1);
        REQUIRE(st1.cols == 1);
        auto out = eng.block_cohomology_bockstein(b, 1, {1});
        REQUIRE(out.size() == 1);
        CHECK(out[0] != 0);
    }
}

TEST_CASE("block Hochschild decomposition and Bockstein") {
    SUBCASE("single-block group: Phi coincides with the plain decomposition") {
        BlocksEngine eng(from_catalog("C3"), 3);
        auto m = eng.hh_block_decompose(0, 1);
        auto plain = eng.hh().decompose(1);
        CHECK(m.total == plain.total);
        CHECK(m.comp_dims.size() == plain.comp_dims.size());
    }
    SUBCASE("S3 p=3: component dims sum to dim H^1(G,B) for each block") {
        BlocksEngine eng(from_catalog("S3"), 3);
        for (size_t i = 0; i < eng.blocks().size(); ++i) {
            auto m = eng.hh_block_decompose(int(i), 1);
            int sum = 0;
            for (int d : m.comp_dims) sum += d;
            CHECK(sum == m.total);
        }
    }
    SUBCASE("gamma_block after Phi is the identity on a basis of H^1(G,B)") {
        BlocksEngine eng(from_catalog("S3"), 3);
        for (size_t bi = 0; bi < eng.blocks().size(); ++bi) {
            Tower& TB = eng.block_tower(int(bi));
            SubKey W = TB.whole();
            const auto& sp = TB.space(W, 1);
            for (int c = 0; c < sp.dim; ++c) {
                Cochain a = basis_rep(TB, W, 1, c);
                Cochain back = TB.zero_cochain(W, 1);
                for (int i = 0; i < eng.hh().class_count(); ++i)
                    back = TB.add(back, eng.gamma_block(int(bi), i, eng.block_component(int(bi), a, i)));
                CHECK(TB.cohomologous(W, back, a));
            }
        }
    }
    SUBCASE("two Bockstein routes agree on bases, r <= 2") {
        BlocksEngine eng(from_catalog("S3"), 3);
        for (size_t bi = 0; bi < eng.blocks().size(); ++bi) {
            Tower& TB = eng.block_tower(int(bi));
            SubKey W = TB.whole();
            for (int r = 0; r <= 2; ++r) {
                const auto& sp = TB.space(W, r);
                for (int c = 0; c < sp.dim; ++c) {
                    Cochain a = basis_rep(TB, W, r, c);
                    auto r1 = eng.hh_block_bockstein(int(bi), a);
                    auto r2 = eng.hh_block_bockstein_transported(int(bi), a);
                    CHECK(TB.cohomologous(W, r1, r2));
                }
            }
        }
    }
    SUBCASE("single-block C2: equals the plain Hochschild Bockstein") {
        BlocksEngine eng(from_catalog("C2"), 2);
        Tower& TB = eng.block_tower(0);
        SubKey W = TB.whole();
        // B = kG here; inclusion is a basis change
        Cochain a = basis_rep(TB, W, 1, 0);
        auto r1 = eng.hh_block_bockstein(0, a);
        Cochain in_kg = Tower::map_coeffs(eng.kg(), eng.block(0).inclusion, a);
        auto beta_kg = eng.hh().bockstein(in_kg);
        auto back = Tower::map_coeffs(TB, eng.block(0).projection, beta_kg);
        CHECK(TB.cohomologous(W, r1, back));
    }
    SUBCASE("block Bockstein squares to zero and satisfies Leibniz") {
        BlocksEngine eng(from_catalog("S3"), 3);
        for (size_t bi = 0; bi < eng.blocks().size(); ++bi) {
            Tower& TB = eng.block_tower(int(bi));
            SubKey W = TB.whole();
            for (int r = 1; r <= 2; ++r) {
                const auto& sp = TB.space(W, r);
                for (int c = 0; c < sp.dim; ++c) {
                    Cochain a = basis_rep(TB, W, r, c);
                    CHECK(TB.is_coboundary(W, eng.hh_block_bockstein(int(bi),
                                                                    eng.hh_block_bockstein(int(bi), a))));
                }
            }
            // Leibniz on a (0,1) and (1,1) pair when dims allow
            const auto& sp0 = TB.space(W, 0);
            const auto& sp1 = TB.space(W, 1);
            if (sp0.dim > 0 && sp1.dim > 0) {
                Cochain a = basis_rep(TB, W, 0, 0);
                Cochain b = basis_rep(TB, W, 1, 0);
                auto lhs = eng.hh_block_bockstein(int(bi), TB.cup(a, b));
                auto rhs = TB.add(TB.cup(eng.hh_block_bockstein(int(bi), a), b),
                                  TB.cup(a, eng.hh_block_bockstein(int(bi), b)));
                CHECK(TB.cohomologous(W, lhs, rhs));
            }
        }
    }
}

TEST_CASE("block cohomology is a Bockstein-stable subalgebra") {
    // products of stable classes are stable, beta_{G,b} is square-zero and a
    // graded derivation in stable coordinates
    for (auto setup : {std::make_pair("C4", 2), std::make_pair("S3", 3)}) {
        BlocksEngine eng(from_catalog(setup.first), setup.second);
        BlockData* bp = nullptr;
        for (auto& b : eng.blocks())
            if (b.principal) bp = &b;
        REQUIRE(bp);
        BlockData& b = *bp;
        Tower& T = eng.triv();
        const SubKey& P = b.defect.elems;
        const FieldSpec& F = eng.field();
        auto stable_rep = [&](int r, int idx) {
            const Matrix& st = eng.block_cohomology(b, r);
            std::vector<int> coords(st.cols, 0);
            coords[idx] = 1;
            CocycleClass cl;
            cl.sub = P;
            cl.deg = r;
            cl.coords = mat_vec(st, coords);
            return T.rep_of(cl);
        };
        // beta^2 = 0 in stable coordinates
        for (int r = 0; r <= 1; ++r) {
            const Matrix& st = eng.block_cohomology(b, r);
            for (int i = 0; i < st.cols; ++i) {
                std::vector<int> coords(st.cols, 0);
                coords[i] = 1;
                auto b1 = eng.block_cohomology_bockstein(b, r, coords);
                auto b2 = eng.block_cohomology_bockstein(b, r + 1, b1);
                for (int v : b2) CHECK(v == 0);
            }
        }
        // closure under cup and Leibniz
        for (int m = 0; m <= 1; ++m)
            for (int n = 0; m + n <= 2; ++n) {
                const Matrix& stm = eng.block_cohomology(b, m);
                const Matrix& stn = eng.block_cohomology(b, n);
                eng.block_cohomology(b, m + n);
                eng.block_cohomology(b, m + n + 1);
                for (int i = 0; i < stm.cols; ++i)
                    for (int j = 0; j < stn.cols; ++j) {
                        Cochain a = stable_rep(m, i);
                        Cochain bb = stable_rep(n, j);
                        Cochain ab = T.cup(a, bb);
                        auto cl = T.class_of(P, ab);
                        // stability of the product
                        Matrix stsum = eng.block_cohomology(b, m + n);
                        CHECK(ColspaceSolver(stsum).in_colspace(cl.coords));
                        // Leibniz at the cochain level inside H^*(P,k)
                        Cochain lhs = T.bockstein_trivial(ab);
                        Cochain rhs = T.add(T.cup(T.bockstein_trivial(a), bb),
                                            T.scale(m % 2 ? F.neg(1) : 1,
                                                    T.cup(a, T.bockstein_trivial(bb))));
                        CHECK(T.cohomologous(P, lhs, rhs));
                    }
            }
    }
}

TEST_CASE("S4 at p=3: principal block of defect C3 plus two defect-zero blocks") {
    BlocksEngine eng(from_catalog("S4"), 3);
    CHECK(eng.field().m == 2);  // F9 splits the two 3-dimensional simples
    auto& bs = eng.blocks();
    REQUIRE(bs.size() == 3);
    std::vector<int> dims, defects;
    for (auto& b : bs) {
        eng.compute_defect(b);
        dims.push_back(b.module->dim);
        defects.push_back(b.defect.order());
    }
    std::sort(dims.begin(), dims.end());
    std::sort(defects.begin(), defects.end());
    CHECK(dims == std::vector<int>{6, 9, 9});
    CHECK(defects == std::vector<int>{1, 1, 3});
    for (auto& b : bs) {
        eng.compute_brauer_pairs(b);
        CHECK(b.pairs.size() == (b.defect.order() == 3 ? 2 : 1));
    }
}

TEST_CASE("A4 at p=2: one block, Klein four defect, fusion-stable cohomology") {
    BlocksEngine eng(from_catalog("A4"), 2);
    CHECK(eng.field().m == 2);
    auto& bs = eng.blocks();
    REQUIRE(bs.size() == 1);  // normal Sylow V4 with kC_G(V4) = kV4 local
    BlockData& b = bs[0];
    eng.compute_defect(b);
    CHECK(b.defect.order() == 4);
    eng.compute_brauer_pairs(b);
    CHECK(b.pairs.size() == 5);  // 1, three C2s, V4
    // the 3-cycle fuses the three involutions: stable dims are the classical
    // cohomology dims of A4 itself
    int expect[4] = {1, 0, 1, 2};
    for (int n = 0; n <= 3; ++n) CHECK(eng.block_cohomology(b, n).cols == expect[n]);
    // and beta maps stable classes to stable classes
    for (int r = 0; r <= 2; ++r) {
        const Matrix& st = eng.block_cohomology(b, r);
        for (int c = 0; c < st.cols; ++c) {
            std::vector<int> coords(st.cols, 0);
            coords[c] = 1;
            eng.block_cohomology_bockstein(b, r, coords);
        }
    }
}
