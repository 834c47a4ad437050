#include "doctest.h"
#include "hallforge/finite_type.hpp"

using namespace hallforge;

namespace {

std::vector<RootSystemA> systems() {
    std::vector<RootSystemA> out;
    for (auto dt : {DualityType::Orthogonal, DualityType::Symplectic}) {
        out.push_back(build_typeA(1, "", dt));
        out.push_back(build_typeA(2, "R", dt));
        out.push_back(build_typeA(3, "RR", dt));
        out.push_back(build_typeA(4, "RLR", dt));
    }
    return out;
}

}  // namespace

TEST_SUITE("finite_type") {
    TEST_CASE("root data") {
        for (const auto& rs : systems()) {
            CHECK(static_cast<int>(rs.roots.size()) == rs.n * (rs.n + 1) / 2);
            int fixed = 0;
            for (int r = 0; r < static_cast<int>(rs.roots.size()); ++r) {
                CHECK(rs.dual[rs.dual[r]] == r);
                const Interval& iv = rs.roots[r];
                CHECK(rs.roots[rs.dual[r]] == Interval{rs.n + 1 - iv.b, rs.n + 1 - iv.a});
                bool is_fixed = iv.a + iv.b == rs.n + 1;
                CHECK((rs.part[r] == RootPart::Fixed) == is_fixed);
                fixed += is_fixed;
                CHECK(rs.position[rs.order[rs.position[r]]] == rs.position[r]);
            }
            CHECK(fixed == rs.n / 2 + rs.n % 2);
            CHECK(rs.hyperbolic() == ((rs.n % 2 == 0) == (rs.duality == DualityType::Orthogonal)));
        }
    }

    TEST_CASE("Hom minus Ext is the Euler form") {
        for (const auto& rs : systems()) {
            int nr = static_cast<int>(rs.roots.size());
            for (int i = 0; i < nr; ++i)
                for (int j = 0; j < nr; ++j) {
                    HomExt he = hom_ext(rs.quiver, rs.indecomposables[i], rs.indecomposables[j]);
                    CHECK(he.hom - he.ext == rs.quiver.euler_form(rs.dims[i], rs.dims[j]));
                    CHECK(he.hom >= 0);
                    CHECK(he.ext >= 0);
                }
            for (int i = 0; i < nr; ++i) {
                HomExt self = hom_ext(rs.quiver, rs.indecomposables[i], rs.indecomposables[i]);
                CHECK(self.hom == 1);
                CHECK(self.ext == 0);
            }
        }
    }

    TEST_CASE("AR order has no forward Hom or backward Ext") {
        for (const auto& rs : systems()) {
            std::vector<int> ord = ar_order(rs);
            CHECK(ord == rs.order);
            for (size_t x = 0; x < ord.size(); ++x)
                for (size_t y = x + 1; y < ord.size(); ++y) {
                    const QuiverRep& early = rs.indecomposables[ord[x]];
                    const QuiverRep& late = rs.indecomposables[ord[y]];
                    CHECK(hom_ext(rs.quiver, early, late).hom == 0);
                    CHECK(hom_ext(rs.quiver, late, early).ext == 0);
                }
        }
    }

    TEST_CASE("ordered dilogarithm identity on A2") {
        for (auto dt : {DualityType::Orthogonal, DualityType::Symplectic}) {
            DilogReport r = dilog_identity_check(build_typeA(2, "R", dt), 4, 20);
            CHECK(r.equal);
            CHECK(r.enough_precision);
        }
    }

    TEST_CASE("Thom polynomials") {
        RootSystemA rs = build_typeA(2, "R", DualityType::Symplectic);
        std::vector<int> m(rs.roots.size(), 0);
        m[rs.index_of({1, 2})] = 2;
        CohmElement t = thom_polynomial(rs, m);
        CHECK(t.e == DimVec{2, 2});
        CHECK(is_invariant(cohm_blocks(rs.quiver, t.e), t.poly));
        CHECK_FALSE(t.is_zero());
        std::vector<int> bad(rs.roots.size(), 0);
        bad[rs.index_of({1, 1})] = 1;
        CHECK_THROWS_AS(thom_polynomial(rs, bad), MultiplicityError);
        int rejected = 0;
        for (auto dt : {DualityType::Orthogonal, DualityType::Symplectic})
            for (int n = 2; n <= 4; ++n) {
                RootSystemA r = build_typeA(n, std::string(n - 1, 'R'), dt);
                for (int k = 0; k < static_cast<int>(r.roots.size()); ++k) {
                    if (r.part[k] != RootPart::Fixed || r.admits_selfdual[k]) continue;
                    std::vector<int> odd(r.roots.size(), 0);
                    odd[k] = 1;
                    CHECK_THROWS_AS(thom_polynomial(r, odd), MultiplicityError);
                    ++rejected;
                }
            }
        CHECK(rejected > 0);
    }

    TEST_CASE("PBW spanning and its negative controls") {
        RootSystemA rs = build_typeA(2, "R", DualityType::Orthogonal);
        PbwBound b{2, 2};
        CHECK(pbw_check_coha(rs, b).pass);
        CHECK(pbw_check_cohm(rs, b).pass);
        int r11 = rs.index_of({1, 1}), r22 = rs.index_of({2, 2});
        int r12 = rs.index_of({1, 2});
        CHECK_FALSE(pbw_check_coha_sequence(rs, {r11, r22}, b).pass);
        CHECK_FALSE(pbw_check_coha_sequence(rs, {r12, r11, r22}, b).pass);
        CHECK(pbw_check_coha_sequence(rs, {r11, r12, r22}, b).pass);
        CHECK(pbw_check_coha_sequence(rs, {r22, r11}, b).pass);
    }
}
