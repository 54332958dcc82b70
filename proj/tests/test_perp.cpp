#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "mukai/cone.hpp"

using namespace mukai;

TEST_CASE("accumulation parameters, frozen") {
    SurfaceLattice L = SurfaceLattice::rank1(1);
    PerpLattice P(L, MukaiVector(2, 1, -2));  // l = 5: s± = 1/2 ± (1/2) sqrt(5)
    REQUIRE(P.s_plus().rational_part() == make_rat(Int(1), Int(2)));
    REQUIRE(P.s_plus().irrational_part() == make_rat(Int(1), Int(2)));
    REQUIRE(P.s_plus().radicand() == 5);
    REQUIRE(P.s_minus().irrational_part() == make_rat(Int(-1), Int(2)));
    REQUIRE_FALSE(P.boundary_rational());

    PerpLattice Q(L, MukaiVector(1, 0, -4));  // nl = 4 square: s± = ∓2 rational
    REQUIRE(Q.boundary_rational());
    REQUIRE(Q.s_minus().irrational_part() == 0);
    REQUIRE(Q.s_minus().rational_part() == -2);
    REQUIRE(Q.s_plus().rational_part() == 2);
}

TEST_CASE("xi lies in v-perp and is positive on the slice") {
    std::mt19937 rng(1234);
    int done = 0;
    while (done < 100) {
        long n = 1 + long(rng() % 5);
        SurfaceLattice L = SurfaceLattice::rank1(Int(n));
        auto pick = [&] { return Int(long(rng() % 15) - 7); };
        MukaiVector v{pick(), pick(), pick()};
        if (v.is_zero() || mukai_square(L, v) <= 0) continue;
        PerpLattice P(L, v);
        Rat s = make_rat(Int(long(rng() % 21) - 10), Int(1 + rng() % 9));
        Rat t2 = make_rat(Int(1 + rng() % 12), Int(1 + rng() % 9));
        RationalMukaiVector xi = P.xi(s, t2);
        REQUIRE(mukai_pairing(L, xi, P.v()) == 0);
        REQUIRE(mukai_pairing(L, xi, xi) > 0);
        ++done;
    }
}

TEST_CASE("boundary classes are isotropic in the quadratic extension") {
    std::mt19937 rng(606060);
    int done = 0;
    while (done < 100) {
        long n = 1 + long(rng() % 5);
        SurfaceLattice L = SurfaceLattice::rank1(Int(n));
        auto pick = [&] { return Int(long(rng() % 15) - 7); };
        MukaiVector v{pick(), pick(), pick()};
        if (v.is_zero() || v.content() != 1) continue;
        if (mukai_square(L, v) <= 0) continue;
        PerpLattice P(L, v);
        if (P.v().r == 0) continue;  // boundary_rays requires r > 0
        for (int side : {-1, +1}) {
            QuadExt s = side < 0 ? P.s_minus() : P.s_plus();
            std::array<QuadExt, 3> xi = detail::xi_quadext(P, s);
            QuadExt sq = quadext_pairing(L, xi, xi);
            REQUIRE(sq.is_zero());
            QuadExt vs = quadext_pairing(L, xi, quadext_class(P.v()));
            REQUIRE(vs.is_zero());
        }
        ++done;
    }
}

TEST_CASE("window validation") {
    REQUIRE_THROWS_AS(Window(Rat(1), Rat(1), Rat(1), Rat(2)), std::invalid_argument);
    REQUIRE_THROWS_AS(Window(Rat(0), Rat(1), Rat(0), Rat(2)), std::invalid_argument);
    REQUIRE_THROWS_AS(Window(Rat(0), Rat(1), Rat(3), Rat(2)), std::invalid_argument);
}

TEST_CASE("negative-square enumeration finds small classes between boundary rays") {
    SurfaceLattice L = SurfaceLattice::rank1(1);
    MukaiVector v(1, 0, -4);
    PerpLattice P(L, v);
    REQUIRE(P.boundary_rational());
    auto [y1, y2] = P.exact_boundary_rays();
    auto found = P.enumerate_negative_in_cone(y1, y2, Int(8));
    REQUIRE_FALSE(found.empty());
    for (const auto& y : found) {
        MukaiVector x = P.embed(y);
        Int sq = mukai_square(L, x);
        REQUIRE(sq < 0);
        REQUIRE(sq >= -8);
        REQUIRE(mukai_pairing(L, x, v) == 0);
    }
}
