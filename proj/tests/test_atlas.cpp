#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <random>
#include <set>

#include "mukai/atlas.hpp"

using namespace mukai;

namespace {

SurfaceLattice L1 = SurfaceLattice::rank1(1);
const MukaiVector V212{2, 1, -2};
const Window WIN{make_rat(Int(-11), Int(5)), make_rat(Int(16), Int(5)), make_rat(Int(1), Int(100)),
                 Rat(4)};

std::set<std::tuple<Int, Int, Int>> pqr_set(const std::vector<Wall>& ws) {
    std::set<std::tuple<Int, Int, Int>> out;
    for (const Wall& w : ws) out.insert({w.pqr.P, w.pqr.Q, w.pqr.R});
    return out;
}

}  // namespace

TEST_CASE("seven-wall window, frozen geometry") {
    auto walls = enumerate_walls(L1, V212, WIN);
    REQUIRE(walls.size() == 7);

    std::map<std::pair<Rat, Rat>, int> circles;  // (center, radius2) -> count
    int lines = 0;
    for (const Wall& w : walls) {
        if (auto* l = std::get_if<WallLine>(&w.geometry)) {
            ++lines;
            REQUIRE(l->s0 == make_rat(Int(1), Int(2)));
        } else {
            auto& c = std::get<WallCircle>(w.geometry);
            circles[{c.center, c.radius2}] += 1;
        }
        REQUIRE(w.codim.codim == WallCodim::Codim1);
        REQUIRE_FALSE(w.witnesses.empty());
        for (const MukaiVector& v1 : w.witnesses)
            REQUIRE(wall_coefficients_rank1(L1, V212, v1) == w.pqr);
    }
    REQUIRE(lines == 1);
    std::map<std::pair<Rat, Rat>, int> expect = {
        {{Rat(-1), Rat(1)}, 1},
        {{Rat(2), Rat(1)}, 1},
        {{make_rat(Int(-2), Int(3)), make_rat(Int(1), Int(9))}, 1},
        {{make_rat(Int(5), Int(3)), make_rat(Int(1), Int(9))}, 1},
        {{make_rat(Int(-5), Int(8)), make_rat(Int(1), Int(64))}, 1},
        {{make_rat(Int(13), Int(8)), make_rat(Int(1), Int(64))}, 1},
    };
    REQUIRE(circles == expect);

    // the t^2 + s(s + 2) = 0 circle is (center, radius2) = (-1, 1) with
    // integer coefficients (P, Q, R) = (1, 2, 0)
    bool found = false;
    for (const Wall& w : walls)
        if (w.pqr == WallCoefficients{1, 2, 0}) found = true;
    REQUIRE(found);
}

TEST_CASE("seven-wall window matches brute force") {
    auto fast = enumerate_walls(L1, V212, WIN);
    auto brute = brute_force_walls(L1, V212, WIN, Int(12));
    REQUIRE(pqr_set(fast) == pqr_set(brute));
}

TEST_CASE("no-wall certificate for (6,1,6) at n=39") {
    SurfaceLattice L39 = SurfaceLattice::rank1(39);
    MukaiVector v(6, 1, 6);
    auto we = walls_exist(L39, v);
    REQUIRE(we.kind == WallsExistKind::NoWallCertified);
    REQUIRE(we.pairing_gcd == 6);
    REQUIRE(enumerate_walls(L39, v, WIN).empty());
    Window other(Rat(-50), Rat(50), make_rat(Int(1), Int(1000)), Rat(10000));
    REQUIRE(enumerate_walls(L39, v, other).empty());
}

TEST_CASE("wall existence witness for (2,1,-2)") {
    auto we = walls_exist(L1, V212);
    REQUIRE(we.kind == WallsExistKind::WallFound);
    REQUIRE(*we.witness == MukaiVector(-1, 1, -1));
}

TEST_CASE("chamber location and on-wall detection, frozen") {
    auto ch = locate_chamber(L1, V212, StabilityPoint{make_rat(Int(1), Int(4)), Rat(1)});
    REQUIRE_FALSE(ch.left.boundary);
    REQUIRE(ch.left.wall->pqr == WallCoefficients{1, 2, 0});
    REQUIRE_FALSE(ch.right.boundary);
    REQUIRE(ch.right.wall->pqr == WallCoefficients{0, 2, -1});

    REQUIRE_THROWS_AS(locate_chamber(L1, V212, StabilityPoint{make_rat(Int(1), Int(2)), Rat(1)}),
                      OnWallError);

    SurfaceLattice L39 = SurfaceLattice::rank1(39);
    auto ch39 = locate_chamber(L39, MukaiVector(6, 1, 6), StabilityPoint{Rat(0), Rat(1)});
    REQUIRE(ch39.left.boundary);
    REQUIRE(ch39.right.boundary);

    // rational boundary case (nl square)
    auto ch4 = locate_chamber(L1, MukaiVector(1, 0, -4), StabilityPoint{make_rat(Int(1), Int(5)), Rat(1)});
    REQUIRE_FALSE(ch4.left.boundary);
    REQUIRE(std::get<WallLine>(ch4.left.wall->geometry).s0 == 0);
    REQUIRE_FALSE(ch4.right.boundary);
    auto& c = std::get<WallCircle>(ch4.right.wall->geometry);
    REQUIRE(c.center == make_rat(Int(5), Int(2)));
    REQUIRE(c.radius2 == make_rat(Int(9), Int(4)));
}

TEST_CASE("wall classification, frozen") {
    auto c0 = classify_wall(L1, MukaiVector(1, 0, -3), MukaiVector(0, 0, -1));
    REQUIRE(c0.codim == WallCodim::Codim0);
    REQUIRE(*c0.v2 == MukaiVector(1, 0, 0));
    auto c1 = classify_wall(L1, V212, MukaiVector(1, 0, 0));
    REQUIRE(c1.codim == WallCodim::Codim1);
    REQUIRE(*c1.v1 == MukaiVector(1, 0, 0));
}

TEST_CASE("randomized oracle equivalence on small instances") {
    std::mt19937 rng(777);
    int done = 0;
    while (done < 20) {
        long n = 1 + long(rng() % 5);
        SurfaceLattice L = SurfaceLattice::rank1(Int(n));
        auto pick = [&] { return Int(long(rng() % 13) - 6); };
        MukaiVector v{pick(), pick(), pick()};
        if (v.is_zero() || v.content() != 1) continue;
        Int sq = mukai_square(L, v);
        if (sq <= 0 || sq > 60) continue;
        Rat s_lo = make_rat(Int(long(rng() % 9) - 6), Int(1 + rng() % 10));
        Rat width = make_rat(Int(1 + rng() % 30), Int(1 + rng() % 10));
        Rat t_lo = make_rat(Int(1 + rng() % 4), Int(4));
        Rat t_hi = t_lo + make_rat(Int(1 + rng() % 8), Int(1 + rng() % 10));
        Window win(s_lo, s_lo + width, t_lo * t_lo, t_hi * t_hi);
        auto fast = enumerate_walls(L, v, win);
        auto brute = brute_force_walls(L, v, win, Int(40));
        INFO("n=" << n << " v=" << v.str());
        REQUIRE(pqr_set(fast) == pqr_set(brute));
        ++done;
    }
}

TEST_CASE("enumeration rejects bad input") {
    REQUIRE_THROWS_AS(enumerate_walls(L1, MukaiVector(0, 0, -1), WIN), std::invalid_argument);
    REQUIRE_THROWS_AS(enumerate_walls(L1, MukaiVector(2, 0, -2), WIN), std::invalid_argument);
}
