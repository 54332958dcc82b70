#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "mukai/cone.hpp"

using namespace mukai;

namespace {
SurfaceLattice L1 = SurfaceLattice::rank1(1);
}

TEST_CASE("positive-cone boundary rays, frozen") {
    auto b = boundary_rays(L1, MukaiVector(2, 1, -2));
    REQUIRE_FALSE(b.rational);
    REQUIRE(b.s_minus.rational_part() == make_rat(Int(1), Int(2)));
    REQUIRE(b.s_minus.irrational_part() == make_rat(Int(-1), Int(2)));
    REQUIRE(b.s_minus.radicand() == 5);
    // rays are isotropic and orthogonal to v in Q(sqrt 5)
    for (const ConeRay* r : {&b.minus, &b.plus}) {
        REQUIRE(r->kind == RayKind::BoundaryRay);
        REQUIRE(quadext_pairing(L1, r->cls, r->cls).is_zero());
        REQUIRE(quadext_pairing(L1, r->cls, quadext_class(MukaiVector(2, 1, -2))).is_zero());
    }

    auto b4 = boundary_rays(L1, MukaiVector(1, 0, -4));
    REQUIRE(b4.rational);
    REQUIRE(b4.s_minus.rational_part() == -2);
    REQUIRE(b4.s_plus.rational_part() == 2);
    REQUIRE(*b4.minus.rational_cls == MukaiVector(-1, 2, -4));
    REQUIRE(*b4.plus.rational_cls == MukaiVector(1, 2, 4));

    REQUIRE_THROWS_AS(boundary_rays(L1, MukaiVector(0, 1, -2)), std::domain_error);
}

TEST_CASE("isotropic classes with prescribed pairing, frozen") {
    auto i2 = isotropic_with_pairing(L1, MukaiVector(2, 1, -2), 2, Int(10));
    REQUIRE(i2.exists);
    REQUIRE(*i2.witness == MukaiVector(1, 0, 0));
    for (const MukaiVector& c : i2.classes) {
        REQUIRE(mukai_square(L1, c) == 0);
        REQUIRE(c.content() == 1);
        REQUIRE(mukai_pairing(L1, c, MukaiVector(2, 1, -2)) == 2);
    }
    auto i1 = isotropic_with_pairing(L1, MukaiVector(2, 1, -2), 1, Int(10));
    REQUIRE_FALSE(i1.exists);

    auto i0 = isotropic_with_pairing(L1, MukaiVector(1, 0, -4), 0, Int(10));
    REQUIRE(i0.exists);  // nl = 4 square: rational boundary admits lattice rays
    for (const MukaiVector& c : i0.classes) {
        REQUIRE(mukai_square(L1, c) == 0);
        REQUIRE(mukai_pairing(L1, c, MukaiVector(1, 0, -4)) == 0);
    }
}

TEST_CASE("trichotomy, frozen") {
    for (long l = 3; l <= 10; ++l) {
        auto t = trichotomy(L1, MukaiVector(1, 0, Int(-l)));
        REQUIRE(t.kase == 3);
        REQUIRE(mukai_pairing(L1, *t.witness, MukaiVector(1, 0, Int(-l))) == 1);
        REQUIRE(mukai_square(L1, *t.witness) == 0);
    }
    REQUIRE(trichotomy(L1, MukaiVector(2, 1, -2)).kase == 2);
    SurfaceLattice L39 = SurfaceLattice::rank1(39);
    auto t1 = trichotomy(L39, MukaiVector(6, 1, 6));
    REQUIRE(t1.kase == 1);
    REQUIRE(*t1.gcd_certificate == 6);
}

TEST_CASE("exceptional class data and reflections, frozen") {
    auto e1 = exceptional_data(L1, MukaiVector(1, 0, -3), MukaiVector(0, 0, -1));
    REQUIRE(e1.d_u == MukaiVector(1, 0, 3));
    auto e2 = exceptional_data(L1, MukaiVector(2, 1, -2), MukaiVector(1, 0, 0));
    REQUIRE(e2.d_u == MukaiVector(-3, 1, -2));
    REQUIRE(mukai_square(L1, e2.d_u) == -10);
    REQUIRE(e2.reflect(e2.d_u) == -e2.d_u);
}

TEST_CASE("reflections are integral involutive isometries") {
    std::mt19937 rng(14142);
    int done = 0;
    while (done < 100) {
        long n = 1 + long(rng() % 4);
        SurfaceLattice L = SurfaceLattice::rank1(Int(n));
        auto pick = [&] { return Int(long(rng() % 13) - 6); };
        MukaiVector v{pick(), pick(), pick()};
        if (v.is_zero() || v.content() != 1) continue;
        Int sq = mukai_square(L, v);
        if (sq < 6 || sq % 2 != 0) continue;
        int k = 1 + int(rng() % 2);
        auto found = isotropic_with_pairing(L, v, k, Int(20));
        if (!found.exists) continue;
        // a pairing-2 witness can be twice a pairing-1 class; exceptional
        // classes come from primitive isotropic vectors only
        if (found.witness->content() != 1) continue;
        ExceptionalData ed = exceptional_data(L, v, *found.witness);
        REQUIRE(ed.reflect(ed.d_u) == -ed.d_u);
        // the reflection is an isometry of v-perp; project test vectors there
        auto perp = [&](const MukaiVector& x) {
            return x * sq - v * mukai_pairing(L, x, v);
        };
        for (int j = 0; j < 5; ++j) {
            MukaiVector x0{pick(), pick(), pick()}, y0{pick(), pick(), pick()};
            MukaiVector x = perp(x0), y = perp(y0);
            MukaiVector rx = ed.reflect(x), ry = ed.reflect(y);
            REQUIRE(ed.reflect(rx) == x);                                 // involution
            REQUIRE(mukai_pairing(L, rx, ry) == mukai_pairing(L, x, y));  // isometry on v-perp
            REQUIRE(mukai_pairing(L, rx, v) == 0);                        // stays in v-perp
            REQUIRE(ed.reflect(x0 + y0) == ed.reflect(x0) + ed.reflect(y0));
        }
        ++done;
    }
}

TEST_CASE("monodromy invariants, frozen") {
    // pairing-1 class of v = (1,0,-3): d_u = (1,0,3), div = 2l = 6, {r,s}={1,3}
    auto m1 = markman_classify(L1, MukaiVector(1, 0, 3), MukaiVector(1, 0, -3));
    REQUIRE(m1.div == 6);
    REQUIRE(m1.r == 1);
    REQUIRE(m1.s == 3);
    REQUIRE(m1.spe);
    REQUIRE(m1.tag == SpeCase::Case1);
    // pairing-2 class of v = (2,1,-2): d_u = (-3,1,-2), div = l = 5, {1,5}
    auto m2 = markman_classify(L1, MukaiVector(-3, 1, -2), MukaiVector(2, 1, -2));
    REQUIRE(m2.div == 5);
    REQUIRE(m2.r == 1);
    REQUIRE(m2.s == 5);
    REQUIRE(m2.spe);
    REQUIRE(m2.tag == SpeCase::Case2b);
    REQUIRE_THROWS_AS(markman_classify(L1, MukaiVector(1, 1, 1), MukaiVector(2, 1, -2)),
                      std::invalid_argument);
}

TEST_CASE("Hilbert-scheme birationality, frozen") {
    auto h1 = hilbert_birational(L1, MukaiVector(1, 0, -3));
    REQUIRE(h1.answer);
    REQUIRE(h1.pell_witness);
    auto h2 = hilbert_birational(L1, MukaiVector(2, 1, -2));
    REQUIRE_FALSE(h2.answer);
    auto h3 = hilbert_birational(L1, MukaiVector(2, 1, -3));
    REQUIRE(h3.answer);
    const auto& [x, y] = *h3.pell_witness;
    REQUIRE(2 * x * x + 2 * x * y - 3 * y * y == 1);
}

TEST_CASE("movable and nef rays at a chamber point, frozen") {
    auto mv = movable_rays(L1, MukaiVector(2, 1, -2), StabilityPoint{make_rat(Int(1), Int(4)), Rat(1)});
    REQUIRE(mv.left.kind == MovableKind::IsotropicPairing2);
    REQUIRE(*mv.left.u == MukaiVector(1, 0, 0));
    REQUIRE(*mv.left.ray.rational_cls == MukaiVector(-1, 1, 0));
    REQUIRE(mv.right.kind == MovableKind::IsotropicPairing2);
    REQUIRE(*mv.right.u == MukaiVector(0, 0, -1));
    REQUIRE(*mv.right.ray.rational_cls == MukaiVector(0, 1, 1));

    auto mv4 = movable_rays(L1, MukaiVector(1, 0, -4), StabilityPoint{make_rat(Int(1), Int(5)), Rat(9)});
    REQUIRE(mv4.left.kind == MovableKind::IsotropicPairing1);
    REQUIRE(*mv4.left.u == MukaiVector(0, 0, -1));
    REQUIRE(mv4.right.kind == MovableKind::PositiveConeBoundary);
    REQUIRE(*mv4.right.ray.rational_cls == MukaiVector(1, 2, 4));

    SurfaceLattice L39 = SurfaceLattice::rank1(39);
    auto mv39 = movable_rays(L39, MukaiVector(6, 1, 6), StabilityPoint{Rat(0), Rat(1)});
    REQUIRE(mv39.left.kind == MovableKind::PositiveConeBoundary);
    REQUIRE(mv39.right.kind == MovableKind::PositiveConeBoundary);

    auto nf = nef_rays(L1, MukaiVector(2, 1, -2), StabilityPoint{make_rat(Int(1), Int(4)), Rat(1)});
    REQUIRE(*nf.left.rational_cls == MukaiVector(-1, 1, 0));
    REQUIRE(*nf.right.rational_cls == MukaiVector(0, 1, 1));
    REQUIRE(QuadExt::compare(*nf.left.lambda, *nf.right.lambda) < 0);
}

TEST_CASE("rational boundary admits at most one class per small pairing") {
    // when nl is a perfect square and l >= 3, the pairing-k classes (k = 1, 2)
    // form at most one ray orbit on each check bound
    for (long l : {4, 9, 16}) {
        MukaiVector v(1, 0, Int(-l));
        for (int k : {1, 2}) {
            auto found = isotropic_with_pairing(L1, v, k, Int(60));
            REQUIRE(found.classes.size() <= 1);
        }
    }
}
