// Acceptance harness: prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. argv[1] must be the path to the wallkit binary
// (needed by the CLI determinism/format criterion).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "mukai/report.hpp"

using namespace mukai;
namespace {

int failures = 0;

void report(int num, const char* name, bool ok, const std::string& note = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << num << ": " << name;
    if (!note.empty()) std::cout << "  (" << note << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SurfaceLattice L1 = SurfaceLattice::rank1(1);
const MukaiVector V212{2, 1, -2};
const Window WIN{make_rat(Int(-11), Int(5)), make_rat(Int(16), Int(5)), make_rat(Int(1), Int(100)),
                 Rat(4)};

PellSolution chakravala(const Int& D) {
    Int a = isqrt(D), b = 1;
    if ((a + 1) * (a + 1) - D < D - a * a) a += 1;
    Int k = a * a - D;
    while (k != 1) {
        Int ak = abs(k);
        Int binv;
        mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), ak.get_mpz_t());
        Int m0 = ((-a * binv) % ak + ak) % ak;
        Int base = isqrt(D);
        Int m = m0 + ((base - m0) / ak) * ak;
        while (m < 0) m += ak;
        Int best = m, bestval = abs(m * m - D);
        for (Int cand = m + ak; cand <= base + ak; cand += ak)
            if (abs(cand * cand - D) < bestval) { best = cand; bestval = abs(cand * cand - D); }
        m = best;
        Int a2 = (a * m + D * b) / ak, b2 = (a + b * m) / ak;
        k = (m * m - D) / k;
        a = a2;
        b = b2;
    }
    return {abs(a), abs(b)};
}

// ---- criteria ----

void crit1_window_reproduction() {
    auto t0 = std::chrono::steady_clock::now();
    auto walls = enumerate_walls(L1, V212, WIN);
    double dt = seconds_since(t0);
    bool ok = walls.size() == 7 && dt < 5.0;
    bool line_ok = false, circ_s2_ok = false;
    std::set<std::pair<Rat, Rat>> circles;
    for (const Wall& w : walls) {
        if (auto* l = std::get_if<WallLine>(&w.geometry))
            line_ok = l->s0 == make_rat(Int(1), Int(2));
        else {
            auto& c = std::get<WallCircle>(w.geometry);
            circles.insert({c.center, c.radius2});
            // t^2 + s(s+2) = 0 <=> circle with center -1, radius^2 1
            if (c.center == -1 && c.radius2 == 1) circ_s2_ok = true;
        }
    }
    std::set<std::pair<Rat, Rat>> expect = {
        {Rat(-1), Rat(1)},
        {Rat(2), Rat(1)},
        {make_rat(Int(-2), Int(3)), make_rat(Int(1), Int(9))},
        {make_rat(Int(5), Int(3)), make_rat(Int(1), Int(9))},
        {make_rat(Int(-5), Int(8)), make_rat(Int(1), Int(64))},
        {make_rat(Int(13), Int(8)), make_rat(Int(1), Int(64))},
    };
    ok = ok && line_ok && circ_s2_ok && circles == expect;
    report(1, "seven-wall window reproduction", ok,
           "walls=" + std::to_string(walls.size()) + " time=" + std::to_string(dt) + "s");
}

void crit2_no_wall() {
    SurfaceLattice L39 = SurfaceLattice::rank1(39);
    MukaiVector v(6, 1, 6);
    auto we = walls_exist(L39, v);
    bool ok = we.kind == WallsExistKind::NoWallCertified;
    ok = ok && enumerate_walls(L39, v, WIN).empty();
    Window wide(Rat(-100), Rat(100), make_rat(Int(1), Int(10000)), Rat(100000));
    ok = ok && enumerate_walls(L39, v, wide).empty();
    report(2, "no-wall certificate for (6,1,6) at n=39", ok);
}

void crit3_pell() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    auto p5 = pell_fundamental(5);
    ok = ok && p5 && p5->x == 9 && p5->y == 4;
    auto p13 = pell_fundamental(13);
    ok = ok && p13 && p13->x == 649 && p13->y == 180;
    for (long d = 2; d <= 200 && ok; ++d) {
        Int D(d);
        if (is_square(D)) continue;
        auto cf = pell_fundamental(D);
        PellSolution ck = chakravala(D);
        ok = cf && cf->x == ck.x && cf->y == ck.y;
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    report(3, "Pell fundamental solutions vs oracle, D <= 200", ok,
           "time=" + std::to_string(dt) + "s");
}

void crit4_stabilizer() {
    bool ok = true;
    StabilizerGenerator s = stabilizer_generator(L1, V212);
    ok = s.g && s.g->a() == 5 && s.g->b() == 8 && s.g->c() == 8 && s.g->d() == 13;
    std::mt19937 rng(4040);
    int done = 0;
    while (done < 50 && ok) {
        long n = 1 + long(rng() % 6);
        auto pick = [&] { return Int(long(rng() % 19) - 9); };
        MukaiVector v{pick(), pick(), pick()};
        if (v.is_zero() || v.content() != 1) continue;
        SurfaceLattice L = SurfaceLattice::rank1(Int(n));
        Int sq = mukai_square(L, v);
        if (sq <= 0 || is_square(Int(n) * (sq / 2))) continue;
        StabilizerGenerator sg = stabilizer_generator(L, v);
        ok = !sg.finite && sg.g->epsilon() == 1 && act_on_mukai(L, v, *sg.g) == v;
        ++done;
    }
    report(4, "stabilizer generator fixes v (50 random) and frozen matrix", ok);
}

void crit5_identity() {
    std::mt19937 rng(5555);
    bool ok = true;
    int done = 0;
    while (done < 200 && ok) {
        long n = 1 + long(rng() % 4);
        SurfaceLattice L = SurfaceLattice::rank1(Int(n));
        auto pick = [&] { return Int(long(rng() % 13) - 6); };
        MukaiVector v{pick(), pick(), pick()}, v1{pick(), pick(), pick()};
        if (v.is_zero() || v1.is_zero() || mukai_square(L, v) <= 0) continue;
        Rat s = make_rat(Int(long(rng() % 17) - 8), Int(1 + rng() % 9));
        Rat t2 = make_rat(Int(1 + rng() % 11), Int(1 + rng() % 7));
        StabilityPoint p{s, t2};
        PerpLattice P(L, v);
        const MukaiVector& vn = P.v();
        Rat lhs = mukai_pairing(L, P.xi(p.s, p.t2), v1);
        Rat c = vn.r > 0 ? Rat(vn.r) : Rat(1);
        Rat det = wall_determinant(L, vn, v1, p);
        ok = lhs == c * det && ((lhs == 0) == (det == 0));
        ++done;
    }
    report(5, "xi pairing equals the wall determinant times the rank factor (200 random)", ok);
}

void crit6_boundary_isotropy() {
    std::mt19937 rng(6666);
    bool ok = true;
    int done = 0;
    while (done < 100 && ok) {
        long n = 1 + long(rng() % 5);
        SurfaceLattice L = SurfaceLattice::rank1(Int(n));
        auto pick = [&] { return Int(long(rng() % 15) - 7); };
        MukaiVector v{pick(), pick(), pick()};
        if (v.is_zero() || v.content() != 1 || mukai_square(L, v) <= 0) continue;
        PerpLattice P(L, v);
        if (P.v().r == 0) continue;
        for (const QuadExt& s : {P.s_minus(), P.s_plus()}) {
            auto xi = detail::xi_quadext(P, s);
            ok = ok && quadext_pairing(L, xi, xi).is_zero();
        }
        ++done;
    }
    report(6, "boundary classes xi(s±, 0) are isotropic (100 random)", ok);
}

void crit7_oracle_equivalence() {
    std::mt19937 rng(7777);
    bool ok = true;
    int done = 0;
    while (done < 20 && ok) {
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
        auto set_of = [](const std::vector<Wall>& ws) {
            std::set<std::tuple<Int, Int, Int>> out;
            for (const Wall& w : ws) out.insert({w.pqr.P, w.pqr.Q, w.pqr.R});
            return out;
        };
        ok = set_of(enumerate_walls(L, v, win)) == set_of(brute_force_walls(L, v, win, Int(40)));
        ++done;
    }
    report(7, "enumerate_walls matches brute force on 20 random instances", ok);
}

void crit8_trichotomy_hilbert() {
    bool ok = true;
    for (long l = 3; l <= 10 && ok; ++l) {
        MukaiVector v(1, 0, Int(-l));
        ok = trichotomy(L1, v).kase == 3 && hilbert_birational(L1, v).answer;
    }
    ok = ok && trichotomy(L1, V212).kase == 2 && !hilbert_birational(L1, V212).answer;
    SurfaceLattice L39 = SurfaceLattice::rank1(39);
    ok = ok && trichotomy(L39, MukaiVector(6, 1, 6)).kase == 1;
    report(8, "trichotomy and Hilbert-scheme birationality, frozen cases", ok);
}

void crit9_markman() {
    bool ok = true;
    // Hilbert-type vector: pairing-1 class d_u with div = 2l and {r,s} = {1,l}
    for (long l = 3; l <= 6 && ok; ++l) {
        MukaiVector v(1, 0, Int(-l));
        auto f = isotropic_with_pairing(L1, v, 1, Int(40));
        if (!f.exists) { ok = false; break; }
        ExceptionalData ed = exceptional_data(L1, v, *f.witness);
        MarkmanInvariants m = markman_classify(L1, ed.d_u, v);
        ok = m.div == 2 * l && m.r == 1 && m.s == l && m.spe;
    }
    // pairing-2 class on v = (2,1,-2): div = l = 5, {1,5}, spe
    auto f2 = isotropic_with_pairing(L1, V212, 2, Int(40));
    ok = ok && f2.exists;
    if (ok) {
        ExceptionalData ed = exceptional_data(L1, V212, *f2.witness);
        MarkmanInvariants m = markman_classify(L1, ed.d_u, V212);
        ok = m.div == 5 && m.r == 1 && m.s == 5 && m.spe && m.tag == SpeCase::Case2b;
    }
    report(9, "monodromy invariants of the d_u examples", ok);
}

void crit10_equivariance() {
    bool ok = true;
    StabilizerGenerator sg = stabilizer_generator(L1, V212);
    const GHatElement& g = *sg.g;
    auto walls = enumerate_walls(L1, V212, WIN);
    ok = walls.size() == 7;
    for (const Wall& w : walls) {
        // one exact rational point on the wall
        StabilityPoint p = [&] {
            if (auto* l = std::get_if<WallLine>(&w.geometry))
                return StabilityPoint{l->s0, Rat(7)};
            auto& c = std::get<WallCircle>(w.geometry);
            return StabilityPoint{c.center, c.radius2};  // top of the circle
        }();
        bool moved = false;
        for (const GHatElement& h : {g, g.inverse()}) {
            HalfPlanePoint q = halfplane_action(h, p.s, p.t2);
            // image wall defined by the transformed witness (covariant action)
            MukaiVector v1h = act_on_mukai(L1, w.witnesses.front(), h);
            if (on_wall(L1, V212, v1h, StabilityPoint{q.s, q.t2}) &&
                wall_candidate_check(L1, V212, v1h) && wall_nonempty(L1, V212, v1h))
                moved = true;
        }
        ok = ok && moved;
    }
    // fixed points solve r c s z^2 + r(a - d) z - b = 0; for this generator the
    // equation is z^2 - z - 1 = 0 with roots s± = (1 ± sqrt 5)/2
    PerpLattice P(L1, V212);
    for (const QuadExt& s : {P.s_minus(), P.s_plus()}) {
        QuadExt val = QuadExt(Int(g.r_split() * g.c() * g.s_split())) * s * s +
                      QuadExt(Int(g.r_split() * (g.a() - g.d()))) * s - QuadExt(Int(g.b()));
        ok = ok && val.is_zero();
    }
    report(10, "stabilizer half-plane action permutes walls; fixed points are s±", ok);
}

void crit11_reflections() {
    std::mt19937 rng(111111);
    bool ok = true;
    int done = 0;
    while (done < 100 && ok) {
        long n = 1 + long(rng() % 4);
        SurfaceLattice L = SurfaceLattice::rank1(Int(n));
        auto pick = [&] { return Int(long(rng() % 13) - 6); };
        MukaiVector v{pick(), pick(), pick()};
        if (v.is_zero() || v.content() != 1) continue;
        Int sq = mukai_square(L, v);
        if (sq < 6 || sq % 2 != 0) continue;
        int k = 1 + int(rng() % 2);
        auto f = isotropic_with_pairing(L, v, k, Int(20));
        if (!f.exists || f.witness->content() != 1) continue;
        ExceptionalData ed = exceptional_data(L, v, *f.witness);
        ok = ed.reflect(ed.d_u) == -ed.d_u;
        auto perp = [&](const MukaiVector& x) {
            return x * sq - v * mukai_pairing(L, x, v);
        };
        for (int j = 0; j < 3 && ok; ++j) {
            MukaiVector x = perp({pick(), pick(), pick()}), y = perp({pick(), pick(), pick()});
            MukaiVector rx = ed.reflect(x);
            ok = ed.reflect(rx) == x &&
                 mukai_pairing(L, rx, ed.reflect(y)) == mukai_pairing(L, x, y);
        }
        ++done;
    }
    report(11, "reflections are integral involutive isometries (100 random)", ok);
}

void crit12_cli(const std::string& wallkit) {
    auto run = [&](const std::string& args, const std::string& outfile) {
        std::string cmd = wallkit + " " + args + " > " + outfile + " 2>/dev/null";
        return std::system(cmd.c_str()) == 0;
    };
    auto slurp = [](const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    const char* tmp = std::getenv("TMPDIR");
    std::string dir = tmp && *tmp ? tmp : "/tmp";
    std::string j1 = dir + "/acc_w1.json", j2 = dir + "/acc_w2.json";
    std::string s1 = dir + "/acc_w1.svg", s2 = dir + "/acc_w2.svg";
    std::string args = "walls --n 1 --v 2,1,-2 --window -11/5:16/5,1/10:2";
    bool ok = run(args, j1) && run(args, j2);
    ok = ok && run(args + " --format svg", s1) && run(args + " --format svg", s2);
    std::string jt = slurp(j1), st = slurp(s1);
    ok = ok && !jt.empty() && jt == slurp(j2) && !st.empty() && st == slurp(s2);
    // no floating-point literals in JSON
    std::regex floatlit("[: ,\\[]-?[0-9]+\\.[0-9]");
    ok = ok && !std::regex_search(jt, floatlit);
    // exactly 7 wall path elements in the SVG
    size_t count = 0;
    for (size_t p = st.find("<path"); p != std::string::npos; p = st.find("<path", p + 1)) ++count;
    ok = ok && count == 7;
    report(12, "CLI determinism, exact JSON, and the seven-path SVG", ok,
           "paths=" + std::to_string(count));
}

}  // namespace

int main(int argc, char** argv) {
    std::cout << std::unitbuf;
    std::string wallkit = argc > 1 ? argv[1] : "./wallkit";
    crit1_window_reproduction();
    crit2_no_wall();
    crit3_pell();
    crit4_stabilizer();
    crit5_identity();
    crit6_boundary_isotropy();
    crit7_oracle_equivalence();
    crit8_trichotomy_hilbert();
    crit9_markman();
    crit10_equivariance();
    crit11_reflections();
    crit12_cli(wallkit);
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << "\n";
    return failures == 0 ? 0 : 1;
}
