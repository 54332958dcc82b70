#pragma once

// Wall atlas over a rational window of the (s, t) half plane: complete
// enumeration, brute-force oracle, wall-freeness certification, codimension
// classification, and chamber location.

#include "perp.hpp"
#include "sym2.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mukai {

enum class WallCodim { Codim0, Codim1, Higher };

struct WallClass {
    WallCodim codim = WallCodim::Higher;
    std::optional<MukaiVector> v1;  // isotropic class: pairing 1 (codim 0) or 2 (codim 1)
    std::optional<MukaiVector> v2;  // isotropic partner v - l*v1 (codim 0 only)
};

struct Wall {
    WallCoefficients pqr;
    WallGeometry geometry;
    std::vector<MukaiVector> witnesses;  // deduplicated, deterministic order
    WallClass codim;
};

// Deterministic witness order: small classes first.
inline bool witness_less(const MukaiVector& a, const MukaiVector& b) {
    auto key = [](const MukaiVector& x) {
        Int m = abs(x.r);
        for (const Int& c : x.c1) m = std::max(m, Int(abs(c)));
        m = std::max(m, Int(abs(x.a)));
        return m;
    };
    Int ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    if (a.r != b.r) return a.r < b.r;
    if (a.c1 != b.c1) return a.c1 < b.c1;
    return a.a < b.a;
}

// Exact rectangle / locus intersection.
inline bool geometry_meets_window(const WallGeometry& g, const Window& w) {
    if (std::holds_alternative<WallEmpty>(g)) return false;
    if (auto* ln = std::get_if<WallLine>(&g)) return w.s_lo <= ln->s0 && ln->s0 <= w.s_hi;
    const auto& c = std::get<WallCircle>(g);
    // t2 = g(s) = radius2 - (s - center)^2, concave in s.
    auto gs = [&](const Rat& s) -> Rat { return c.radius2 - (s - c.center) * (s - c.center); };
    Rat gmax = gs(c.center < w.s_lo ? w.s_lo : (c.center > w.s_hi ? w.s_hi : c.center));
    Rat gmin = std::min(gs(w.s_lo), gs(w.s_hi));
    return gmax >= w.t2_lo && gmin <= w.t2_hi;
}

// Numerical wall-codimension classification: the wall plane span(v, v1)
// contains an isotropic class pairing 1 with v (codim 0, v = l*v1' + v2'),
// else a primitive isotropic class pairing 2 (codim 1), else Higher. The
// rational isotropic lines of the plane are computed exactly from the
// discriminant <v,v1>^2 - <v1^2><v^2>, so no witness scan can miss a class.
inline WallClass classify_wall(const SurfaceLattice& L, const MukaiVector& v,
                               const MukaiVector& v1) {
    Int k = mukai_pairing(L, v, v1);
    Int A = mukai_square(L, v1);
    Int C = mukai_square(L, v);
    Int disc = k * k - A * C;
    if (disc <= 0) throw std::invalid_argument("classify_wall: class does not define a nonempty wall");
    WallClass out;
    if (!is_square(disc)) return out;  // irrational isotropic lines: Higher
    Int sd = isqrt(disc);
    std::vector<std::pair<Int, Int>> lines;  // w = x*v1 + y*v
    if (A != 0) {
        lines.emplace_back(-k + sd, A);
        lines.emplace_back(-k - sd, A);
    } else {
        lines.emplace_back(1, 0);
        lines.emplace_back(C, -2 * k);
    }
    std::vector<std::pair<Int, MukaiVector>> iso;
    for (const auto& [x, y] : lines) {
        MukaiVector w = v1 * x + v * y;
        if (w.is_zero()) continue;
        w = primitive_part(w);
        if (mukai_square(L, w) != 0) throw std::logic_error("classify_wall: isotropic line broke");
        Int m = mukai_pairing(L, v, w);
        if (m < 0) { w = -w; m = -m; }
        if (m != 0) iso.emplace_back(m, w);
    }
    for (const auto& [m, w] : iso)
        if (m == 1) {
            out.codim = WallCodim::Codim0;
            out.v1 = w;
            out.v2 = v - w * (C / 2);
            if (mukai_square(L, *out.v2) != 0)
                throw std::logic_error("classify_wall: partner not isotropic");
            return out;
        }
    for (const auto& [m, w] : iso)
        if (m == 2) {
            out.codim = WallCodim::Codim1;
            out.v1 = w;
            return out;
        }
    return out;
}

namespace detail {

struct WallAccum {
    std::map<WallCoefficients, Wall> by_key;

    void add(const SurfaceLattice& L, const MukaiVector& v, const MukaiVector& v1,
             const std::optional<Window>& win) {
        if (!wall_candidate_check(L, v, v1)) return;
        if (!wall_nonempty(L, v, v1)) return;
        WallCoefficients co = wall_coefficients_rank1(L, v, v1);
        WallGeometry geo = wall_geometry_from_coefficients(co);
        if (std::holds_alternative<WallEmpty>(geo)) return;
        if (win && !geometry_meets_window(geo, *win)) return;
        auto it = by_key.find(co);
        if (it == by_key.end()) {
            Wall w{co, geo, {v1}, classify_wall(L, v, v1)};
            by_key.emplace(co, std::move(w));
        } else {
            auto& ws = it->second.witnesses;
            auto pos = std::lower_bound(ws.begin(), ws.end(), v1, witness_less);
            if (pos == ws.end() || !(*pos == v1)) ws.insert(pos, v1);
        }
    }

    std::vector<Wall> finish() && {
        std::vector<Wall> out;
        out.reserve(by_key.size());
        for (auto& [k, w] : by_key) {
            std::sort(w.witnesses.begin(), w.witnesses.end(), witness_less);
            out.push_back(std::move(w));
        }
        return out;  // map iteration is already (P,Q,R)-lexicographic
    }
};

inline void check_enumeration_input(const SurfaceLattice& L, const MukaiVector& v) {
    if (!L.is_rank1()) throw std::domain_error("walls: rank-one lattice only");
    if (mukai_square(L, v) <= 0) throw std::invalid_argument("walls: need <v^2> > 0");
    if (v.content() != 1) throw std::invalid_argument("walls: v must be primitive");
}

// Does y sit (weakly) before / after every ray of the window image?
// side = -1: lambda(y) <= lambda(xi(p)) for all p in win; side = +1: >=.
// Exact via the quadratic-separable determinant polynomial.
inline bool brackets_window_side(const PerpLattice& P, const Window& win, const RayVec& y,
                                 int side) {
    auto [pa, pb] = P.xi_coords_polys();
    QuadPoly g{Rat(y.alpha * pb.c2 - y.beta * pa.c2), Rat(y.alpha * pb.c1 - y.beta * pa.c1),
               Rat(y.alpha * pb.c0 - y.beta * pa.c0)};
    auto [lo, hi] = g.range(win);
    // Need kappa * det2(y, xi(p)) of sign -side everywhere.
    bool nonneg = P.orientation() > 0 ? lo >= 0 : hi <= 0;   // lambda(y) >= all
    bool nonpos = P.orientation() > 0 ? hi <= 0 : lo >= 0;   // lambda(y) <= all
    return side < 0 ? nonpos : nonneg;
}

// A rational ray strictly between the window image and the boundary end on
// the given side, staying within a factor ~2 of the true gap (so the
// subsequent enumeration bound stays proportional to the actual wall count).
// Candidates are pencil rays xi(lambda, 0), bisected from the pencil center
// toward the boundary.
inline RayVec bracket_side(const PerpLattice& P, const Window& win, int side) {
    const MukaiVector& v = P.v();
    bool r0 = v.r == 0;
    Rat anchor = r0 ? Rat(P.s_zero() + 1) : make_rat(v.d(), v.r);
    auto accept = [&](const Rat& lam) -> std::optional<RayVec> {
        if (!P.lambda_interior(QuadExt(lam))) return std::nullopt;
        RayVec y = P.xi_ray(lam, 0);
        if (!brackets_window_side(P, win, y, side)) return std::nullopt;
        return y;
    };
    if (r0 && side > 0) {
        // Unbounded pencil interval on the right; march outward.
        Rat step = 1;
        for (int j = 0; j < 512; ++j, step *= 2)
            if (auto y = accept(anchor + step)) return *y;
        throw std::logic_error("bracket_side: window image unbounded on the right");
    }
    for (unsigned fprec : {16u, 32u, 64u, 128u, 256u}) {
        // Rational point at (or just past) the boundary end.
        Rat fl = r0 ? P.s_zero()
                    : Rat(anchor + Rat(side) * sqrt_upper(Rat(P.n() * P.ell()), fprec) /
                                       Rat(v.r * P.n()));
        Rat gap = anchor - fl;
        Rat frac(1);
        for (unsigned j = 1; j <= fprec + 16; ++j) {
            frac /= 2;
            if (auto y = accept(Rat(fl + gap * frac))) return *y;
        }
    }
    throw std::logic_error("bracket_side: no bracket found");
}

// Snug bracket rays y1 <= y2 (lambda order) whose cone contains the image of
// the window in the ray space of P+(v-perp).
inline std::pair<RayVec, RayVec> bracket_window(const PerpLattice& P, const Window& win) {
    return {bracket_side(P, win, -1), bracket_side(P, win, 1)};
}

// Expand eta candidates into wall witnesses v1 = (eta + k v)/<v^2>.
template <typename F>
inline void etas_to_witnesses(const PerpLattice& P, const std::vector<RayVec>& etas, F&& emit) {
    const MukaiVector& v = P.v();
    const Int& vsq = P.vsq();
    for (const RayVec& e : etas) {
        MukaiVector eta = P.embed(e);
        for (Int k = 1; k < vsq; ++k) {
            MukaiVector w = eta + v * k;
            bool integral = w.r % vsq == 0 && w.a % vsq == 0;
            for (const Int& c : w.c1) integral = integral && c % vsq == 0;
            if (!integral) continue;
            std::vector<Int> c1;
            for (const Int& c : w.c1) c1.push_back(c / vsq);
            emit(MukaiVector(w.r / vsq, std::move(c1), w.a / vsq));
        }
    }
}

}  // namespace detail

// Every wall meeting the window, with all witnesses of eta-norm at most
// <v^2>^3 (which includes every witness class up to the wall's defining
// proportionality), deduplicated by the primitive (P,Q,R) key.
inline std::vector<Wall> enumerate_walls(const SurfaceLattice& L, const MukaiVector& v_in,
                                         const Window& win) {
    detail::check_enumeration_input(L, v_in);
    PerpLattice P(L, v_in);
    const MukaiVector& v = P.v();
    Int N = P.vsq() * P.vsq() * P.vsq();
    RayVec y1{0, 0}, y2{0, 0};
    if (P.boundary_rational()) {
        std::tie(y1, y2) = P.exact_boundary_rays();
    } else {
        std::tie(y1, y2) = detail::bracket_window(P, win);
    }
    detail::WallAccum acc;
    detail::etas_to_witnesses(P, P.enumerate_negative_in_cone(y1, y2, N),
                              [&](MukaiVector v1) { acc.add(L, v, v1, win); });
    return std::move(acc).finish();
}

// Independent oracle: scan every class with |r1|, |d1|, |a1| <= bound.
inline std::vector<Wall> brute_force_walls(const SurfaceLattice& L, const MukaiVector& v_in,
                                           const Window& win, const Int& bound) {
    detail::check_enumeration_input(L, v_in);
    PerpLattice P(L, v_in);  // reuse the sign normalization
    const MukaiVector& v = P.v();
    detail::WallAccum acc;
    for (Int r1 = -bound; r1 <= bound; ++r1)
        for (Int d1 = -bound; d1 <= bound; ++d1)
            for (Int a1 = -bound; a1 <= bound; ++a1) acc.add(L, v, MukaiVector(r1, d1, a1), win);
    return std::move(acc).finish();
}

enum class WallsExistKind { NoWallCertified, WallFound, Undecided };

struct WallsExistResult {
    WallsExistKind kind;
    std::optional<MukaiVector> witness;  // WallFound
    Int pairing_gcd;                     // gcd of the pairing-value ideal <v, .>
    Int bound;                           // searched box (Undecided / WallFound)
};

inline Int default_walls_bound(const SurfaceLattice& L, const MukaiVector& v) {
    return 10 * mukai_square(L, v);
}

// Wall existence anywhere in the half plane. The certificate is divisibility:
// every pairing <v, x> is a multiple of g = gcd(r, 2nd, a), and walls need
// 0 < <v,v1> < <v^2>; so g >= <v^2> certifies wall-freeness. Otherwise a
// bounded deterministic search (ascending max-norm shells, lexicographic
// within a shell) looks for a witness.
inline WallsExistResult walls_exist(const SurfaceLattice& L, const MukaiVector& v_in,
                                    std::optional<Int> bound_opt = std::nullopt) {
    detail::check_enumeration_input(L, v_in);
    PerpLattice P(L, v_in);
    const MukaiVector& v = P.v();
    Int vsq = P.vsq();
    Int g = igcd(v.r, 2 * P.n() * v.d(), v.a);
    if (g >= vsq) return {WallsExistKind::NoWallCertified, std::nullopt, g, 0};
    Int bound = bound_opt ? *bound_opt : default_walls_bound(L, v);

    auto ok = [&](const MukaiVector& v1) {
        return wall_candidate_check(L, v, v1) && wall_nonempty(L, v, v1);
    };
    bool fits64 = P.n() < (1 << 20) && bound < (1 << 20) && abs(v.r) < (1 << 20) &&
                  abs(v.d()) < (1 << 20) && abs(v.a) < (1 << 20);
    if (fits64) {
        // Same shell scan in machine integers (products stay far below 2^63).
        int64_t n = P.n().get_si(), r = v.r.get_si(), d = v.d().get_si(), a = v.a.get_si();
        int64_t B = bound.get_si(), C = vsq.get_si();
        auto fast_ok = [&](int64_t r1, int64_t d1, int64_t a1) {
            int64_t k = 2 * n * d * d1 - r * a1 - a * r1;
            if (k <= 0 || k >= C) return false;
            int64_t s1 = 2 * n * d1 * d1 - 2 * r1 * a1;
            if (s1 < 0) return false;
            int64_t s2 = 2 * n * (d - d1) * (d - d1) - 2 * (r - r1) * (a - a1);
            if (s2 < 0) return false;
            if (k - s1 <= 0) return false;           // <v1, v - v1> > 0
            if (k * k <= s1 * C) return false;       // nonempty locus
            return true;
        };
        // Ascending max-norm shells, lexicographic within a shell: for inner
        // (r1, d1) the last coordinate only needs the two new values +-R.
        for (int64_t R = 1; R <= B; ++R)
            for (int64_t r1 = -R; r1 <= R; ++r1) {
                bool face_r = r1 == -R || r1 == R;
                for (int64_t d1 = -R; d1 <= R; ++d1) {
                    bool face = face_r || d1 == -R || d1 == R;
                    for (int64_t a1 = -R; a1 <= R; face ? ++a1 : a1 += 2 * R) {
                        if (!fast_ok(r1, d1, a1)) continue;
                        MukaiVector v1{Int(r1), Int(d1), Int(a1)};
                        if (ok(v1)) return {WallsExistKind::WallFound, v1, g, Int(R)};
                    }
                }
            }
    } else {
        for (Int R = 1; R <= bound; ++R)
            for (Int r1 = -R; r1 <= R; ++r1) {
                bool face_r = r1 == -R || r1 == R;
                for (Int d1 = -R; d1 <= R; ++d1) {
                    bool face = face_r || d1 == -R || d1 == R;
                    for (Int a1 = -R; a1 <= R; face ? ++a1 : a1 += 2 * R) {
                        MukaiVector v1(r1, d1, a1);
                        if (ok(v1)) return {WallsExistKind::WallFound, v1, g, R};
                    }
                }
            }
    }
    return {WallsExistKind::Undecided, std::nullopt, g, bound};
}

// Thrown when a bounded search cannot certify either outcome.
struct UndecidedError : std::runtime_error {
    Int bound;
    explicit UndecidedError(const Int& b)
        : std::runtime_error("undecided after bounded search up to " + b.get_str()), bound(b) {}
};

// Thrown by locate_chamber when the probe point sits on a wall.
struct OnWallError : std::runtime_error {
    WallCoefficients pqr;
    MukaiVector witness;
    OnWallError(WallCoefficients c, MukaiVector w)
        : std::runtime_error("stability point lies on the wall of " + w.str()),
          pqr(std::move(c)),
          witness(std::move(w)) {}
};

struct ChamberSide {
    bool boundary = false;          // no wall before the boundary ray
    std::optional<Wall> wall;       // adjacent wall otherwise
};

struct ChamberDescriptor {
    ChamberSide left, right;  // left: smaller pencil parameter (s- end)
};

namespace detail {

// All walls with <eta^2> >= -N and ray inside cone(y1, y2), as a WallAccum.
inline std::vector<Wall> walls_in_cone(const PerpLattice& P, const RayVec& y1, const RayVec& y2,
                                       const Int& N) {
    WallAccum acc;
    etas_to_witnesses(P, P.enumerate_negative_in_cone(y1, y2, N),
                      [&](MukaiVector v1) { acc.add(P.lattice(), P.v(), v1, std::nullopt); });
    return std::move(acc).finish();
}

inline RayVec wall_ray(const PerpLattice& P, const MukaiVector& v1) {
    MukaiVector eta = v1 * P.vsq() - P.v() * mukai_pairing(P.lattice(), P.v(), v1);
    auto c = P.coords(eta);
    if (!c) throw std::logic_error("wall_ray: eta not in v-perp");
    return P.perp_ray(*c);
}

}  // namespace detail

// The chamber containing p: adjacent wall (or boundary ray) on each side,
// ordered by the pencil parameter. Exact; throws OnWallError if p lies on a
// wall and UndecidedError if wall existence cannot be decided within bound.
inline ChamberDescriptor locate_chamber(const SurfaceLattice& L, const MukaiVector& v_in,
                                        const StabilityPoint& p,
                                        std::optional<Int> bound_opt = std::nullopt) {
    detail::check_enumeration_input(L, v_in);
    PerpLattice P(L, v_in);
    const MukaiVector& v = P.v();
    Int N = P.vsq() * P.vsq() * P.vsq();
    RayVec x0 = P.xi_ray(p.s, p.t2);

    auto pick_sides = [&](const std::vector<Wall>& walls) -> ChamberDescriptor {
        std::optional<Wall> left, right;
        std::optional<RayVec> left_ray, right_ray;
        for (const Wall& w : walls) {
            RayVec rw = detail::wall_ray(P, w.witnesses.front());
            int o = P.lambda_order(rw, x0);
            if (o == 0) throw OnWallError(w.pqr, w.witnesses.front());
            if (o < 0) {
                if (!left || P.lambda_order(rw, *left_ray) > 0) { left = w; left_ray = rw; }
            } else {
                if (!right || P.lambda_order(rw, *right_ray) < 0) { right = w; right_ray = rw; }
            }
        }
        ChamberDescriptor out;
        out.left = left ? ChamberSide{false, left} : ChamberSide{true, std::nullopt};
        out.right = right ? ChamberSide{false, right} : ChamberSide{true, std::nullopt};
        return out;
    };

    if (P.boundary_rational()) {
        auto [y1, y2] = P.exact_boundary_rays();
        return pick_sides(detail::walls_in_cone(P, y1, y2, N));
    }

    WallsExistResult we = walls_exist(L, v, bound_opt);
    if (we.kind == WallsExistKind::NoWallCertified) return {{true, {}}, {true, {}}};
    if (we.kind == WallsExistKind::Undecided) throw UndecidedError(we.bound);

    // Non-square n*l with at least one wall: the stabilizer orbit of the
    // witness accumulates at both boundary rays, so marching the witness with
    // g (or its inverse) eventually brackets x0 on each side.
    StabilizerGenerator sg = stabilizer_generator(L, v);
    if (sg.finite || !sg.g) throw std::logic_error("locate_chamber: expected infinite stabilizer");
    const GHatElement& g = *sg.g;
    if (act_on_mukai(L, v, g) != v) throw std::logic_error("locate_chamber: generator does not fix v");

    auto march_past = [&](int side) -> MukaiVector {
        // Find an orbit element of the witness whose wall ray is strictly on
        // the given side of x0 (side < 0: smaller lambda).
        MukaiVector w = *we.witness;
        RayVec rw = detail::wall_ray(P, w);
        if (P.lambda_order(rw, x0) == 0) {
            WallCoefficients co = wall_coefficients_rank1(L, v, w);
            throw OnWallError(co, w);
        }
        // Direction of travel of wall rays under g.
        MukaiVector wg = act_on_mukai(L, w, g);
        int dir = P.lambda_order(detail::wall_ray(P, wg), rw);
        if (dir == 0) throw std::logic_error("locate_chamber: orbit stalled");
        GHatElement step = (dir < 0) == (side < 0) ? g : g.inverse();
        for (int i = 0; i < 4096; ++i) {
            int o = P.lambda_order(detail::wall_ray(P, w), x0);
            if (o == 0) {
                WallCoefficients co = wall_coefficients_rank1(L, v, w);
                throw OnWallError(co, w);
            }
            if ((o < 0) == (side < 0)) return w;
            w = act_on_mukai(L, w, step);
        }
        throw std::logic_error("locate_chamber: orbit failed to pass the probe ray");
    };

    MukaiVector wl = march_past(-1), wr = march_past(1);
    RayVec yl = detail::wall_ray(P, wl), yr = detail::wall_ray(P, wr);
    return pick_sides(detail::walls_in_cone(P, yl, yr, N));
}

}  // namespace mukai
