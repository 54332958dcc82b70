#pragma once

#include <array>
#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mukai/atlas.hpp"
#include "mukai/forms.hpp"
#include "mukai/quadext.hpp"

namespace mukai {

// Rays of the positive cone of v-perp: chamber/wall rays are rational,
// boundary rays live in Q(sqrt(n*l)).

enum class RayKind { WallRay, BoundaryRay };

struct ConeRay {
    RayKind kind = RayKind::WallRay;
    std::array<QuadExt, 3> cls{};             // (r, d, a) components, exact
    std::optional<MukaiVector> rational_cls;  // primitive representative when the ray is rational
    std::optional<QuadExt> lambda;            // pencil parameter of the ray (absent for the
                                              // unbounded end of a rank-zero pencil)
};

inline QuadExt quadext_pairing(const SurfaceLattice& L, const std::array<QuadExt, 3>& x,
                               const std::array<QuadExt, 3>& y) {
    if (!L.is_rank1()) throw std::domain_error("quadext_pairing: rank-one lattice only");
    return QuadExt(Int(2 * L.n())) * x[1] * y[1] - x[0] * y[2] - y[0] * x[2];
}

inline std::array<QuadExt, 3> quadext_class(const MukaiVector& m) {
    return {QuadExt(m.r), QuadExt(m.d()), QuadExt(m.a)};
}

namespace detail {

// xi(s, 0) with s in Q(sqrt(n*l)) — the scaled rank-one formula lifted to the
// quadratic extension (r > 0 after normalization).
inline std::array<QuadExt, 3> xi_quadext(const PerpLattice& P, const QuadExt& s) {
    const MukaiVector& v = P.v();
    QuadExt n(P.n()), r(v.r), d(v.d()), a(v.a);
    QuadExt sigma = s * s;
    QuadExt two(2);
    if (v.r != 0) {
        QuadExt lin = d - r * s;          // d - r s
        QuadExt quad = r * n * sigma - a; // r n s^2 - a
        return {-(two * n * r * lin), r * quad, two * d * n * quad + two * n * a * lin};
    }
    return {-(two * n * d), -a, two * n * (n * d * sigma - s * a)};
}

inline ConeRay rational_cone_ray(const PerpLattice& P, const RayVec& y, RayKind kind) {
    ConeRay out;
    out.kind = kind;
    MukaiVector m = primitive_part(P.embed(y));
    out.rational_cls = m;
    out.cls = quadext_class(m);
    return out;
}

// The boundary ray of P+(v-perp) at the given end (side < 0: the s- end).
inline ConeRay boundary_cone_ray(const PerpLattice& P, int side) {
    if (P.boundary_rational()) {
        auto [y1, y2] = P.exact_boundary_rays();
        ConeRay out = rational_cone_ray(P, side < 0 ? y1 : y2, RayKind::BoundaryRay);
        if (P.v().r != 0) out.lambda = side < 0 ? P.s_minus() : P.s_plus();
        else if (side < 0) out.lambda = QuadExt(P.s_zero());
        return out;
    }
    ConeRay out;
    out.kind = RayKind::BoundaryRay;
    QuadExt s = side < 0 ? P.s_minus() : P.s_plus();  // r > 0: irrational boundary
    out.cls = xi_quadext(P, s);
    out.lambda = s;
    return out;
}

inline ConeRay wall_cone_ray(const PerpLattice& P, const MukaiVector& v1) {
    ConeRay out = rational_cone_ray(P, wall_ray(P, v1), RayKind::WallRay);
    out.lambda = P.wall_lambda(wall_coefficients_rank1(P.lattice(), P.v(), v1));
    return out;
}

inline std::optional<MukaiVector> div_exact(const MukaiVector& x, const Int& m) {
    if (x.r % m != 0 || x.d() % m != 0 || x.a % m != 0) return std::nullopt;
    return MukaiVector(Int(x.r / m), Int(x.d() / m), Int(x.a / m));
}

}  // namespace detail

// --- xi and the cone boundary ------------------------------------------------

// Scaled representative of xi at a rank-one stability point; orthogonal to v,
// interior to P+(v-perp) for t2 > 0.
inline RationalMukaiVector xi_vector(const SurfaceLattice& L, const MukaiVector& v,
                                     const StabilityPoint& p) {
    PerpLattice P(L, v);
    return P.xi(p.s, p.t2);
}

struct BoundaryRays {
    QuadExt s_minus, s_plus;
    bool rational = false;   // n*l a perfect square: rays rational (Lagrangian classes)
    ConeRay minus, plus;
};

inline BoundaryRays boundary_rays(const SurfaceLattice& L, const MukaiVector& v) {
    if (v.r == 0) throw std::domain_error("boundary_rays: r != 0 required (twist first)");
    PerpLattice P(L, v);
    BoundaryRays out;
    out.s_minus = P.s_minus();
    out.s_plus = P.s_plus();
    out.rational = P.boundary_rational();
    out.minus = detail::boundary_cone_ray(P, -1);
    out.plus = detail::boundary_cone_ray(P, +1);
    return out;
}

// --- isotropic classes with prescribed pairing --------------------------------

struct IsotropicSearch {
    bool exists = false;                // exact decision, independent of the bound
    std::optional<MukaiVector> witness; // one certifying class when exists
    std::vector<MukaiVector> classes;   // primitive classes with max |entry| <= bound
};

// Primitive isotropic w with <v,w> = k, for k in {0,1,2}. Existence is exact:
// positive isotropic classes are (p^2 r1, pq, q^2 r2) over factorizations
// n = r1 r2, so the pairing values are the values of the indefinite forms
// F(p,q) = -a r1 p^2 + 2nd pq - r r2 q^2 (plus the degenerate (0,0,-+1) with
// pairing +-r); k = 0 reduces to rationality of the cone boundary.
inline IsotropicSearch isotropic_with_pairing(const SurfaceLattice& L, const MukaiVector& v,
                                              const Int& k, const Int& bound = 100) {
    if (!L.is_rank1()) throw std::domain_error("isotropic_with_pairing: rank-one lattice only");
    if (k < 0 || k > 2) throw std::invalid_argument("isotropic_with_pairing: k must be 0, 1 or 2");
    if (v.content() != 1) throw std::invalid_argument("isotropic_with_pairing: v must be primitive");
    if (mukai_square(L, v) <= 0)
        throw std::invalid_argument("isotropic_with_pairing: need <v^2> > 0");
    Int n = L.n();
    IsotropicSearch out;

    if (k == 0) {
        PerpLattice P(L, v);
        out.exists = P.boundary_rational();
        if (out.exists) {
            auto [y1, y2] = P.exact_boundary_rays();
            out.witness = primitive_part(P.embed(y1));
            (void)y2;
        }
    } else {
        for (Int r1 = 1; r1 * r1 <= n; ++r1) {
            if (n % r1 != 0) continue;
            for (const Int& ra : {Int(r1), Int(n / r1)}) {
                Int rb = n / ra;
                BinaryForm F{-v.a * ra, 2 * n * v.d(), -v.r * rb};
                for (const Int& m : {Int(k), Int(-k)}) {
                    auto pq = represent(F, m);
                    if (!pq) continue;
                    MukaiVector w0(Int(pq->first * pq->first * ra), Int(pq->first * pq->second),
                                   Int(pq->second * pq->second * rb));
                    MukaiVector w = m > 0 ? w0 : -w0;
                    if (mukai_pairing(L, v, w) != k) throw std::logic_error("isotropic_with_pairing: witness pairing mismatch");
                    out.exists = true;
                    if (!out.witness) out.witness = w;
                }
                if (ra == rb) break;
            }
        }
        if (!out.exists && abs(v.r) == k) {  // degenerate family, already covered by the forms
            out.exists = true;
            out.witness = MukaiVector(Int(0), Int(0), Int(v.r > 0 ? -1 : 1));
        }
    }

    // Bounded class list, brute over the parametrization.
    for (Int r1 = 1; r1 <= n; ++r1) {
        if (n % r1 != 0) continue;
        Int r2 = n / r1;
        Int pmax = isqrt(bound / r1), qmax = isqrt(bound / r2);
        for (Int p = 0; p <= pmax; ++p)
            for (Int q = -qmax; q <= qmax; ++q) {
                if (p == 0 && q <= 0) continue;
                MukaiVector w0(Int(p * p * r1), Int(p * q), Int(q * q * r2));
                if (abs(w0.d()) > bound || w0.content() != 1) continue;
                for (const MukaiVector& w : {w0, -w0})
                    if (mukai_pairing(L, v, w) == k) out.classes.push_back(w);
            }
    }
    std::sort(out.classes.begin(), out.classes.end(), witness_less);
    out.classes.erase(std::unique(out.classes.begin(), out.classes.end()), out.classes.end());
    if (out.exists && !out.witness && !out.classes.empty()) out.witness = out.classes.front();
    return out;
}

// --- trichotomy ----------------------------------------------------------------

struct TrichotomyResult {
    int kase = 1;       // 1, 2, or 3
    int min_pairing = 3;  // 3 means ">= 3"
    std::optional<MukaiVector> witness;   // isotropic class of minimal pairing (cases 2, 3)
    std::optional<Int> gcd_certificate;   // case 1: gcd(r, 2nd, a) when >= 3
};

inline TrichotomyResult trichotomy(const SurfaceLattice& L, const MukaiVector& v,
                                   const Int& bound = 100) {
    if (!L.is_rank1()) throw std::domain_error("trichotomy: rank-one lattice only");
    if (v.content() != 1) throw std::invalid_argument("trichotomy: v must be primitive");
    if (mukai_square(L, v) < 6) throw std::invalid_argument("trichotomy: need <v^2> >= 6");
    TrichotomyResult out;
    IsotropicSearch one = isotropic_with_pairing(L, v, 1, bound);
    if (one.exists) {
        out.kase = 3;
        out.min_pairing = 1;
        out.witness = one.witness;
        return out;
    }
    IsotropicSearch two = isotropic_with_pairing(L, v, 2, bound);
    if (two.exists) {
        out.kase = 2;
        out.min_pairing = 2;
        out.witness = two.witness;
        return out;
    }
    out.kase = 1;
    out.min_pairing = 3;
    Int g = igcd(igcd(v.r, 2 * L.n() * v.d()), v.a);
    if (g >= 3) out.gcd_certificate = g;  // otherwise certified by non-representation above
    return out;
}

// --- exceptional classes and reflections ----------------------------------------

struct ExceptionalData {
    SurfaceLattice L;
    MukaiVector u;    // primitive isotropic, <v,u> = pairing
    Int pairing;      // 1 or 2
    MukaiVector d_u;  // v - (<v^2>/pairing) u, square -<v^2>

    // Reflection of v-perp in d_u: fixes the d_u-orthogonal part, negates d_u.
    MukaiVector reflect(const MukaiVector& x) const {
        Int t = 2 * mukai_pairing(L, x, u);
        return x - d_u * Int(t / pairing);
    }
};

inline ExceptionalData exceptional_data(const SurfaceLattice& L, const MukaiVector& v,
                                        const MukaiVector& u) {
    if (!L.is_rank1()) throw std::domain_error("exceptional_data: rank-one lattice only");
    if (v.content() != 1 || u.content() != 1)
        throw std::invalid_argument("exceptional_data: v and u must be primitive");
    if (mukai_square(L, u) != 0) throw std::invalid_argument("exceptional_data: u must be isotropic");
    Int k = mukai_pairing(L, v, u);
    if (k != 1 && k != 2) throw std::invalid_argument("exceptional_data: <v,u> must be 1 or 2");
    Int vsq = mukai_square(L, v);
    MukaiVector d_u = v - u * Int(vsq / k);
    if (mukai_square(L, d_u) != -vsq) throw std::logic_error("exceptional_data: wrong square of d_u");
    if (d_u.content() != 1) throw std::logic_error("exceptional_data: d_u not primitive");
    return ExceptionalData{L, u, k, d_u};
}

// --- movable cone ----------------------------------------------------------------

enum class MovableKind { IsotropicPairing1, IsotropicPairing2, PositiveConeBoundary };

struct MovableSide {
    MovableKind kind = MovableKind::PositiveConeBoundary;
    ConeRay ray;
    std::optional<MukaiVector> u;  // the isotropic class cutting this side
};

struct MovableRays {
    MovableSide left, right;  // left: smaller pencil parameter
    TrichotomyResult tri;
};

// The component of P+(v-perp) minus the hyperplanes u-perp (u isotropic with
// pairing 1 or 2) containing xi(basepoint). Each u cuts v-perp along the ray
// orthogonal to d_u, so candidates are integer classes eta in v-perp with
// <eta^2> = -<v^2> for which u = (v - eta) k / <v^2> is integral and
// primitive; bracketing mirrors locate_chamber (exact boundary rays when the
// boundary is rational, stabilizer-orbit marching of a witness otherwise).
inline MovableRays movable_rays(const SurfaceLattice& L, const MukaiVector& v_in,
                                const StabilityPoint& basepoint, const Int& bound = 100) {
    detail::check_enumeration_input(L, v_in);
    PerpLattice P(L, v_in);
    const MukaiVector& v = P.v();
    Int vsq = P.vsq();

    MovableRays out;
    out.tri = trichotomy(L, v, bound);
    if (out.tri.kase == 1) {
        out.left = {MovableKind::PositiveConeBoundary, detail::boundary_cone_ray(P, -1), std::nullopt};
        out.right = {MovableKind::PositiveConeBoundary, detail::boundary_cone_ray(P, +1), std::nullopt};
        return out;
    }

    RayVec x0 = P.xi_ray(basepoint.s, basepoint.t2);
    // u recovered from a candidate eta (= d_u up to sign) when the division is
    // integral; the pairing <v,u> = k and isotropy of u are then automatic.
    auto u_from_eta = [&](const RayVec& eta) -> std::optional<std::pair<MukaiVector, int>> {
        if (P.form(eta) != -vsq) return std::nullopt;
        MukaiVector E = P.embed(eta);
        for (int k : {1, 2}) {
            auto u = detail::div_exact((v - E) * Int(k), vsq);
            if (u && u->content() == 1) return std::make_pair(*u, k);
        }
        return std::nullopt;
    };

    MukaiVector u0 = *out.tri.witness;
    RayVec y1, y2;
    if (P.boundary_rational()) {
        std::tie(y1, y2) = P.exact_boundary_rays();
    } else {
        StabilizerGenerator sg = stabilizer_generator(L, v);
        if (sg.finite || !sg.g) throw std::logic_error("movable_rays: expected infinite stabilizer");
        const GHatElement& g = *sg.g;
        auto march_past = [&](int side) -> RayVec {
            MukaiVector w = u0;
            RayVec rw = detail::wall_ray(P, w);
            if (P.lambda_order(rw, x0) == 0)
                throw OnWallError(wall_coefficients_rank1(L, v, w), w);
            MukaiVector wg = act_on_mukai(L, w, g);
            int dir = P.lambda_order(detail::wall_ray(P, wg), rw);
            if (dir == 0) throw std::logic_error("movable_rays: orbit stalled");
            GHatElement step = (dir < 0) == (side < 0) ? g : g.inverse();
            for (int i = 0; i < 4096; ++i) {
                RayVec cur = detail::wall_ray(P, w);
                int o = P.lambda_order(cur, x0);
                if (o == 0) throw OnWallError(wall_coefficients_rank1(L, v, w), w);
                if ((o < 0) == (side < 0)) return cur;
                w = act_on_mukai(L, w, step);
            }
            throw std::logic_error("movable_rays: orbit failed to pass the probe ray");
        };
        y1 = march_past(-1);
        y2 = march_past(1);
    }

    std::optional<std::pair<MukaiVector, int>> left, right;
    std::optional<RayVec> left_ray, right_ray;
    for (const RayVec& eta : P.enumerate_negative_in_cone(y1, y2, vsq)) {
        auto uk = u_from_eta(eta);
        if (!uk) continue;
        RayVec ry = P.perp_ray(eta);
        int o = P.lambda_order(ry, x0);
        if (o == 0) throw OnWallError(wall_coefficients_rank1(L, v, uk->first), uk->first);
        if (o < 0) {
            if (!left || P.lambda_order(ry, *left_ray) > 0) { left = uk; left_ray = ry; }
        } else {
            if (!right || P.lambda_order(ry, *right_ray) < 0) { right = uk; right_ray = ry; }
        }
    }
    auto make_side = [&](const std::optional<std::pair<MukaiVector, int>>& uk, int side) {
        if (!uk)
            return MovableSide{MovableKind::PositiveConeBoundary, detail::boundary_cone_ray(P, side),
                               std::nullopt};
        MovableKind kind = uk->second == 1 ? MovableKind::IsotropicPairing1
                                           : MovableKind::IsotropicPairing2;
        return MovableSide{kind, detail::wall_cone_ray(P, uk->first), uk->first};
    };
    out.left = make_side(left, -1);
    out.right = make_side(right, +1);
    return out;
}

// --- nef cone ---------------------------------------------------------------------

struct NefRays {
    ConeRay left, right;
    ChamberDescriptor chamber;
};

// Rays of theta of the chamber closure at p: the adjacent wall rays from
// locate_chamber, or boundary rays for an unwalled side.
inline NefRays nef_rays(const SurfaceLattice& L, const MukaiVector& v_in, const StabilityPoint& p,
                        std::optional<Int> bound = std::nullopt) {
    NefRays out;
    out.chamber = locate_chamber(L, v_in, p, bound);
    PerpLattice P(L, v_in);
    auto side_ray = [&](const ChamberSide& s, int side) {
        if (s.boundary) return detail::boundary_cone_ray(P, side);
        return detail::wall_cone_ray(P, s.wall->witnesses.front());
    };
    out.left = side_ray(out.chamber.left, -1);
    out.right = side_ray(out.chamber.right, +1);
    return out;
}

// --- birationality with the Hilbert-scheme side ------------------------------------

struct HilbertBirational {
    bool answer = false;
    std::optional<MukaiVector> isotropic_class;       // certifying pairing-1 class
    std::optional<std::pair<Int, Int>> pell_witness;  // n = 1: (x, y) with r x^2 + 2 d xy + a y^2 = +-1
};

inline HilbertBirational hilbert_birational(const SurfaceLattice& L, const MukaiVector& v,
                                            const Int& bound = 100) {
    if (!L.is_rank1()) throw std::domain_error("hilbert_birational: rank-one lattice only");
    if (v.r <= 0) throw std::invalid_argument("hilbert_birational: need r > 0");
    if (v.content() != 1) throw std::invalid_argument("hilbert_birational: v must be primitive");
    if (mukai_square(L, v) < 6) throw std::invalid_argument("hilbert_birational: need <v^2> >= 6");
    HilbertBirational out;
    IsotropicSearch one = isotropic_with_pairing(L, v, 1, bound);
    out.answer = one.exists;
    out.isotropic_class = one.witness;
    if (L.n() == 1 && out.answer) {
        BinaryForm G{v.r, 2 * v.d(), v.a};
        for (const Int& m : {Int(1), Int(-1)})
            if (auto xy = represent(G, m)) {
                out.pell_witness = xy;
                break;
            }
        if (!out.pell_witness) throw std::logic_error("hilbert_birational: missing norm-form witness");
    }
    return out;
}

// --- monodromy invariants of exceptional classes -------------------------------------

enum class SpeCase { None, Case1, Case2a, Case2b, Case2c };

struct MarkmanInvariants {
    Int div;         // gcd of <e, .> over v-perp
    Int rho, sigma;  // contents of e + v and e - v
    Int r, s;        // rho/gcd, sigma/gcd, stored with r <= s
    bool spe = false;
    SpeCase tag = SpeCase::None;
};

inline MarkmanInvariants markman_classify(const SurfaceLattice& L, const MukaiVector& e,
                                          const MukaiVector& v) {
    if (!L.is_rank1()) throw std::domain_error("markman_classify: rank-one lattice only");
    if (v.content() != 1) throw std::invalid_argument("markman_classify: v must be primitive");
    if (e.content() != 1) throw std::invalid_argument("markman_classify: e must be primitive");
    Int vsq = mukai_square(L, v);
    if (vsq < 6 || vsq % 2 != 0) throw std::invalid_argument("markman_classify: need <v^2> = 2l >= 6");
    Int l = vsq / 2;
    if (mukai_pairing(L, e, v) != 0) throw std::invalid_argument("markman_classify: e must lie in v-perp");
    if (mukai_square(L, e) != -vsq) throw std::invalid_argument("markman_classify: need <e^2> = -<v^2>");

    PerpLattice P(L, v);
    MarkmanInvariants out;
    out.div = abs(igcd(mukai_pairing(L, e, P.f1()), mukai_pairing(L, e, P.f2())));
    out.rho = (e + v).content();
    out.sigma = (e - v).content();
    Int g = igcd(out.rho, out.sigma);
    out.r = out.rho / g;
    out.s = out.sigma / g;
    if (out.r > out.s) std::swap(out.r, out.s);

    if (out.div % l == 0) {
        if (out.div == 2 * l && out.r == 1 && out.s == l) {
            out.spe = true;
            out.tag = SpeCase::Case1;
        } else if (out.div == l) {
            if (out.r == 2 && 2 * out.s == l && l >= 6 && l % 4 == 2) {
                out.spe = true;
                out.tag = SpeCase::Case2a;
            } else if (out.r == 1 && out.s == l && l % 2 == 1) {
                out.spe = true;
                out.tag = SpeCase::Case2b;
            } else if (out.r == 1 && 2 * out.s == l && l % 2 == 0) {
                out.spe = true;
                out.tag = SpeCase::Case2c;
            }
        }
    }
    return out;
}

}  // namespace mukai
