#pragma once

// The rank-two hyperbolic lattice v-perp inside the rank-one Mukai lattice,
// with exact ray bookkeeping:
//
//  * an integer basis (f1, f2) of { x : <x,v> = 0 } and its Gram form,
//  * the orientation functional phi(x) = r*x_d - d*x_r, positive on the
//    component P+ containing the classes xi(s,t) of stability points,
//  * the class xi(s,t) itself (scaled rational representative), whose pairing
//    against any fixed w is the quadratic-separable polynomial
//    c2 (s^2 + t^2) + c1 s + c0 used for exact window tests,
//  * rational rays bracketing a compact arc of P+ from inside, obtained from
//    window corners or from approximants to the irrational boundary rays,
//  * complete enumeration of integer eta in v-perp with bounded negative
//    square whose orthogonal ray meets a given subcone (the device behind
//    wall/cone enumeration: every wall has eta = <v^2> v1 - <v,v1> v with
//    0 > <eta^2> >= -<v^2>^3).

#include "charge.hpp"
#include "quadext.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace mukai {

struct Window {
    Rat s_lo, s_hi;
    Rat t2_lo, t2_hi;  // bounds on t^2

    Window(Rat slo, Rat shi, Rat tlo, Rat thi)
        : s_lo(std::move(slo)), s_hi(std::move(shi)), t2_lo(std::move(tlo)), t2_hi(std::move(thi)) {
        if (s_lo >= s_hi || t2_lo <= 0 || t2_lo > t2_hi)
            throw std::invalid_argument("Window: need s_lo < s_hi and 0 < t2_lo <= t2_hi");
    }
};

// c2*(s^2 + t2) + c1*s + c0 as a function on the (s, t2) half plane.
struct QuadPoly {
    Rat c2, c1, c0;

    Rat eval(const Rat& s, const Rat& t2) const { return c2 * (s * s + t2) + c1 * s + c0; }

    // Exact range over a closed window (separable: quadratic in s + linear in t2).
    std::pair<Rat, Rat> range(const Window& w) const {
        Rat lo_s, hi_s;
        {
            Rat a = c2 * w.s_lo * w.s_lo + c1 * w.s_lo;
            Rat b = c2 * w.s_hi * w.s_hi + c1 * w.s_hi;
            lo_s = std::min(a, b);
            hi_s = std::max(a, b);
            if (c2 != 0) {
                Rat vx = -c1 / (2 * c2);
                if (w.s_lo < vx && vx < w.s_hi) {
                    Rat vy = c2 * vx * vx + c1 * vx;
                    lo_s = std::min(lo_s, vy);
                    hi_s = std::max(hi_s, vy);
                }
            }
        }
        Rat ta = c2 * w.t2_lo, tb = c2 * w.t2_hi;
        return {lo_s + std::min(ta, tb) + c0, hi_s + std::max(ta, tb) + c0};
    }
};

struct RayVec {
    Int alpha, beta;  // coordinates in the (f1, f2) basis

    bool operator==(const RayVec& o) const { return alpha == o.alpha && beta == o.beta; }
};

class PerpLattice {
public:
    PerpLattice(const SurfaceLattice& L, const MukaiVector& v_in) : L_(L) {
        if (!L.is_rank1()) throw std::domain_error("PerpLattice: rank-one lattice only");
        n_ = L.n();
        v_ = v_in;
        // Walls and cone data of v and -v coincide; normalize so r > 0, or
        // r = 0 and d > 0.
        if (v_.r < 0 || (v_.r == 0 && v_.d() < 0)) v_ = -v_;
        vsq_ = mukai_square(L_, v_);
        if (vsq_ <= 0) throw std::invalid_argument("PerpLattice: need <v^2> > 0");
        if (v_.r == 0 && v_.d() == 0) throw std::logic_error("unreachable: square would be 0");
        ell_ = vsq_ / 2;
        build_basis();
        q11_ = pair_basis(f1_, f1_);
        q12_ = pair_basis(f1_, f2_);
        q22_ = pair_basis(f2_, f2_);
        // Make the (0,1) direction anisotropic so boundary slopes are finite.
        while (q22_ == 0) {
            f2_ = f1_ + f2_;
            q12_ = pair_basis(f1_, f2_);
            q22_ = pair_basis(f2_, f2_);
        }
        compute_orientation();
    }

    const SurfaceLattice& lattice() const { return L_; }
    const MukaiVector& v() const { return v_; }
    const Int& n() const { return n_; }
    const Int& vsq() const { return vsq_; }
    const Int& ell() const { return ell_; }
    const MukaiVector& f1() const { return f1_; }
    const MukaiVector& f2() const { return f2_; }

    bool boundary_rational() const { return is_square(n_ * ell_); }

    MukaiVector embed(const RayVec& c) const { return f1_ * c.alpha + f2_ * c.beta; }

    RationalMukaiVector embed_rat(const Rat& alpha, const Rat& beta) const {
        RationalMukaiVector a(f1_), b(f2_);
        return a * alpha + b * beta;
    }

    // phi(x) = r*x_d - d*x_r: positive exactly on the component of the
    // positive cone of v-perp containing the xi classes. (For r = 0 this is
    // the limit convention -d*x_r, d normalized positive.)
    Int phi(const MukaiVector& x) const { return v_.r * x.c1[0] - v_.d() * x.r; }
    Rat phi(const RationalMukaiVector& x) const { return Rat(v_.r) * x.c1[0] - Rat(v_.d()) * x.r; }
    Int phi(const RayVec& c) const { return phi(embed(c)); }

    Int form(const RayVec& x, const RayVec& y) const {
        return x.alpha * y.alpha * q11_ + (x.alpha * y.beta + x.beta * y.alpha) * q12_ +
               x.beta * y.beta * q22_;
    }
    Int form(const RayVec& x) const { return form(x, x); }

    static Int det2(const RayVec& x, const RayVec& y) { return x.alpha * y.beta - x.beta * y.alpha; }

    // Exact integer coordinates of x in the (f1, f2) basis, if x lies in the
    // integer span.
    std::optional<RayVec> coords(const MukaiVector& x) const {
        auto rc = rat_coords(RationalMukaiVector(x));
        if (!rc) return std::nullopt;
        if (rat_den(rc->first) != 1 || rat_den(rc->second) != 1) return std::nullopt;
        return RayVec{rat_num(rc->first), rat_num(rc->second)};
    }

    std::optional<std::pair<Rat, Rat>> rat_coords(const RationalMukaiVector& x) const {
        // Solve alpha*f1 + beta*f2 = x using two independent coordinate rows.
        Rat a1(f1_.r), b1(f2_.r), a2(f1_.c1[0]), b2(f2_.c1[0]), a3(f1_.a), b3(f2_.a);
        Rat x1 = x.r, x2 = x.c1[0], x3 = x.a;
        Rat det = a1 * b2 - a2 * b1, alpha, beta;
        if (det != 0) {
            alpha = (x1 * b2 - x2 * b1) / det;
            beta = (a1 * x2 - a2 * x1) / det;
        } else {
            det = a1 * b3 - a3 * b1;
            if (det == 0) det = a2 * b3 - a3 * b2;
            if (det == 0) throw std::logic_error("PerpLattice: degenerate basis");
            if (a1 * b3 - a3 * b1 != 0) {
                det = a1 * b3 - a3 * b1;
                alpha = (x1 * b3 - x3 * b1) / det;
                beta = (a1 * x3 - a3 * x1) / det;
            } else {
                alpha = (x2 * b3 - x3 * b2) / det;
                beta = (a2 * x3 - a3 * x2) / det;
            }
        }
        RationalMukaiVector back = embed_rat(alpha, beta);
        if (!(back - x).is_zero()) return std::nullopt;  // x not in the plane
        return std::make_pair(alpha, beta);
    }

    // Primitive integer representative of the ray through an integer vector,
    // oriented into the positive component.
    RayVec ray_normalize(RayVec c) const {
        if (c.alpha == 0 && c.beta == 0) throw std::invalid_argument("ray_normalize: zero vector");
        Int g = igcd(c.alpha, c.beta);
        c.alpha /= g;
        c.beta /= g;
        Int ph = phi(c);
        if (ph < 0) { c.alpha = -c.alpha; c.beta = -c.beta; }
        else if (ph == 0) {
            // Only the isotropic boundary ray of the r = 0 pencil lands here
            // (the phi kernel is negative-square for r > 0). Orient it into
            // the closure of the positive component by its pairing against an
            // interior reference ray, which is nonzero for isotropic c.
            if (form(c) != 0 || v_.r != 0)
                throw std::domain_error("ray_normalize: ray on the phi kernel");
            RayVec mid = xi_ray(s_zero() + 1, Rat(1));
            Int pr = form(c, mid);
            if (pr == 0) throw std::logic_error("ray_normalize: reference ray degenerate");
            if (pr < 0) { c.alpha = -c.alpha; c.beta = -c.beta; }
        }
        return c;
    }

    RayVec ray_from_rational(const Rat& alpha, const Rat& beta) const {
        Int da = rat_den(alpha), db = rat_den(beta);
        Int m = da * db / igcd(da, db);
        return ray_normalize(RayVec{rat_num(alpha) * (m / da), rat_num(beta) * (m / db)});
    }

    // Orthogonal direction to eta inside v-perp (kernel of <., eta>).
    RayVec perp_ray(const RayVec& eta) const {
        Int u = q11_ * eta.alpha + q12_ * eta.beta;   // <f1, eta>
        Int w = q12_ * eta.alpha + q22_ * eta.beta;   // <f2, eta>
        return ray_normalize(RayVec{-w, u});
    }

    // --- the xi class -------------------------------------------------------

    // Scaled representative of the ray xi(s, t) in v-perp (r*xi for r > 0;
    // the rank-zero variant for r = 0). Positive square for t2 > 0, and
    // phi > 0 by construction. t2 = 0 is allowed (boundary evaluation).
    RationalMukaiVector xi(const Rat& s, const Rat& t2) const {
        Rat n(n_), r(v_.r), d(v_.d()), a(v_.a);
        Rat sigma = s * s + t2;
        if (v_.r != 0) {
            Rat xr = -2 * n * r * (d - r * s);
            Rat xd = r * (r * n * sigma - a);
            Rat xa = 2 * d * n * (r * n * sigma - a) + 2 * n * a * (d - r * s);
            return RationalMukaiVector(xr, {xd}, xa);
        }
        Rat xr = -2 * n * d;
        Rat xd = -a;
        Rat xa = 2 * n * (n * d * sigma - s * a);
        return RationalMukaiVector(xr, {xd}, xa);
    }

    // <xi(s,t), w> as a quadratic-separable polynomial in (s, t2).
    QuadPoly xi_pairing_poly(const RationalMukaiVector& w) const {
        auto F = [&](const Rat& s, const Rat& t2) { return mukai_pairing(L_, xi(s, t2), w); };
        Rat c0 = F(0, 0);
        Rat c2 = F(0, 1) - c0;
        Rat c1 = F(1, 0) - c0 - c2;
        // The xi components are themselves of this shape; spot check.
        if (F(2, 3) != c2 * 7 + c1 * 2 + c0)
            throw std::logic_error("xi_pairing_poly: unexpected higher-order term");
        return {c2, c1, c0};
    }

    QuadPoly xi_pairing_poly(const RayVec& c) const {
        return xi_pairing_poly(RationalMukaiVector(embed(c)));
    }

    // Coordinates of xi(s, t2) in the (f1, f2) basis as polynomials in (s, t2).
    std::pair<QuadPoly, QuadPoly> xi_coords_polys() const {
        auto C = [&](const Rat& s, const Rat& t2) {
            auto rc = rat_coords(xi(s, t2));
            if (!rc) throw std::logic_error("xi_coords_polys: xi not in v-perp");
            return *rc;
        };
        auto [a00, b00] = C(0, 0);
        auto [a01, b01] = C(0, 1);
        auto [a10, b10] = C(1, 0);
        QuadPoly pa{Rat(a01 - a00), Rat(a10 - a01), a00};
        QuadPoly pb{Rat(b01 - b00), Rat(b10 - b01), b00};
        auto [a23, b23] = C(2, 3);
        if (pa.eval(2, 3) != a23 || pb.eval(2, 3) != b23)
            throw std::logic_error("xi_coords_polys: unexpected higher-order term");
        return {pa, pb};
    }

    RayVec xi_ray(const Rat& s, const Rat& t2) const {
        auto rc = rat_coords(xi(s, t2));
        if (!rc) throw std::logic_error("xi_ray: xi not in v-perp");
        return ray_from_rational(rc->first, rc->second);
    }

    // --- pencil parameter ---------------------------------------------------

    // Endpoints of the pencil parameter interval. For r > 0 these are
    // s+- = d/r -+ sqrt(l/n)/r; for r = 0 the interval is (s0, +infinity)
    // with s0 = a/(2nd).
    QuadExt s_minus() const {
        if (v_.r == 0) return QuadExt(s_zero());
        return QuadExt(make_rat(v_.d(), v_.r), make_rat(-1, v_.r * n_), n_ * ell_);
    }
    QuadExt s_plus() const {
        if (v_.r != 0) return QuadExt(make_rat(v_.d(), v_.r), make_rat(1, v_.r * n_), n_ * ell_);
        throw std::domain_error("s_plus: unbounded pencil parameter for r = 0");
    }
    Rat s_zero() const {
        if (v_.r != 0) throw std::domain_error("s_zero: defined for r = 0 only");
        return make_rat(v_.a, 2 * n_ * v_.d());
    }

    // lambda lies in the open pencil interval?
    bool lambda_interior(const QuadExt& lam) const {
        if (v_.r == 0) return QuadExt::compare(lam, QuadExt(s_zero())) > 0;
        // q(l) = n r l^2 - 2 n d l + a is negative strictly between s+-.
        QuadExt q = lam * lam * QuadExt(Rat(n_ * v_.r)) - lam * QuadExt(Rat(2 * n_ * v_.d())) +
                    QuadExt(Rat(v_.a));
        return q.sign() < 0;
    }

    // Canonical pencil parameter of a nonempty wall locus: the axis crossing
    // inside the pencil interval (exactly one for r > 0; the crossing > s0
    // for r = 0; lines sit at s0 = d/r).
    QuadExt wall_lambda(const WallCoefficients& w) const {
        WallGeometry g = wall_geometry_from_coefficients(w);
        if (std::holds_alternative<WallEmpty>(g))
            throw std::invalid_argument("wall_lambda: empty locus");
        if (auto* ln = std::get_if<WallLine>(&g)) return QuadExt(ln->s0);
        auto& c = std::get<WallCircle>(g);
        auto [f, k] = squarefree_decompose(rat_num(c.radius2) * rat_den(c.radius2));
        QuadExt sq(Rat(0), make_rat(f, rat_den(c.radius2)), k);  // sqrt(radius2)
        QuadExt lo = QuadExt(c.center) - sq, hi = QuadExt(c.center) + sq;
        bool lo_in = lambda_interior(lo), hi_in = lambda_interior(hi);
        if (lo_in == hi_in)
            throw std::logic_error("wall_lambda: crossings not separated by the pencil interval");
        return lo_in ? lo : hi;
    }

    // Sign kappa with lambda(x) < lambda(y) iff kappa * det2(x, y) < 0.
    int orientation() const { return kappa_; }

    // Comparator on rays of the positive component by pencil parameter:
    // negative iff lambda(x) < lambda(y), zero iff equal rays.
    int lambda_order(const RayVec& x, const RayVec& y) const {
        Int d = det2(x, y) * kappa_;
        return sgn(d);
    }

    // --- boundary rays ------------------------------------------------------

    // Exact primitive isotropic rays of v-perp (boundary of P+), available
    // iff n*l is a perfect square. Ordered by lambda (first ~ s-, second ~ s+).
    std::pair<RayVec, RayVec> exact_boundary_rays() const {
        if (!boundary_rational()) throw std::domain_error("exact_boundary_rays: irrational boundary");
        Int g = isqrt(n_ * ell_);
        // Slopes of q11 + 2 q12 t + q22 t^2 = 0 are (-q12 +- g') / q22 with
        // g'^2 = q12^2 - q11 q22. The form discriminant is a square times
        // (n*l); recompute directly.
        Int disc = q12_ * q12_ - q11_ * q22_;
        if (!is_square(disc)) throw std::logic_error("exact_boundary_rays: discriminant not square");
        Int sd = isqrt(disc);
        (void)g;
        RayVec r1 = ray_normalize(RayVec{q22_, -(q12_ - sd)});
        RayVec r2 = ray_normalize(RayVec{q22_, -(q12_ + sd)});
        if (lambda_order(r1, r2) > 0) std::swap(r1, r2);
        return {r1, r2};
    }

    // Rational ray strictly inside P+ within 2^-prec of the boundary ray on
    // the given side (side = -1: the s- end, +1: the s+ end). May fail at low
    // precision; callers deepen and retry.
    std::optional<RayVec> boundary_approximant(int side, unsigned prec) const {
        Int disc = q12_ * q12_ - q11_ * q22_;
        if (disc <= 0) throw std::logic_error("boundary_approximant: form not hyperbolic");
        // Roots of q22 t^2 + 2 q12 t + q11 = 0 (slopes t = beta/alpha).
        Rat lo = (Rat(-q12_) - sqrt_upper(Rat(disc), prec)) / Rat(q22_);
        Rat hi = (Rat(-q12_) - sqrt_lower(Rat(disc), prec)) / Rat(q22_);
        if (lo > hi) std::swap(lo, hi);
        auto try_slope = [&](const Rat& t) -> std::optional<RayVec> {
            RayVec c{rat_den(t), rat_num(t)};
            if (form(c) <= 0) return std::nullopt;
            return ray_normalize(c);
        };
        // Candidates hugging each root; keep the interior one (positive
        // square) that approximates the requested end.
        for (const Rat& cand :
             {lo, hi, Rat((Rat(-q12_) + sqrt_lower(Rat(disc), prec)) / Rat(q22_)),
              Rat((Rat(-q12_) + sqrt_upper(Rat(disc), prec)) / Rat(q22_))}) {
            auto rv = try_slope(cand);
            if (!rv) continue;
            if (boundary_side_of(*rv) == side) return *rv;
        }
        return std::nullopt;
    }

    // --- bounded enumeration -------------------------------------------------

    // All integer eta in v-perp with -N <= <eta^2> < 0 whose orthogonal line
    // meets the closed cone spanned by y1, y2 (both with phi > 0, nonnegative
    // square, and not proportional). Meeting the cone is the sign condition
    // u*w <= 0 on the pairings u = <eta,y1>, w = <eta,y2>; with the square
    // band it bounds eta by the Lorentzian inequalities |u*w| <= N(-detM)/2m12
    // and u^2 <= N(-detM)/m22 (w forced nonzero when y2 is isotropic, and
    // symmetrically). The scan walks alpha over the implied exact range and,
    // per alpha, only the O(N / (sqrt(-det Q) * alpha)) beta values in the
    // square band, so the cost tracks the actual candidate count.
    std::vector<RayVec> enumerate_negative_in_cone(const RayVec& y1, const RayVec& y2,
                                                   const Int& N) const {
        Int m11 = form(y1), m22 = form(y2), m12 = form(y1, y2);
        if (m11 < 0 || m22 < 0) throw std::invalid_argument("enumerate_negative_in_cone: cone edge has negative square");
        if (m12 <= 0) throw std::invalid_argument("enumerate_negative_in_cone: rays not in a common positive cone");
        Int detM = m11 * m22 - m12 * m12;
        if (detM >= 0) throw std::logic_error("enumerate_negative_in_cone: cone not hyperbolic");
        Int t11 = q11_ * y1.alpha + q12_ * y1.beta;  // <f1, y1>
        Int t12 = q12_ * y1.alpha + q22_ * y1.beta;  // <f2, y1>
        Int t21 = q11_ * y2.alpha + q12_ * y2.beta;
        Int t22 = q12_ * y2.alpha + q22_ * y2.beta;
        Int dt = t11 * t22 - t12 * t21;
        if (dt == 0) throw std::logic_error("enumerate_negative_in_cone: degenerate pairing map");

        Int Kuw = (N * -detM) / (2 * m12);
        Int Ubd = m22 > 0 ? Int(isqrt((N * -detM) / m22) + 1) : Kuw;
        Int Wbd = m11 > 0 ? Int(isqrt((N * -detM) / m11) + 1) : Kuw;
        Int Amax = (abs(t22) * Ubd + abs(t21) * Wbd) / abs(dt) + 1;

        Int D0 = q12_ * q12_ - q11_ * q22_;  // positive: form is hyperbolic
        std::vector<RayVec> out;
        auto check_push = [&](const Int& alpha, const Int& beta) {
            RayVec eta{alpha, beta};
            Int sq = form(eta);
            if (sq >= 0 || sq < -N) return;
            Int u = t11 * alpha + t12 * beta, w = t21 * alpha + t22 * beta;
            if (sgn(u) * sgn(w) > 0) return;
            out.push_back(eta);
        };
        // Conservative integer hull of the beta roots of Q(alpha, .) = -c.
        auto roots = [&](const Int& alpha, const Int& c) -> std::optional<std::pair<Int, Int>> {
            Int disc = D0 * alpha * alpha - q22_ * c;
            if (disc < 0) return std::nullopt;
            Int s = isqrt(disc) + 1;
            Rat r1 = make_rat(-q12_ * alpha - s, q22_), r2 = make_rat(-q12_ * alpha + s, q22_);
            if (r1 > r2) std::swap(r1, r2);
            return std::make_pair(Int(rat_floor(r1) - 1), Int(rat_ceil(r2) + 1));
        };
        for (Int alpha = -Amax; alpha <= Amax; ++alpha) {
            // Band -N <= Q <= -1: an interval around the axis minus an inner
            // hole (or the mirror picture for q22 < 0); endpoints padded, each
            // candidate re-checked exactly.
            std::vector<std::pair<Int, Int>> segs;
            if (q22_ > 0) {
                auto o = roots(alpha, Int(1));
                if (!o) continue;
                auto h = roots(alpha, N);
                if (!h) segs.push_back(*o);
                else {
                    segs.emplace_back(o->first, h->first + 2);
                    segs.emplace_back(h->second - 2, o->second);
                }
            } else {
                auto o = roots(alpha, N);
                auto h = roots(alpha, Int(1));
                if (!o || !h) throw std::logic_error("enumerate_negative_in_cone: lost band roots");
                segs.emplace_back(o->first, h->first + 2);
                segs.emplace_back(h->second - 2, o->second);
            }
            Int last_done;
            bool have_last = false;
            for (const auto& [lo, hi] : segs)
                for (Int beta = lo; beta <= hi; ++beta) {
                    if (have_last && beta <= last_done) continue;  // overlap guard
                    check_push(alpha, beta);
                    last_done = beta;
                    have_last = true;
                }
        }
        return out;
    }

private:
    Int pair_basis(const MukaiVector& x, const MukaiVector& y) const {
        return mukai_pairing(L_, x, y);
    }

    void build_basis() {
        // Kernel of the covector x -> <x, v> = -a*x_r + 2nd*x_d - r*x_a.
        Int cr = -v_.a, cd = 2 * n_ * v_.d(), ca = -v_.r;
        // Extended gcd over the three coefficients gives a primitive kernel basis
        // via the standard two-step construction.
        Int g1 = igcd(cr, cd);
        std::vector<MukaiVector> basis;
        auto add_if_indep = [&](const MukaiVector& x) {
            if (x.is_zero()) return;
            if (basis.size() == 1 && is_proportional(basis[0], x)) return;
            if (basis.size() < 2) basis.push_back(primitive_part(x));
        };
        if (cr == 0 && cd == 0) {
            add_if_indep(MukaiVector(1, 0, 0));
            add_if_indep(MukaiVector(0, 1, 0));
        } else {
            // kernel of (cr, cd) in the first two coordinates, extended by 0
            if (g1 != 0) add_if_indep(MukaiVector(cd / g1, -cr / g1, 0));
            if (ca == 0) {
                add_if_indep(MukaiVector(0, 0, 1));
            } else {
                // solve cr*x + cd*y = -ca*z with z = g1/gcd(g1, ca)-scaled
                Int g2 = igcd(g1, ca);
                Int z = g1 / g2;
                // find x0, y0 with cr*x0 + cd*y0 = g1 (extended gcd)
                Int x0, y0;
                mpz_gcdext(g1.get_mpz_t(), x0.get_mpz_t(), y0.get_mpz_t(), cr.get_mpz_t(),
                           cd.get_mpz_t());
                Int scale = -ca / g2;
                add_if_indep(MukaiVector(x0 * scale, y0 * scale, z));
            }
        }
        if (basis.size() != 2) throw std::logic_error("PerpLattice: kernel basis not found");
        f1_ = basis[0];
        f2_ = basis[1];
        for (const MukaiVector& f : {f1_, f2_})
            if (mukai_pairing(L_, f, v_) != 0) throw std::logic_error("PerpLattice: basis not orthogonal to v");
    }

    void compute_orientation() {
        // Sample two interior pencil parameters la < lb and set kappa so that
        // lambda_order(x(la), x(lb)) < 0.
        Rat la, lb;
        if (v_.r != 0) {
            la = make_rat(v_.d(), v_.r);
            Rat step = 1;
            while (true) {
                lb = la + step;
                Rat q = Rat(n_ * v_.r) * lb * lb - Rat(2 * n_ * v_.d()) * lb + Rat(v_.a);
                if (q < 0) break;
                step /= 2;
            }
        } else {
            la = s_zero() + 1;
            lb = la + 1;
        }
        RayVec xa = xi_ray(la, 0), xb = xi_ray(lb, 0);
        Int d = det2(xa, xb);
        if (d == 0) throw std::logic_error("PerpLattice: orientation samples collapsed");
        kappa_ = d > 0 ? -1 : 1;  // lambda_order(xa, xb) < 0 for la < lb
    }

    // Which boundary end a deep interior ray approximates: compare against
    // the orientation samples. Returns -1 for the s- end, +1 for the s+ end.
    int boundary_side_of(const RayVec& y) const {
        RayVec mid = xi_ray(v_.r != 0 ? make_rat(v_.d(), v_.r) : Rat(s_zero() + 1), 1);
        int o = lambda_order(y, mid);
        if (o == 0) throw std::logic_error("boundary_side_of: approximant equals interior sample");
        return o < 0 ? -1 : 1;
    }

    SurfaceLattice L_;
    MukaiVector v_;
    Int n_, vsq_, ell_;
    MukaiVector f1_, f2_;
    Int q11_, q12_, q22_;
    int kappa_ = 1;
};

}  // namespace mukai
