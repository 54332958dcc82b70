#pragma once

// Central charges of the (s,t) slice of the stability manifold, potential
// walls, and their rank-one closed-form geometry.
//
// For beta = sH and the rank-one lattice with (H^2) = 2n:
//   Z(v) = A + i*B*t,   A = -a + 2nds - rn(s^2 - t^2),   B = 2n(d - rs).
// A wall for v through a fixed point is the vanishing locus of the 2x2
// determinant A*B1 - A1*B built from the charges of v and v1.

#include "lattice.hpp"

#include <variant>

namespace mukai {

struct StabilityPoint {
    Rat s;
    Rat t2;  // t^2 > 0; the slice is parametrized by t^2 to stay rational

    StabilityPoint(Rat ss, Rat tt2) : s(std::move(ss)), t2(std::move(tt2)) {
        if (t2 <= 0) throw std::invalid_argument("StabilityPoint: t^2 must be positive");
    }
};

// General-rank point: beta in NS_Q, same t^2 > 0 convention.
struct GeneralStabilityPoint {
    std::vector<Rat> beta;
    Rat t2;

    GeneralStabilityPoint(std::vector<Rat> b, Rat tt2) : beta(std::move(b)), t2(std::move(tt2)) {
        if (t2 <= 0) throw std::invalid_argument("GeneralStabilityPoint: t^2 must be positive");
    }
};

struct ChargePair {
    Rat A;  // Re Z
    Rat B;  // Im Z / t

    bool operator==(const ChargePair& o) const { return A == o.A && B == o.B; }
};

inline ChargePair central_charge(const SurfaceLattice& L, const MukaiVector& v,
                                 const StabilityPoint& p) {
    if (!L.is_rank1()) throw std::domain_error("central_charge: rank-one point requires rank-one NS");
    Int n = L.n();
    Rat A = -Rat(v.a) + 2 * Rat(n) * Rat(v.d()) * p.s - Rat(v.r) * Rat(n) * (p.s * p.s - p.t2);
    Rat B = 2 * Rat(n) * (Rat(v.d()) - Rat(v.r) * p.s);
    return {A, B};
}

// General rank: Z = <e^{beta+itH}, v> expanded exactly,
//   A = (beta, c1) - a - r((beta^2) - t^2 (H^2))/2,   B = (c1 - r*beta, H).
inline ChargePair central_charge(const SurfaceLattice& L, const MukaiVector& v,
                                 const GeneralStabilityPoint& p) {
    std::vector<Rat> c1(v.c1.begin(), v.c1.end());
    std::vector<Rat> H(L.ample.begin(), L.ample.end());
    Rat beta_c1 = L.ns_pairing(p.beta, c1);
    Rat beta2 = L.ns_pairing(p.beta, p.beta);
    Rat h2 = Rat(L.h_square());
    Rat A = beta_c1 - Rat(v.a) - Rat(v.r) * (beta2 - p.t2 * h2) / 2;
    std::vector<Rat> tilt(c1.size());
    for (size_t i = 0; i < c1.size(); ++i) tilt[i] = c1[i] - Rat(v.r) * p.beta[i];
    Rat B = L.ns_pairing(tilt, H);
    return {A, B};
}

// Strict phase order on the slit upper half plane. Charges with B > 0 have
// phase in (0,1) increasing as A/B decreases; B = 0 (negative real axis for
// objects in the heart) sits at phase 1, i.e. strictly after everything else.
// Zero charges are not comparable.
inline bool phase_precedes(const ChargePair& z1, const ChargePair& z2) {
    if ((z1.A == 0 && z1.B == 0) || (z2.A == 0 && z2.B == 0))
        throw std::domain_error("phase_precedes: zero central charge");
    if (z1.B < 0 || z2.B < 0)
        throw std::domain_error("phase_precedes: charge below the admissible half plane");
    if (z1.B == 0) return false;          // phase 1 never precedes
    if (z2.B == 0) return true;           // everything precedes phase 1
    return z1.A * z2.B - z2.A * z1.B > 0; // cot(pi*phi) strictly decreasing
}

// Numerical wall candidate test for a decomposition v = v1 + (v - v1):
//   <v1, v-v1> > 0, <v1^2> >= 0, <(v-v1)^2> >= 0, v1 not proportional to v.
inline bool wall_candidate_check(const SurfaceLattice& L, const MukaiVector& v,
                                 const MukaiVector& v1) {
    if (v1.is_zero() || is_proportional(v1, v)) return false;
    MukaiVector v2 = v - v1;
    return mukai_pairing(L, v1, v2) > 0 && mukai_square(L, v1) >= 0 && mukai_square(L, v2) >= 0;
}

// The potential wall of a candidate pair is nonempty iff <v,v1>^2 > <v^2><v1^2>.
inline bool wall_nonempty(const SurfaceLattice& L, const MukaiVector& v, const MukaiVector& v1) {
    Int k = mukai_pairing(L, v, v1);
    return k * k > mukai_square(L, v) * mukai_square(L, v1);
}

// Exact determinant test: p lies on the potential wall W(v1) of v.
inline bool on_wall(const SurfaceLattice& L, const MukaiVector& v, const MukaiVector& v1,
                    const StabilityPoint& p) {
    ChargePair z = central_charge(L, v, p), z1 = central_charge(L, v1, p);
    return z.A * z1.B - z1.A * z.B == 0;
}

inline Rat wall_determinant(const SurfaceLattice& L, const MukaiVector& v, const MukaiVector& v1,
                            const StabilityPoint& p) {
    ChargePair z = central_charge(L, v, p), z1 = central_charge(L, v1, p);
    return z.A * z1.B - z1.A * z.B;
}

// Rank-one wall geometry. The vanishing locus of the determinant is
//   P(s^2 + t^2) + Q s + R = 0
// with P = n(r d1 - r1 d), Q = a r1 - a1 r, R = a1 d - a d1 (all integers).
struct WallLine {
    Rat s0;
    bool operator==(const WallLine& o) const { return s0 == o.s0; }
};
struct WallCircle {
    Rat center;
    Rat radius2;  // > 0
    bool operator==(const WallCircle& o) const { return center == o.center && radius2 == o.radius2; }
};
struct WallEmpty {
    bool operator==(const WallEmpty&) const { return true; }
};
using WallGeometry = std::variant<WallEmpty, WallLine, WallCircle>;

struct WallCoefficients {
    Int P, Q, R;  // primitive, sign-normalized: P > 0, or P = 0 and Q > 0

    bool operator==(const WallCoefficients& o) const { return P == o.P && Q == o.Q && R == o.R; }
    bool operator<(const WallCoefficients& o) const {
        if (P != o.P) return P < o.P;
        if (Q != o.Q) return Q < o.Q;
        return R < o.R;
    }
};

inline WallCoefficients wall_coefficients_rank1(const SurfaceLattice& L, const MukaiVector& v,
                                                const MukaiVector& v1) {
    if (!L.is_rank1()) throw std::domain_error("wall_coefficients_rank1: rank-one lattice only");
    Int n = L.n();
    Int P = n * (v.r * v1.d() - v1.r * v.d());
    Int Q = v.a * v1.r - v1.a * v.r;
    Int R = v1.a * v.d() - v.a * v1.d();
    if (P == 0 && Q == 0 && R == 0)
        throw std::domain_error("wall_coefficients_rank1: v1 proportional to v");
    Int g = igcd(P, Q, R);
    P /= g; Q /= g; R /= g;
    if (P < 0 || (P == 0 && Q < 0) || (P == 0 && Q == 0 && R < 0)) { P = -P; Q = -Q; R = -R; }
    return {P, Q, R};
}

inline WallGeometry wall_geometry_from_coefficients(const WallCoefficients& w) {
    if (w.P == 0 && w.Q == 0) return WallEmpty{};  // constant nonzero determinant
    if (w.P == 0) return WallLine{make_rat(-w.R, w.Q)};
    Rat center = make_rat(-w.Q, 2 * w.P);
    Rat radius2 = center * center - make_rat(w.R, w.P);
    if (radius2 <= 0) return WallEmpty{};
    return WallCircle{center, radius2};
}

inline WallGeometry wall_geometry_rank1(const SurfaceLattice& L, const MukaiVector& v,
                                        const MukaiVector& v1) {
    return wall_geometry_from_coefficients(wall_coefficients_rank1(L, v, v1));
}

}  // namespace mukai
