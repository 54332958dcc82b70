#pragma once

// The symmetric-matrix model of the rank-one Mukai lattice and the group of
// Fourier-Mukai-type isometries acting on it.
//
//   iota(r, dH, a) = (( r      d*sqrt(n) ), ( d*sqrt(n)  a ))
//   B(X1, X2)      = 2n y1 y2 - (x1 z2 + z1 x2)
//
// Group elements are matrices (( a*sqrt(r)  b*sqrt(s) ), ( c*sqrt(s)  d*sqrt(r) ))
// with integers a,b,c,d, a factorization r*s = n, and determinant
// adr - bcs = +-1, taken modulo a global sign. The right action is
// M.g = g^T M g; on Mukai vectors this is integral and preserves the pairing.

#include "lattice.hpp"

#include <array>
#include <optional>
#include <tuple>

namespace mukai {

struct Sym2Matrix {
    Int x, y, z;  // (( x  y*sqrt(n) ), ( y*sqrt(n)  z ))

    bool operator==(const Sym2Matrix& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Sym2Matrix to_sym2(const MukaiVector& v) { return {v.r, v.d(), v.a}; }
inline MukaiVector from_sym2(const Sym2Matrix& m) { return MukaiVector(m.x, m.y, m.z); }

inline Int sym2_pairing(const Int& n, const Sym2Matrix& u, const Sym2Matrix& v) {
    return 2 * n * u.y * v.y - (u.x * v.z + u.z * v.x);
}

class GHatElement {
public:
    GHatElement(Int a, Int b, Int c, Int d, Int r_split, Int s_split)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
          r_(std::move(r_split)), s_(std::move(s_split)) {
        if (r_ <= 0 || s_ <= 0) throw std::invalid_argument("GHatElement: split factors must be positive");
        Int det = a_ * d_ * r_ - b_ * c_ * s_;
        if (det != 1 && det != -1)
            throw std::invalid_argument("GHatElement: determinant adr - bcs must be +-1");
        normalize_sign();
    }

    static GHatElement identity(const Int& n) { return GHatElement(1, 0, 0, 1, 1, n); }

    // diag(1,-1), the dualization involution (split (1, n), determinant -1).
    static GHatElement dualization(const Int& n) { return GHatElement(1, 0, 0, -1, 1, n); }

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& d() const { return d_; }
    const Int& r_split() const { return r_; }
    const Int& s_split() const { return s_; }
    Int n() const { return r_ * s_; }
    Int epsilon() const { return a_ * d_ * r_ - b_ * c_ * s_; }

    bool operator==(const GHatElement& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_ && r_ == o.r_ && s_ == o.s_;
    }
    bool operator!=(const GHatElement& o) const { return !(*this == o); }

    GHatElement inverse() const {
        Int e = epsilon();
        return GHatElement(e * d_, -e * b_, -e * c_, e * a_, r_, s_);
    }

    std::string str() const {
        return "((" + a_.get_str() + "*sqrt(" + r_.get_str() + "), " + b_.get_str() + "*sqrt(" +
               s_.get_str() + "), (" + c_.get_str() + "*sqrt(" + s_.get_str() + "), " +
               d_.get_str() + "*sqrt(" + r_.get_str() + ")))";
    }

private:
    void normalize_sign() {
        // quotient by the global +-1: first nonzero of (a, b, c, d) positive
        for (const Int* p : {&a_, &b_, &c_, &d_}) {
            if (*p == 0) continue;
            if (*p < 0) { a_ = -a_; b_ = -b_; c_ = -c_; d_ = -d_; }
            break;
        }
    }

    Int a_, b_, c_, d_, r_, s_;
};

// M.g = g^T M g written out on Mukai coordinates (x, y, z):
//   x' = a^2 r x + 2ac n y + c^2 s z
//   y' = ab x + (bcs + adr) y + cd z
//   z' = b^2 s x + 2bd n y + d^2 r z
inline MukaiVector act_on_mukai(const SurfaceLattice& L, const MukaiVector& v,
                                const GHatElement& g) {
    if (!L.is_rank1() || L.n() != g.n())
        throw std::invalid_argument("act_on_mukai: group element belongs to a different lattice");
    const Int &a = g.a(), &b = g.b(), &c = g.c(), &d = g.d(), r = g.r_split(), s = g.s_split();
    Int n = g.n();
    const Int &x = v.r, &y = v.d(), &z = v.a;
    Int x2 = a * a * r * x + 2 * a * c * n * y + c * c * s * z;
    Int y2 = a * b * x + (b * c * s + a * d * r) * y + c * d * z;
    Int z2 = b * b * s * x + 2 * b * d * n * y + d * d * r * z;
    return MukaiVector(x2, y2, z2);
}

// Multiply two group elements. The raw product has entries
//   (1,1) = u / sqrt(r1 r2),  (2,2) = w / sqrt(r1 r2),
//   (1,2) = p / sqrt(r1 s2),  (2,1) = q / sqrt(r1 s2),
// and the split of the product is recovered by scanning divisors R | n for
// which all four entries are integer multiples of sqrt(R) resp. sqrt(n/R).
inline GHatElement ghat_compose(const GHatElement& g1, const GHatElement& g2) {
    if (g1.n() != g2.n()) throw std::invalid_argument("ghat_compose: mismatched lattices");
    Int n = g1.n();
    Int m1 = g1.r_split() * g2.r_split();
    Int m2 = g1.r_split() * g2.s_split();
    Int u = g1.a() * g2.a() * m1 + g1.b() * g2.c() * n;
    Int w = g1.c() * g2.b() * n + g1.d() * g2.d() * m1;
    Int p = g1.a() * g2.b() * m2 + g1.b() * g2.d() * n;
    Int q = g1.c() * g2.a() * n + g1.d() * g2.c() * m2;

    auto coeff = [](const Int& num, const Int& m, const Int& R) -> std::optional<Int> {
        // num / sqrt(m) = A sqrt(R)  <=>  A^2 = num^2 / (m R) integral square
        Int den = m * R;
        Int n2 = num * num;
        if (n2 % den != 0) return std::nullopt;
        Int sq = n2 / den;
        if (!is_square(sq)) return std::nullopt;
        Int A = isqrt(sq);
        return sgn(num) >= 0 ? A : -A;
    };

    for (Int R = 1; R <= n; ++R) {  // smallest valid split first (n is small)
        if (n % R != 0) continue;
        Int S = n / R;
        auto A = coeff(u, m1, R), D = coeff(w, m1, R);
        auto B = coeff(p, m2, S), C = coeff(q, m2, S);
        if (!A || !B || !C || !D) continue;
        Int det = *A * *D * R - *B * *C * S;
        if (det != 1 && det != -1) continue;
        return GHatElement(*A, *B, *C, *D, R, S);
    }
    throw std::logic_error("ghat_compose: product not expressible (broken invariant)");
}

inline GHatElement dualize_compose(const GHatElement& g) {
    return ghat_compose(GHatElement::dualization(g.n()), g);
}

// ---------------------------------------------------------------------------
// Pell equations x^2 - D y^2 = +-1 via the continued fraction of sqrt(D).

struct PellSolution {
    Int x, y;  // y >= 1
};

// Fundamental (minimal y >= 1) solution of x^2 - D y^2 = rhs, rhs in {+1,-1}.
// Square D admits no solution with y >= 1; rhs = -1 is solvable iff the
// continued-fraction period of sqrt(D) is odd.
inline std::optional<PellSolution> pell_fundamental(const Int& D, int rhs = 1) {
    if (D <= 0) throw std::invalid_argument("pell_fundamental: D must be positive");
    if (rhs != 1 && rhs != -1) throw std::invalid_argument("pell_fundamental: rhs must be +-1");
    if (is_square(D)) return std::nullopt;
    Int a0 = isqrt(D);
    Int m = 0, den = 1, a = a0;
    Int p_prev = 1, p = a0, q_prev = 0, q = 1;
    // After the k-th step (k >= 1): p/q is the k-th convergent and
    // p^2 - D q^2 = (-1)^{k+1} * d_{k+1}; the period ends when d = 1.
    for (int k = 1;; ++k) {
        m = den * a - m;
        den = (D - m * m) / den;
        a = (a0 + m) / den;
        if (den == 1) {
            // period length = k; convergent (p, q) solves x^2 - Dy^2 = (-1)^k
            bool odd = (k % 2) == 1;
            if ((rhs == -1) == odd) return PellSolution{p, q};
            if (rhs == -1) return std::nullopt;  // even period: no -1 solution
            // odd period, want +1: fundamental is (p,q)^2 in Z[sqrt(D)]
            return PellSolution{p * p + D * q * q, 2 * p * q};
        }
        Int pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = p; q_prev = q; p = pn; q = qn;
    }
}

// ---------------------------------------------------------------------------
// Stabilizer of a Mukai vector inside the isometry group.

// For primitive v = (r, dH, a) with l = <v^2>/2 > 0, solutions of
// p^2 - nl q^2 = 1 give the matrix p*I + q*sqrt(n)*F with F = ((-d n, -a sqrt(n)),
// (r sqrt(n), d n))-shaped square root of l, i.e. the group element
//   (( p - dnq,  -aq sqrt(n) ), ( rq sqrt(n),  p + dnq ))      (split (1, n)).
// When nl is a perfect square no such infinite-order element exists.
struct StabilizerGenerator {
    bool finite;                        // true: stabilizer has no hyperbolic part
    std::optional<GHatElement> g;       // generator when infinite
    std::optional<PellSolution> pell;   // the (p, q) used
};

inline StabilizerGenerator stabilizer_generator(const SurfaceLattice& L, const MukaiVector& v) {
    if (!L.is_rank1()) throw std::domain_error("stabilizer_generator: rank-one lattice only");
    if (v.content() != 1) throw std::invalid_argument("stabilizer_generator: v must be primitive");
    Int sq = mukai_square(L, v);
    if (sq <= 0 || sq % 2 != 0) throw std::invalid_argument("stabilizer_generator: need <v^2> = 2l > 0");
    Int n = L.n(), l = sq / 2;
    auto pq = pell_fundamental(n * l, 1);
    if (!pq) return {true, std::nullopt, std::nullopt};
    const Int &p = pq->x, &q = pq->y;
    GHatElement g(p - v.d() * n * q, -v.a * q, v.r * q, p + v.d() * n * q, 1, n);
    return {false, g, pq};
}

enum class StabAction { No, FixesV, FixesNegV };

struct StabMembership {
    StabAction action;
    bool in_stab0;       // g(v) = (det g) v
    bool in_stab0_star;  // additionally det = +1 and the (1,2) entry lies in sqrt(n)Z
};

inline StabMembership in_stab(const SurfaceLattice& L, const MukaiVector& v, const GHatElement& g) {
    MukaiVector gv = act_on_mukai(L, v, g);
    StabMembership m{StabAction::No, false, false};
    if (gv == v) m.action = StabAction::FixesV;
    else if (gv == -v) m.action = StabAction::FixesNegV;
    Int e = g.epsilon();
    m.in_stab0 = (e == 1 && m.action == StabAction::FixesV) ||
                 (e == -1 && m.action == StabAction::FixesNegV);
    if (m.in_stab0 && e == 1) {
        // (1,2) entry b*sqrt(s) in sqrt(n)Z  <=>  b^2 s / n is a perfect square
        Int b2s = g.b() * g.b() * g.s_split();
        m.in_stab0_star = (b2s % g.n() == 0) && is_square(b2s / g.n());
    }
    return m;
}

// ---------------------------------------------------------------------------
// Induced Moebius action on the (s, t) half plane.
//
// On rank-one isotropic classes x^2 e^{zH} the right action descends to
//   z  |->  (b + d r z) / (r (a + c s z)),        r = r_split, s = s_split,
// which restricts to the upper half plane. Derived by writing the isotropic
// class as (x^2, xy/sqrt(n) H, y^2) and letting (x, y) transform as a row
// vector; the property tests check it against act_on_mukai directly.
struct HalfPlanePoint {
    Rat s;
    Rat t2;
};

inline HalfPlanePoint halfplane_action(const GHatElement& g, const Rat& s, const Rat& t2) {
    if (t2 <= 0) throw std::invalid_argument("halfplane_action: t^2 must be positive");
    Rat a(g.a()), b(g.b()), c(g.c()), d(g.d()), r(g.r_split()), sp(g.s_split());
    Rat u = a + c * sp * s;            // Re of (a + c s z) with z = s + it
    Rat cs = c * sp;                   // Im coefficient
    Rat den = r * (u * u + cs * cs * t2);
    if (den == 0) throw std::domain_error("halfplane_action: point maps to infinity");
    Rat s2 = ((b + d * r * s) * u + d * r * cs * t2) / den;
    Rat t2b = t2 / (den * den);
    return {s2, t2b};
}

}  // namespace mukai
