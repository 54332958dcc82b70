#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "mukai/numeric.hpp"

namespace mukai {

// Integral binary quadratic form a x^2 + b xy + c y^2 with the substitution
// machinery needed to decide representability of small targets exactly.

struct BinaryForm {
    Int a, b, c;
    Int disc() const { return b * b - 4 * a * c; }
    Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
    bool operator==(const BinaryForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

// Column substitution (x, y) -> (p x + q y, r x + s y), det +1 throughout.
struct SubstMat {
    Int p{1}, q{0}, r{0}, s{1};
    Int det() const { return p * s - q * r; }
};

inline SubstMat subst_compose(const SubstMat& m, const SubstMat& n) {
    return {m.p * n.p + m.q * n.r, m.p * n.q + m.q * n.s,
            m.r * n.p + m.s * n.r, m.r * n.q + m.s * n.s};
}

inline SubstMat subst_inverse(const SubstMat& m) {
    if (m.det() != 1) throw std::logic_error("subst_inverse: matrix not unimodular");
    return {m.s, -m.q, -m.r, m.p};
}

inline BinaryForm apply_subst(const BinaryForm& f, const SubstMat& m) {
    Int a = f.eval(m.p, m.r);
    Int c = f.eval(m.q, m.s);
    Int b = 2 * f.a * m.p * m.q + f.b * (m.p * m.s + m.q * m.r) + 2 * f.c * m.r * m.s;
    return {a, b, c};
}

namespace detail {

inline Int floor_div(const Int& x, const Int& y) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return q;
}

// Indefinite reduction (nonsquare positive discriminant, e = isqrt(disc)):
// reduced iff 0 < b <= e and |sqrt(D) - 2|a|| < b.
inline bool is_reduced_indefinite(const BinaryForm& f, const Int& e) {
    if (f.b <= 0 || f.b > e) return false;
    Int t = 2 * abs(f.a), D = f.disc();
    if (t >= f.b && (t - f.b) * (t - f.b) >= D) return false;
    if ((t + f.b) * (t + f.b) <= D) return false;
    return true;
}

// One step of the standard rho operator, with its substitution. The new
// leading coefficient is the old c (nonzero: the discriminant is nonsquare).
inline std::pair<BinaryForm, SubstMat> rho_step(const BinaryForm& f, const Int& e) {
    if (f.c == 0) throw std::logic_error("rho_step: square discriminant");
    Int ac = abs(f.c), m2 = 2 * ac;
    Int hi = ac > e ? ac : e;  // target residue range (hi - 2|c|, hi]
    Int r = -f.b;
    r += m2 * floor_div(hi - r, m2);
    Int delta = (r + f.b) / (2 * f.c);
    SubstMat s{Int(0), Int(-1), Int(1), delta};
    return {apply_subst(f, s), s};
}

struct ReducedForm {
    BinaryForm form;
    SubstMat m;  // apply_subst(original, m) == form
};

inline ReducedForm reduce_indefinite(BinaryForm f, const Int& e) {
    SubstMat m;
    for (int guard = 0; !is_reduced_indefinite(f, e); ++guard) {
        if (guard > 100000) throw std::logic_error("reduce_indefinite: reduction did not terminate");
        auto [g, s] = rho_step(f, e);
        f = g;
        m = subst_compose(m, s);
    }
    return {f, m};
}

// Proper equivalence decision for forms of equal nonsquare positive
// discriminant: walk the cycle of reduced forms of F until G's reduced form
// appears. Returns M with apply_subst(F, M) == G.
inline std::optional<SubstMat> equivalent_transform(const BinaryForm& F, const BinaryForm& G) {
    Int D = F.disc();
    if (G.disc() != D) return std::nullopt;
    Int e = isqrt(D);
    ReducedForm rf = reduce_indefinite(F, e), rg = reduce_indefinite(G, e);
    BinaryForm cur = rf.form;
    SubstMat w;
    for (int guard = 0;; ++guard) {
        if (cur == rg.form) return subst_compose(subst_compose(rf.m, w), subst_inverse(rg.m));
        auto [nxt, s] = rho_step(cur, e);
        cur = nxt;
        w = subst_compose(w, s);
        if (cur == rf.form) return std::nullopt;  // full cycle walked
        if (guard > 1000000) throw std::logic_error("equivalent_transform: cycle walk did not close");
    }
}

// Nonsquare positive discriminant: F represents m (automatically properly
// for |m| in {1,2}) iff some form (m, b, *) of the same discriminant is
// properly equivalent to F; the transform's first column is a witness.
inline std::optional<std::pair<Int, Int>> represent_nonsquare(const BinaryForm& F, const Int& m) {
    Int D = F.disc(), am = abs(m), mod = 4 * am;
    for (Int b = 0; b < 2 * am; ++b) {
        Int num = b * b - D;
        if (num % mod != 0) continue;
        BinaryForm H{m, b, num / (4 * m)};
        if (auto M = equivalent_transform(F, H)) return std::make_pair(M->p, M->r);
    }
    return std::nullopt;
}

// Square positive discriminant e^2: 4a F(x,y) = (2ax + (b-e)y)(2ax + (b+e)y),
// so solutions come from divisor pairs of 4am.
inline std::optional<std::pair<Int, Int>> represent_square(const BinaryForm& F, const Int& m) {
    Int e = isqrt(F.disc());
    if (F.a == 0 && F.c != 0) {
        BinaryForm swapped{F.c, F.b, F.a};
        if (auto r = represent_square(swapped, m)) return std::make_pair(r->second, r->first);
        return std::nullopt;
    }
    if (F.a == 0) {  // F = b xy
        if (m % F.b != 0) return std::nullopt;
        return std::make_pair(Int(1), Int(m / F.b));
    }
    Int target = 4 * F.a * m;
    Int bound = isqrt(abs(target));
    for (Int t = 1; t <= bound; ++t) {
        if (target % t != 0) continue;
        for (const Int& u : {Int(t), Int(-t), Int(target / t), Int(-target / t)}) {
            Int w = target / u;
            if ((w - u) % (2 * e) != 0) continue;
            Int y = (w - u) / (2 * e);
            Int num = u - (F.b - e) * y;
            if (num % (2 * F.a) != 0) continue;
            Int x = num / (2 * F.a);
            if (F.eval(x, y) == m) return std::make_pair(x, y);
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Exact decision of F(x,y) = m over the integers for an indefinite form,
// with a witness. For |m| in {1, 2} every representation is proper, so the
// reduced-cycle equivalence test is a complete decision procedure.
inline std::optional<std::pair<Int, Int>> represent(const BinaryForm& F, const Int& m) {
    if (m == 0) throw std::invalid_argument("represent: target must be nonzero");
    Int D = F.disc();
    if (D <= 0) throw std::invalid_argument("represent: form must be indefinite");
    if (is_square(D)) return detail::represent_square(F, m);
    return detail::represent_nonsquare(F, m);
}

}  // namespace mukai
