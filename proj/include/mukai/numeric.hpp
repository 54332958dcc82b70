#pragma once

// Exact integer / rational helpers shared by the lattice and cone layers.
// All core arithmetic is arbitrary precision; nothing here ever rounds.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace mukai {

using Int = mpz_class;
using Rat = mpq_class;

inline Int igcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int igcd(const Int& a, const Int& b, const Int& c) { return igcd(igcd(a, b), c); }

// floor(sqrt(n)); n must be >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// n = f^2 * k with k squarefree (n >= 0). Trial division; inputs in this
// library are small enough (discriminants of test-sized lattices) for that.
inline std::pair<Int, Int> squarefree_decompose(Int n) {
    if (n < 0) throw std::invalid_argument("squarefree_decompose: negative argument");
    Int f = 1, k = 1;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        for (int i = 0; i + 1 < e; i += 2) f *= p;
        if (e % 2 == 1) k *= p;
    }
    k *= n;  // leftover prime (or 1)
    return {f, k};
}

// mpq_class(num, den) does not reduce; always build rationals through this.
inline Rat make_rat(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int rat_num(const Rat& q) { return Int(q.get_num()); }
inline Int rat_den(const Rat& q) { return Int(q.get_den()); }

inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Rational lower/upper bounds for sqrt(q), q >= 0 rational, with error < 1/2^prec.
inline Rat sqrt_lower(const Rat& q, unsigned prec) {
    if (q < 0) throw std::invalid_argument("sqrt_lower: negative argument");
    Int scale = Int(1) << prec;
    // sqrt(a/b) = sqrt(a*b)/b ; floor(scale*sqrt(a*b))/(scale*b)
    Int ab = rat_num(q) * rat_den(q);
    Int lo = isqrt(ab * scale * scale);
    return make_rat(lo, scale * rat_den(q));
}

inline Rat sqrt_upper(const Rat& q, unsigned prec) {
    if (q < 0) throw std::invalid_argument("sqrt_upper: negative argument");
    Int scale = Int(1) << prec;
    Int ab = rat_num(q) * rat_den(q);
    Int lo = isqrt(ab * scale * scale);
    if (lo * lo == ab * scale * scale) return make_rat(lo, scale * rat_den(q));
    return make_rat(lo + 1, scale * rat_den(q));
}

// Exact square root of a rational if it is one.
inline std::optional<Rat> rat_sqrt_exact(const Rat& q) {
    if (q < 0) return std::nullopt;
    if (!is_square(rat_num(q)) || !is_square(rat_den(q))) return std::nullopt;
    return make_rat(isqrt(rat_num(q)), isqrt(rat_den(q)));
}

inline int sign_of(const Rat& q) { return sgn(q); }
inline int sign_of(const Int& n) { return sgn(n); }

inline std::string to_string(const Int& n) { return n.get_str(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace mukai
