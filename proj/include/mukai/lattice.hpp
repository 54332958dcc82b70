#pragma once

// Mukai lattice of an abelian surface: H^0 + NS + H^4 with pairing
//   <u,v> = (u.c1, v.c1)_NS - u.r*v.a - u.a*v.r .
// The NS intersection form is an even symmetric bilinear form of signature
// (1, rank-1); the rank-one case NS = Z*H with (H^2) = 2n is the one every
// geometric operation below is closed-form for.

#include "numeric.hpp"

#include <stdexcept>
#include <vector>

namespace mukai {

struct SurfaceLattice {
    int rank = 1;
    std::vector<std::vector<Int>> gram;  // rank x rank, symmetric, even diagonal
    std::vector<Int> ample;              // coordinates of the polarization H

    static SurfaceLattice rank1(const Int& n) {
        if (n <= 0) throw std::invalid_argument("SurfaceLattice: need (H^2)/2 > 0");
        SurfaceLattice L;
        L.rank = 1;
        L.gram = {{2 * n}};
        L.ample = {Int(1)};
        return L;
    }

    SurfaceLattice() = default;
    SurfaceLattice(int rk, std::vector<std::vector<Int>> g, std::vector<Int> amp)
        : rank(rk), gram(std::move(g)), ample(std::move(amp)) {
        validate();
    }

    bool is_rank1() const { return rank == 1; }

    // (H^2)/2 for the rank-one lattice.
    Int n() const {
        if (!is_rank1()) throw std::domain_error("SurfaceLattice: n() requires rank one");
        Int h2 = gram[0][0] * ample[0] * ample[0];
        return h2 / 2;
    }

    Int ns_pairing(const std::vector<Int>& x, const std::vector<Int>& y) const {
        Int s = 0;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) s += x[i] * gram[i][j] * y[j];
        return s;
    }

    Rat ns_pairing(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
        Rat s = 0;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) s += x[i] * Rat(gram[i][j]) * y[j];
        return s;
    }

    Int h_square() const { return ns_pairing(ample, ample); }

    void validate() const {
        if (rank < 1 || (int)gram.size() != rank || (int)ample.size() != rank)
            throw std::invalid_argument("SurfaceLattice: inconsistent dimensions");
        for (int i = 0; i < rank; ++i) {
            if ((int)gram[i].size() != rank)
                throw std::invalid_argument("SurfaceLattice: gram not square");
            if (gram[i][i] % 2 != 0)
                throw std::invalid_argument("SurfaceLattice: gram diagonal must be even");
            for (int j = 0; j < rank; ++j)
                if (gram[i][j] != gram[j][i])
                    throw std::invalid_argument("SurfaceLattice: gram not symmetric");
        }
        auto sig = signature();
        if (sig.first != 1 || sig.second != rank - 1)
            throw std::invalid_argument("SurfaceLattice: gram must have signature (1, rank-1)");
        if (ns_pairing(ample, ample) <= 0)
            throw std::invalid_argument("SurfaceLattice: polarization must have positive square");
    }

    // (#positive, #negative) eigenvalue counts via exact fraction-free
    // symmetric Gaussian elimination (Sylvester's law of inertia).
    std::pair<int, int> signature() const {
        std::vector<std::vector<Rat>> m(rank, std::vector<Rat>(rank));
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) m[i][j] = Rat(gram[i][j]);
        int pos = 0, neg = 0;
        std::vector<bool> used(rank, false);
        for (int step = 0; step < rank; ++step) {
            int piv = -1;
            for (int i = 0; i < rank; ++i)
                if (!used[i] && m[i][i] != 0) { piv = i; break; }
            if (piv < 0) {
                // No nonzero diagonal: find off-diagonal pair and symmetrize.
                int a = -1, b = -1;
                for (int i = 0; i < rank && a < 0; ++i)
                    if (!used[i])
                        for (int j = i + 1; j < rank; ++j)
                            if (!used[j] && m[i][j] != 0) { a = i; b = j; break; }
                if (a < 0) break;  // remaining block is zero (degenerate)
                for (int j = 0; j < rank; ++j) m[a][j] += m[b][j];
                for (int i = 0; i < rank; ++i) m[i][a] += m[i][b];
                piv = a;
            }
            Rat d = m[piv][piv];
            (d > 0 ? pos : neg)++;
            used[piv] = true;
            for (int i = 0; i < rank; ++i) {
                if (used[i] || m[i][piv] == 0) continue;
                Rat f = m[i][piv] / d;
                for (int j = 0; j < rank; ++j) m[i][j] -= f * m[piv][j];
                for (int j = 0; j < rank; ++j) m[j][i] = m[i][j];
            }
        }
        return {pos, neg};
    }
};

struct MukaiVector {
    Int r;
    std::vector<Int> c1;
    Int a;

    MukaiVector() : r(0), c1{Int(0)}, a(0) {}
    MukaiVector(Int rr, std::vector<Int> cc, Int aa) : r(std::move(rr)), c1(std::move(cc)), a(std::move(aa)) {}
    // Rank-one convenience: v = (r, d*H, a).
    MukaiVector(const Int& rr, const Int& dd, const Int& aa) : r(rr), c1{dd}, a(aa) {}

    const Int& d() const {
        if (c1.size() != 1) throw std::domain_error("MukaiVector: d() requires rank-one NS");
        return c1[0];
    }

    bool operator==(const MukaiVector& o) const { return r == o.r && c1 == o.c1 && a == o.a; }
    bool operator!=(const MukaiVector& o) const { return !(*this == o); }

    MukaiVector operator-() const {
        std::vector<Int> c(c1.size());
        for (size_t i = 0; i < c1.size(); ++i) c[i] = -c1[i];
        return MukaiVector(-r, std::move(c), -a);
    }
    MukaiVector operator+(const MukaiVector& o) const {
        std::vector<Int> c(c1.size());
        for (size_t i = 0; i < c1.size(); ++i) c[i] = c1[i] + o.c1[i];
        return MukaiVector(r + o.r, std::move(c), a + o.a);
    }
    MukaiVector operator-(const MukaiVector& o) const { return *this + (-o); }
    MukaiVector operator*(const Int& k) const {
        std::vector<Int> c(c1.size());
        for (size_t i = 0; i < c1.size(); ++i) c[i] = k * c1[i];
        return MukaiVector(k * r, std::move(c), k * a);
    }

    bool is_zero() const {
        if (r != 0 || a != 0) return false;
        for (auto& x : c1) if (x != 0) return false;
        return true;
    }

    Int content() const {
        Int g = igcd(r, a);
        for (auto& x : c1) g = igcd(g, x);
        return g;
    }

    std::string str() const {
        std::string s = "(" + r.get_str() + ", [";
        for (size_t i = 0; i < c1.size(); ++i) s += (i ? "," : "") + c1[i].get_str();
        return s + "], " + a.get_str() + ")";
    }
};

struct RationalMukaiVector {
    Rat r;
    std::vector<Rat> c1;
    Rat a;

    RationalMukaiVector() : r(0), c1{Rat(0)}, a(0) {}
    RationalMukaiVector(Rat rr, std::vector<Rat> cc, Rat aa)
        : r(std::move(rr)), c1(std::move(cc)), a(std::move(aa)) {}
    RationalMukaiVector(const MukaiVector& v) : r(v.r), a(v.a) {  // NOLINT: implicit widening
        c1.reserve(v.c1.size());
        for (auto& x : v.c1) c1.emplace_back(x);
    }

    const Rat& d() const {
        if (c1.size() != 1) throw std::domain_error("RationalMukaiVector: rank-one only");
        return c1[0];
    }

    RationalMukaiVector operator-() const {
        std::vector<Rat> c(c1.size());
        for (size_t i = 0; i < c1.size(); ++i) c[i] = -c1[i];
        return RationalMukaiVector(-r, std::move(c), -a);
    }
    RationalMukaiVector operator+(const RationalMukaiVector& o) const {
        std::vector<Rat> c(c1.size());
        for (size_t i = 0; i < c1.size(); ++i) c[i] = c1[i] + o.c1[i];
        return RationalMukaiVector(r + o.r, std::move(c), a + o.a);
    }
    RationalMukaiVector operator-(const RationalMukaiVector& o) const { return *this + (-o); }
    RationalMukaiVector operator*(const Rat& k) const {
        std::vector<Rat> c(c1.size());
        for (size_t i = 0; i < c1.size(); ++i) c[i] = k * c1[i];
        return RationalMukaiVector(k * r, std::move(c), k * a);
    }

    bool is_zero() const {
        if (r != 0 || a != 0) return false;
        for (auto& x : c1) if (x != 0) return false;
        return true;
    }
};

inline Int mukai_pairing(const SurfaceLattice& L, const MukaiVector& u, const MukaiVector& v) {
    return L.ns_pairing(u.c1, v.c1) - u.r * v.a - u.a * v.r;
}

inline Rat mukai_pairing(const SurfaceLattice& L, const RationalMukaiVector& u,
                         const RationalMukaiVector& v) {
    return L.ns_pairing(u.c1, v.c1) - u.r * v.a - u.a * v.r;
}

inline Int mukai_square(const SurfaceLattice& L, const MukaiVector& v) {
    return mukai_pairing(L, v, v);
}
inline Rat mukai_square(const SurfaceLattice& L, const RationalMukaiVector& v) {
    return mukai_pairing(L, v, v);
}

struct VectorPredicates {
    bool primitive;
    bool isotropic;
    bool positive;
    Int square;
};

// Positivity trichotomy: r > 0; or r = 0 and c1 effective-and-positive against
// H ((c1^2) >= 0 and (c1,H) > 0); or r = c1 = 0 and a > 0.
inline VectorPredicates vector_predicates(const SurfaceLattice& L, const MukaiVector& v) {
    VectorPredicates p{};
    p.square = mukai_square(L, v);
    p.isotropic = (p.square == 0) && !v.is_zero();
    p.primitive = !v.is_zero() && v.content() == 1;
    if (v.r > 0) {
        p.positive = true;
    } else if (v.r == 0) {
        bool c1_zero = true;
        for (auto& x : v.c1) c1_zero = c1_zero && x == 0;
        if (!c1_zero) {
            p.positive = L.ns_pairing(v.c1, v.c1) >= 0 && L.ns_pairing(v.c1, L.ample) > 0;
        } else {
            p.positive = v.a > 0;
        }
    } else {
        p.positive = false;
    }
    if (v.is_zero()) p.positive = false;
    return p;
}

// v / content(v).
inline MukaiVector primitive_part(const MukaiVector& v) {
    if (v.is_zero()) throw std::domain_error("primitive_part: zero vector");
    Int g = v.content();
    std::vector<Int> c(v.c1.size());
    for (size_t i = 0; i < v.c1.size(); ++i) c[i] = v.c1[i] / g;
    return MukaiVector(v.r / g, std::move(c), v.a / g);
}

// Tensoring by the line bundle kH (rank-one lattice):
//   (r, dH, a) . e^{kH} = (r, (d + rk)H, a + 2ndk + nk^2 r).
// This is an isometry of the Mukai lattice.
inline MukaiVector twist_by_exp(const SurfaceLattice& L, const MukaiVector& v, const Int& k) {
    if (!L.is_rank1()) throw std::domain_error("twist_by_exp: rank-one lattice only");
    Int n = L.n();
    return MukaiVector(v.r, v.d() + v.r * k, v.a + 2 * n * v.d() * k + n * k * k * v.r);
}

inline bool is_proportional(const MukaiVector& u, const MukaiVector& v) {
    // u, v proportional over Q <=> all 2x2 minors vanish.
    if (u.c1.size() != v.c1.size()) return false;
    auto minor = [](const Int& a, const Int& b, const Int& c, const Int& d) -> Int { return a * d - b * c; };
    for (size_t i = 0; i < u.c1.size(); ++i) {
        if (minor(u.r, v.r, u.c1[i], v.c1[i]) != 0) return false;
        if (minor(u.a, v.a, u.c1[i], v.c1[i]) != 0) return false;
        for (size_t j = i + 1; j < u.c1.size(); ++j)
            if (minor(u.c1[i], v.c1[i], u.c1[j], v.c1[j]) != 0) return false;
    }
    return minor(u.r, v.r, u.a, v.a) == 0;
}

}  // namespace mukai
