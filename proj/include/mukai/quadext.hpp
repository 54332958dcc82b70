#pragma once

// Elements of real quadratic extensions: x = rat + irr*sqrt(rad).
// Invariant: rad is squarefree and >= 0; rad in {0,1} collapses to a pure
// rational (irr folded into rat, rad stored as 0). Values with different
// radicands can still be compared exactly; see compare().

#include "numeric.hpp"

#include <ostream>
#include <stdexcept>

namespace mukai {

class QuadExt {
public:
    QuadExt() : rat_(0), irr_(0), rad_(0) {}
    QuadExt(const Rat& r) : rat_(r), irr_(0), rad_(0) {}  // NOLINT: implicit by design
    QuadExt(const Int& n) : rat_(n), irr_(0), rad_(0) {}  // NOLINT
    QuadExt(long n) : rat_(n), irr_(0), rad_(0) {}        // NOLINT

    QuadExt(const Rat& rat, const Rat& irr, const Int& rad) : rat_(rat), irr_(irr), rad_(rad) {
        normalize();
    }

    const Rat& rational_part() const { return rat_; }
    const Rat& irrational_part() const { return irr_; }
    const Int& radicand() const { return rad_; }
    bool is_rational() const { return irr_ == 0; }

    QuadExt operator-() const { return QuadExt(-rat_, -irr_, rad_, no_normalize{}); }

    QuadExt operator+(const QuadExt& o) const {
        require_compatible(o);
        return QuadExt(rat_ + o.rat_, irr_ + o.irr_, irr_ != 0 ? rad_ : o.rad_, no_normalize{}).renorm();
    }
    QuadExt operator-(const QuadExt& o) const { return *this + (-o); }

    QuadExt operator*(const QuadExt& o) const {
        require_compatible(o);
        Int m = irr_ != 0 ? rad_ : o.rad_;
        return QuadExt(rat_ * o.rat_ + irr_ * o.irr_ * Rat(m), rat_ * o.irr_ + irr_ * o.rat_, m,
                       no_normalize{})
            .renorm();
    }

    QuadExt inverse() const {
        Rat norm = rat_ * rat_ - irr_ * irr_ * Rat(rad_);
        if (norm == 0) throw std::domain_error("QuadExt: division by zero");
        return QuadExt(rat_ / norm, -irr_ / norm, rad_, no_normalize{}).renorm();
    }
    QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }

    // Exact sign of rat + irr*sqrt(rad).
    int sign() const {
        if (irr_ == 0) return sgn(rat_);
        if (rat_ == 0) return sgn(irr_);
        if (sgn(rat_) == sgn(irr_)) return sgn(rat_);
        // Opposite signs: compare rat^2 against irr^2 * rad.
        Rat a = rat_ * rat_, b = irr_ * irr_ * Rat(rad_);
        if (a == b) return 0;
        return (a > b) ? sgn(rat_) : sgn(irr_);
    }

    bool is_zero() const { return sign() == 0; }

    // Exact comparison, allowing different radicands:
    //   x - y = (rat_x - rat_y) + irr_x*sqrt(rad_x) - irr_y*sqrt(rad_y).
    // The left two terms form a single-radicand value u; the last is a pure
    // multiple of a square root, so sign(u - w) reduces to single-radicand
    // sign tests after one squaring.
    static int compare(const QuadExt& x, const QuadExt& y) {
        if (x.irr_ == 0 || y.irr_ == 0 || x.rad_ == y.rad_) {
            QuadExt d = QuadExt(x.rat_ - y.rat_, x.irr_ - (x.rad_ == y.rad_ ? y.irr_ : Rat(0)),
                                x.irr_ != 0 ? x.rad_ : y.rad_, no_normalize{})
                            .renorm();
            if (x.irr_ != 0 && y.irr_ != 0 && x.rad_ != y.rad_)
                throw std::logic_error("unreachable");
            return d.sign();
        }
        // u = (rat_x - rat_y) + irr_x sqrt(rad_x)   vs   w = irr_y sqrt(rad_y)
        QuadExt u(x.rat_ - y.rat_, x.irr_, x.rad_, no_normalize{});
        int su = u.sign();
        int sw = sgn(y.irr_);
        if (su != sw) return su > sw ? 1 : (su < sw ? -1 : 0);
        if (su == 0) return 0;
        // Same nonzero sign: compare u^2 vs w^2 (both positive), orient by sign.
        QuadExt u2 = u * u;  // single radicand rad_x
        Rat w2 = y.irr_ * y.irr_ * Rat(y.rad_);
        int c = (u2 - QuadExt(w2)).sign();
        return su > 0 ? c : -c;
    }

    bool operator==(const QuadExt& o) const { return compare(*this, o) == 0; }
    bool operator!=(const QuadExt& o) const { return !(*this == o); }
    bool operator<(const QuadExt& o) const { return compare(*this, o) < 0; }
    bool operator>(const QuadExt& o) const { return compare(*this, o) > 0; }
    bool operator<=(const QuadExt& o) const { return compare(*this, o) <= 0; }
    bool operator>=(const QuadExt& o) const { return compare(*this, o) >= 0; }

    Rat as_rational() const {
        if (irr_ != 0) throw std::domain_error("QuadExt: not rational");
        return rat_;
    }

    std::string str() const {
        if (irr_ == 0) return rat_.get_str();
        std::string s = rat_ == 0 ? std::string() : rat_.get_str();
        if (!s.empty()) s += irr_ > 0 ? " + " : " - ";
        else if (irr_ < 0) s += "-";
        Rat ai = abs(irr_);
        if (ai != 1) s += ai.get_str() + "*";
        s += "sqrt(" + rad_.get_str() + ")";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << q.str(); }

private:
    struct no_normalize {};
    QuadExt(const Rat& rat, const Rat& irr, const Int& rad, no_normalize)
        : rat_(rat), irr_(irr), rad_(rad) {}

    QuadExt& renorm() {
        normalize();
        return *this;
    }

    void normalize() {
        if (rad_ < 0) throw std::invalid_argument("QuadExt: negative radicand");
        if (irr_ == 0) { rad_ = 0; return; }
        auto [f, k] = squarefree_decompose(rad_);
        rad_ = k;
        irr_ *= Rat(f);
        if (rad_ <= 1) {  // sqrt(0)=0, sqrt(1)=1
            rat_ += rad_ == 1 ? irr_ : Rat(0);
            irr_ = 0;
            rad_ = 0;
        }
    }

    void require_compatible(const QuadExt& o) const {
        if (irr_ != 0 && o.irr_ != 0 && rad_ != o.rad_)
            throw std::domain_error("QuadExt: mixed radicands in arithmetic");
    }

    Rat rat_, irr_;
    Int rad_;
};

}  // namespace mukai
