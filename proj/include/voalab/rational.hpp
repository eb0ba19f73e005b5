#ifndef VOALAB_RATIONAL_HPP
#define VOALAB_RATIONAL_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "voalab/errors.hpp"

namespace voalab {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(n, d) does not canonicalize on its own.
inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw DivisionByZeroError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(const std::string& text);
std::string rat_to_string(const Rat& r);

// An exact element of Q(i), the coefficient field of the engine.
// Stored as two canonical GMP rationals, so equality is structural.
class GaussScalar {
public:
    GaussScalar() : re_(0), im_(0) {}
    GaussScalar(long v) : re_(v), im_(0) {}  // NOLINT: implicit by design
    GaussScalar(const Rat& re) : re_(re), im_(0) {}
    GaussScalar(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussScalar i() { return GaussScalar(Rat(0), Rat(1)); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_one() const { return im_ == 0 && re_ == 1; }

    GaussScalar conj() const { return GaussScalar(re_, Rat(-im_)); }

    GaussScalar inv() const {
        if (is_zero()) throw DivisionByZeroError("inversion of zero in Q(i)");
        Rat n = re_ * re_ + im_ * im_;
        return GaussScalar(Rat(re_ / n), Rat(-im_ / n));
    }

    GaussScalar operator-() const { return GaussScalar(Rat(-re_), Rat(-im_)); }

    GaussScalar& operator+=(const GaussScalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussScalar& operator-=(const GaussScalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussScalar& operator*=(const GaussScalar& o) {
        if (im_ == 0 && o.im_ == 0) {  // common case: plain rationals
            re_ *= o.re_;
            return *this;
        }
        Rat r = re_ * o.re_ - im_ * o.im_;
        Rat i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussScalar operator+(GaussScalar a, const GaussScalar& b) { return a += b; }
    friend GaussScalar operator-(GaussScalar a, const GaussScalar& b) { return a -= b; }
    friend GaussScalar operator*(GaussScalar a, const GaussScalar& b) { return a *= b; }
    friend GaussScalar operator/(const GaussScalar& a, const GaussScalar& b) {
        return a * b.inv();
    }
    friend bool operator==(const GaussScalar& a, const GaussScalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussScalar& a, const GaussScalar& b) { return !(a == b); }

    // Total order; used only to keep containers deterministic.
    friend bool operator<(const GaussScalar& a, const GaussScalar& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    std::string to_string() const;

private:
    Rat re_, im_;
};

std::ostream& operator<<(std::ostream& os, const GaussScalar& s);

// e^{2*pi*i*r} for r with denominator dividing 4 (the only roots of unity
// representable in Q(i)); periodic in r with period 1.
GaussScalar phase(const Rat& r);

GaussScalar parse_gauss(const std::string& text);

}  // namespace voalab

#endif
