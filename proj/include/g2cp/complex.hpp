#ifndef G2CP_COMPLEX_HPP
#define G2CP_COMPLEX_HPP

#include <algorithm>
#include <string>
#include <utility>

#include "g2cp/real.hpp"

namespace g2cp {

/// Complex number built from two Reals sharing one precision.
class Complex {
  public:
    explicit Complex(Prec prec = 53) : re_(prec), im_(prec) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
        Prec p = std::max(re_.prec(), im_.prec());
        if (re_.prec() != p) re_ = re_.round_to(p);
        if (im_.prec() != p) im_ = im_.round_to(p);
    }
    Complex(long re, long im, Prec prec) : re_(re, prec), im_(im, prec) {}
    Complex(const mpq_class& re, const mpq_class& im, Prec prec)
        : re_(re, prec), im_(im, prec) {}

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    Real& re() { return re_; }
    Real& im() { return im_; }
    Prec prec() const { return re_.prec(); }

    Complex round_to(Prec p) const { return Complex(re_.round_to(p), im_.round_to(p)); }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return Complex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return Complex(a.re_ - b.re_, a.im_ - b.im_);
    }
    Complex operator-() const { return Complex(-re_, -im_); }

    friend Complex operator*(const Complex& a, const Complex& b) {
        return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Complex operator*(const Real& s, const Complex& b) {
        return Complex(s * b.re_, s * b.im_);
    }
    friend Complex operator*(const Complex& a, const Real& s) { return s * a; }

    friend Complex operator/(const Complex& a, const Complex& b) {
        Real n = b.norm();
        if (n.is_zero()) throw ZeroDivision("complex division by zero");
        return Complex((a.re_ * b.re_ + a.im_ * b.im_) / n,
                       (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }
    friend Complex operator/(const Complex& a, const Real& s) {
        return Complex(a.re_ / s, a.im_ / s);
    }

    Complex& operator+=(const Complex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        *this = *this * o;
        return *this;
    }

    Complex& mul_2si(long e) {
        re_.mul_2si(e);
        im_.mul_2si(e);
        return *this;
    }
    Complex& mul_si(long s) {
        re_.mul_si(s);
        im_.mul_si(s);
        return *this;
    }

    /// Multiplication by i.
    Complex mul_i() const { return Complex(-im_, re_); }

    Complex conj() const { return Complex(re_, -im_); }

    /// |z|^2.
    Real norm() const { return re_ * re_ + im_ * im_; }
    /// |z|.
    Real abs() const { return hypot(re_, im_); }

    Complex inverse() const {
        Real n = norm();
        if (n.is_zero()) throw ZeroDivision("complex inversion of zero");
        return Complex(re_ / n, -im_ / n);
    }

    Complex sqr() const {
        return Complex((re_ + im_) * (re_ - im_), (re_ * im_).mul_2si(1));
    }

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    static Complex one(Prec p) { return Complex(1, 0, p); }
    static Complex i(Prec p) { return Complex(0, 1, p); }

    std::string to_hex() const { return re_.to_hex() + " " + im_.to_hex(); }

  private:
    Real re_, im_;
};

/// z in H: arg(z) in (-pi/2, pi/2], together with 0.
/// Equivalently Re(z) > 0, or Re(z) = 0 and Im(z) >= 0.
inline bool in_half_plane(const Complex& z) {
    int sr = z.re().sign();
    return sr > 0 || (sr == 0 && z.im().sign() >= 0);
}

/// z in Q: arg(z) in (-pi/4, pi/4], together with 0.
inline bool in_quarter_plane(const Complex& z) {
    if (z.is_zero()) return true;
    int sr = z.re().sign();
    if (sr <= 0) return false;
    Real r = abs(z.im());
    if (z.im().sign() >= 0) return z.im() <= z.re();
    return r < z.re();
}

/// Standard branch of the complex square root: the result r satisfies
/// r^2 = z and arg(r) in (-pi/2, pi/2], so r in H; inputs in H land in Q.
/// The tie on the negative real axis resolves to the +pi/2 representative.
inline Complex sqrt_standard(const Complex& z) {
    Prec p = z.prec();
    if (z.is_zero()) return Complex(p);
    Prec wp = p + 8;
    Real re = z.re().round_to(wp), im = z.im().round_to(wp);
    Real m = hypot(re, im);
    Real u(wp), v(wp);
    if (re.sign() >= 0) {
        // u = sqrt((|z| + re)/2) is the larger component
        u = sqrt((m + re).div_2si(1));
        if (u.is_zero()) return Complex(p);  // underflow guard; z != 0 handled above
        v = (im / u).div_2si(1);
    } else {
        Real w = sqrt((m - re).div_2si(1));  // = |Im(r)|
        u = (abs(im) / w).div_2si(1);
        // im == 0 falls on the negative real axis: choose +i*sqrt(|z|)
        v = (im.sign() >= 0) ? w : -w;
    }
    return Complex(u.round_to(p), v.round_to(p));
}

/// exp(i*pi*w/2) at the precision of w.
inline Complex exp_half_pi_i(const Complex& w) {
    Prec p = w.prec();
    Prec wp = p + 16;
    Real pi_half = Real::pi(wp).div_2si(1);
    Real a = pi_half * w.re().round_to(wp);  // angle
    Real m = exp(-(pi_half * w.im().round_to(wp)));
    Real s(wp), c(wp);
    mpfr_sin_cos(s.raw(), c.raw(), a.raw(), MPFR_RNDN);
    return Complex((m * c).round_to(p), (m * s).round_to(p));
}

}  // namespace g2cp

#endif
