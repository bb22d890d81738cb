#ifndef G2CP_REAL_HPP
#define G2CP_REAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "g2cp/errors.hpp"

namespace g2cp {

using Prec = mpfr_prec_t;

/// Arbitrary-precision real number with an explicit bit precision attached to
/// each value.  All arithmetic rounds to nearest, ties to even; binary
/// operations produce their result at the larger of the two operand
/// precisions.  There is no global precision state.
class Real {
  public:
    explicit Real(Prec prec = 53) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_zero(v_, 1);
    }
    Real(long x, Prec prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(double x, Prec prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    Real(const mpq_class& x, Prec prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
    }
    Real(const mpz_class& x, Prec prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    Prec prec() const { return mpfr_get_prec(v_); }

    /// Same value rounded to precision p.
    Real round_to(Prec p) const {
        Real r(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Exponent e with 2^(e-1) <= |x| < 2^e.  Undefined for zero.
    long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(const Real& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    Real& mul_2si(long e) {
        mpfr_mul_2si(v_, v_, e, MPFR_RNDN);
        return *this;
    }
    Real& mul_si(long s) {
        mpfr_mul_si(v_, v_, s, MPFR_RNDN);
        return *this;
    }
    Real& div_2si(long e) {
        mpfr_div_2si(v_, v_, e, MPFR_RNDN);
        return *this;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

    friend Real abs(const Real& a) {
        Real r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sqrt(const Real& a) {
        Real r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real hypot(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real floor(const Real& a) {
        Real r(a.prec());
        mpfr_floor(r.v_, a.v_);
        return r;
    }
    friend Real exp(const Real& a) {
        Real r(a.prec());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    static Real pi(Prec p) {
        Real r(p);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    /// 2^e at precision p.
    static Real pow2(long e, Prec p) {
        Real r(1L, p);
        return r.mul_2si(e);
    }

    std::string to_hex() const;
    static Real from_hex(const std::string& s);

    /// Decimal rendering for reports; digits 0 means full precision.
    std::string to_decimal(std::size_t digits = 0) const {
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
        std::string mant(s);
        mpfr_free_str(s);
        std::string sign;
        if (!mant.empty() && mant[0] == '-') {
            sign = "-";
            mant = mant.substr(1);
        }
        if (mant.empty()) return "0";
        return sign + "0." + mant + "e" + std::to_string(e);
    }

  private:
    static Prec clamp(Prec p) { return p < 2 ? 2 : p; }
    mpfr_t v_;
};

namespace detail {
inline char hex_digit(int x) { return x < 10 ? char('0' + x) : char('a' + x - 10); }
inline int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
}  // namespace detail

/// Exact text form "s0xH.HHHHpE/prec": sign, hexadecimal mantissa with the
/// leading binary digit before the point, binary exponent, precision in bits.
/// Example: 3.0 at 8 bits reads "+0x1.8p+1/8".  Zero is "+0x0p+0/prec".
inline std::string Real::to_hex() const {
    std::string out;
    out += (mpfr_signbit(v_) ? '-' : '+');
    if (is_zero()) {
        out += "0x0p+0/" + std::to_string(prec());
        return out;
    }
    mpz_class m;
    mpfr_exp_t e2 = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    mpz_class am = ::abs(m);
    // strip trailing zero bits so the mantissa is odd
    mp_bitcnt_t tz = mpz_scan1(am.get_mpz_t(), 0);
    if (tz > 0) {
        am >>= tz;
        e2 += static_cast<mpfr_exp_t>(tz);
    }
    std::size_t nbits = mpz_sizeinbase(am.get_mpz_t(), 2);
    long top_exp = static_cast<long>(e2) + static_cast<long>(nbits) - 1;
    // pad on the right to a multiple of 4 bits after the leading bit
    std::size_t frac_bits = nbits - 1;
    std::size_t pad = (4 - frac_bits % 4) % 4;
    am <<= pad;
    std::string digits = am.get_str(16);
    out += "0x";
    out += digits[0];
    if (digits.size() > 1) {
        out += '.';
        out += digits.substr(1);
    }
    out += 'p';
    out += (top_exp < 0 ? "-" : "+");
    out += std::to_string(top_exp < 0 ? -top_exp : top_exp);
    out += '/';
    out += std::to_string(prec());
    return out;
}

inline Real Real::from_hex(const std::string& s) {
    auto fail = [&]() -> Real { throw InputError("bad hex-float: " + s); };
    std::size_t i = 0;
    if (i >= s.size()) return fail();
    int sgn = 1;
    if (s[i] == '+') {
        ++i;
    } else if (s[i] == '-') {
        sgn = -1;
        ++i;
    }
    if (i + 1 >= s.size() || s[i] != '0' || s[i + 1] != 'x') return fail();
    i += 2;
    mpz_class m = 0;
    std::size_t frac_digits = 0;
    bool seen_point = false, any = false;
    while (i < s.size() && (s[i] == '.' || detail::hex_value(s[i]) >= 0)) {
        if (s[i] == '.') {
            if (seen_point) return fail();
            seen_point = true;
        } else {
            m = m * 16 + detail::hex_value(s[i]);
            if (seen_point) ++frac_digits;
            any = true;
        }
        ++i;
    }
    if (!any || i >= s.size() || s[i] != 'p') return fail();
    ++i;
    long esign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') esign = -1;
        ++i;
    }
    if (i >= s.size()) return fail();
    long e = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        e = e * 10 + (s[i] - '0');
        ++i;
    }
    if (i >= s.size() || s[i] != '/') return fail();
    ++i;
    long p = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        p = p * 10 + (s[i] - '0');
        ++i;
    }
    if (i != s.size() || p < 2) return fail();
    Real r(static_cast<Prec>(p));
    if (m == 0) return r;
    // value = sgn * m * 2^(esign*e - 4*frac_digits)
    mpfr_set_z_2exp(r.v_, m.get_mpz_t(), esign * e - 4 * static_cast<long>(frac_digits),
                    MPFR_RNDN);
    if (sgn < 0) mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

}  // namespace g2cp

#endif
