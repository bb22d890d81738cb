#ifndef G2CP_THETA_NAIVE_HPP
#define G2CP_THETA_NAIVE_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "g2cp/period_matrix.hpp"

namespace g2cp {

/// The four fundamental theta constants evaluated at Omega/2.
struct ThetaQuadruple {
    Complex t0, t1, t2, t3;

    Prec prec() const { return t0.prec(); }
    ThetaQuadruple round_to(Prec p) const {
        return {t0.round_to(p), t1.round_to(p), t2.round_to(p), t3.round_to(p)};
    }
    const Complex& operator[](int i) const {
        switch (i) {
            case 0: return t0;
            case 1: return t1;
            case 2: return t2;
            default: return t3;
        }
    }
};

/// Instrumentation for the summation kernel: complex multiplication and
/// inversion counts, and the peak number of cached multiplicative values
/// (power table plus recurrence registers; additive accumulators are output
/// state and not counted).
struct ThetaStats {
    std::int64_t mults = 0;
    std::int64_t inversions = 0;
    std::int64_t peak_cache = 0;
};

/// Smallest R such that summing over [-R, R]^2 is accurate to N bits.
inline long truncation_radius(long N) {
    if (N < 1) throw InputError("truncation_radius: N must be positive");
    // ceil(sqrt(1.02 N + 5.43)) computed exactly: smallest R with 100 R^2 >= 102 N + 543
    long r = static_cast<long>(std::sqrt((1.02 * static_cast<double>(N) + 5.43))) - 2;
    if (r < 1) r = 1;
    while (100 * r * r < 102 * N + 543) ++r;
    return r;
}

/// Fundamental theta constants theta_{4b1+2b2}(Omega/2) for b in {0,1/2}^2,
/// summed over [-R, R]^2 with q_k = exp(i pi omega_k / 2).  Sign symmetry
/// folds the sum to m, n >= 0; the q1 cross powers are Lucas sequences, so
/// each lattice point costs two multiplications.  Requires Im(Omega) positive
/// definite; the accuracy statement presumes the imaginary form is reduced.
inline ThetaQuadruple theta_fundamental(const PeriodMatrix& omega, Prec N,
                                        ThetaStats* stats = nullptr) {
    omega.require_siegel();
    const Prec wp = N + 32;
    const long R = truncation_radius(N);
    ThetaStats local;
    ThetaStats& st = stats ? *stats : local;

    const PeriodMatrix om = omega.round_to(wp);
    const Complex q0 = exp_half_pi_i(om.omega0);
    const Complex q1 = exp_half_pi_i(om.omega1);
    const Complex q2 = exp_half_pi_i(om.omega2);

    // persistent multiplicative registers (8) plus the q2 power table (R)
    std::vector<Complex> t2;  // t2[n-1] = q2^{n^2}, n = 1..R
    t2.reserve(R);
    Complex g0(wp), c0(wp), p0(wp);  // q0^2, q0^{2m-1}, q0^{m^2}
    Complex V1(wp), Vm1(wp), Vm(wp);  // q1^{+-2} sum and outer Lucas pair
    Complex vn1(wp), vn(wp);          // inner Lucas pair
    st.peak_cache = R + 8;

    {
        Complex g2 = q2 * q2;  // reuses the c0 slot budget during table build
        ++st.mults;
        Complex odd = q2;
        Complex p = q2;
        t2.push_back(p);
        for (long n = 2; n <= R; ++n) {
            odd *= g2;
            p *= odd;
            st.mults += 2;
            t2.push_back(p);
        }
    }

    const Complex iq1 = q1.inverse();
    ++st.inversions;
    Complex w = q1 * q1;
    Complex iw = iq1 * iq1;
    st.mults += 2;
    V1 = w + iw;

    // additive accumulators: single sums by parity, double sum by (m,n) parity
    Complex Ae(wp), Ao(wp), Be(wp), Bo(wp);
    Complex Cee(wp), Ceo(wp), Coe(wp), Coo(wp);
    for (long n = 1; n <= R; ++n) {
        if (n & 1)
            Bo += t2[n - 1];
        else
            Be += t2[n - 1];
    }

    g0 = q0 * q0;
    ++st.mults;
    Vm1 = Complex(2, 0, wp);  // V_0
    Vm = V1;
    for (long m = 1; m <= R; ++m) {
        if (m == 1) {
            c0 = q0;
            p0 = q0;
        } else {
            c0 *= g0;
            p0 *= c0;
            st.mults += 2;
        }
        // inner sum over n with v_n = q1^{2mn} + q1^{-2mn}
        Complex De(wp), Do(wp);
        vn1 = Complex(2, 0, wp);
        vn = Vm;
        for (long n = 1; n <= R; ++n) {
            if (n > 1) {
                Complex next = Vm * vn - vn1;
                ++st.mults;
                vn1 = vn;
                vn = next;
            }
            Complex term = t2[n - 1] * vn;
            ++st.mults;
            if (n & 1)
                Do += term;
            else
                De += term;
        }
        Complex me = p0 * De, mo = p0 * Do;
        st.mults += 2;
        if (m & 1) {
            Ao += p0;
            Coe += me;
            Coo += mo;
        } else {
            Ae += p0;
            Cee += me;
            Ceo += mo;
        }
        // advance the outer Lucas pair to V_{m+1}
        Complex next = V1 * Vm - Vm1;
        ++st.mults;
        Vm1 = Vm;
        Vm = next;
    }

    auto assemble = [&](int b1, int b2) {
        Complex s = Complex::one(wp);
        Complex a = Ae + (b1 ? -Ao : Ao);
        Complex b = Be + (b2 ? -Bo : Bo);
        Complex c = Cee + (b2 ? -Ceo : Ceo) + (b1 ? -Coe : Coe) +
                    ((b1 ^ b2) ? -Coo : Coo);
        s += (a + b + c).mul_2si(1);
        return s.round_to(N);
    };
    return {assemble(0, 0), assemble(0, 1), assemble(1, 0), assemble(1, 1)};
}

/// Direct evaluation of a single theta constant with characteristic
/// (a, b), a, b in {0,1/2}^2 passed as doubled integers in {0,1}^2, at the
/// argument Omega (not halved).  Plain double sum; reference engine for
/// tests and identity checks, no operation-count guarantees.
inline Complex theta_general(int a1, int a2, int b1, int b2, const PeriodMatrix& omega,
                             Prec N) {
    if ((a1 | a2 | b1 | b2) < 0 || a1 > 1 || a2 > 1 || b1 > 1 || b2 > 1)
        throw InputError("theta_general: characteristics must be 0 or 1 (doubled)");
    omega.require_siegel();
    const Prec wp = N + 32;
    const long R = truncation_radius(N) + 1;  // pad for half-integer shifts

    const PeriodMatrix om = omega.round_to(wp);
    // u_k = exp(i pi omega_k / 4); with doubled indices x = 2m+a1, y = 2n+a2
    // each term is u0^{x^2} u1^{2xy} u2^{y^2} times the b-phase
    const Complex u0 = exp_half_pi_i(om.omega0.round_to(wp) / Real(2L, wp));
    const Complex u1 = exp_half_pi_i(om.omega1.round_to(wp) / Real(2L, wp));
    const Complex u2 = exp_half_pi_i(om.omega2.round_to(wp) / Real(2L, wp));
    const Complex iu1 = u1.inverse();

    auto upow = [&](const Complex& base, const Complex& ibase, long e) {
        const Complex& b = e >= 0 ? base : ibase;
        unsigned long k = static_cast<unsigned long>(e >= 0 ? e : -e);
        Complex acc = Complex::one(wp);
        Complex sq = b;
        while (k) {
            if (k & 1) acc *= sq;
            sq = sq.sqr();
            k >>= 1;
        }
        return acc;
    };

    // table of u2^{y^2} and powers of u0 by recurrence over x
    const long W = 2 * R + 1;
    std::vector<Complex> ty;
    ty.reserve(W);
    {
        long y = -2 * R + a2;
        Complex t = upow(u2, u2.inverse(), y * y);
        Complex d = upow(u2, u2.inverse(), 4 * y + 4);
        Complex u2_8 = upow(u2, u2, 8);
        for (long j = 0; j < W; ++j) {
            ty.push_back(t);
            t *= d;
            d *= u2_8;
        }
    }

    Complex acc(wp);
    long x = -2 * R + a1;
    Complex px = upow(u0, u0.inverse(), x * x);
    Complex d0 = upow(u0, u0.inverse(), 4 * x + 4);
    const Complex u0_8 = upow(u0, u0, 8);
    for (long m = -R; m <= R; ++m) {
        long y0 = -2 * R + a2;
        Complex w = upow(u1, iu1, 2 * x * y0);
        Complex step = upow(u1, iu1, 4 * x);
        Complex row(wp);
        for (long j = 0; j < W; ++j) {
            long n = j - R;
            int sg = ((m & 1) * b1 + (n & 1) * b2) & 1;
            Complex term = ty[j] * w;
            if (sg)
                row -= term;
            else
                row += term;
            w *= step;
        }
        acc += px * row;
        px *= d0;
        d0 *= u0_8;
        x += 2;
    }
    // constant phase i^{a1 b1 + a2 b2} from the a.b part
    int ph = (a1 * b1 + a2 * b2) & 3;
    switch (ph) {
        case 1: acc = acc.mul_i(); break;
        case 2: acc = -acc; break;
        case 3: acc = -acc.mul_i(); break;
        default: break;
    }
    return acc.round_to(N);
}

/// theta_general by even-characteristic index in T = {0,1,2,3,4,6,8,9,12,15}.
inline Complex theta_by_index(int idx, const PeriodMatrix& omega, Prec N) {
    return theta_general((idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1, omega, N);
}

}  // namespace g2cp

#endif
