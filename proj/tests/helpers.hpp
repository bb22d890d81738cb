#ifndef G2CP_TEST_HELPERS_HPP
#define G2CP_TEST_HELPERS_HPP

#include <random>

#include "g2cp/igusa.hpp"
#include "g2cp/period_matrix.hpp"

namespace g2cp::testing {

/// Genus-1 theta constant with characteristic (a, b), doubled in {0,1}, by
/// direct summation: sum over n of exp(i pi (n + a/2)^2 tau + 2 pi i (n + a/2) b/2).
/// Independent reference for factorization identities on diagonal matrices.
inline Complex theta1(int a, int b, const Complex& tau, Prec N) {
    Prec wp = N + 32;
    long R = truncation_radius(N) + 1;
    Complex u = exp_half_pi_i(tau.round_to(wp) / Real(2L, wp));  // exp(i pi tau / 4)
    Complex iu = u.inverse();
    auto upow = [&](long e) {
        const Complex& base = e >= 0 ? u : iu;
        unsigned long k = static_cast<unsigned long>(e >= 0 ? e : -e);
        Complex acc = Complex::one(wp), sq = base;
        while (k) {
            if (k & 1) acc *= sq;
            sq = sq.sqr();
            k >>= 1;
        }
        return acc;
    };
    Complex s(wp);
    for (long n = -R; n <= R; ++n) {
        long x = 2 * n + a;
        Complex t = upow(x * x);
        if (((n & 1) * b) & 1)
            s -= t;
        else
            s += t;
    }
    int ph = (a * b) & 3;
    switch (ph) {
        case 1: s = s.mul_i(); break;
        case 2: s = -s; break;
        case 3: s = -s.mul_i(); break;
        default: break;
    }
    return s.round_to(N);
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed5eedULL);
    return gen;
}

inline mpq_class random_rational(long den = 64, double lo = -0.5, double hi = 0.5) {
    std::uniform_int_distribution<long> d(static_cast<long>(lo * den),
                                          static_cast<long>(hi * den));
    return mpq_class(d(rng()), den);
}

/// Random matrix comfortably inside the fundamental domain: real parts in
/// (-1/2, 1/2), reduced imaginary form with entries >= 1, all nineteen
/// determinant conditions implied by the margin.  Entries are rational so the
/// matrix can be rendered exactly at any precision.
struct RationalPeriodMatrix {
    mpq_class re0, re1, re2;
    mpq_class im0, im1, im2;

    PeriodMatrix render(Prec p) const {
        return PeriodMatrix(Complex(re0, im0, p), Complex(re1, im1, p),
                            Complex(re2, im2, p));
    }
};

inline RationalPeriodMatrix random_reduced_rational() {
    RationalPeriodMatrix m;
    m.re0 = random_rational(64, -0.45, 0.45);
    m.re1 = random_rational(64, -0.45, 0.45);
    m.re2 = random_rational(64, -0.45, 0.45);
    m.im0 = mpq_class(1) + random_rational(64, 0.05, 0.6);   // in (1, 1.6)
    m.im2 = m.im0 + random_rational(64, 0.05, 0.6);          // im2 >= im0
    m.im1 = random_rational(64, 0.0, 0.45) * m.im0;          // 2*im1 <= 0.9*im0
    return m;
}

inline PeriodMatrix random_reduced(Prec p) { return random_reduced_rational().render(p); }

/// Random element of Sp_4(Z) as a short word in the generators.
inline Sp4 random_symplectic(int len = 6) {
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int> small(-1, 1);
    Sp4 g = Sp4::identity();
    for (int i = 0; i < len; ++i) {
        switch (pick(rng())) {
            case 0: g = g * Sp4::inversion(); break;
            case 1:
                g = g * Sp4::translation(small(rng()), small(rng()), small(rng()));
                break;
            case 2: g = g * Sp4::gl_embedding(1, small(rng()), 0, 1); break;
            default: g = g * Sp4::gl_embedding(0, 1, -1, 0); break;
        }
    }
    return g;
}

/// Random matrix in the Siegel half space (not reduced).
inline PeriodMatrix random_siegel(Prec p) {
    std::uniform_real_distribution<double> re(-1.5, 1.5);
    std::uniform_real_distribution<double> lg(0.3, 1.2);
    double l00 = lg(rng()), l11 = lg(rng()), l01 = re(rng()) * 0.4;
    // Y = L L^T is positive definite
    double y00 = l00 * l00, y01 = l00 * l01, y11 = l01 * l01 + l11 * l11;
    return PeriodMatrix(Complex(Real(re(rng()), p), Real(y00, p)),
                        Complex(Real(re(rng()), p), Real(y01, p)),
                        Complex(Real(re(rng()), p), Real(y11, p)));
}

/// Minimum eigenvalue of Im(Omega), as a double (test sizing only).
inline double min_imag_eigenvalue(const PeriodMatrix& om) {
    double y00 = om.omega0.im().to_double();
    double y01 = om.omega1.im().to_double();
    double y11 = om.omega2.im().to_double();
    double tr = y00 + y11, det = y00 * y11 - y01 * y01;
    double disc = std::sqrt(std::max(tr * tr - 4 * det, 0.0));
    return (tr - disc) / 2;
}

/// theta_fundamental with the summation radius inflated for matrices whose
/// imaginary form is far from reduced (the stock radius assumes reducedness).
inline ThetaQuadruple theta_padded(const PeriodMatrix& om, Prec N) {
    double lam = min_imag_eigenvalue(om);
    double f = lam >= 0.85 ? 1.0 : 0.9 / lam;
    Prec inflated = static_cast<Prec>(static_cast<double>(N) * f) + 64;
    return theta_fundamental(om.round_to(inflated), inflated, nullptr).round_to(N);
}

inline Real rel_err(const Complex& a, const Complex& b) {
    Real scale = b.abs();
    if (scale.is_zero()) return a.abs();
    return (a - b).abs() / scale;
}

}  // namespace g2cp::testing

#endif
