#ifndef G2CP_PERIOD_MATRIX_HPP
#define G2CP_PERIOD_MATRIX_HPP

#include <array>
#include <gmpxx.h>

#include "g2cp/complex.hpp"
#include "g2cp/errors.hpp"

namespace g2cp {

/// Symmetric 2x2 complex matrix [[omega0, omega1], [omega1, omega2]].
/// Siegel membership (positive definite imaginary part) is checked on demand,
/// not enforced by construction.
struct PeriodMatrix {
    Complex omega0, omega1, omega2;

    PeriodMatrix() = default;
    PeriodMatrix(Complex w0, Complex w1, Complex w2)
        : omega0(std::move(w0)), omega1(std::move(w1)), omega2(std::move(w2)) {}

    Prec prec() const { return omega0.prec(); }

    PeriodMatrix round_to(Prec p) const {
        return {omega0.round_to(p), omega1.round_to(p), omega2.round_to(p)};
    }

    bool imag_positive_definite() const {
        if (omega0.im().sign() <= 0) return false;
        Real det = omega0.im() * omega2.im() - omega1.im() * omega1.im();
        return det.sign() > 0;
    }

    void require_siegel() const {
        if (!imag_positive_definite())
            throw NotPositive("matrix not in the Siegel half space");
    }

    /// Entry-wise doubling / halving of the argument.
    PeriodMatrix scaled_2si(long e) const {
        PeriodMatrix r = *this;
        r.omega0.mul_2si(e);
        r.omega1.mul_2si(e);
        r.omega2.mul_2si(e);
        return r;
    }

    Complex det() const { return omega0 * omega2 - omega1 * omega1; }

    Real max_abs() const {
        Real m = omega0.abs();
        Real t = omega1.abs();
        if (t > m) m = t;
        t = omega2.abs();
        if (t > m) m = t;
        return m;
    }
};

/// Element of Sp_4(Z) in 2x2 blocks [[A, B], [C, D]] with exact entries.
struct Sp4 {
    using Block = std::array<std::array<mpz_class, 2>, 2>;
    Block A{}, B{}, C{}, D{};

    static Block block_identity() {
        Block b{};
        b[0][0] = 1;
        b[1][1] = 1;
        return b;
    }
    static Block block_zero() { return Block{}; }

    static Sp4 identity() {
        Sp4 g;
        g.A = block_identity();
        g.D = block_identity();
        return g;
    }

    /// [[0, -id], [id, 0]]: the full inversion.
    static Sp4 inversion() {
        Sp4 g;
        g.B[0][0] = -1;
        g.B[1][1] = -1;
        g.C[0][0] = 1;
        g.C[1][1] = 1;
        return g;
    }

    /// [[id, S], [0, id]] for symmetric integer S.
    static Sp4 translation(const mpz_class& s00, const mpz_class& s01, const mpz_class& s11) {
        Sp4 g = identity();
        g.B[0][0] = s00;
        g.B[0][1] = s01;
        g.B[1][0] = s01;
        g.B[1][1] = s11;
        return g;
    }

    /// [[U, 0], [0, U^-T]] for U in GL_2(Z); det(U) must be +-1.
    static Sp4 gl_embedding(const mpz_class& u00, const mpz_class& u01, const mpz_class& u10,
                            const mpz_class& u11) {
        mpz_class det = u00 * u11 - u01 * u10;
        if (det != 1 && det != -1) throw InputError("gl_embedding: determinant not a unit");
        Sp4 g;
        g.A[0][0] = u00;
        g.A[0][1] = u01;
        g.A[1][0] = u10;
        g.A[1][1] = u11;
        // U^-T = adj(U)^T / det
        g.D[0][0] = u11 * det;
        g.D[0][1] = -u10 * det;
        g.D[1][0] = -u01 * det;
        g.D[1][1] = u00 * det;
        return g;
    }

    friend Sp4 operator*(const Sp4& x, const Sp4& y) {
        auto mul_add = [](const Block& p, const Block& q, const Block& r, const Block& s) {
            Block out{};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    out[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j] + r[i][0] * s[0][j] +
                                r[i][1] * s[1][j];
            return out;
        };
        Sp4 g;
        g.A = mul_add(x.A, y.A, x.B, y.C);
        g.B = mul_add(x.A, y.B, x.B, y.D);
        g.C = mul_add(x.C, y.A, x.D, y.C);
        g.D = mul_add(x.C, y.B, x.D, y.D);
        return g;
    }

    /// gamma^T J gamma == J, checked exactly.
    bool is_symplectic() const {
        // equivalent block conditions: A^T C, B^T D symmetric; A^T D - C^T B = id
        auto tmul = [](const Block& p, const Block& q) {
            Block out{};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    out[i][j] = p[0][i] * q[0][j] + p[1][i] * q[1][j];
            return out;
        };
        Block atc = tmul(A, C), btd = tmul(B, D), atd = tmul(A, D), ctb = tmul(C, B);
        if (atc[0][1] != atc[1][0] || btd[0][1] != btd[1][0]) return false;
        return atd[0][0] - ctb[0][0] == 1 && atd[1][1] - ctb[1][1] == 1 &&
               atd[0][1] - ctb[0][1] == 0 && atd[1][0] - ctb[1][0] == 0;
    }

    /// Moebius action (A omega + B)(C omega + D)^-1 at the matrix precision.
    PeriodMatrix apply(const PeriodMatrix& om) const;
};

namespace detail {
/// 2x2 complex matrix as four entries, row-major.
struct C2x2 {
    Complex a, b, c, d;
    Complex det() const { return a * d - b * c; }
};

inline C2x2 block_omega_sum(const Sp4::Block& M, const Sp4::Block& N, const PeriodMatrix& om) {
    Prec p = om.prec();
    auto cz = [&](const mpz_class& z) { return Complex(mpq_class(z), mpq_class(0), p); };
    // M * Omega + N with Omega = [[w0, w1], [w1, w2]]
    C2x2 r;
    r.a = cz(M[0][0]) * om.omega0 + cz(M[0][1]) * om.omega1 + cz(N[0][0]);
    r.b = cz(M[0][0]) * om.omega1 + cz(M[0][1]) * om.omega2 + cz(N[0][1]);
    r.c = cz(M[1][0]) * om.omega0 + cz(M[1][1]) * om.omega1 + cz(N[1][0]);
    r.d = cz(M[1][0]) * om.omega1 + cz(M[1][1]) * om.omega2 + cz(N[1][1]);
    return r;
}
}  // namespace detail

inline PeriodMatrix Sp4::apply(const PeriodMatrix& om) const {
    detail::C2x2 num = detail::block_omega_sum(A, B, om);
    detail::C2x2 den = detail::block_omega_sum(C, D, om);
    Complex det = den.det();
    if (det.is_zero()) throw ZeroDivision("singular C*Omega + D");
    // num * den^-1 with den^-1 = adj(den)/det
    Complex r00 = (num.a * den.d - num.b * den.c) / det;
    Complex r01 = (num.b * den.a - num.a * den.b) / det;
    Complex r10 = (num.c * den.d - num.d * den.c) / det;
    Complex r11 = (num.d * den.a - num.c * den.b) / det;
    // result is symmetric up to rounding; average the off-diagonal
    Complex w1 = (r01 + r10).mul_2si(-1);
    return PeriodMatrix(r00, w1, r11);
}

}  // namespace g2cp

#endif
