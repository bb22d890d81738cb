#include <catch2/catch_amalgamated.hpp>

#include "g2cp/igusa.hpp"
#include "helpers.hpp"

using namespace g2cp;
using namespace g2cp::testing;

namespace {

ThetaQuadruple quad(double a, double b, double c, double d, Prec p) {
    return {Complex(Real(a, p), Real(0.0, p)), Complex(Real(b, p), Real(0.0, p)),
            Complex(Real(c, p), Real(0.0, p)), Complex(Real(d, p), Real(0.0, p))};
}

}  // namespace

TEST_CASE("tables load and validate") {
    const IgusaTables& t = IgusaTables::instance();
    CHECK(t.h6.size() == 60);
    CHECK(t.h12.size() == 15);
    int plus = 0;
    for (const auto& tr : t.h6) plus += tr.sign > 0;
    CHECK(plus == 30);
}

TEST_CASE("duplication formulae on simple quadruples") {
    Prec p = 128;
    ThetaSquares s = duplicate_squares(quad(1, 1, 1, 1, p));
    for (int i : {0, 1, 2, 3})
        CHECK((s[i] - Complex::one(p)).abs().to_double() == 0.0);
    for (int i : {4, 6, 8, 9, 12, 15}) CHECK(s[i].abs().to_double() == 0.0);

    ThetaSquares s2 = duplicate_squares(quad(3, 0, 0, 0, p));
    for (int i : {0, 4, 8, 12}) CHECK(s2[i].re().to_double() == 2.25);
    for (int i : {1, 2, 3, 6, 9, 15}) CHECK(s2[i].abs().to_double() == 0.0);
}

TEST_CASE("duplication matches the general engine per index") {
    Prec N = 512;
    PeriodMatrix om(Complex(0, 2, N), Complex(N), Complex(0, 4, N));
    // vanishing entries (theta_15 on diagonal matrices) make plain relative
    // error ill-posed; measure against the value scale with a floor of 1
    auto close = [&](const Complex& a, const Complex& b) {
        return (a - b).abs() <= Real::pow2(-N + 16, 64) * (Real(1L, 64) + b.abs());
    };
    ThetaSquares s = duplicate_squares(theta_fundamental(om, N));
    for (int idx : kEvenIndices) {
        Complex direct = theta_by_index(idx, om, N).sqr();
        CHECK(close(s[idx], direct));
    }
    for (int trial = 0; trial < 4; ++trial) {
        PeriodMatrix g = random_reduced(N);
        ThetaSquares sg = duplicate_squares(theta_fundamental(g, N));
        for (int idx : kEvenIndices) {
            Complex direct = theta_by_index(idx, g, N).sqr();
            CHECK(close(sg[idx], direct));
        }
    }
}

TEST_CASE("duplication homogeneity is exact on dyadic inputs") {
    Prec p = 256;
    ThetaQuadruple t = quad(1.25, -0.5, 3.0, 0.375, p);
    Real lam(2.5, p);
    ThetaQuadruple lt{t.t0 * lam, t.t1 * lam, t.t2 * lam, t.t3 * lam};
    ThetaSquares a = duplicate_squares(t), b = duplicate_squares(lt);
    Real lam2 = lam * lam;
    for (int idx : kEvenIndices) CHECK(b[idx] == a[idx] * lam2);
}

TEST_CASE("igusa form values on simple inputs") {
    Prec p = 128;
    ThetaSquares s = duplicate_squares(quad(1, 1, 1, 1, p));
    IgusaForms h = igusa_h(s);
    CHECK(h.h4.re().to_double() == 4.0);
    CHECK(h.h10.abs().to_double() == 0.0);

    ThetaSquares ones;
    for (int k = 0; k < 10; ++k) ones.s[k] = Complex::one(p);
    IgusaForms h1 = igusa_h(ones);
    CHECK(h1.h4.re().to_double() == 10.0);
    CHECK(h1.h10.re().to_double() == 1.0);
    CHECK(h1.h12.re().to_double() == 15.0);
}

TEST_CASE("streng invariants on simple inputs") {
    Prec p = 128;
    IgusaForms h{Complex::one(p), Complex::one(p), Complex::one(p), Complex::one(p)};
    InvariantTriple j = streng_j(h);
    CHECK(j.j1.re().to_double() == 1.0);
    CHECK(j.j2.re().to_double() == 1.0);
    CHECK(j.j3.re().to_double() == 1.0);

    IgusaForms h2{Complex(p), Complex(3, 0, p), Complex::one(p), Complex(7, 0, p)};
    InvariantTriple j2 = streng_j(h2);
    CHECK(j2.j1.abs().to_double() == 0.0);
    CHECK(j2.j2.abs().to_double() == 0.0);
    CHECK(j2.j3.abs().to_double() == 0.0);

    IgusaForms h3{Complex::one(p), Complex::one(p), Complex(p), Complex::one(p)};
    CHECK_THROWS_AS(streng_j(h3), SingularSurface);
}

TEST_CASE("modular invariance and weight covariance") {
    // the acceptance gate for the transcribed h6 / h12 index tables
    const Prec N = 512;
    const Prec wp = 2 * N;
    Real jtol = Real::pow2(-N + 64, 64);
    int done = 0;
    while (done < 20) {
        PeriodMatrix om = random_reduced(wp);
        Sp4 g = random_symplectic(5);
        REQUIRE(g.is_symplectic());
        PeriodMatrix gom = g.apply(om);
        // keep the transformed matrix numerically comfortable for the series
        Real mineig = gom.omega0.im();
        Real det = gom.omega0.im() * gom.omega2.im() - gom.omega1.im() * gom.omega1.im();
        if (gom.omega2.im() < mineig) mineig = gom.omega2.im();
        if ((det / mineig) < mineig) mineig = det / mineig;
        if (mineig < Real(0.2, 64) || gom.max_abs() > Real(30L, 64)) continue;
        ++done;

        ThetaQuadruple t1 = theta_fundamental(om, wp);
        ThetaQuadruple t2 = theta_padded(gom, wp);
        ThetaSquares s1 = duplicate_squares(t1), s2 = duplicate_squares(t2);
        IgusaForms h1 = igusa_h(s1), h2 = igusa_h(s2);

        InvariantTriple j1 = streng_j(h1), j2 = streng_j(h2);
        CHECK(rel_err(j2.j1, j1.j1) <= jtol);
        CHECK(rel_err(j2.j2, j1.j2) <= jtol);
        CHECK(rel_err(j2.j3, j1.j3) <= jtol);

        // weight covariance h_k(g om) = det(C om + D)^k h_k(om)
        detail::C2x2 den = detail::block_omega_sum(g.C, g.D, om);
        Complex f = den.det();
        Complex f2 = f.sqr();
        Complex f4 = f2.sqr();
        CHECK(rel_err(h2.h4, h1.h4 * f4) <= jtol);
        CHECK(rel_err(h2.h6, h1.h6 * f4 * f2) <= jtol);
        CHECK(rel_err(h2.h10, h1.h10 * f4 * f4 * f2) <= jtol);
        CHECK(rel_err(h2.h12, h1.h12 * f4 * f4 * f4) <= jtol);
    }
}
