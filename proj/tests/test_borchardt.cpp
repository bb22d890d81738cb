#include <catch2/catch_amalgamated.hpp>

#include "g2cp/borchardt.hpp"
#include "helpers.hpp"

using namespace g2cp;
using namespace g2cp::testing;

namespace {

Quadruple quad(double a, double b, double c, double d, Prec p) {
    return {Complex(Real(a, p), Real(0.0, p)), Complex(Real(b, p), Real(0.0, p)),
            Complex(Real(c, p), Real(0.0, p)), Complex(Real(d, p), Real(0.0, p))};
}

/// random quadruple within the anchored membership test: angles cluster well
/// inside a quarter-turn of each other, as theta-square quadruples do
Quadruple random_admissible(Prec p) {
    std::uniform_real_distribution<double> mag(0.2, 4.0), ang(-0.7, 0.7);
    auto entry = [&]() {
        double m = mag(rng()), a = ang(rng());
        return Complex(Real(m * std::cos(a), p), Real(m * std::sin(a), p));
    };
    return {entry(), entry(), entry(), entry()};
}

}  // namespace

TEST_CASE("iterate fixed points and direct arithmetic") {
    Prec p = 128;
    Quadruple r = borchardt_iterate(quad(1, 1, 1, 1, p));
    for (int j = 0; j < 4; ++j) CHECK((r[j] - Complex::one(p)).abs().to_double() == 0.0);

    r = borchardt_iterate(quad(4, 4, 4, 4, p));
    for (int j = 0; j < 4; ++j) CHECK(r[j].re().to_double() == 4.0);

    r = borchardt_iterate(quad(1, 1, 1, 0, p));
    CHECK(r.b0.re().to_double() == 0.75);
    CHECK(r.b1.re().to_double() == 0.5);
    CHECK(r.b2.re().to_double() == 0.5);
    CHECK(r.b3.re().to_double() == 0.5);
}

TEST_CASE("half-plane violation raises") {
    Prec p = 128;
    // 1 and -1 lie in no common half-plane once both are anchored
    Quadruple bad = quad(1, -1, 1, 1, p);
    CHECK_THROWS_AS(borchardt_iterate(bad), HalfPlaneViolation);
    CHECK_THROWS_AS(borchardt_iterate(quad(0, 0, 0, 0, p)), InputError);
}

TEST_CASE("mean of constant quadruples") {
    Prec N = 256;
    CHECK((borchardt_mean(quad(1, 1, 1, 1, N), N) - Complex::one(N)).abs().to_double() ==
          0.0);
    Complex lam(3, -2, N);
    Quadruple q{lam, lam, lam, lam};
    CHECK(rel_err(borchardt_mean(q, N), lam) <= Real::pow2(-N + 8, 64));
}

TEST_CASE("homogeneity") {
    Prec N = 512;
    for (int t = 0; t < 10; ++t) {
        Quadruple q = random_admissible(N);
        std::uniform_real_distribution<double> d(0.3, 2.0);
        Complex lam(Real(d(rng()), N), Real(d(rng()) - 1.0, N));  // Re > 0
        Quadruple ql{lam * q.b0, lam * q.b1, lam * q.b2, lam * q.b3};
        Complex a = borchardt_mean(q, N);
        Complex b = borchardt_mean(ql, N);
        CHECK(rel_err(b, lam * a) <= Real::pow2(-N + 8, 64));
    }
}

TEST_CASE("quadratic convergence: iteration counts stay logarithmic") {
    Prec N = 4096;
    long limit = static_cast<long>(std::log2(static_cast<double>(N))) + 16;
    for (int t = 0; t < 50; ++t) {
        Quadruple q = random_admissible(N);
        long iters = 0;
        borchardt_mean(q, N, &iters);
        CHECK(iters <= limit);
    }
}

TEST_CASE("limit shape: final spread below threshold") {
    Prec N = 256;
    Quadruple q = random_admissible(N + 32);
    Quadruple cur = q;
    long n = 0;
    while (detail::spread(cur) > Real::pow2(-(N + 8), 64) * cur.b0.abs() && n < 100) {
        cur = borchardt_iterate(cur);
        ++n;
    }
    REQUIRE(n < 100);
    CHECK(detail::spread(cur) <= Real::pow2(-(N + 8), 64) * cur.b0.abs());
}

TEST_CASE("theta squares converge to 1 on reduced matrices") {
    // B2((theta_j^2(Omega))_j) = 1 for Omega in the fundamental domain
    Prec N = 256;
    PeriodMatrix om(Complex(0, 2, N), Complex(N), Complex(0, 2, N));
    ThetaQuadruple th = theta_fundamental(om.scaled_2si(1), N);  // theta at om
    Complex m = borchardt_mean(Quadruple::from_squares(th), N);
    CHECK(rel_err(m, Complex::one(N)) <= Real::pow2(-N + 16, 64));

    for (int t = 0; t < 20; ++t) {
        PeriodMatrix g = random_reduced(N);
        ThetaQuadruple tg = theta_fundamental(g.scaled_2si(1), N);
        Complex mg = borchardt_mean(Quadruple::from_squares(tg), N);
        CHECK(rel_err(mg, Complex::one(N)) <= Real::pow2(-N + 16, 64));
    }
}

TEST_CASE("guarded mean agrees with the standard mean on domain points") {
    Prec N = 256;
    for (int t = 0; t < 10; ++t) {
        PeriodMatrix g = random_reduced(N);
        ThetaQuadruple tg = theta_fundamental(g.scaled_2si(1), N);
        Quadruple q = Quadruple::from_squares(tg);
        SignCache cache;
        Complex guarded = borchardt_mean_guarded(q, g, N, cache);
        Complex plain = borchardt_mean(q, N);
        CHECK(cache.mismatches == 0);
        CHECK((guarded - plain).abs().to_double() == 0.0);

        // replay from the recorded cache, without series evaluations
        SignCache replay = cache;
        replay.mismatches = 0;
        Complex again = borchardt_mean_guarded(q, g, N, replay);
        CHECK((again - guarded).abs().to_double() == 0.0);
    }
}

TEST_CASE("guard corrects an injected wrong branch") {
    Prec N = 256;
    PeriodMatrix g = random_reduced(N);
    ThetaQuadruple tg = theta_fundamental(g.scaled_2si(1), N);
    Quadruple q = Quadruple::from_squares(tg);
    q.b1 = -q.b1;  // corrupted input: not a theta-square quadruple any more
    SignCache cache;
    bool flagged = false;
    try {
        Complex v = borchardt_mean_guarded(q, g, N, cache);
        flagged = cache.mismatches > 0 ||
                  rel_err(v, Complex::one(N)) > Real::pow2(-8, 64);
    } catch (const HalfPlaneViolation&) {
        flagged = true;
    }
    CHECK(flagged);
}
