#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "g2cp/complex.hpp"
#include "g2cp/real.hpp"

using namespace g2cp;

namespace {

std::mt19937_64 rng(20240915);

Complex random_complex(Prec p, double scale = 8.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    // fill the full mantissa so rounding is actually exercised
    Real re(d(rng), p), im(d(rng), p);
    std::uniform_real_distribution<double> lo(-1.0, 1.0);
    re += Real(lo(rng), p).mul_2si(-40);
    im += Real(lo(rng), p).mul_2si(-40);
    return Complex(re, im);
}

}  // namespace

TEST_CASE("sqrt_standard basics") {
    Prec p = 128;
    // 1 -> 1
    Complex r = sqrt_standard(Complex::one(p));
    CHECK((r - Complex::one(p)).abs().to_double() == 0.0);
    // -1 -> i
    r = sqrt_standard(Complex(-1, 0, p));
    CHECK((r - Complex::i(p)).abs().to_double() == 0.0);
    // 2i -> 1+i
    r = sqrt_standard(Complex(0, 2, p));
    CHECK((r - Complex(1, 1, p)).abs().to_double() < 1e-30);
    // 0 -> 0
    CHECK(sqrt_standard(Complex(p)).is_zero());
}

TEST_CASE("sqrt_standard branch discipline and accuracy") {
    Prec p = 256;
    Real tol = Real::pow2(-254, 64);  // 4 * 2^-256
    int n = 20000;  // scaled-down version of the 10^6 bulk run
    for (int i = 0; i < n; ++i) {
        Complex z = random_complex(p);
        Complex r = sqrt_standard(z);
        CHECK(in_half_plane(r));
        Real resid = (r.sqr() - z).abs() / z.abs();
        CHECK(resid <= tol);
        if (in_half_plane(z)) CHECK(in_quarter_plane(r));
    }
    // H maps into Q on purely constructed members of H as well
    for (int i = 0; i < 1000; ++i) {
        Complex z = random_complex(p);
        if (!in_half_plane(z)) z = -z;
        if (z.is_zero()) continue;
        CHECK(in_quarter_plane(sqrt_standard(z)));
    }
}

TEST_CASE("sqrt_standard determinism") {
    Prec p = 300;
    Complex z = random_complex(p);
    Complex a = sqrt_standard(z), b = sqrt_standard(z);
    CHECK(a == b);
}

TEST_CASE("exp_half_pi_i values") {
    Prec p = 256;
    // w = 0 -> 1
    CHECK((exp_half_pi_i(Complex(p)) - Complex::one(p)).abs().to_double() == 0.0);
    // w = 1 -> i
    Complex r = exp_half_pi_i(Complex(1, 0, p));
    CHECK((r - Complex::i(p)).abs() <= Real::pow2(-250, 64));
    // w = 2i -> e^{-pi}, checked against an independent high-precision route
    r = exp_half_pi_i(Complex(0, 2, p));
    Real epi = exp(-Real::pi(p + 32)).round_to(p);
    CHECK(abs(r.re() - epi) <= Real::pow2(-250, 64));
    CHECK(r.im().is_zero());
    CHECK(std::abs(r.re().to_double() - 0.04321391826377224) < 1e-15);
}

TEST_CASE("hex-float serialization round-trips exactly") {
    CHECK(Real(3.0, 8).to_hex() == "+0x1.8p+1/8");
    CHECK(Real(0.0, 64).to_hex() == "+0x0p+0/64");
    CHECK(Real::from_hex("-0x1.8p+1/8").to_double() == -3.0);
    for (int i = 0; i < 2000; ++i) {
        Prec p = 2 + static_cast<Prec>(rng() % 700);
        Real x(0.0, p);
        std::uniform_real_distribution<double> d(-4.0, 4.0);
        x = Real(d(rng), p);
        x += Real(d(rng), p).mul_2si(-30);
        x += Real(d(rng), p).mul_2si(-90);
        long sh = static_cast<long>(rng() % 200) - 100;
        x.mul_2si(sh);
        Real y = Real::from_hex(x.to_hex());
        REQUIRE(y.prec() == x.prec());
        REQUIRE(y == x);
    }
}

TEST_CASE("hex-float rejects malformed input") {
    CHECK_THROWS_AS(Real::from_hex("1.8p+1/8"), InputError);
    CHECK_THROWS_AS(Real::from_hex("+0x1.8p+1"), InputError);
    CHECK_THROWS_AS(Real::from_hex("+0x1..8p+1/8"), InputError);
    CHECK_THROWS_AS(Real::from_hex(""), InputError);
    CHECK_THROWS_AS(Real::from_hex("+0xzp+1/8"), InputError);
}

TEST_CASE("precision propagation") {
    Real a(1.0, 100), b(1.0, 200);
    CHECK((a + b).prec() == 200);
    CHECK((a * b).prec() == 200);
    Complex z(Real(1.0, 100), Real(1.0, 160));
    CHECK(z.prec() == 160);
    CHECK(z.re().prec() == z.im().prec());
}
