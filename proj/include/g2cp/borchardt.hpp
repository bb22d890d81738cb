#ifndef G2CP_BORCHARDT_HPP
#define G2CP_BORCHARDT_HPP

#include <cstdint>
#include <vector>

#include "g2cp/theta_naive.hpp"

namespace g2cp {

/// Borchardt quadruple.  For the standard iteration all nonzero entries must
/// lie in one half-plane z*H; the anchor z is chosen as the entry of largest
/// modulus and membership is tested as Re(b_j / z) > -tol.
struct Quadruple {
    Complex b0, b1, b2, b3;

    Prec prec() const { return b0.prec(); }
    Quadruple round_to(Prec p) const {
        return {b0.round_to(p), b1.round_to(p), b2.round_to(p), b3.round_to(p)};
    }
    const Complex& operator[](int i) const {
        switch (i) {
            case 0: return b0;
            case 1: return b1;
            case 2: return b2;
            default: return b3;
        }
    }
    Complex& operator[](int i) {
        switch (i) {
            case 0: return b0;
            case 1: return b1;
            case 2: return b2;
            default: return b3;
        }
    }

    static Quadruple from_squares(const ThetaQuadruple& t) {
        return {t.t0.sqr(), t.t1.sqr(), t.t2.sqr(), t.t3.sqr()};
    }
};

/// Per-call record of guarded sign choices: flips[n] has bit j-1 set when the
/// standard root of b_j was negated at iteration n.  A nonzero flip is a
/// counterexample to the standard-choice assumption and is surfaced to the
/// caller for logging.
struct SignCache {
    std::vector<std::uint8_t> flips;
    long mismatches = 0;

    bool any() const { return mismatches != 0; }
};

namespace detail {

struct IterateScratch {
    Complex roots[4];
};

/// One standard Borchardt iterate.  flip_mask negates the chosen roots of
/// b_1..b_3 (bits 0..2); the roots actually used are written to scratch when
/// provided, so a guard can inspect them.
inline Quadruple borchardt_iterate_impl(const Quadruple& b, int flip_mask,
                                        IterateScratch* scratch) {
    const Prec p = b.prec();
    // anchor: entry of largest modulus
    int anchor = 0;
    Real amax = b[0].abs();
    for (int j = 1; j < 4; ++j) {
        Real a = b[j].abs();
        if (a > amax) {
            amax = a;
            anchor = j;
        }
    }
    if (amax.is_zero()) throw InputError("borchardt_iterate: zero quadruple");
    const Complex z = b[anchor];
    const Complex w = z.inverse();
    const Real tol = Real::pow2(-static_cast<long>(p) / 2, 64);

    Complex roots[4];
    const Complex sz = sqrt_standard(z);
    for (int j = 0; j < 4; ++j) {
        Complex r = b[j] * w;
        if (!b[j].is_zero() && r.re() < -tol)
            throw HalfPlaneViolation("borchardt_iterate: no common half-plane");
        roots[j] = sz * sqrt_standard(r);
        if (j > 0 && (flip_mask >> (j - 1)) & 1) roots[j] = -roots[j];
    }
    if (scratch)
        for (int j = 0; j < 4; ++j) scratch->roots[j] = roots[j];

    Quadruple out;
    out.b0 = (b.b0 + b.b1 + b.b2 + b.b3).mul_2si(-2);
    out.b1 = (roots[0] * roots[1] + roots[2] * roots[3]).mul_2si(-1);
    out.b2 = (roots[0] * roots[2] + roots[1] * roots[3]).mul_2si(-1);
    out.b3 = (roots[0] * roots[3] + roots[1] * roots[2]).mul_2si(-1);
    return out;
}

inline Real spread(const Quadruple& b) {
    Real m = (b.b0 - b.b1).abs();
    Real t = (b.b0 - b.b2).abs();
    if (t > m) m = t;
    t = (b.b0 - b.b3).abs();
    if (t > m) m = t;
    t = (b.b1 - b.b2).abs();
    if (t > m) m = t;
    t = (b.b1 - b.b3).abs();
    if (t > m) m = t;
    t = (b.b2 - b.b3).abs();
    if (t > m) m = t;
    return m;
}

}  // namespace detail

/// The standard Borchardt iterate: square roots in the common quarter-plane.
inline Quadruple borchardt_iterate(const Quadruple& b) {
    return detail::borchardt_iterate_impl(b, 0, nullptr);
}

/// Limit of the standard Borchardt sequence, to N bits: iterate until the
/// max pairwise difference is below 2^(-N-8) times the scale, then take one
/// final averaging step.
inline Complex borchardt_mean(const Quadruple& b, Prec N, long* iterations = nullptr) {
    const Prec wp = N + 32;
    Quadruple cur = b.round_to(wp);
    const long cap = 2 * static_cast<long>(std::log2(static_cast<double>(N))) + 64;
    for (long n = 0; n <= cap; ++n) {
        Real scale = cur.b0.abs();
        if (detail::spread(cur) <= Real::pow2(-(N + 8), 64) * scale) {
            if (iterations) *iterations = n;
            return (cur.b0 + cur.b1 + cur.b2 + cur.b3).mul_2si(-2).round_to(N);
        }
        cur = borchardt_iterate(cur);
    }
    throw NonConvergence("borchardt_mean: iteration cap exceeded");
}

/// Guarded Borchardt mean for quadruples claiming to be proportional to
/// (theta_j^2(omega))_j: at each step the chosen roots are compared against
/// low-precision theta values at the doubled argument, and corrected if the
/// standard choice disagrees.  Corrections are recorded in the cache (and
/// counted as mismatches when freshly discovered); a populated cache replays
/// without evaluating any theta series.
inline Complex borchardt_mean_guarded(const Quadruple& b, const PeriodMatrix& omega, Prec N,
                                      SignCache& cache, long* iterations = nullptr) {
    constexpr Prec kGuardBits = 32;
    const Prec wp = N + 32;
    const bool replay = !cache.flips.empty();
    Quadruple cur = b.round_to(wp);
    const long cap = 2 * static_cast<long>(std::log2(static_cast<double>(N))) + 64;
    PeriodMatrix arg = omega;  // 2^n * omega
    bool guard_live = true;
    for (long n = 0; n <= cap; ++n) {
        Real scale = cur.b0.abs();
        if (detail::spread(cur) <= Real::pow2(-(N + 8), 64) * scale) {
            if (iterations) *iterations = n;
            return (cur.b0 + cur.b1 + cur.b2 + cur.b3).mul_2si(-2).round_to(N);
        }
        int mask = 0;
        if (replay) {
            if (static_cast<std::size_t>(n) < cache.flips.size()) mask = cache.flips[n];
            cur = detail::borchardt_iterate_impl(cur, mask, nullptr);
        } else {
            detail::IterateScratch sc;
            cur = detail::borchardt_iterate_impl(cur, 0, &sc);
            if (guard_live) {
                // reference ratios from the series at the doubled argument
                ThetaQuadruple th = theta_fundamental(arg.scaled_2si(2), kGuardBits);
                bool trivial = true;
                for (int j = 0; j < 4; ++j)
                    if ((th[j] - Complex::one(kGuardBits)).abs() >
                        Real(1L, 64).div_2si(6))
                        trivial = false;
                if (trivial) {
                    guard_live = false;  // branch choice is unambiguous from here on
                } else {
                    Complex r0 = sc.roots[0];
                    for (int j = 1; j < 4; ++j) {
                        Complex want = th[j] / th[0];
                        Complex got = sc.roots[j] / r0;
                        if ((got / want).re().sign() < 0) mask |= 1 << (j - 1);
                    }
                    if (mask) {
                        ++cache.mismatches;
                        // redo the iterate with corrected roots
                        Quadruple prev = cur;  // discarded; recompute from scratch roots
                        for (int j = 1; j < 4; ++j)
                            if ((mask >> (j - 1)) & 1) sc.roots[j] = -sc.roots[j];
                        prev.b0 = cur.b0;
                        prev.b1 = (sc.roots[0] * sc.roots[1] + sc.roots[2] * sc.roots[3])
                                      .mul_2si(-1);
                        prev.b2 = (sc.roots[0] * sc.roots[2] + sc.roots[1] * sc.roots[3])
                                      .mul_2si(-1);
                        prev.b3 = (sc.roots[0] * sc.roots[3] + sc.roots[1] * sc.roots[2])
                                      .mul_2si(-1);
                        cur = prev;
                    }
                }
            }
            cache.flips.push_back(static_cast<std::uint8_t>(mask));
        }
        arg = arg.scaled_2si(1);
    }
    throw NonConvergence("borchardt_mean_guarded: iteration cap exceeded");
}

}  // namespace g2cp

#endif
