#ifndef G2CP_INVERSE_MAP_HPP
#define G2CP_INVERSE_MAP_HPP

#include <array>
#include <optional>

#include "g2cp/borchardt.hpp"
#include "g2cp/igusa.hpp"

namespace g2cp {

/// Dehomogenised fundamental theta values (theta_j(Omega/2)/theta_0(Omega/2)).
struct ThetaQuotients {
    Complex x1, x2, x3;

    Prec prec() const { return x1.prec(); }
    ThetaQuotients round_to(Prec p) const {
        return {x1.round_to(p), x2.round_to(p), x3.round_to(p)};
    }
};

/// The three argument-transforming matrices and the index quadruples they
/// permute the squared theta constants by:
///   (theta_j^2((J M_0)^2 Om))_{j=0..3} = -i om_0 (theta^2)_{8,9,0,1}
///   (theta_j^2((J M_1)^2 Om))_{j=0..3} = (om_1^2 - om_0 om_2) (theta^2)_{0,8,4,12}
///   (theta_j^2((J M_2)^2 Om))_{j=0..3} = -i om_2 (theta^2)_{4,0,6,2}
/// The pairing of the two diagonal translations with the index quadruples is
/// fixed by the numeric identity check (verify_prop8), which is part of the
/// test suite.
struct TwistTables {
    static constexpr std::array<std::array<int, 4>, 3> permutations = {
        std::array<int, 4>{8, 9, 0, 1},
        std::array<int, 4>{0, 8, 4, 12},
        std::array<int, 4>{4, 0, 6, 2},
    };

    static Sp4 m_translation(int k) {
        switch (k) {
            case 0: return Sp4::translation(1, 0, 0);
            case 1: return Sp4::translation(0, 1, 0);
            default: return Sp4::translation(0, 0, 1);
        }
    }

    /// (J M_k)^2
    static Sp4 twist(int k) {
        Sp4 jm = Sp4::inversion() * m_translation(k);
        return jm * jm;
    }
};

/// The proportionality factor of the twisted quadruples: -i*omega0,
/// omega1^2 - omega0*omega2, -i*omega2.
inline Complex twist_factor(int k, const PeriodMatrix& om) {
    switch (k) {
        case 0: return -(om.omega0.mul_i());
        case 1: return om.omega1.sqr() - om.omega0 * om.omega2;
        default: return -(om.omega2.mul_i());
    }
}

struct FMapOptions {
    int sign_omega1 = +1;
    bool guard = false;
    std::optional<PeriodMatrix> omega_hint;
    /// per-mean sign caches (step 2, then the three twists), populated or
    /// replayed in guard mode
    std::array<SignCache, 4>* caches = nullptr;
    long mismatches = 0;  // updated by the call in guard mode
};

/// Recover the period matrix coefficients from dehomogenised fundamental
/// theta quotients: duplication, one Borchardt mean for scale recovery, three
/// twisted Borchardt means, then the final square root with the supplied
/// sign information.
inline PeriodMatrix f_inverse_map(const ThetaQuotients& x, FMapOptions& opt) {
    const Prec p = x.prec();
    if (opt.guard && !opt.omega_hint)
        throw InputError("guard mode requires a period matrix hint");

    ThetaQuadruple t{Complex::one(p), x.x1, x.x2, x.x3};
    ThetaSquares s = duplicate_squares(t);

    std::array<SignCache, 4> local_caches;
    std::array<SignCache, 4>& caches = opt.caches ? *opt.caches : local_caches;

    auto mean = [&](const Quadruple& q, int cache_slot,
                    const PeriodMatrix& hint) -> Complex {
        if (!opt.guard) return borchardt_mean(q, p);
        return borchardt_mean_guarded(q, hint, p, caches[cache_slot]);
    };

    // step 2: the mean of the j = 0..3 quadruple recovers 1/theta_0^2(Omega/2)
    Quadruple base{s[0], s[1], s[2], s[3]};
    Complex minv = mean(base, 0, opt.guard ? *opt.omega_hint : PeriodMatrix());
    if (minv.is_zero()) throw ZeroDivision("degenerate scale in the inverse map");

    // step 3: rescale to the true squared theta values at Omega
    ThetaSquares true_s;
    for (int k = 0; k < 10; ++k) true_s.s[k] = s.slot(k) / minv;

    // step 4: the three twisted means
    Complex u[3];
    for (int k = 0; k < 3; ++k) {
        const auto& perm = TwistTables::permutations[k];
        Quadruple q{true_s[perm[0]], true_s[perm[1]], true_s[perm[2]], true_s[perm[3]]};
        if (opt.guard) {
            PeriodMatrix hint = TwistTables::twist(k).apply(*opt.omega_hint);
            u[k] = mean(q, k + 1, hint);
        } else {
            u[k] = borchardt_mean(q, p);
        }
        if (u[k].is_zero()) throw ZeroDivision("vanishing twisted Borchardt mean");
    }

    if (opt.guard) {
        opt.mismatches = 0;
        for (const SignCache& c : caches) opt.mismatches += c.mismatches;
    }

    // step 5
    Complex w0 = u[0].inverse().mul_i();
    Complex w2 = u[2].inverse().mul_i();
    Complex root = sqrt_standard(u[1].inverse() + w0 * w2);
    Complex w1(p);
    if (opt.omega_hint) {
        const Complex& h = opt.omega_hint->omega1;
        w1 = ((root - h).abs() <= (-root - h).abs()) ? root : -root;
    } else if (!root.is_zero()) {
        int s_re = root.re().sign();
        if (s_re != 0 && !(abs(root.re()) <= root.abs() * Real::pow2(-8, 64))) {
            w1 = (s_re == opt.sign_omega1) ? root : -root;
        } else {
            w1 = (root.im().sign() == opt.sign_omega1) ? root : -root;
        }
    }
    return PeriodMatrix(w0, w1, w2);
}

/// Forward map f: Omega -> dehomogenised quotients, via the summation engine.
inline ThetaQuotients f_forward_naive(const PeriodMatrix& omega, Prec N) {
    ThetaQuadruple t = theta_fundamental(omega, N);
    return {t.t1 / t.t0, t.t2 / t.t0, t.t3 / t.t0};
}

/// Numerical check of the three permutation identities behind the twisted
/// means: evaluates both sides through the direct summation engine and
/// returns the maximum relative residual.  Diagnostic; no assertions.
inline Real verify_prop8(const PeriodMatrix& omega, Prec N) {
    omega.require_siegel();
    Real worst(0L, 64);
    for (int k = 0; k < 3; ++k) {
        PeriodMatrix tom = TwistTables::twist(k).apply(omega);
        // inflate the working precision when the transformed imaginary form
        // is far from reduced, as the summation radius presumes reducedness
        double y00 = tom.omega0.im().to_double();
        double y01 = tom.omega1.im().to_double();
        double y11 = tom.omega2.im().to_double();
        double tr = y00 + y11, det = y00 * y11 - y01 * y01;
        double lam = (tr - std::sqrt(std::max(tr * tr - 4 * det, 0.0))) / 2;
        Prec ninf = static_cast<Prec>(static_cast<double>(N) * (lam >= 0.85 ? 1.0 : 0.9 / lam)) + 64;
        Complex factor = twist_factor(k, omega).round_to(N);
        for (int j = 0; j < 4; ++j) {
            int b1 = (j >> 1) & 1, b2 = j & 1;
            Complex lhs = theta_general(0, 0, b1, b2, tom.round_to(ninf), ninf)
                              .round_to(N)
                              .sqr();
            Complex rhs =
                factor * theta_by_index(TwistTables::permutations[k][j], omega, N).sqr();
            Real denom = rhs.abs();
            if (denom.is_zero()) continue;
            Real resid = (lhs - rhs).abs() / denom;
            if (resid > worst) worst = resid;
        }
    }
    return worst;
}

}  // namespace g2cp

#endif
