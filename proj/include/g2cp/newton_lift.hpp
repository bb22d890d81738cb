#ifndef G2CP_NEWTON_LIFT_HPP
#define G2CP_NEWTON_LIFT_HPP

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "g2cp/inverse_map.hpp"

namespace g2cp {

/// Renders the exact period matrix at any requested precision (symbolic
/// matrices and exact rational inputs can always do this).
using OmegaSource = std::function<PeriodMatrix(Prec)>;

struct LiftState {
    ThetaQuotients x;   // current approximation of f(Omega), N bits effective
    Prec N = 0;         // effective precision of x, maintained inductively
    long delta = 0;     // latest measured per-step loss
    long agree_prev = -1;   // agreement exponent between the last two iterates
    int sign_omega1 = +1;
    bool guard = false;
    std::array<SignCache, 4> caches;  // guard sign data, replayed across steps
    long guard_mismatches = 0;
};

struct LiftStepInfo {
    Prec reached;
    long delta;
    long agree;
    double seconds;
};

struct LiftResult {
    ThetaQuadruple theta;    // absolute fundamental thetas at Omega/2
    ThetaQuotients quotients;
    Prec effective = 0;
    std::vector<LiftStepInfo> steps;
    long guard_mismatches = 0;
};

namespace detail {

inline long agreement_bits(const ThetaQuotients& a, const ThetaQuotients& b) {
    Real diff = (a.x1 - b.x1).abs();
    Real t = (a.x2 - b.x2).abs();
    if (t > diff) diff = t;
    t = (a.x3 - b.x3).abs();
    if (t > diff) diff = t;
    Real scale = b.x1.abs();
    t = b.x2.abs();
    if (t > scale) scale = t;
    t = b.x3.abs();
    if (t > scale) scale = t;
    if (diff.is_zero()) return static_cast<long>(b.prec());
    if (scale.is_zero()) return 0;
    long k = scale.exponent() - diff.exponent();
    return k < 0 ? 0 : k;
}

/// Solve the 3x3 complex system J d = r by Gaussian elimination with partial
/// pivoting; pivot threshold 2^(-wp+16) times the row scale.
inline std::array<Complex, 3> solve3(std::array<std::array<Complex, 3>, 3> J,
                                     std::array<Complex, 3> r, Prec wp) {
    Real rowscale(0L, 64);
    for (const auto& row : J)
        for (const auto& e : row) {
            Real a = e.abs();
            if (a > rowscale) rowscale = a;
        }
    Real thresh = rowscale * Real::pow2(-static_cast<long>(wp) + 16, 64);
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        Real best = J[c][c].abs();
        for (int i = c + 1; i < 3; ++i) {
            Real a = J[i][c].abs();
            if (a > best) {
                best = a;
                piv = i;
            }
        }
        if (best <= thresh) throw SingularJacobian("newton_step: singular Jacobian");
        if (piv != c) {
            std::swap(J[piv], J[c]);
            std::swap(r[piv], r[c]);
        }
        Complex inv = J[c][c].inverse();
        for (int i = c + 1; i < 3; ++i) {
            Complex f = J[i][c] * inv;
            for (int k = c; k < 3; ++k) J[i][k] -= f * J[c][k];
            r[i] -= f * r[c];
        }
    }
    std::array<Complex, 3> d{Complex(wp), Complex(wp), Complex(wp)};
    for (int i = 2; i >= 0; --i) {
        Complex s = r[i];
        for (int k = i + 1; k < 3; ++k) s -= J[i][k] * d[k];
        d[i] = s / J[i][i];
    }
    return d;
}

}  // namespace detail

/// One Newton step on the inverse map: doubles the working precision, using
/// finite differences with a real perturbation 2^-N max|x_j| for the
/// Jacobian.  The reference matrix is rendered at 2N bits from the source.
inline LiftState newton_step(const LiftState& state, const OmegaSource& source,
                             const Real* eps_override = nullptr) {
    const Prec N = state.N;
    const Prec wp = 2 * N;
    PeriodMatrix y = source(wp);
    ThetaQuotients x = state.x.round_to(wp);

    Real xmax = x.x1.abs();
    {
        Real t = x.x2.abs();
        if (t > xmax) xmax = t;
        t = x.x3.abs();
        if (t > xmax) xmax = t;
    }
    Real eps = eps_override ? eps_override->round_to(wp)
                            : (xmax * Real::pow2(-static_cast<long>(N), wp));
    if (eps.is_zero()) throw ZeroDivision("newton_step: zero perturbation");

    LiftState out = state;
    auto F = [&](const ThetaQuotients& q) {
        FMapOptions opt;
        opt.sign_omega1 = state.sign_omega1;
        opt.guard = state.guard;
        opt.omega_hint = y;  // branch selection always follows the reference
        opt.caches = state.guard ? &out.caches : nullptr;
        PeriodMatrix m = f_inverse_map(q, opt);
        if (state.guard) out.guard_mismatches = opt.mismatches;
        return m;
    };

    PeriodMatrix F0 = F(x);
    std::array<std::array<Complex, 3>, 3> J;
    for (int j = 0; j < 3; ++j) {
        ThetaQuotients xp = x;
        (j == 0 ? xp.x1 : j == 1 ? xp.x2 : xp.x3) += Complex(eps, Real(0L, wp));
        PeriodMatrix Fj = F(xp);
        // column j of the Jacobian: dF_i / dx_j
        J[0][j] = (Fj.omega0 - F0.omega0) / eps;
        J[1][j] = (Fj.omega1 - F0.omega1) / eps;
        J[2][j] = (Fj.omega2 - F0.omega2) / eps;
    }
    std::array<Complex, 3> r{F0.omega0 - y.omega0, F0.omega1 - y.omega1,
                             F0.omega2 - y.omega2};
    std::array<Complex, 3> d = detail::solve3(J, r, wp);
    out.x = {x.x1 - d[0], x.x2 - d[1], x.x3 - d[2]};
    out.N = wp;  // nominal; effective accuracy is tracked by the lift driver
    return out;
}

namespace detail {

inline void write_checkpoint(const std::string& path, const std::string& id,
                             const LiftState& st) {
    std::string tmp = path + ".tmp";
    FILE* f = std::fopen(tmp.c_str(), "w");
    if (!f) return;  // checkpointing is best-effort
    std::fprintf(f, "g2cp-lift-checkpoint v1\n");
    std::fprintf(f, "id %s\n", id.c_str());
    std::fprintf(f, "N %ld\n", static_cast<long>(st.N));
    std::fprintf(f, "delta %ld\n", st.delta);
    std::fprintf(f, "agree %ld\n", st.agree_prev);
    std::fprintf(f, "sign1 %d\n", st.sign_omega1);
    std::fprintf(f, "guard %d\n", st.guard ? 1 : 0);
    std::fprintf(f, "x %s %s %s\n", st.x.x1.to_hex().c_str(), st.x.x2.to_hex().c_str(),
                 st.x.x3.to_hex().c_str());
    for (const auto& c : st.caches) {
        std::fprintf(f, "cache %ld %zu", c.mismatches, c.flips.size());
        for (auto b : c.flips) std::fprintf(f, " %d", static_cast<int>(b));
        std::fprintf(f, "\n");
    }
    std::fclose(f);
    std::rename(tmp.c_str(), path.c_str());
}

inline bool read_checkpoint(const std::string& path, const std::string& id,
                            LiftState& st) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line) || line != "g2cp-lift-checkpoint v1") return false;
    if (!std::getline(in, line) || line != "id " + id) return false;
    long n = 0;
    int sign = 1, guard = 0;
    std::string tag;
    in >> tag >> n;
    if (tag != "N") return false;
    in >> tag >> st.delta;
    in >> tag >> st.agree_prev;
    in >> tag >> sign;
    in >> tag >> guard;
    std::string h1, h2, h3;
    in >> tag >> h1 >> h2 >> h3;
    if (tag != "x") return false;
    st.N = static_cast<Prec>(n);
    st.sign_omega1 = sign;
    st.guard = guard != 0;
    // x was written as three "re im" hex pairs -> six tokens
    std::string h4, h5, h6;
    in >> h4 >> h5 >> h6;
    st.x = {Complex(Real::from_hex(h1), Real::from_hex(h2)),
            Complex(Real::from_hex(h3), Real::from_hex(h4)),
            Complex(Real::from_hex(h5), Real::from_hex(h6))};
    for (auto& c : st.caches) {
        std::size_t len = 0;
        in >> tag >> c.mismatches >> len;
        if (tag != "cache") return false;
        c.flips.assign(len, 0);
        for (std::size_t i = 0; i < len; ++i) {
            int v = 0;
            in >> v;
            c.flips[i] = static_cast<std::uint8_t>(v);
        }
    }
    return static_cast<bool>(in);
}

}  // namespace detail

struct LiftOptions {
    Prec base = 2000;
    bool guard = false;
    int sign_omega1 = +1;
    long delta_cap = 256;
    std::string checkpoint_path;  // empty disables checkpointing
    std::string source_id;        // stamped into checkpoints
};

/// Full lift: seed the quotients with the summation engine at the base
/// precision, then Newton steps until the effective precision reaches the
/// target.  The per-step loss delta is estimated from consecutive agreement
/// exponents (2k - k') and drives the effective-precision ladder.
inline LiftResult lift(const OmegaSource& source, Prec target, LiftOptions opt = {}) {
    if (opt.base < 128) throw InputError("lift: base precision below 128 bits");
    LiftResult res;
    LiftState st;
    bool resumed = false;
    if (!opt.checkpoint_path.empty() &&
        detail::read_checkpoint(opt.checkpoint_path, opt.source_id, st)) {
        resumed = true;
    }
    if (!resumed) {
        PeriodMatrix om0 = source(opt.base);
        st.x = f_forward_naive(om0, opt.base);
        st.N = opt.base;
        st.sign_omega1 = opt.sign_omega1;
        st.guard = opt.guard;
        if (!opt.checkpoint_path.empty())
            detail::write_checkpoint(opt.checkpoint_path, opt.source_id, st);
    }

    while (st.N < target) {
        auto t0 = std::chrono::steady_clock::now();
        LiftState next = newton_step(st, source);
        auto t1 = std::chrono::steady_clock::now();
        long agree = detail::agreement_bits(st.x.round_to(next.x.prec()), next.x);
        long delta = 0;
        if (st.agree_prev >= 0) delta = 2 * st.agree_prev - agree;
        if (delta < 0) delta = 0;
        if (delta > opt.delta_cap)
            throw DeltaBlowup("lift: measured delta " + std::to_string(delta) +
                              " exceeds cap " + std::to_string(opt.delta_cap));
        next.agree_prev = agree;
        next.delta = delta;
        next.N = 2 * st.N - delta;  // effective precision of the new iterate
        st = next;
        res.steps.push_back({st.N, delta, agree,
                             std::chrono::duration<double>(t1 - t0).count()});
        if (!opt.checkpoint_path.empty())
            detail::write_checkpoint(opt.checkpoint_path, opt.source_id, st);
        if (res.steps.size() > 64) throw NonConvergence("lift: too many steps");
    }

    // recover the absolute scale: one Borchardt mean gives 1/theta_0^2(Om/2)
    const Prec p = st.x.prec();
    ThetaQuadruple t{Complex::one(p), st.x.x1, st.x.x2, st.x.x3};
    ThetaSquares s = duplicate_squares(t);
    Quadruple base_q{s[0], s[1], s[2], s[3]};
    Complex minv(p);
    if (st.guard) {
        SignCache scale_cache = st.caches[0];
        minv = borchardt_mean_guarded(base_q, source(64), p, scale_cache);
    } else {
        minv = borchardt_mean(base_q, p);
    }
    Complex th0 = sqrt_standard(minv.inverse());
    res.theta = ThetaQuadruple{th0, st.x.x1 * th0, st.x.x2 * th0, st.x.x3 * th0};
    res.quotients = st.x;
    res.effective = st.N;
    res.guard_mismatches = st.guard_mismatches;
    return res;
}

/// Convenience: fundamental thetas at Omega/2 by the best engine for the
/// precision; "auto" switches from summation to lifting at the crossover.
enum class ThetaMethod { kNaive, kNewton, kAuto };

inline ThetaQuadruple theta_auto(const OmegaSource& source, Prec N, ThetaMethod method,
                                 Prec crossover = 6000, LiftOptions opt = {}) {
    bool use_naive = method == ThetaMethod::kNaive ||
                     (method == ThetaMethod::kAuto && N < crossover);
    if (use_naive) return theta_fundamental(source(N), N);
    if (N <= opt.base) return theta_fundamental(source(N), N);
    return lift(source, N, opt).theta.round_to(N);
}

}  // namespace g2cp

#endif
