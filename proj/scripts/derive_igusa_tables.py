#!/usr/bin/env python3
"""Derive and validate the index tables for the weight-6 and weight-12 Siegel
modular forms built from even genus-2 theta constants.

The weight-6 form is a signed sum of (theta_i theta_j theta_k)^4 over the 60
triples of even characteristics with even sum (each such triple completes to a
Goepel quadruple by its xor).  The sign vector is recovered numerically:

  1. Covariance under generators of Sp_4(Z) pins the form up to dependencies
     coming from theta relations plus one global scalar (the space of
     weight-6 forms is one-dimensional).
  2. The scalar is normalized by the diagonal restriction, which must equal
     4*E6(tau1)*E6(tau2); the analogous weight-4 identity, which has no sign
     freedom, validates the evaluator.
  3. The +-1 representative is read off by magnitude peeling at points with
     large imaginary part, where the 60 monomials separate.

The weight-12 form is the plain sum over the complements of the 15 Goepel
quadruples.  Everything is validated by fresh random covariance checks at the
end.  Writes data/h6_triples.txt and data/h12_tuples.txt.
"""

import itertools
import random
from mpmath import mp, mpc, mpf, exp, pi, matrix

random.seed(8561)

# Even characteristics: index = 8*(2a1) + 4*(2a2) + 2*(2b1) + (2b2).
def char_of_index(i):
    return ((i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1)  # doubled chars

def is_even_char(i):
    a1, a2, b1, b2 = char_of_index(i)
    return (a1 * b1 + a2 * b2) % 2 == 0

T = [i for i in range(16) if is_even_char(i)]
assert T == [0, 1, 2, 3, 4, 6, 8, 9, 12, 15]


def theta_radius():
    # exp(-pi * ymin * R^2) below the working precision, with margin
    return int((mp.dps * 2.4) ** 0.5 / 0.75) + 4


def theta_all(om):
    """All sixteen theta constants at om: direct summation over [-R,R]^2 with
    doubled integer characteristics x = 2m+a1, y = 2n+a2, so that each term is
    u0^(x^2) * u1^(2xy) * u2^(y^2) with u_k = exp(i*pi*omega_k/4).  Power
    recurrences keep the cost at a few multiplications per lattice point."""
    R = theta_radius()
    u0 = exp(1j * pi * om[0, 0] / 4)
    u1 = exp(1j * pi * om[0, 1] / 4)
    u2 = exp(1j * pi * om[1, 1] / 4)
    iu1 = 1 / u1
    u0_8 = (u0 ** 4) ** 2
    u2_8 = (u2 ** 4) ** 2

    def upow(base, ibase, e):
        return (base if e >= 0 else ibase) ** abs(e)

    vals = {}
    for a1 in (0, 1):  # doubled characteristics
        for a2 in (0, 1):
            ty = [mpc(0)] * (2 * R + 1)  # u2^(y^2) for y = 2n+a2
            y = -2 * R + a2
            t = u2 ** (y * y)
            d2 = u2 ** (4 * y + 4)
            for j in range(2 * R + 1):
                ty[j] = t
                t *= d2
                d2 *= u2_8
            acc = [[mpc(0)] * 2 for _ in range(2)]  # [m parity][n parity]
            x = -2 * R + a1
            px = u0 ** (x * x)
            d0 = u0 ** (4 * x + 4)
            for m in range(-R, R + 1):
                y0 = -2 * R + a2
                w = upow(u1, iu1, 2 * x * y0)
                step = upow(u1, iu1, 4 * x)
                rowacc = [mpc(0), mpc(0)]  # by n parity
                for j in range(2 * R + 1):
                    rowacc[(j - R) & 1] += ty[j] * w  # n = j - R
                    w *= step
                acc[m & 1][0] += px * rowacc[0]
                acc[m & 1][1] += px * rowacc[1]
                px *= d0
                d0 *= u0_8
                x += 2
            for b1 in (0, 1):
                for b2 in (0, 1):
                    idx = 8 * a1 + 4 * a2 + 2 * b1 + b2
                    # constant phase from the a.b part of the characteristic
                    const = (1j ** (a1 * b1)) * (1j ** (a2 * b2))
                    s = mpc(0)
                    for pm in (0, 1):
                        for pn in (0, 1):
                            sg = (-1) ** (pm * b1 + pn * b2)
                            s += sg * acc[pm][pn]
                    vals[idx] = const * s
    return vals


def theta_vec4(om):
    th = theta_all(om)
    return {i: th[i] ** 4 for i in T}


def random_omega():
    w0 = mpc(random.uniform(-0.4, 0.4), random.uniform(0.9, 1.4))
    w2 = mpc(random.uniform(-0.4, 0.4), random.uniform(1.0, 1.6))
    w1 = mpc(random.uniform(-0.3, 0.3), random.uniform(-0.25, 0.25))
    return matrix([[w0, w1], [w1, w2]])


def act_inv(om):
    """J: om -> -om^{-1}; det(C om + D) = det(om)."""
    d = om[0, 0] * om[1, 1] - om[0, 1] ** 2
    inv = matrix([[om[1, 1] / d, -om[0, 1] / d], [-om[0, 1] / d, om[0, 0] / d]])
    return -inv, d


def act_trans(om, s):
    return om + matrix(s), mpc(1)


def act_gl(om, u):
    U = matrix(u)
    return U * om * U.T, mpc(1) / (U[0, 0] * U[1, 1] - U[0, 1] * U[1, 0])


triples = []
for c in itertools.combinations(T, 3):
    if is_even_char(c[0] ^ c[1] ^ c[2]):
        triples.append(c)
assert len(triples) == 60, len(triples)

goepel = [q for q in itertools.combinations(T, 4) if q[0] ^ q[1] ^ q[2] ^ q[3] == 0]
assert len(goepel) == 15, len(goepel)
tuples12 = sorted(tuple(sorted(set(T) - set(q))) for q in goepel)


def monomials(om):
    t4 = theta_vec4(om)
    return [t4[a] * t4[b] * t4[c] for (a, b, c) in triples]


def sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def E4(tau, terms=80):
    q = exp(2j * pi * tau)
    return 1 + 240 * sum(sigma(3, n) * q ** n for n in range(1, terms))


def E6(tau, terms=80):
    q = exp(2j * pi * tau)
    return 1 - 504 * sum(sigma(5, n) * q ** n for n in range(1, terms))


def nullspace(rows, ncol, thresh_dps):
    A = [row[:] for row in rows]
    nrow = len(A)
    piv_cols = []
    r = 0
    for c in range(ncol):
        p = max(range(r, nrow), key=lambda i: abs(A[i][c]), default=None)
        if p is None or abs(A[p][c]) < mpf(10) ** (-thresh_dps):
            continue
        A[r], A[p] = A[p], A[r]
        pr = A[r][c]
        A[r] = [x / pr for x in A[r]]
        for i in range(nrow):
            if i != r and abs(A[i][c]) > 0:
                f = A[i][c]
                A[i] = [A[i][k] - f * A[r][k] for k in range(ncol)]
        piv_cols.append(c)
        r += 1
    free_cols = [c for c in range(ncol) if c not in piv_cols]
    basis = []
    for fc in free_cols:
        v = [mpc(0)] * ncol
        v[fc] = mpc(1)
        for i, c in enumerate(piv_cols):
            v[c] = -A[i][fc]
        basis.append(v)
    return basis


# ---- stage 1: pin the weight-6 form at high precision -----------------------

mp.dps = 260
print(f"stage 1 at {mp.dps} digits, theta radius {theta_radius()}")

rows = []
for trial in range(10):
    om = random_omega()
    mono = monomials(om)
    images = []
    omj, d = act_inv(om)
    images.append((omj, d ** 6))
    for s in ([[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [1, 0]]):
        images.append(act_trans(om, s))
    for u in ([[1, 1], [0, 1]], [[0, 1], [1, 0]]):
        omg, du = act_gl(om, u)
        images.append((omg, du ** 6))
    for omg, fac in images:
        t4g = theta_vec4(omg)
        monog = [t4g[a] * t4g[b] * t4g[c] for (a, b, c) in triples]
        rows.append([monog[k] - fac * mono[k] for k in range(60)])

basis = nullspace(rows, 60, thresh_dps=mp.dps - 80)
print(f"covariance nullspace dimension: {len(basis)}")

t1 = mpc("0.11", "1.07")
t2 = mpc("-0.23", "1.21")
diag = matrix([[t1, mpc(0)], [mpc(0), t2]])

t4d = theta_vec4(diag)
h4d = sum(t4d[i] ** 2 for i in T)
r4 = h4d / (4 * E4(t1) * E4(t2))
assert abs(r4 - 1) < mpf(10) ** (-(mp.dps - 40)), r4
print("h4 diagonal identity verified")

diag_mono = monomials(diag)
e6e6 = 4 * E6(t1) * E6(t2)
eps_star = max(basis, key=lambda v: abs(sum(e * m for e, m in zip(v, diag_mono))))
cnorm = sum(e * m for e, m in zip(eps_star, diag_mono)) / e6e6
assert abs(cnorm) > mpf(10) ** (-20), "degenerate nullspace sample"


def h6_value(om):
    mono = monomials(om)
    return sum(e * m for e, m in zip(eps_star, mono)) / cnorm, mono


# consistency of the normalized form at an independent diagonal point
t1b = mpc("0.31", "1.33")
t2b = mpc("0.17", "1.02")
hv, _ = h6_value(matrix([[t1b, mpc(0)], [mpc(0), t2b]]))
ratio = hv / (4 * E6(t1b) * E6(t2b))
assert abs(ratio - 1) < mpf(10) ** (-60), ratio
print("h6 normalization consistent across diagonal points")

# ---- stage 2: read off the signs by magnitude peeling -----------------------
# Monomial magnitudes separate at large imaginary part; signs are peeled off
# largest-first, with backtracking over magnitude groups whose local residual
# test admits several sign combinations.  One verification point at the end
# makes a wrong branch impossible: the final vector must reproduce the pinned
# function to working accuracy there.

s_peel = mpf("2.6")
om_peel = matrix(
    [[mpc("0.171", 0) + 1j * s_peel, mpc("0.313", 0) + 1j * s_peel * mpf("0.2377")],
     [mpc("0.313", 0) + 1j * s_peel * mpf("0.2377"),
      mpc("-0.233", 0) + 1j * s_peel * mpf("1.6183")]])
hv, mono = h6_value(om_peel)
order = sorted(range(60), key=lambda t: -abs(mono[t]))
floor_ = abs(mono[order[0]]) * mpf(10) ** (-(mp.dps - 90))

groups = []
k = 0
while k < 60:
    g = [order[k]]
    while k + len(g) < 60 and abs(mono[order[k + len(g)]]) > abs(mono[g[0]]) / 4:
        g.append(order[k + len(g)])
    assert len(g) <= 14, f"peeling group too large: {len(g)}"
    tail = sum(abs(mono[order[j]]) for j in range(k + len(g), 60))
    groups.append((g, tail))
    k += len(g)

om_check = random_omega()
hv_check, mono_check = h6_value(om_check)


def dfs(gi, resid, assigned):
    if gi == len(groups):
        if abs(resid) > floor_ * 100:
            return None
        v = sum(assigned[t] * mono_check[t] for t in range(60))
        if abs(v - hv_check) < mpf(10) ** (-60) * abs(hv_check):
            return list(assigned)
        return None
    g, tail = groups[gi]
    combos = []
    for combo in itertools.product((1, -1), repeat=len(g)):
        r = resid - sum(c * mono[t] for c, t in zip(combo, g))
        if abs(r) <= tail * mpf("1.01") + floor_:
            combos.append((abs(r), combo, r))
    combos.sort(key=lambda x: x[0])
    for _, combo, r in combos:
        for c, t in zip(combo, g):
            assigned[t] = c
        out = dfs(gi + 1, r, assigned)
        if out is not None:
            return out
        for t in g:
            assigned[t] = 0
    return None


signs = dfs(0, hv, [0] * 60)
assert signs is not None, "peeling did not determine the signs"
print("peeling complete; signs verified at an independent point")

for c in itertools.combinations([0, 1, 2, 3], 3):
    assert signs[triples.index(c)] == 1, "normalization triple not +1"

# ---- stage 3: validation of both tables at fresh points ---------------------

mp.dps = 90


def h6_at(om):
    t4 = theta_vec4(om)
    return sum(s * t4[a] * t4[b] * t4[c] for s, (a, b, c) in zip(signs, triples))


def h12_at(om):
    t4 = theta_vec4(om)
    tot = mpc(0)
    for tu in tuples12:
        p = mpc(1)
        for i in tu:
            p *= t4[i]
        tot += p
    return tot


def h4_at(om):
    t4 = theta_vec4(om)
    return sum(t4[i] ** 2 for i in T)


for trial in range(4):
    om = random_omega()
    omj, d = act_inv(om)
    for f, w in ((h6_at, 6), (h12_at, 12), (h4_at, 4)):
        rel = abs(f(omj) - d ** w * f(om)) / abs(d ** w * f(om))
        assert rel < mpf(10) ** (-55), (f.__name__, rel)
    for s in ([[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [1, 0]]):
        oms, _ = act_trans(om, s)
        for f in (h6_at, h12_at, h4_at):
            rel = abs(f(oms) - f(om)) / abs(f(om))
            assert rel < mpf(10) ** (-55), (f.__name__, rel)
    for u in ([[1, 1], [0, 1]], [[0, 1], [1, 0]], [[1, 0], [1, 1]]):
        omg, du = act_gl(om, u)
        for f, w in ((h6_at, 6), (h12_at, 12), (h4_at, 4)):
            rel = abs(f(omg) - du ** w * f(om)) / abs(du ** w * f(om))
            assert rel < mpf(10) ** (-55), (f.__name__, rel)
print("covariance checks passed (weights 4, 6, 12)")

for trial in range(3):
    t1 = mpc(random.uniform(-0.3, 0.3), random.uniform(1.0, 1.5))
    t2 = mpc(random.uniform(-0.3, 0.3), random.uniform(1.1, 1.6))
    om = matrix([[t1, mpc(0)], [mpc(0), t2]])
    assert abs(h6_at(om) / (E6(t1) * E6(t2)) - 4) < mpf(10) ** (-45)
    assert abs(h4_at(om) / (E4(t1) * E4(t2)) - 4) < mpf(10) ** (-45)
print("diagonal Eisenstein checks passed: h4|diag = 4*E4*E4, h6|diag = 4*E6*E6")

with open("data/h6_triples.txt", "w") as f:
    f.write("# weight-6 Siegel modular form: sum of sign*(theta_i*theta_j*theta_k)^4\n")
    f.write("# over the 60 triples of even characteristics with even sum.\n")
    f.write("# Indices use i = 8*(2a1) + 4*(2a2) + 2*(2b1) + (2b2).\n")
    f.write("# Normalization: on diag(tau1, tau2) the form equals 4*E6(tau1)*E6(tau2).\n")
    f.write("# Absolute invariants used downstream: j1 = h4*h6/h10, j2 = h4^2*h12/h10^2,\n")
    f.write("# j3 = h4^5/h10^2 (the unique weight-0 exponent choices).\n")
    for s, (a, b, c) in zip(signs, triples):
        f.write(f"{'+' if s > 0 else '-'} {a} {b} {c}\n")

with open("data/h12_tuples.txt", "w") as f:
    f.write("# weight-12 Siegel modular form: sum of (product of six thetas)^4 over the\n")
    f.write("# complements of the 15 Goepel quadruples among even characteristics.\n")
    for tu in tuples12:
        f.write(" ".join(str(i) for i in tu) + "\n")

plus = sum(1 for s in signs if s > 0)
print(f"wrote 60 triples ({plus} plus, {60 - plus} minus) and {len(tuples12)} six-tuples")
