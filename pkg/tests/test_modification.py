import cmath
import math
from fractions import Fraction as F

import pytest

from mockforms.qkernel import SQRT_PI, TruncationPolicy, e2pi, gauss_error
from mockforms.mock import MockIndex, PsiIndex, phi
from mockforms.modification import (
    CorrectionIndex,
    phi1_add,
    phi1_tilde,
    phi_add,
    phi_tilde,
    phi_tilde_reduced,
    psi_tilde,
    psi_tilde_reduced,
    r_correction,
    s_independence_report,
)

P = TruncationPolicy()
TAU, Z1, Z2 = 0.9j + 0.15, 0.22 + 0.05j, 0.31 - 0.08j


def brute_r(j, m, tau, v, N=400):
    tot = 0.0j
    for k in range(-N, N + 1):
        n = j + 2 * m * k
        sgn = 1.0 if k >= 0 else -1.0
        x = (n - 2 * m * v.imag / tau.imag) * math.sqrt(tau.imag / m)
        br = math.erfc(sgn * SQRT_PI * x)
        if br == 0.0:
            continue
        w = -n * n * tau / (4.0 * m) + n * v
        mag = math.log(br) - 2 * math.pi * w.imag
        if mag < -745:
            continue
        r = math.exp(mag)
        ph = 2 * math.pi * w.real
        tot += sgn * complex(r * math.cos(ph), r * math.sin(ph))
    return tot


def test_r_reference_summation():
    v = 0.1 + 0.2j
    ref = brute_r(0, 1, 2j, v)
    val = r_correction(CorrectionIndex.of(0, 1), 2j, v, P)
    assert abs(val - ref) < 1e-13


def test_r_term_decay_scan():
    # beyond the turning index the term magnitudes decrease monotonically
    j, m, tau, v = 1, 2, 1.1j, 0.15 + 0.1j
    n_star = 2 * m * v.imag / tau.imag
    mags = []
    for k in range(3, 9):
        n = j + 2 * m * k
        x = (n - n_star) * math.sqrt(tau.imag / m)
        # log |term| via the erfc asymptotics once erfc underflows
        b = math.erfc(SQRT_PI * x)
        logb = math.log(b) if b > 0 else (-math.pi * x * x
                                          - math.log(math.pi * max(x, 1.0)))
        w = -n * n * tau / (4.0 * m) + n * v
        mags.append(logb - 2 * math.pi * w.imag)
    assert all(a > b for a, b in zip(mags, mags[1:]))


def test_phi_add_degree_one_zero():
    for s in (0, 1, 3):
        assert phi_add(MockIndex.of(1, s), TAU, Z1, Z2, 0.0, P) == 0.0


def test_phi_add_refinement_oracle():
    idx = MockIndex.of(2, 0)
    coarse = phi_add(idx, 1.5j, 0.2, 0.1, 0.0, P)
    fine = phi_add(idx, 1.5j, 0.2, 0.1, 0.0, TruncationPolicy(tol=1e-15, n_max=8000))
    assert abs(coarse - fine) < 1e-12


def test_phi_add_window_shift_vs_tilde():
    # the correcting sum itself moves under s -> s + 2m (the sgn window
    # travels); the modified assembly is what stays fixed
    idx0, idx1 = MockIndex.of(2, 0), MockIndex.of(2, 4)
    a0 = phi_add(idx0, TAU, Z1, Z2, 0.0, P)
    a1 = phi_add(idx1, TAU, Z1, Z2, 0.0, P)
    assert abs(a0 - a1) > 1.0
    t0 = phi_tilde(idx0, TAU, Z1, Z2, 0.0, P)
    t1 = phi_tilde(idx1, TAU, Z1, Z2, 0.0, P)
    assert abs(t0 - t1) < 1e-10


def test_modification_laws_integer_index():
    for (m, s) in ((1, 0), (2, 0), (3, 1)):
        idx = MockIndex.of(m, s)
        f = lambda tt, a, b, t: phi_tilde(idx, tt, a, b, t, P)
        t = 0.02 - 0.01j
        assert abs(f(TAU, Z1 + 1, Z2 - 2, t) - f(TAU, Z1, Z2, t)) < 1e-12
        a, b = 1, -1
        lhs = f(TAU, Z1 + a * TAU, Z2 + b * TAU, t)
        rhs = e2pi(-m * a * b * TAU - m * (b * Z1 + a * Z2)) * f(TAU, Z1, Z2, t)
        assert abs(lhs - rhs) < 1e-12
        lhs = f(-1 / TAU, Z1 / TAU, Z2 / TAU, t - Z1 * Z2 / TAU)
        assert abs(lhs - TAU * f(TAU, Z1, Z2, t)) < 1e-12
        assert abs(f(TAU + 1, Z1, Z2, t) - f(TAU, Z1, Z2, t)) < 1e-12


def test_half_index_laws_fail_as_recorded():
    # the half-integer index family genuinely breaks the shift and T laws
    # (the shift by tau+1 turns the series into its signed variant)
    idx = MockIndex.of(2, F(1, 2))
    f = lambda tt, a, b: phi_tilde(idx, tt, a, b, 0.0, P)
    assert abs(f(TAU, Z1 + 1, Z2 - 2) - f(TAU, Z1, Z2)) > 1e-3
    assert abs(f(TAU + 1, Z1, Z2) - f(TAU, Z1, Z2)) > 1e-4


def test_phi1_tilde_assembly_and_sign_convention():
    idx = MockIndex.of(2, 0)
    t = 0.05
    lhs = e2pi(2 * t) * (phi1_tilde(idx, TAU, Z1, Z2, P)
                         - phi1_tilde(idx, TAU, -Z2, -Z1, P))
    assert abs(lhs - phi_tilde(idx, TAU, Z1, Z2, t, P)) < 1e-12
    # the losing sign convention for the one-sided correction breaks the
    # S-law; recorded rather than silently discarded
    bad = lambda tt, a, b: (phi_tilde(idx, tt, a, b, 0.0, P)
                            - phi_add(idx, tt, a, b, 0.0, P)
                            - 2 * phi1_add(idx, tt, a, b, P))
    good = lambda tt, a, b: phi1_tilde(idx, tt, a, b, P)
    sgood = abs(good(-1 / TAU, Z1 / TAU, Z2 / TAU) * e2pi(-2 * Z1 * Z2 / TAU)
                - TAU * good(TAU, Z1, Z2))
    assert sgood < 1e-10


def test_s_independence_report():
    assert s_independence_report(2, [0, 1, 2]) < 1e-10
    assert s_independence_report(1, [0, 1, 2]) < 1e-13
    assert s_independence_report(2, [0, F(1, 2)]) > 1e-3


def test_psi_tilde_reduces_to_psi_at_degree_one():
    from mockforms.mock import psi

    idx = PsiIndex.of(3, 1, 0, F(1, 2), 1, -1)
    a = psi_tilde(idx, TAU, Z1, Z2, 0.0, P)
    b = psi(idx, TAU, Z1, Z2, 0.0, P)
    assert abs(a - b) < 1e-13


def test_reduced_evaluators_match():
    idx = MockIndex.of(2, 0)
    a = phi_tilde_reduced(idx, TAU, Z1 + 2 * TAU, Z2 - TAU, 0.03, P)
    b = phi_tilde(idx, TAU, Z1 + 2 * TAU, Z2 - TAU, 0.03, P)
    assert abs(a - b) / max(1.0, abs(a)) < 1e-10
    pidx = PsiIndex.of(3, 2, 0, F(1, 2), 2, -1)
    a = psi_tilde_reduced(pidx, TAU, Z1, Z2, 0.02, P)
    b = psi_tilde(pidx, TAU, Z1, Z2, 0.02, P)
    assert abs(a - b) / max(1.0, abs(a)) < 1e-10


def test_wirtinger_derivative_oracle():
    # analytic termwise derivative vs Richardson-extrapolated Wirtinger
    # differences of the real-analytic modification
    from mockforms.modification import phi_tilde_d0

    idx = MockIndex.of(2, 0)

    def wirt(f, x, h):
        return 0.5 * ((f(x + h) - f(x - h)) / (2 * h)
                      - 1j * (f(x + 1j * h) - f(x - 1j * h)) / (2 * h))

    def d0_fd(h):
        f1 = lambda a: phi_tilde(idx, TAU, a, Z2, 0.0, P)
        f2 = lambda b: phi_tilde(idx, TAU, Z1, b, 0.0, P)
        return (wirt(f1, Z1, h) - wirt(f2, Z2, h)) / (2j * math.pi)

    rich = (4 * d0_fd(5e-6) - d0_fd(1e-5)) / 3
    _, der = phi_tilde_d0(idx, TAU, Z1, Z2, P)
    assert abs(der - rich) < 1e-7


def test_s_independence_check_report():
    from mockforms.modification import s_independence_check

    rep = s_independence_check(2, [0, 1, 2])
    assert rep["pass"] and rep["max_abs_err"] < 1e-10
    rep = s_independence_check(2, [0, F(1, 2)])
    assert not rep["pass"]


def test_degree_one_modification_is_trivial():
    idx = MockIndex.of(1, 0)
    a = phi_tilde(idx, TAU, Z1, Z2, 0.04, P)
    b = phi(idx, TAU, Z1, Z2, 0.04, P)
    assert a == b
