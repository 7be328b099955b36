"""Unmodified mock objects.

The rank-1 Appell-type sum

    Phi_1^{[m;s]}(tau, z1, z2) =
        sum_{j in Z} e^{2 pi i (m j (z1+z2) + s z1)} q^{j^2 m + j s} / (1 - e^{2 pi i z1} q^j),

its antisymmetrized two-variable assembly Phi^{[m;s]}, the signed variants
Phi^{+-[m;s]} with (+-1)^j weights, and the theta-decorated, lattice-shifted
wrapper Psi.  Degrees m and indices s are half-integers.

Evaluation refuses points within pole_guard of the z1 / z2 pole lattices
instead of attempting any regularization; identity grids are chosen off
the singular set and silent near-pole precision loss is worse than an
explicit error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qkernel import (
    DEFAULT_POLICY,
    DomainError,
    HalfInt,
    TruncationPolicy,
    e2pi,
    guard_pole,
    sum_bilateral,
)


@dataclass(frozen=True)
class MockIndex:
    m: HalfInt  # positive half-integer degree
    s: HalfInt

    @staticmethod
    def of(m, s) -> "MockIndex":
        m = HalfInt.of(m)
        s = HalfInt.of(s)
        if m.twice <= 0:
            raise ValueError("degree m must be positive")
        return MockIndex(m, s)


@dataclass(frozen=True)
class PsiIndex:
    """Data of Psi^{[M,m,s;eps]}_{a,b;eps'}: modular scale M, degree m,
    index s, half-shifts eps, eps' in {0, 1/2}, and a, b in eps' + Z."""

    M: int
    m: HalfInt
    s: HalfInt
    eps: HalfInt
    a: HalfInt
    b: HalfInt
    eps_prime: HalfInt

    @staticmethod
    def of(M, m, s, eps, a, b, eps_prime=None) -> "PsiIndex":
        M = int(M)
        if M <= 0:
            raise ValueError("M must be a positive integer")
        m = HalfInt.of(m)
        if m.twice <= 0:
            raise ValueError("degree m must be positive")
        a = HalfInt.of(a)
        b = HalfInt.of(b)
        eps = HalfInt.of(eps)
        if eps.twice not in (0, 1):
            raise ValueError("eps must be 0 or 1/2")
        if eps_prime is None:
            eps_prime = HalfInt(a.twice % 2)
        else:
            eps_prime = HalfInt.of(eps_prime)
        if a.twice % 2 != eps_prime.twice or b.twice % 2 != eps_prime.twice:
            raise ValueError("a, b must lie in eps' + Z")
        return PsiIndex(M, m, HalfInt.of(s), eps, a, b, eps_prime)


def _phi1_core(m: float, s: float, tau: complex, z1: complex, z2: complex,
               policy: TruncationPolicy, sign: int = 1, want_d0: bool = False):
    """Appell sum and, optionally, its termwise (1/2 pi i)(d/dz1 - d/dz2).

    Per-term derivative of N_j/D_j with N_j the exponential numerator and
    D_j = 1 - w_j, w_j = e^{2 pi i z1} q^j:

        D0 (N/D) = s N/D + N w/D^2.
    """
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"Im tau must be positive, got {tau}")
    guard_pole(z1, tau, policy, "z1")
    zsum = z1 + z2
    j_star = round(-s / (2.0 * m) - zsum.imag / (2.0 * tau.imag))

    val = [0.0 + 0.0j]
    der = [0.0 + 0.0j]

    def term(j: int) -> complex:
        num = e2pi(m * j * zsum + s * z1 + tau * (j * j * m + j * s))
        if sign < 0 and j % 2:
            num = -num
        den = 1.0 - e2pi(z1 + j * tau)
        t = num / den
        if want_d0:
            w = e2pi(z1 + j * tau)
            der[0] += s * t + num * w / (den * den)
        return t

    val[0] = sum_bilateral(term, j_star, policy)
    if want_d0:
        return val[0], der[0]
    return val[0]


def phi1(idx: MockIndex, tau: complex, z1: complex, z2: complex,
         policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Phi_1^{[m;s]}(tau, z1, z2); poles at z1 in Z + tau Z."""
    return _phi1_core(float(idx.m), float(idx.s), tau, z1, z2, policy)


def phi(idx: MockIndex, tau: complex, z1: complex, z2: complex, t: complex = 0.0,
        policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Phi^{[m;s]} = e^{2 pi i m t} (Phi_1(tau,z1,z2) - Phi_1(tau,-z2,-z1))."""
    m, s = float(idx.m), float(idx.s)
    a = _phi1_core(m, s, tau, z1, z2, policy)
    b = _phi1_core(m, s, tau, -z2, -z1, policy)
    out = a - b
    if t != 0:
        out *= e2pi(m * t)
    return out


def phi_signed(sign: int, idx: MockIndex, tau: complex, z1: complex, z2: complex,
               t: complex = 0.0, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Signed variant with (+-1)^j weights; sign=+1 coincides with phi."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    m, s = float(idx.m), float(idx.s)
    a = _phi1_core(m, s, tau, z1, z2, policy, sign=sign)
    b = _phi1_core(m, s, tau, -z2, -z1, policy, sign=sign)
    out = a - b
    if t != 0:
        out *= e2pi(m * t)
    return out


def phi_d0(idx: MockIndex, tau: complex, z1: complex, z2: complex,
           policy: TruncationPolicy = DEFAULT_POLICY):
    """(value, D0 value) of Phi^{[m;s]} at t = 0, termwise differentiation.

    The swap-negated piece obeys D0[Phi_1(-z2,-z1)] = (D0 Phi_1)(-z2,-z1).
    """
    m, s = float(idx.m), float(idx.s)
    va, da = _phi1_core(m, s, tau, z1, z2, policy, want_d0=True)
    vb, db = _phi1_core(m, s, tau, -z2, -z1, policy, want_d0=True)
    return va - vb, da - db


def psi(idx: PsiIndex, tau: complex, z1: complex, z2: complex, t: complex = 0.0,
        policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Psi^{[M,m,s;eps]}_{a,b;eps'} = q^{m a b / M} e^{(2 pi i m/M)(b z1 + a z2)}
    Phi^{[m;s]}(M tau, z1 + a tau + eps, z2 + b tau + eps, t/M)."""
    m = float(idx.m)
    a, b, eps = float(idx.a), float(idx.b), float(idx.eps)
    M = idx.M
    pref = e2pi(m * a * b * tau / M + (m / M) * (b * z1 + a * z2))
    inner = phi(MockIndex(idx.m, idx.s), M * tau,
                z1 + a * tau + eps, z2 + b * tau + eps, t / M, policy)
    return pref * inner
