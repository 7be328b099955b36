"""Classical building blocks.

Degree-m rank-1 theta functions

    Theta_{j,m}(tau, z, t) = e^{2 pi i m t} sum_{n in Z + j/2m} q^{m n^2} e^{2 pi i m n z},

the four Jacobi theta functions theta_ab as their degree-2 combinations,
and the Dedekind eta function.  The index j matters only mod 2m; both j
and the degree m may be half-integers (the family modules use shifted
indices), represented exactly through HalfInt/Fraction arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .qkernel import (
    DEFAULT_POLICY,
    DomainError,
    HalfInt,
    TruncationOverflowError,
    TruncationPolicy,
    e2pi,
    sum_bilateral,
)


@dataclass(frozen=True)
class ThetaIndex:
    """Residue j modulo 2m together with the degree m > 0."""

    j: HalfInt
    m: HalfInt

    @staticmethod
    def of(j, m) -> "ThetaIndex":
        j = HalfInt.of(j)
        m = HalfInt.of(m)
        if m.twice <= 0:
            raise ValueError("degree m must be positive")
        return ThetaIndex(j, m)

    def base(self) -> Fraction:
        """Canonical fractional offset j/2m reduced into [0, 1)."""
        b = Fraction(self.j.twice, 2 * self.m.twice)
        return b - math.floor(b)


def theta_jm(idx: ThetaIndex, tau: complex, z: complex = 0.0, t: complex = 0.0,
             policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Theta_{j,m}(tau, z, t), absolute error <= policy.tol."""
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"Im tau must be positive, got {tau}")
    m = float(idx.m.value)
    base = float(idx.base())
    # |q^{m n^2} e^{2 pi i m n z}| peaks near n* = -Im z / (2 Im tau)
    n_star = -complex(z).imag / (2.0 * tau.imag)
    k0 = round(n_star - base)

    def term(k: int) -> complex:
        n = base + k
        return e2pi(m * n * (n * tau + z))

    s = sum_bilateral(term, k0, policy)
    if t != 0:
        s *= e2pi(m * t)
    return s


def theta_pair_diff(idx: ThetaIndex, tau: complex, z: complex,
                    policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """(Theta_{-j,m} - Theta_{j,m})(tau, z) with exact cancellation when
    -j == j mod 2m (both series then enumerate identical terms)."""
    neg = ThetaIndex.of(-idx.j, idx.m)
    if neg.base() == idx.base():
        return 0.0 + 0.0j
    return theta_jm(neg, tau, z, 0.0, policy) - theta_jm(idx, tau, z, 0.0, policy)


# the four degree-2 combinations: coefficients of Theta_{j,2}
_JACOBI = {
    (0, 0): ((2, 1.0), (0, 1.0)),
    (0, 1): ((2, -1.0), (0, 1.0)),
    (1, 0): ((1, 1.0), (-1, 1.0)),
    (1, 1): ((1, 1j), (-1, -1j)),
}


def jacobi_theta(a: int, b: int, tau: complex, z: complex = 0.0,
                 policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """theta_ab(tau, z) for a, b in {0, 1}."""
    if (a, b) not in _JACOBI:
        raise ValueError("Jacobi theta labels a, b must be 0 or 1")
    total = 0.0 + 0.0j
    for j, c in _JACOBI[(a, b)]:
        total += c * theta_jm(ThetaIndex.of(j, 2), tau, z, 0.0, policy)
    return total


def dedekind_eta(tau: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """eta(tau) = q^{1/24} prod_{n>=1} (1 - q^n), tail bound <= policy.tol."""
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"Im tau must be positive, got {tau}")
    q = e2pi(tau)
    aq = abs(q)
    prod = 1.0 + 0.0j
    qn = q
    for n in range(1, policy.n_max + 1):
        prod *= 1.0 - qn
        qn *= q
        # |log prod tail| <= sum_{k>n} |q|^k = |q|^{n+1}/(1-|q|)
        if abs(qn) / (1.0 - aq) < policy.tol:
            break
    else:
        raise TruncationOverflowError(
            f"eta product did not meet tol={policy.tol:g} within n_max={policy.n_max}"
        )
    return e2pi(tau / 24.0) * prod


def jacobi_theta11_product(tau: complex, z: complex, n_terms: int = 200) -> complex:
    """Triple-product form of theta_11, used as an independent oracle:

    theta_11(tau, z) = -2 q^{1/8} sin(pi z) prod_{n>=1} (1-q^n)(1-q^n e)(1-q^n/e),
    with e = e^{2 pi i z}.
    """
    q = e2pi(tau)
    zeta = e2pi(z)
    prod = 1.0 + 0.0j
    qn = 1.0 + 0.0j
    for _ in range(n_terms):
        qn *= q
        prod *= (1.0 - qn) * (1.0 - qn * zeta) * (1.0 - qn / zeta)
    return -2.0 * e2pi(tau / 8.0) * cmath_sin_pi(z) * prod


def cmath_sin_pi(z: complex) -> complex:
    import cmath

    return cmath.sin(math.pi * z)
