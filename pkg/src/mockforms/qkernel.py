"""Shared numerical substrate.

Complex helpers, nome computation, truncation control, the Gaussian
error-function kernel used by the real-analytic corrections, and
pole-distance guards.  Everything downstream sums series of the shape

    sum_k  c_k * exp(2*pi*i * (quadratic in k)),

so the helpers here provide a single bilateral summation loop with a
geometric/Gaussian tail cutoff and a hard index cap.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

TWO_PI = 2.0 * math.pi
SQRT_PI = math.sqrt(math.pi)


class DomainError(ValueError):
    """Argument outside the domain (e.g. tau not in the upper half-plane)."""


class PoleProximityError(ValueError):
    """Evaluation point too close to a pole of the function."""


class TruncationOverflowError(RuntimeError):
    """The summation cap was reached before the tail bound was met."""


class UnknownIdentityError(KeyError):
    """Identity id not present in the verification registry."""


class UnsupportedCaseError(ValueError):
    """Parameter combination outside the implemented case analysis."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Controls all series summation.

    tol        -- target absolute tail bound for every series
    n_max      -- hard cap on the summation index (per direction)
    pole_guard -- minimum allowed distance, in the z-plane modulo the
                  period lattice, from any pole of the summand
    """

    tol: float = 1e-12
    n_max: int = 4000
    pole_guard: float = 1e-3

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.n_max < 8:
            raise ValueError("n_max must be at least 8")
        if not self.pole_guard > 0:
            raise ValueError("pole_guard must be positive")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class HalfInt:
    """Exact element of (1/2)Z, stored as twice its value."""

    twice: int

    @staticmethod
    def of(x) -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, int):
            return HalfInt(2 * x)
        if isinstance(x, Fraction):
            if x.denominator not in (1, 2):
                raise ValueError(f"{x} is not a half-integer")
            return HalfInt(int(2 * x))
        if isinstance(x, float):
            t = 2.0 * x
            if abs(t - round(t)) > 1e-9:
                raise ValueError(f"{x} is not a half-integer")
            return HalfInt(round(t))
        raise TypeError(f"cannot interpret {x!r} as a half-integer")

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self) -> float:
        return self.twice / 2.0

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("HalfInt can only be scaled by an integer")
        return HalfInt(self.twice * k)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __repr__(self):
        return f"HalfInt({self.twice}/2)"


@dataclass(frozen=True)
class EvalPoint:
    """A modular argument tau (Im tau > 0), 1-3 elliptic variables, and a
    scale variable t."""

    tau: complex
    zs: tuple = ()
    t: complex = 0.0

    def __post_init__(self):
        if not self.tau.imag > 0:
            raise DomainError(f"Im tau must be positive, got {self.tau}")
        if not 1 <= len(self.zs) <= 3:
            raise ValueError("EvalPoint carries between 1 and 3 elliptic variables")
        object.__setattr__(self, "zs", tuple(complex(z) for z in self.zs))

    @property
    def z(self) -> complex:
        return self.zs[0]


def e2pi(x: complex) -> complex:
    """exp(2*pi*i*x)."""
    return cmath.exp(2j * math.pi * x)


def gauss_error(x: float) -> float:
    """E(x) = 2 * integral_0^x exp(-pi u^2) du.

    Substituting u = s/sqrt(pi) reduces E to the standard error integral,
    for which the C library's split series / continued-fraction evaluation
    is accurate to well below 1e-14 in both the central and tail regimes.
    """
    return math.erf(SQRT_PI * x)


def gauss_error_deriv(x: float) -> float:
    """dE/dx = 2 exp(-pi x^2)."""
    return 2.0 * math.exp(-math.pi * x * x)


def nome(tau: complex) -> complex:
    """q = exp(2*pi*i*tau); requires Im tau > 0 so that |q| < 1."""
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"Im tau must be positive, got {tau}")
    return e2pi(tau)


def lattice_distance(z: complex, tau: complex, sublattice: str = "full") -> float:
    """Euclidean distance from z to Z + tau*Z ("full") or (1/2)(Z + tau*Z)
    ("half")."""
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"Im tau must be positive, got {tau}")
    if sublattice == "half":
        return 0.5 * lattice_distance(2 * complex(z), tau, "full")
    if sublattice != "full":
        raise ValueError("sublattice must be 'full' or 'half'")
    z = complex(z)
    # coordinates of z in the (1, tau) basis
    y = z.imag / tau.imag
    x = z.real - y * tau.real
    a0, b0 = round(x), round(y)
    best = math.inf
    for a in range(a0 - 3, a0 + 4):
        for b in range(b0 - 3, b0 + 4):
            d = abs(z - (a + b * tau))
            if d < best:
                best = d
    return best


def guard_pole(z: complex, tau: complex, policy: TruncationPolicy, what: str = "z"):
    """Raise PoleProximityError if z is within pole_guard of Z + tau*Z."""
    d = lattice_distance(z, tau, "full")
    if d < policy.pole_guard:
        raise PoleProximityError(
            f"{what} = {complex(z):.6g} is within {d:.3g} of the period lattice "
            f"(guard {policy.pole_guard:g})"
        )


def sum_bilateral(term, k_start: int, policy: TruncationPolicy, consecutive: int = 4):
    """Sum term(k) over all integers k, walking outward from k_start.

    Stops each direction once `consecutive` successive terms are below
    tol/16 and non-increasing in magnitude, which bounds the dropped tail
    by a geometric series under the Gaussian/geometric decay all callers
    have.  Raises TruncationOverflowError when a direction exhausts
    policy.n_max steps first.
    """
    tol_each = policy.tol / 16.0
    total = 0.0 + 0.0j
    for direction, first in ((1, k_start), (-1, k_start - 1)):
        small = 0
        prev = math.inf
        k = first
        for _ in range(policy.n_max):
            t = term(k)
            total += t
            mag = abs(t)
            if mag < tol_each and mag <= prev:
                small += 1
                if small >= consecutive:
                    break
            else:
                small = 0
            prev = mag
            k += direction
        else:
            raise TruncationOverflowError(
                f"series did not meet tol={policy.tol:g} within n_max={policy.n_max} terms"
            )
    return total
